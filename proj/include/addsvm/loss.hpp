#pragma once

#include <array>

namespace addsvm {

// Lipschitz convex loss L(y,t). The general signature L(x,y,t) drops x:
// all three supported losses ignore it.
//
// Kink membership is decided by exact floating comparison (t == kink); the
// solver locates kinks through breakpoint arithmetic, so exact hits happen.
class LossSpec {
 public:
  enum class Kind { Pinball, EpsInsensitive, Hinge };

  struct Interval {
    double lo;
    double hi;
    bool contains(double v) const { return lo <= v && v <= hi; }
  };

  // One kink of the derivative of t -> L(y,t): at position `t`, the slope
  // jumps from left to left+jump (jump >= 0 by convexity).
  struct Kink {
    double t;
    double jump;
  };

  static LossSpec pinball(double tau);
  static LossSpec eps_insensitive(double eps);
  static LossSpec hinge();

  Kind kind() const { return kind_; }
  double tau() const { return param_; }
  double eps() const { return param_; }

  double eval(double y, double t) const;
  // L*(y,t) = L(y,t) - L(y,0); may be negative.
  double shifted(double y, double t) const;
  double lipschitz() const;
  // Subdifferential of t -> L(y,t); identical for L and L*.
  Interval subgrad(double y, double t) const;

  // Piecewise-linear derivative structure for the exact line search:
  // slope left of every kink, plus up to two kinks in increasing t order.
  double slope_at_minus_inf(double y) const;
  int kinks(double y, std::array<Kink, 2>& out) const;

 private:
  LossSpec(Kind kind, double param) : kind_(kind), param_(param) {}
  void check_y(double y) const;
  Kind kind_;
  double param_;
};

}  // namespace addsvm
