#include "addsvm/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace addsvm {

LossSpec LossSpec::pinball(double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("pinball loss: tau must be in (0,1)");
  return LossSpec(Kind::Pinball, tau);
}

LossSpec LossSpec::eps_insensitive(double eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("eps-insensitive loss: eps must be > 0");
  return LossSpec(Kind::EpsInsensitive, eps);
}

LossSpec LossSpec::hinge() { return LossSpec(Kind::Hinge, 0.0); }

void LossSpec::check_y(double y) const {
  if (kind_ == Kind::Hinge && y != 1.0 && y != -1.0)
    throw std::invalid_argument("hinge loss: y must be -1 or +1");
}

double LossSpec::eval(double y, double t) const {
  check_y(y);
  switch (kind_) {
    case Kind::Pinball: {
      double r = y - t;
      return r < 0.0 ? (param_ - 1.0) * r : param_ * r;
    }
    case Kind::EpsInsensitive:
      return std::max(0.0, std::abs(y - t) - param_);
    case Kind::Hinge:
      return std::max(0.0, 1.0 - y * t);
  }
  return 0.0;
}

double LossSpec::shifted(double y, double t) const {
  return eval(y, t) - eval(y, 0.0);
}

double LossSpec::lipschitz() const {
  switch (kind_) {
    case Kind::Pinball:
      return std::max(param_, 1.0 - param_);
    case Kind::EpsInsensitive:
    case Kind::Hinge:
      return 1.0;
  }
  return 1.0;
}

LossSpec::Interval LossSpec::subgrad(double y, double t) const {
  check_y(y);
  switch (kind_) {
    case Kind::Pinball:
      if (t < y) return {-param_, -param_};
      if (t > y) return {1.0 - param_, 1.0 - param_};
      return {-param_, 1.0 - param_};
    case Kind::EpsInsensitive: {
      double lo = y - param_, hi = y + param_;
      if (t < lo) return {-1.0, -1.0};
      if (t == lo) return {-1.0, 0.0};
      if (t < hi) return {0.0, 0.0};
      if (t == hi) return {0.0, 1.0};
      return {1.0, 1.0};
    }
    case Kind::Hinge: {
      double yt = y * t;
      if (yt < 1.0) return {-y, -y};
      if (yt > 1.0) return {0.0, 0.0};
      return {std::min(0.0, -y), std::max(0.0, -y)};
    }
  }
  return {0.0, 0.0};
}

double LossSpec::slope_at_minus_inf(double y) const {
  check_y(y);
  switch (kind_) {
    case Kind::Pinball:
      return -param_;
    case Kind::EpsInsensitive:
      return -1.0;
    case Kind::Hinge:
      // t -> -inf means yt -> -inf for y=+1 (slope -1) and yt -> +inf for
      // y=-1 (slope 0).
      return y > 0.0 ? -1.0 : 0.0;
  }
  return 0.0;
}

int LossSpec::kinks(double y, std::array<Kink, 2>& out) const {
  check_y(y);
  switch (kind_) {
    case Kind::Pinball:
      out[0] = {y, 1.0};
      return 1;
    case Kind::EpsInsensitive:
      out[0] = {y - param_, 1.0};
      out[1] = {y + param_, 1.0};
      return 2;
    case Kind::Hinge:
      // yt = 1 at t = y since y in {-1,+1}.
      out[0] = {y, 1.0};
      return 1;
  }
  return 0;
}

}  // namespace addsvm
