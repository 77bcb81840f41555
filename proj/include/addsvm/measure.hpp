#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace addsvm {

// Weighted atom of a finitely supported measure on X x Y.
struct Atom {
  Eigen::VectorXd x;
  double y = 0.0;
  double w = 0.0;
};

// Finitely supported probability measure on X x Y. Atoms with identical
// (x,y) are merged at construction; weights sum to 1. X-atoms match by exact
// floating equality: experiments are built on grids, where matches are
// exact, and tolerance matching would silently merge distinct design points.
class DiscreteMeasure {
 public:
  static DiscreteMeasure from_points(
      const std::vector<std::pair<Eigen::VectorXd, double>>& points,
      const std::vector<double>* weights = nullptr);
  static DiscreteMeasure from_atoms(std::vector<Atom> atoms);

  // Gross-error mixture (1-eps)*P + eps*Q on the union support. Atoms whose
  // mixed weight is exactly zero are dropped (so eps=0 gives P, eps=1 Q).
  static DiscreteMeasure mix(const DiscreteMeasure& p, const DiscreteMeasure& q,
                             double eps);

  const std::vector<Atom>& atoms() const { return atoms_; }
  int input_dim() const { return dim_; }
  std::size_t size() const { return atoms_.size(); }

  // P((-inf, t] | x); closed interval, so atoms with y == t count. x must be
  // in the support of the X-marginal.
  double cond_cdf(const Eigen::VectorXd& x, double t) const;

  // Distinct x-atoms in first-appearance order, with marginal weights and
  // the indices of the atoms sharing that x.
  struct XGroup {
    Eigen::VectorXd x;
    double wx = 0.0;
    std::vector<int> atom_idx;
  };
  std::vector<XGroup> x_groups() const;

 private:
  DiscreteMeasure() = default;
  std::vector<Atom> atoms_;
  int dim_ = 0;
};

// Total-variation norm of the signed measure P - Q: sum over the union
// support of |w_P - w_Q|. A norm of the signed measure, i.e. twice the TV
// *distance*; ranges over [0,2] for probability measures.
double tv_norm_diff(const DiscreteMeasure& p, const DiscreteMeasure& q);

}  // namespace addsvm
