#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "addsvm/kernel.hpp"
#include "addsvm/loss.hpp"
#include "addsvm/measure.hpp"
#include "addsvm/svm.hpp"

namespace addsvm {

// Element of the RKHS in representer form: x -> sum_i coeffs[i]*k(x, points[i]).
// Used for trained functions, their differences, and influence functions.
struct HElement {
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXd coeffs;
  KernelSpec kernel;

  double eval(const Eigen::VectorXd& x) const;
  // sqrt(c' G c); tiny negative quadratic forms (roundoff) clip to 0.
  double norm() const;
};

// a - b as an H-element; both must share a kernel.
HElement h_subtract(const HElement& a, const HElement& b);

// Difference of two trained models over the union of their supports,
// optionally scaled: scale * (f_a - f_b). Both models must share a kernel.
HElement h_difference(const SvmModel& a, const SvmModel& b, double scale = 1.0);

// Estimated sup-norm of h over box [lo,hi]^d: max |h| over n_probe
// quasi-random points plus h's own representer points. A lower bound on the
// true sup-norm, reported as an estimate.
double sup_norm_estimate(const HElement& h, double lo, double hi,
                         int n_probe = 10000);

struct BiasRow {
  double eps = 0.0;
  double h_norm_diff = 0.0;
  double sup_norm_estimate = 0.0;
  double bound_h = 0.0;
  double bound_sup = 0.0;
  bool converged = true;
  bool pass = false;  // both inequalities hold with slack
};

struct BiasCurve {
  std::vector<BiasRow> rows;
  // True iff every converged row certifies; non-converged rows are excluded
  // from certification but reported.
  bool all_pass() const;
};

// Certifies ||T((1-eps)P + eps Q) - T(P)||_H <= eps/lambda * ||k||inf * |L|_1
// * ||P-Q||_M and the sup-norm analog with an extra ||k||inf factor, for each
// eps in the grid. Slack is 1e-6*(1+bound). probe_lo/hi give the box for the
// sup-norm probe (defaults cover the unit square experiments).
BiasCurve bias_check(const KernelSpec& k, const LossSpec& L, double lambda,
                     const DiscreteMeasure& P, const DiscreteMeasure& Q,
                     const std::vector<double>& eps_grid, double probe_lo = 0.0,
                     double probe_hi = 1.0);

// ||T(Q) - T(P)||_H against lambda^-1 * ||k||inf * |L|_1 * ||P-Q||_M.
struct TwoMeasureBias {
  double h_norm_diff = 0.0;
  double bound = 0.0;
  bool pass = false;
};
TwoMeasureBias two_measure_bias_check(const KernelSpec& k, const LossSpec& L,
                                      double lambda, const DiscreteMeasure& P,
                                      const DiscreteMeasure& Q);

struct BifResult {
  HElement element;
  // Atoms u with |f(u) - y| <= 1e-9 for some y-atom at u: the conditional CDF
  // jumps exactly at the fitted value, so the closed form is unreliable.
  std::vector<Eigen::VectorXd> flagged_atoms;
  bool atom_flags() const { return !flagged_atoms.empty(); }
};

// Closed-form Bouligand influence function of the pinball SVM at P in
// direction Q: coefficient (1/2lambda)*w_PX(u)*(P((-inf,f(u)]|u) - tau) at
// each distinct x-atom u of P, minus the analogous Q term at Q's x-atoms
// (shared atoms merged).
BifResult bif_pinball_closed(const DiscreteMeasure& P, const DiscreteMeasure& Q,
                             const SvmModel& model_P, double tau,
                             double lambda);

// (T(mix(P,Q,eps)) - T(P)) / eps on the union support.
HElement bif_finite_diff(const KernelSpec& k, const LossSpec& L, double lambda,
                         const DiscreteMeasure& P, const DiscreteMeasure& Q,
                         double eps, const SolverOptions& opts = {});

}  // namespace addsvm
