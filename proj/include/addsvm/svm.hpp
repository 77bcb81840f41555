#pragma once

#include <Eigen/Dense>
#include <vector>

#include "addsvm/kernel.hpp"
#include "addsvm/loss.hpp"
#include "addsvm/measure.hpp"

namespace addsvm {

struct SolverOptions {
  // Relative objective decrease per full sweep below which we stop.
  double tol = 1e-10;
  int max_sweeps = 100000;
  // KKT residual a converged run must certify.
  double kkt_tol = 1e-6;
  // Fitted values within kink_tol*(1+|t|) of a loss kink receive the full
  // kink subdifferential in the KKT certificate.
  double kink_tol = 1e-6;
  // Minimize the shifted-loss objective (sum w L*(y, f) + lambda ||f||^2).
  // The minimizer is the same either way; only the reported objective moves
  // by the constant sum w L(y,0).
  bool shifted = true;
};

struct TrainReport {
  int sweeps = 0;
  double final_objective = 0.0;
  double kkt_residual = 0.0;
  bool converged = false;
};

// Trained SVM in representer form: f(x) = sum_i alpha[i] * k(x, support[i]),
// support = the distinct x-atoms of the training measure in first-appearance
// order. Immutable after training.
class SvmModel {
 public:
  SvmModel(std::vector<Eigen::VectorXd> support, Eigen::VectorXd alpha,
           KernelSpec kernel, LossSpec loss, double lambda);

  double predict(const Eigen::VectorXd& x) const;
  // Per-block values f_j(x_j) for a Sum kernel; they sum to predict(x)
  // exactly (predict computes the components and adds them in block order).
  std::vector<double> additive_components(const Eigen::VectorXd& x) const;

  double rkhs_norm() const;  // sqrt(alpha' G alpha), clipped at 0
  double objective() const { return objective_; }

  const std::vector<Eigen::VectorXd>& support() const { return support_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const KernelSpec& kernel() const { return kernel_; }
  const LossSpec& loss() const { return loss_; }
  double lambda() const { return lambda_; }
  const Eigen::MatrixXd& gram() const { return gram_; }

  void set_objective(double v) { objective_ = v; }

 private:
  std::vector<Eigen::VectorXd> support_;
  Eigen::VectorXd alpha_;
  KernelSpec kernel_;
  LossSpec loss_;
  double lambda_;
  Eigen::MatrixXd gram_;
  double objective_ = 0.0;
};

// Trains by exact cyclic coordinate ascent on the Fenchel dual (a concave
// quadratic over a box; see src/svm.cpp for the derivation), stopping on the
// primal-dual gap. Deterministic given inputs.
std::pair<SvmModel, TrainReport> train(const KernelSpec& k, const LossSpec& L,
                                       const DiscreteMeasure& P, double lambda,
                                       const SolverOptions& opts = {});

// Same as train but starting from a given coefficient vector (used by the
// uniqueness tests; the cyclic order is unchanged).
std::pair<SvmModel, TrainReport> train_from(const KernelSpec& k,
                                            const LossSpec& L,
                                            const DiscreteMeasure& P,
                                            double lambda,
                                            const Eigen::VectorXd& alpha0,
                                            const SolverOptions& opts = {});

// Max over coordinates of the distance of 0 from the partial subdifferential
// of the regularized objective at the model's coefficients. Kink membership
// is tolerance-widened (see SolverOptions::kink_tol).
double kkt_residual(const SvmModel& m, const DiscreteMeasure& P,
                    double kink_tol = 1e-6);

// Shifted-loss regularized objective of an arbitrary coefficient vector.
double objective_value(const KernelSpec& k, const LossSpec& L,
                       const DiscreteMeasure& P, double lambda,
                       const Eigen::VectorXd& alpha, bool shifted = true);

}  // namespace addsvm
