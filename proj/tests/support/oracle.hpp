#pragma once

#include <Eigen/Dense>

#include "addsvm/kernel.hpp"
#include "addsvm/loss.hpp"
#include "addsvm/measure.hpp"

namespace addsvm::testing {

struct OracleResult {
  Eigen::VectorXd alpha;
  double objective = 0.0;  // shifted-loss regularized objective
};

// Reference minimizer, independent of the production solver: projected
// subgradient descent (1e6 iterations, step c/sqrt(t), started from 0)
// followed by rounds of shrinking-grid search over coordinate and
// coordinate-pair directions (step factor 10 per level). Slow but has no
// code in common with the trainer beyond kernel evaluation.
OracleResult oracle_train(const KernelSpec& k, const LossSpec& L,
                          const DiscreteMeasure& P, double lambda);

}  // namespace addsvm::testing
