#pragma once

#include <string>
#include <vector>

#include "addsvm/kernel.hpp"
#include "addsvm/loss.hpp"
#include "addsvm/measure.hpp"
#include "addsvm/simlab.hpp"

namespace addsvm::testing {

struct Instance {
  std::string name;
  KernelSpec kernel;
  LossSpec loss;
  DiscreteMeasure measure;
  double lambda = 0.1;
};

// `count` small random instances cycling through the three losses
// (pinball with varying tau, eps-insensitive, hinge) and three kernel
// families (Gaussian, polynomial, additive sum), with at most `max_x`
// distinct x-atoms and 1-3 y-atoms per x. Deterministic in seed.
std::vector<Instance> random_instances(int count, int max_x,
                                       std::uint64_t seed);

// Random measure pair on [0,1]^dim for the bias-bound checks (n atoms each,
// shared dimension; binary labels when the loss is hinge).
std::pair<DiscreteMeasure, DiscreteMeasure> random_measure_pair(
    int n, int dim, std::uint64_t seed, bool binary_labels);

// The frozen influence-function validation instances: smooth-proxy P
// (two-cluster conditionals with zero-density gaps), point-mass Q inside
// the x-range, pinball(tau) with lambda small enough that fits land in the
// gaps. Parameters fixed once from an exploratory run.
struct BifInstance {
  std::string name;
  SmoothProxySpec proxy;
  Eigen::VectorXd q_x;
  double q_y = 0.0;
  double tau = 0.5;
  double lambda = 0.05;
};
std::vector<BifInstance> bif_instances();

}  // namespace addsvm::testing
