#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "addsvm/kernel.hpp"
#include "addsvm/loss.hpp"
#include "addsvm/measure.hpp"
#include "addsvm/svm.hpp"

namespace addsvm {

// Target of the simulated example: f(x1,x2) = 7 + 5 x1^2 + sin(5 x2) cos(17 x2).
double true_f(double x1, double x2);

// lambda_n = a * n^(-b); defaults give 0.05 * n^(-0.45).
double lambda_schedule(int n, double a = 0.05, double b = 0.45);

struct SimDataset {
  std::vector<Eigen::VectorXd> x;
  std::vector<double> y;
  DiscreteMeasure to_measure() const;
};

// n rows with x ~ U[0,1]^2 iid and y = true_f(x) + noise_scale * Cauchy.
// Deterministic in seed (see rng.hpp for the generator contract).
SimDataset gen_sim(int n, std::uint64_t seed, double noise_scale = 1.0);

// Monte-Carlo estimate of d0(f,g) = E min{1, |f(X)-g(X)|}, X ~ U[0,1]^2.
double d0_estimate(const std::function<double(double, double)>& f,
                   const std::function<double(double, double)>& g, int mc_size,
                   std::uint64_t seed);

// Mean unshifted loss of the model's predictions on held-out data.
double risk_estimate(const SvmModel& m, const LossSpec& L,
                     const SimDataset& test);

struct SimVariant {
  std::string tag;
  std::function<KernelSpec()> kernel;
};

struct SimSpec {
  std::vector<int> n_grid = {200, 800, 3200};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<SimVariant> variants;  // empty -> default_variants()
  double tau = 0.5;
  double lambda_a = 0.05;
  double lambda_b = 0.45;
  double noise_scale = 1.0;
  int test_size = 10000;
  int mc_size = 10000;
  int grid_points = 41;  // per axis, prediction-grid side output
};

// The three study variants: full GRBF(2) on R^2, additive Sum{GRBF(2),
// GRBF(2)}, and semiparametric Sum{Polynomial(2, c=1), GRBF(2)}.
std::vector<SimVariant> default_variants();

struct TrendRow {
  std::string variant;
  int n = 0;
  std::uint64_t seed = 0;
  double d0 = 0.0;
  double test_risk = 0.0;
  double train_seconds = 0.0;
  bool converged = true;
};

struct TrendResult {
  std::vector<TrendRow> rows;
  // Per (variant, n): median d0 over seeds, in variant-then-n order.
  struct SummaryRow {
    std::string variant;
    int n = 0;
    double median_d0 = 0.0;
    double median_risk = 0.0;
  };
  std::vector<SummaryRow> summary;
  bool all_converged = true;
};

// Random test measure: x ~ U[0,1]^dim, y ~ U[-2,2] (or +-1 labels when
// binary_labels), weights ~ U[0.5,1.5] before normalization.
DiscreteMeasure random_measure(int n, int dim, std::uint64_t seed,
                               bool binary_labels = false);

// Discrete stand-in for a measure with a smooth conditional density: n_x
// x-atoms on a 1-d grid, each carrying two uniform y-clusters of `levels`
// points separated by a zero-density gap of half-width `gap` around a
// center that varies smoothly with x. Quantile fits whose fitted values
// land inside the gaps see a locally constant conditional CDF, which is
// where the influence-function closed form is reliable.
struct SmoothProxySpec {
  int n_x = 5;
  int levels = 200;       // y points per cluster
  double center0 = 0.0;   // cluster-pair center at x = 0
  double center_amp = 0.25;  // center(x) = center0 + center_amp * sin(2 pi x)
  double gap = 0.4;
  double spread = 1.0;    // width of each cluster
  double p_low = 0.35;    // conditional mass of the lower cluster
};
DiscreteMeasure smooth_proxy_measure(const SmoothProxySpec& spec);

// Runs the (variant, n, seed) grid: per cell, generate data, train a
// pinball(tau) SVM with lambda = lambda_schedule(n), record d0 to true_f and
// held-out risk. When out_dir is nonempty, writes trend.csv, summary.csv and
// a grid_<variant>.csv of predictions over [0,1]^2 at the largest n
// (seed = first seed); outputs are byte-deterministic in the spec.
TrendResult run_consistency(const SimSpec& spec, const std::string& out_dir);

}  // namespace addsvm
