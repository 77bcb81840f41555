#include "addsvm/simlab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "addsvm/csv.hpp"
#include "addsvm/rng.hpp"

namespace addsvm {

double true_f(double x1, double x2) {
  return 7.0 + 5.0 * x1 * x1 + std::sin(5.0 * x2) * std::cos(17.0 * x2);
}

double lambda_schedule(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("lambda_schedule: n must be >= 1");
  return a * std::pow(static_cast<double>(n), -b);
}

DiscreteMeasure SimDataset::to_measure() const {
  std::vector<std::pair<Eigen::VectorXd, double>> pts(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) pts[i] = {x[i], y[i]};
  return DiscreteMeasure::from_points(pts);
}

SimDataset gen_sim(int n, std::uint64_t seed, double noise_scale) {
  if (n < 1) throw std::invalid_argument("gen_sim: n must be >= 1");
  Rng rng(seed);
  SimDataset ds;
  ds.x.reserve(static_cast<std::size_t>(n));
  ds.y.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(2);
    x[0] = rng.uniform01();
    x[1] = rng.uniform01();
    double y = true_f(x[0], x[1]) + noise_scale * rng.cauchy();
    ds.x.push_back(std::move(x));
    ds.y.push_back(y);
  }
  return ds;
}

double d0_estimate(const std::function<double(double, double)>& f,
                   const std::function<double(double, double)>& g, int mc_size,
                   std::uint64_t seed) {
  if (mc_size < 1) throw std::invalid_argument("d0_estimate: mc_size must be >= 1");
  Rng rng(seed);
  double acc = 0.0;
  for (int i = 0; i < mc_size; ++i) {
    double x1 = rng.uniform01();
    double x2 = rng.uniform01();
    acc += std::min(1.0, std::abs(f(x1, x2) - g(x1, x2)));
  }
  return acc / mc_size;
}

double risk_estimate(const SvmModel& m, const LossSpec& L,
                     const SimDataset& test) {
  if (test.y.empty()) throw std::invalid_argument("risk_estimate: empty test set");
  double acc = 0.0;
  for (std::size_t i = 0; i < test.y.size(); ++i) {
    if (test.x[i].size() != m.kernel().input_dim())
      throw std::invalid_argument("risk_estimate: dimension mismatch");
    acc += L.eval(test.y[i], m.predict(test.x[i]));
  }
  return acc / static_cast<double>(test.y.size());
}

std::vector<SimVariant> default_variants() {
  std::vector<SimVariant> v;
  v.push_back({"grbf2d", [] { return KernelSpec::gaussian(2.0, 2); }});
  v.push_back({"additive", [] {
                 return KernelSpec::sum(
                     {{{0, 0}, KernelSpec::gaussian(2.0, 1)},
                      {{1, 1}, KernelSpec::gaussian(2.0, 1)}});
               }});
  v.push_back({"semiparam", [] {
                 return KernelSpec::sum(
                     {{{0, 0}, KernelSpec::polynomial(2, 1.0, 1)},
                      {{1, 1}, KernelSpec::gaussian(2.0, 1)}});
               }});
  return v;
}

DiscreteMeasure random_measure(int n, int dim, std::uint64_t seed,
                               bool binary_labels) {
  if (n < 1 || dim < 1)
    throw std::invalid_argument("random_measure: n and dim must be >= 1");
  Rng rng(seed);
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Atom a;
    a.x.resize(dim);
    for (int j = 0; j < dim; ++j) a.x[j] = rng.uniform01();
    a.y = binary_labels ? (rng.uniform01() < 0.5 ? -1.0 : 1.0)
                        : rng.uniform(-2.0, 2.0);
    a.w = rng.uniform(0.5, 1.5);
    atoms.push_back(std::move(a));
  }
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

DiscreteMeasure smooth_proxy_measure(const SmoothProxySpec& spec) {
  if (spec.n_x < 1 || spec.levels < 2 || spec.gap <= 0.0 || spec.spread <= 0.0 ||
      !(spec.p_low > 0.0 && spec.p_low < 1.0))
    throw std::invalid_argument("smooth_proxy_measure: bad parameters");
  std::vector<Atom> atoms;
  const double wx = 1.0 / spec.n_x;
  for (int i = 0; i < spec.n_x; ++i) {
    Eigen::VectorXd x(1);
    x[0] = (i + 0.5) / spec.n_x;
    const double c = spec.center0 + spec.center_amp * std::sin(2.0 * M_PI * x[0]);
    auto cluster = [&](double lo, double mass) {
      const double wy = mass * wx / spec.levels;
      for (int l = 0; l < spec.levels; ++l) {
        double y = lo + spec.spread * (l + 0.5) / spec.levels;
        atoms.push_back(Atom{x, y, wy});
      }
    };
    cluster(c - spec.gap - spec.spread, spec.p_low);
    cluster(c + spec.gap, 1.0 - spec.p_low);
  }
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_rows(const std::string& path, const std::string& header,
                const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << header << '\n';
  for (const auto& l : lines) out << l << '\n';
}

}  // namespace

TrendResult run_consistency(const SimSpec& spec, const std::string& out_dir) {
  std::vector<SimVariant> variants =
      spec.variants.empty() ? default_variants() : spec.variants;
  if (spec.n_grid.empty() || spec.seeds.empty())
    throw std::invalid_argument("run_consistency: empty n grid or seed list");
  const int n_max = *std::max_element(spec.n_grid.begin(), spec.n_grid.end());
  const LossSpec loss = LossSpec::pinball(spec.tau);

  TrendResult out;
  std::vector<std::string> trend_lines, grid_names;
  std::vector<std::vector<double>> grids;  // flattened per variant

  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    KernelSpec k = variants[vi].kernel();
    for (int n : spec.n_grid) {
      for (std::uint64_t seed : spec.seeds) {
        std::uint64_t cell = Rng::derive(seed, vi + 1, static_cast<std::uint64_t>(n));
        SimDataset train_ds =
            gen_sim(n, Rng::derive(cell, 1), spec.noise_scale);
        SimDataset test_ds =
            gen_sim(spec.test_size, Rng::derive(cell, 2), spec.noise_scale);

        TrendRow row;
        row.variant = variants[vi].tag;
        row.n = n;
        row.seed = seed;
        auto t0 = std::chrono::steady_clock::now();
        auto [model, rep] =
            train(k, loss, train_ds.to_measure(), lambda_schedule(n, spec.lambda_a, spec.lambda_b));
        row.train_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        row.converged = rep.converged;
        if (!rep.converged) out.all_converged = false;
        row.d0 = d0_estimate(
            [&model](double a, double b) {
              Eigen::Vector2d x(a, b);
              return model.predict(x);
            },
            true_f, spec.mc_size, Rng::derive(cell, 3));
        row.test_risk = risk_estimate(model, loss, test_ds);
        out.rows.push_back(row);
        trend_lines.push_back(row.variant + "," + std::to_string(n) + "," +
                              std::to_string(seed) + "," + format_g17(row.d0) +
                              "," + format_g17(row.test_risk) + "," +
                              (row.converged ? "1" : "0"));

        if (!out_dir.empty() && n == n_max && seed == spec.seeds.front()) {
          std::vector<double> flat;
          for (int i = 0; i < spec.grid_points; ++i)
            for (int j = 0; j < spec.grid_points; ++j) {
              Eigen::Vector2d x(
                  static_cast<double>(i) / (spec.grid_points - 1),
                  static_cast<double>(j) / (spec.grid_points - 1));
              flat.push_back(x[0]);
              flat.push_back(x[1]);
              flat.push_back(model.predict(x));
            }
          grids.push_back(std::move(flat));
          grid_names.push_back(variants[vi].tag);
        }
      }
      std::vector<double> d0s, risks;
      for (const auto& r : out.rows)
        if (r.variant == variants[vi].tag && r.n == n && r.converged) {
          d0s.push_back(r.d0);
          risks.push_back(r.test_risk);
        }
      if (!d0s.empty())
        out.summary.push_back(
            {variants[vi].tag, n, median(d0s), median(risks)});
    }
  }

  if (!out_dir.empty()) {
    // train_seconds stays off disk: wall-clock times would break the
    // byte-determinism contract of the outputs.
    write_rows(out_dir + "/trend.csv", "variant,n,seed,d0,test_risk,converged",
               trend_lines);
    std::vector<std::string> summary_lines;
    for (const auto& s : out.summary)
      summary_lines.push_back(s.variant + "," + std::to_string(s.n) + "," +
                              format_g17(s.median_d0) + "," +
                              format_g17(s.median_risk));
    write_rows(out_dir + "/summary.csv", "variant,n,median_d0,median_risk",
               summary_lines);
    for (std::size_t gi = 0; gi < grids.size(); ++gi) {
      std::vector<std::string> lines;
      for (std::size_t p = 0; p + 3 <= grids[gi].size(); p += 3)
        lines.push_back(format_g17(grids[gi][p]) + "," +
                        format_g17(grids[gi][p + 1]) + "," +
                        format_g17(grids[gi][p + 2]));
      write_rows(out_dir + "/grid_" + grid_names[gi] + ".csv", "x1,x2,pred",
                 lines);
    }
  }
  return out;
}

}  // namespace addsvm
