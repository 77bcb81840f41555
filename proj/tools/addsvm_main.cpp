// addsvm command-line front end.
//
// Subcommands: train, predict, bias-check, bif-check, simulate, kernel-info.
// Structured inputs (kernels, experiment specs) come from JSON config files;
// flags carry paths and scalar overrides. Exit codes: 0 success/pass,
// 1 certification failure, 2 input error, 3 numeric/convergence failure.

#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "addsvm/csv.hpp"
#include "addsvm/measure.hpp"
#include "addsvm/robustness.hpp"
#include "addsvm/serialize.hpp"
#include "addsvm/simlab.hpp"
#include "addsvm/svm.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCertFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

// Thrown for failures that must map to the numeric-failure exit code.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

addsvm::SolverOptions solver_options(const json& cfg) {
  addsvm::SolverOptions opts;
  if (cfg.contains("tol")) opts.tol = cfg["tol"].get<double>();
  if (cfg.contains("max_sweeps")) opts.max_sweeps = cfg["max_sweeps"].get<int>();
  if (cfg.contains("kkt_tol")) opts.kkt_tol = cfg["kkt_tol"].get<double>();
  if (cfg.contains("shifted")) opts.shifted = cfg["shifted"].get<bool>();
  return opts;
}

// Measure configs are either a CSV path (string) or an object selecting a
// built-in generator:
//   {"csv": "path.csv"}
//   {"random": {"n": 10, "dim": 1, "seed": 1, "binary_labels": false}}
//   {"smooth_proxy": {"n_x":5,"levels":200,"gap":0.4,"spread":1.0,
//                     "p_low":0.35,"center0":0.0,"center_amp":0.25}}
//   {"point": {"x": [0.5], "y": 2.0}}
addsvm::DiscreteMeasure measure_from_config(const json& j, const char* name) {
  if (j.is_string()) return addsvm::load_csv(j.get<std::string>()).to_measure();
  if (!j.is_object())
    throw std::runtime_error(std::string("config field '") + name +
                             "': expected a path or a generator object");
  if (j.contains("csv"))
    return addsvm::load_csv(j["csv"].get<std::string>()).to_measure();
  if (j.contains("random")) {
    const json& r = j["random"];
    return addsvm::random_measure(r.at("n").get<int>(), r.at("dim").get<int>(),
                                  r.at("seed").get<std::uint64_t>(),
                                  r.value("binary_labels", false));
  }
  if (j.contains("smooth_proxy")) {
    const json& s = j["smooth_proxy"];
    addsvm::SmoothProxySpec spec;
    spec.n_x = s.value("n_x", spec.n_x);
    spec.levels = s.value("levels", spec.levels);
    spec.center0 = s.value("center0", spec.center0);
    spec.center_amp = s.value("center_amp", spec.center_amp);
    spec.gap = s.value("gap", spec.gap);
    spec.spread = s.value("spread", spec.spread);
    spec.p_low = s.value("p_low", spec.p_low);
    return addsvm::smooth_proxy_measure(spec);
  }
  if (j.contains("point")) {
    const json& p = j["point"];
    const json& jx = p.at("x");
    Eigen::VectorXd x(jx.size());
    for (std::size_t i = 0; i < jx.size(); ++i)
      x[static_cast<Eigen::Index>(i)] = jx[i].get<double>();
    return addsvm::DiscreteMeasure::from_atoms(
        {addsvm::Atom{x, p.at("y").get<double>(), 1.0}});
  }
  throw std::runtime_error(std::string("config field '") + name +
                           "': no known generator key (csv/random/"
                           "smooth_proxy/point)");
}

int cmd_train(const std::string& data_path, const std::string& config_path,
              const std::string& out_path) {
  json cfg = addsvm::read_json_file(config_path);
  addsvm::KernelSpec k = addsvm::kernel_from_json(cfg.at("kernel"));
  addsvm::LossSpec L = addsvm::loss_from_tag(cfg.at("loss").get<std::string>());
  double lambda = cfg.at("lambda").get<double>();
  addsvm::DiscreteMeasure P = addsvm::load_csv(data_path).to_measure();

  auto [model, rep] = addsvm::train(k, L, P, lambda, solver_options(cfg));
  std::printf("trained: atoms=%zu support=%zu sweeps=%d objective=%.12g "
              "kkt_residual=%.3g converged=%s\n",
              P.size(), model.support().size(), rep.sweeps, rep.final_objective,
              rep.kkt_residual, rep.converged ? "yes" : "no");
  if (!rep.converged) throw NumericError("training did not converge");
  addsvm::save_model(model, out_path);
  std::printf("model written to %s\n", out_path.c_str());
  return kExitPass;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
  addsvm::SvmModel model = addsvm::load_model(model_path);
  // Prediction input may or may not carry a y column; accept both.
  addsvm::Dataset ds = addsvm::load_csv(data_path, /*require_y=*/false);
  const bool additive = model.kernel().kind() == addsvm::KernelSpec::Kind::Sum;
  std::vector<std::string> header = {"pred"};
  if (additive)
    for (std::size_t b = 0; b < model.kernel().blocks().size(); ++b)
      header.push_back("component" + std::to_string(b + 1));
  std::vector<std::vector<double>> rows;
  for (const auto& x : ds.x) {
    std::vector<double> row = {model.predict(x)};
    if (additive)
      for (double c : model.additive_components(x)) row.push_back(c);
    rows.push_back(std::move(row));
  }
  addsvm::save_csv(out_path, header, rows);
  std::printf("%zu predictions written to %s\n", rows.size(), out_path.c_str());
  return kExitPass;
}

int cmd_bias_check(const std::string& config_path, const std::string& out_path) {
  json cfg = addsvm::read_json_file(config_path);
  addsvm::KernelSpec k = addsvm::kernel_from_json(cfg.at("kernel"));
  addsvm::LossSpec L = addsvm::loss_from_tag(cfg.at("loss").get<std::string>());
  double lambda = cfg.at("lambda").get<double>();
  addsvm::DiscreteMeasure P = measure_from_config(cfg.at("P"), "P");
  addsvm::DiscreteMeasure Q = measure_from_config(cfg.at("Q"), "Q");
  std::vector<double> eps_grid = cfg.value("eps_grid",
                                           std::vector<double>{0.05, 0.1, 0.2, 0.4});

  addsvm::BiasCurve curve;
  try {
    curve = addsvm::bias_check(k, L, lambda, P, Q, eps_grid,
                               cfg.value("probe_lo", 0.0),
                               cfg.value("probe_hi", 1.0));
  } catch (const std::runtime_error& e) {
    throw NumericError(e.what());
  }

  std::vector<std::string> header = {"eps", "h_norm", "sup_norm_est",
                                     "bound_h", "bound_sup", "pass"};
  std::vector<std::vector<double>> rows;
  for (const auto& r : curve.rows) {
    rows.push_back({r.eps, r.h_norm_diff, r.sup_norm_estimate, r.bound_h,
                    r.bound_sup, r.converged && r.pass ? 1.0 : 0.0});
    std::printf("eps=%.4g  h_norm=%.6g (bound %.6g)  sup_est=%.6g (bound %.6g)"
                "  %s\n",
                r.eps, r.h_norm_diff, r.bound_h, r.sup_norm_estimate,
                r.bound_sup,
                !r.converged ? "NOT CONVERGED" : (r.pass ? "pass" : "FAIL"));
  }
  if (!out_path.empty()) addsvm::save_csv(out_path, header, rows);
  return curve.all_pass() ? kExitPass : kExitCertFail;
}

int cmd_bif_check(const std::string& config_path, const std::string& out_path) {
  json cfg = addsvm::read_json_file(config_path);
  addsvm::KernelSpec k = addsvm::kernel_from_json(cfg.at("kernel"));
  double tau = cfg.value("tau", 0.5);
  double lambda = cfg.at("lambda").get<double>();
  addsvm::DiscreteMeasure P = measure_from_config(cfg.at("P"), "P");
  addsvm::DiscreteMeasure Q = measure_from_config(cfg.at("Q"), "Q");
  std::vector<double> eps_grid =
      cfg.value("eps_grid", std::vector<double>{0.1, 0.03, 0.01});
  addsvm::LossSpec L = addsvm::LossSpec::pinball(tau);

  auto [model_P, rep] = addsvm::train(k, L, P, lambda);
  if (!rep.converged) throw NumericError("training on P did not converge");
  addsvm::BifResult closed = addsvm::bif_pinball_closed(P, Q, model_P, tau, lambda);

  std::vector<std::vector<double>> rows;
  bool nonincreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : eps_grid) {
    double dn = 0.0;
    try {
      addsvm::HElement fd = addsvm::bif_finite_diff(k, L, lambda, P, Q, eps);
      dn = addsvm::h_subtract(fd, closed.element).norm();
    } catch (const std::runtime_error& e) {
      throw NumericError(e.what());
    }
    if (dn > prev + 1e-12) nonincreasing = false;
    prev = dn;
    rows.push_back({eps, dn, closed.atom_flags() ? 1.0 : 0.0});
    std::printf("eps=%.4g  fd_vs_closed_h_norm=%.6g  atom_flags=%s\n", eps, dn,
                closed.atom_flags() ? "yes" : "no");
  }
  if (!out_path.empty())
    addsvm::save_csv(out_path, {"eps", "fd_vs_closed_h_norm", "atom_flags"},
                     rows);
  if (closed.atom_flags()) {
    std::printf("atom-collision, excluded from certification\n");
    return kExitCertFail;
  }
  return nonincreasing ? kExitPass : kExitCertFail;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  json cfg = addsvm::read_json_file(config_path);
  addsvm::SimSpec spec;
  if (cfg.contains("n_grid")) spec.n_grid = cfg["n_grid"].get<std::vector<int>>();
  if (cfg.contains("seeds"))
    spec.seeds = cfg["seeds"].get<std::vector<std::uint64_t>>();
  spec.tau = cfg.value("tau", spec.tau);
  spec.lambda_a = cfg.value("lambda_a", spec.lambda_a);
  spec.lambda_b = cfg.value("lambda_b", spec.lambda_b);
  spec.noise_scale = cfg.value("noise_scale", spec.noise_scale);
  spec.test_size = cfg.value("test_size", spec.test_size);
  spec.mc_size = cfg.value("mc_size", spec.mc_size);
  spec.grid_points = cfg.value("grid_points", spec.grid_points);
  if (cfg.contains("variants")) {
    std::vector<addsvm::SimVariant> chosen;
    for (const auto& tag : cfg["variants"].get<std::vector<std::string>>()) {
      bool found = false;
      for (auto& v : addsvm::default_variants())
        if (v.tag == tag) {
          chosen.push_back(v);
          found = true;
        }
      if (!found)
        throw std::runtime_error("config field 'variants': unknown tag '" +
                                 tag + "'");
    }
    spec.variants = std::move(chosen);
  }

  addsvm::TrendResult res = addsvm::run_consistency(spec, out_dir);
  for (const auto& s : res.summary)
    std::printf("%-10s n=%-6d median_d0=%.6f median_risk=%.6f\n",
                s.variant.c_str(), s.n, s.median_d0, s.median_risk);
  std::printf("%zu rows written to %s\n", res.rows.size(), out_dir.c_str());
  if (!res.all_converged) throw NumericError("some training cells did not converge");
  return kExitPass;
}

int cmd_kernel_info(const std::string& config_path) {
  json cfg = addsvm::read_json_file(config_path);
  const json& jk = cfg.contains("kernel") ? cfg.at("kernel") : cfg;
  addsvm::KernelSpec k = addsvm::kernel_from_json(jk);
  std::optional<addsvm::Box> box;
  if (cfg.contains("box")) {
    const json& jb = cfg["box"];
    addsvm::Box b;
    auto lo = jb.at("lo").get<std::vector<double>>();
    auto hi = jb.at("hi").get<std::vector<double>>();
    b.lo = Eigen::Map<const Eigen::VectorXd>(lo.data(), static_cast<Eigen::Index>(lo.size()));
    b.hi = Eigen::Map<const Eigen::VectorXd>(hi.data(), static_cast<Eigen::Index>(hi.size()));
    box = std::move(b);
  }
  std::printf("kernel: %s\n", addsvm::kernel_to_json(k).dump().c_str());
  std::printf("input_dim: %d\n", k.input_dim());
  if (k.kind() == addsvm::KernelSpec::Kind::Sum ||
      k.kind() == addsvm::KernelSpec::Kind::Product) {
    for (const auto& b : k.blocks())
      std::printf("block coords [%d,%d]: %s\n", b.range.lo, b.range.hi,
                  addsvm::kernel_to_json(b.kernel).dump().c_str());
  }
  addsvm::BoundCertificate cert = addsvm::sup_norm_bound(k, box);
  if (cert.finite())
    std::printf("sup_norm_bound: %.12g\n", cert.sup_norm);
  else
    std::printf("sup_norm_bound: unbounded (supply a box for a certificate)\n");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SVMs for additive models: training, prediction, robustness "
               "certification, and the simulation lab"};
  app.require_subcommand(1);

  std::string data_path, config_path, model_path, out_path, out_dir = ".";

  auto* train = app.add_subcommand("train", "Train an SVM from a CSV dataset");
  train->add_option("--data", data_path, "CSV with feature columns and a 'y' "
                    "column (optional 'w' weights)")->required();
  train->add_option("--config", config_path,
                    "JSON with 'kernel', 'loss' (e.g. \"pinball:0.5\"), "
                    "'lambda', optional solver settings")->required();
  train->add_option("--out", out_path, "Model file to write")->required();

  auto* predict = app.add_subcommand("predict", "Evaluate a trained model on "
                                     "CSV rows");
  predict->add_option("--model", model_path, "Model file from 'train'")->required();
  predict->add_option("--data", data_path, "CSV of feature rows (a 'y' column "
                      "is accepted and ignored)")->required();
  predict->add_option("--out", out_path, "Prediction CSV; Sum kernels also get "
                      "per-block component columns")->required();

  auto* bias = app.add_subcommand("bias-check",
                                  "Certify the gross-error bias bounds");
  bias->add_option("--config", config_path, "JSON with 'kernel', 'loss', "
                   "'lambda', measures 'P' and 'Q' (CSV path or generator "
                   "object), 'eps_grid'")->required();
  bias->add_option("--out", out_path, "Certification CSV (optional)");

  auto* bif = app.add_subcommand("bif-check", "Compare the closed-form pinball "
                                 "influence function against finite differences");
  bif->add_option("--config", config_path, "JSON with 'kernel', 'tau', "
                  "'lambda', 'P', 'Q', 'eps_grid'")->required();
  bif->add_option("--out", out_path, "Comparison CSV (optional)");

  auto* sim = app.add_subcommand("simulate", "Run the consistency study grid");
  sim->add_option("--config", config_path, "JSON experiment spec (n_grid, "
                  "seeds, variants, tau, lambda_a/b, noise_scale, test_size, "
                  "mc_size, grid_points)")->required();
  sim->add_option("--out-dir", out_dir, "Directory for trend/summary/grid CSVs");

  auto* kinfo = app.add_subcommand("kernel-info", "Describe a kernel spec and "
                                   "its sup-norm certificate");
  kinfo->add_option("--config", config_path, "JSON kernel spec (optionally "
                    "{'kernel':..., 'box':{'lo':[...],'hi':[...]}})")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  try {
    if (*train) return cmd_train(data_path, config_path, out_path);
    if (*predict) return cmd_predict(model_path, data_path, out_path);
    if (*bias) return cmd_bias_check(config_path, out_path);
    if (*bif) return cmd_bif_check(config_path, out_path);
    if (*sim) return cmd_simulate(config_path, out_dir);
    if (*kinfo) return cmd_kernel_info(config_path);
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
