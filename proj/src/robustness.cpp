#include "addsvm/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "addsvm/rng.hpp"

namespace addsvm {

namespace {

// Exact-equality ordering on vectors; matches DiscreteMeasure's atom
// matching so union supports line up with measure supports.
struct VecLess {
  bool operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return false;
  }
};

// Accumulates coefficients over a union support, preserving first-appearance
// order of the points.
class UnionBuilder {
 public:
  void add(const Eigen::VectorXd& x, double c) {
    auto [it, inserted] = index_.try_emplace(x, points_.size());
    if (inserted) {
      points_.push_back(x);
      coeffs_.push_back(0.0);
    }
    coeffs_[it->second] += c;
  }

  HElement finish(KernelSpec kernel) && {
    HElement h{std::move(points_), Eigen::Map<const Eigen::VectorXd>(
                                       coeffs_.data(),
                                       static_cast<Eigen::Index>(coeffs_.size())),
               std::move(kernel)};
    return h;
  }

 private:
  std::map<Eigen::VectorXd, std::size_t, VecLess> index_;
  std::vector<Eigen::VectorXd> points_;
  std::vector<double> coeffs_;
};

double kernel_sup_norm(const KernelSpec& k) {
  BoundCertificate cert = sup_norm_bound(k);
  if (!cert.finite())
    throw std::invalid_argument(
        "bias bound needs a bounded kernel (no finite sup-norm certificate)");
  return cert.sup_norm;
}

}  // namespace

double HElement::eval(const Eigen::VectorXd& x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    s += coeffs[static_cast<Eigen::Index>(i)] * addsvm::eval(kernel, x, points[i]);
  return s;
}

double HElement::norm() const {
  if (points.empty()) return 0.0;
  Eigen::MatrixXd G = gram(kernel, points);
  double sq = coeffs.dot(G * coeffs);
  return std::sqrt(std::max(0.0, sq));
}

HElement h_subtract(const HElement& a, const HElement& b) {
  if (!(a.kernel == b.kernel))
    throw std::invalid_argument("h_subtract: elements use different kernels");
  UnionBuilder ub;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    ub.add(a.points[i], a.coeffs[static_cast<Eigen::Index>(i)]);
  for (std::size_t i = 0; i < b.points.size(); ++i)
    ub.add(b.points[i], -b.coeffs[static_cast<Eigen::Index>(i)]);
  return std::move(ub).finish(a.kernel);
}

HElement h_difference(const SvmModel& a, const SvmModel& b, double scale) {
  if (!(a.kernel() == b.kernel()))
    throw std::invalid_argument("h_difference: models use different kernels");
  UnionBuilder ub;
  for (std::size_t i = 0; i < a.support().size(); ++i)
    ub.add(a.support()[i], scale * a.alpha()[static_cast<Eigen::Index>(i)]);
  for (std::size_t i = 0; i < b.support().size(); ++i)
    ub.add(b.support()[i], -scale * b.alpha()[static_cast<Eigen::Index>(i)]);
  return std::move(ub).finish(a.kernel());
}

double sup_norm_estimate(const HElement& h, double lo, double hi, int n_probe) {
  double best = 0.0;
  for (const auto& p : h.points) best = std::max(best, std::abs(h.eval(p)));
  if (h.points.empty()) return best;
  const int d = static_cast<int>(h.points.front().size());
  // Fixed probe seed: estimates must be reproducible run to run.
  Rng rng(Rng::derive(0x5059a0b3ULL, static_cast<std::uint64_t>(n_probe)));
  Eigen::VectorXd x(d);
  for (int i = 0; i < n_probe; ++i) {
    for (int j = 0; j < d; ++j) x[j] = rng.uniform(lo, hi);
    best = std::max(best, std::abs(h.eval(x)));
  }
  return best;
}

bool BiasCurve::all_pass() const {
  for (const auto& r : rows)
    if (r.converged && !r.pass) return false;
  return true;
}

BiasCurve bias_check(const KernelSpec& k, const LossSpec& L, double lambda,
                     const DiscreteMeasure& P, const DiscreteMeasure& Q,
                     const std::vector<double>& eps_grid, double probe_lo,
                     double probe_hi) {
  if (lambda <= 0.0) throw std::invalid_argument("bias_check: lambda must be > 0");
  const double knorm = kernel_sup_norm(k);
  const double c_h = knorm * L.lipschitz() / lambda;
  const double c_sup = knorm * c_h;
  const double tv = tv_norm_diff(P, Q);

  auto [model_P, rep_P] = train(k, L, P, lambda);
  if (!rep_P.converged)
    throw std::runtime_error("bias_check: training on P did not converge");

  BiasCurve curve;
  for (double eps : eps_grid) {
    BiasRow row;
    row.eps = eps;
    row.bound_h = eps * c_h * tv;
    row.bound_sup = eps * c_sup * tv;
    auto [model_mix, rep_mix] = train(k, L, DiscreteMeasure::mix(P, Q, eps),
                                      lambda);
    row.converged = rep_mix.converged;
    if (row.converged) {
      HElement diff = h_difference(model_mix, model_P);
      row.h_norm_diff = diff.norm();
      row.sup_norm_estimate = addsvm::sup_norm_estimate(diff, probe_lo, probe_hi);
      row.pass = row.h_norm_diff <= row.bound_h + 1e-6 * (1.0 + row.bound_h) &&
                 row.sup_norm_estimate <=
                     row.bound_sup + 1e-6 * (1.0 + row.bound_sup);
    }
    curve.rows.push_back(row);
  }
  return curve;
}

TwoMeasureBias two_measure_bias_check(const KernelSpec& k, const LossSpec& L,
                                      double lambda, const DiscreteMeasure& P,
                                      const DiscreteMeasure& Q) {
  if (lambda <= 0.0)
    throw std::invalid_argument("two_measure_bias_check: lambda must be > 0");
  const double knorm = kernel_sup_norm(k);
  TwoMeasureBias out;
  out.bound = knorm * L.lipschitz() / lambda * tv_norm_diff(P, Q);
  auto [model_P, rep_P] = train(k, L, P, lambda);
  auto [model_Q, rep_Q] = train(k, L, Q, lambda);
  if (!rep_P.converged || !rep_Q.converged)
    throw std::runtime_error("two_measure_bias_check: training did not converge");
  out.h_norm_diff = h_difference(model_Q, model_P).norm();
  out.pass = out.h_norm_diff <= out.bound + 1e-6 * (1.0 + out.bound);
  return out;
}

BifResult bif_pinball_closed(const DiscreteMeasure& P, const DiscreteMeasure& Q,
                             const SvmModel& model_P, double tau,
                             double lambda) {
  if (model_P.loss().kind() != LossSpec::Kind::Pinball)
    throw std::invalid_argument("bif_pinball_closed: model loss is not pinball");
  if (P.input_dim() != model_P.kernel().input_dim() ||
      Q.input_dim() != model_P.kernel().input_dim())
    throw std::invalid_argument(
        "bif_pinball_closed: measure/model dimension mismatch");

  const double pref = 1.0 / (2.0 * lambda);
  std::vector<Eigen::VectorXd> flagged;
  UnionBuilder ub;
  auto add_measure = [&](const DiscreteMeasure& M, double sign) {
    for (const auto& g : M.x_groups()) {
      const double f = model_P.predict(g.x);
      for (int idx : g.atom_idx) {
        if (std::abs(f - M.atoms()[static_cast<std::size_t>(idx)].y) <= 1e-9) {
          flagged.push_back(g.x);
          break;
        }
      }
      ub.add(g.x, sign * pref * g.wx * (M.cond_cdf(g.x, f) - tau));
    }
  };
  add_measure(P, 1.0);
  add_measure(Q, -1.0);
  return BifResult{std::move(ub).finish(model_P.kernel()), std::move(flagged)};
}

HElement bif_finite_diff(const KernelSpec& k, const LossSpec& L, double lambda,
                         const DiscreteMeasure& P, const DiscreteMeasure& Q,
                         double eps, const SolverOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("bif_finite_diff: eps must lie in (0,1)");
  auto [model_P, rep_P] = train(k, L, P, lambda, opts);
  auto [model_mix, rep_mix] =
      train(k, L, DiscreteMeasure::mix(P, Q, eps), lambda, opts);
  if (!rep_P.converged || !rep_mix.converged)
    throw std::runtime_error("bif_finite_diff: training did not converge");
  return h_difference(model_mix, model_P, 1.0 / eps);
}

}  // namespace addsvm
