#include "addsvm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace addsvm {

namespace {

// Flattened view of the training measure: one Gram row per distinct x-atom,
// one loss term per atom. Atoms sharing x share an expansion coefficient but
// contribute separate loss terms.
struct Problem {
  Eigen::MatrixXd gram;           // R x R over distinct x-atoms
  std::vector<Eigen::VectorXd> support;
  std::vector<int> row;           // atom -> gram row
  std::vector<double> y, w;       // per atom
};

Problem build_problem(const KernelSpec& k, const DiscreteMeasure& P) {
  if (k.input_dim() != P.input_dim())
    throw std::invalid_argument("train: kernel input_dim does not match data");
  Problem pb;
  auto groups = P.x_groups();
  pb.support.reserve(groups.size());
  pb.row.resize(P.size());
  pb.y.resize(P.size());
  pb.w.resize(P.size());
  const auto& atoms = P.atoms();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    pb.support.push_back(groups[g].x);
    for (int idx : groups[g].atom_idx) {
      pb.row[idx] = static_cast<int>(g);
      pb.y[idx] = atoms[idx].y;
      pb.w[idx] = atoms[idx].w;
    }
  }
  pb.gram = gram(k, pb.support);
  if (!pb.gram.allFinite())
    throw std::runtime_error("train: non-finite Gram entries");
  return pb;
}

double loss_sum(const Problem& pb, const LossSpec& L,
                const Eigen::VectorXd& t, bool shifted) {
  double s = 0.0;
  for (std::size_t m = 0; m < pb.y.size(); ++m) {
    double v = L.eval(pb.y[m], t[pb.row[m]]);
    if (shifted) v -= L.eval(pb.y[m], 0.0);
    s += pb.w[m] * v;
  }
  return s;
}

// Diagonal entries at or below this are treated as zero feature vectors
// (k(x,x)=0 forces the whole Gram column to zero by PSD-ness); their
// expansion coefficients are pinned to 0.
constexpr double kPinnedDiag = 1e-15;

// Fenchel-dual representation of the losses. Each loss is written as
//   L(y,t) = sup_{u in [lo,hi]} u*(c0 - s*t) - phi(u)
// with s^2 = 1, so the regularized primal has the concave box-constrained
// quadratic dual
//   D(u) = sum_m w_m (u_m c0_m - phi(u_m)) - lambda ||f_u||_H^2,
//   f_u  = (1/2lambda) sum_m w_m u_m s_m Phi(x_m),
// which cyclic coordinate ascent maximizes globally with exact per-coordinate
// updates. (Primal coordinate descent is *not* exact here: the loss kinks
// couple coordinates through the Gram matrix and cyclic descent can stall at
// a coordinate-wise-optimal, globally suboptimal kink vertex.)
//
//   pinball(tau):       u in [tau-1, tau],  c0 = y, s = 1, phi = 0
//   eps-insensitive(e): u in [-1, 1],       c0 = y, s = 1, phi = e|u|
//   hinge:              u in [0, 1],        c0 = 1, s = y, phi = 0
// At the optimum  -u_m s_m  is a subgradient of t -> L(y_m, t) at t_m.
struct DualForm {
  double lo, hi;   // box
  double c0, s;    // linear part
  double abs_pen;  // phi(u) = abs_pen * |u|
};

DualForm dual_form(const LossSpec& L, double y) {
  switch (L.kind()) {
    case LossSpec::Kind::Pinball:
      return {L.tau() - 1.0, L.tau(), y, 1.0, 0.0};
    case LossSpec::Kind::EpsInsensitive:
      return {-1.0, 1.0, y, 1.0, L.eps()};
    case LossSpec::Kind::Hinge:
      return {0.0, 1.0, 1.0, y, 0.0};
  }
  return {0.0, 0.0, 0.0, 1.0, 0.0};
}

// argmax over the box of u*c0 - abs_pen*|u| (zero-curvature coordinate).
double linear_argmax(const DualForm& d) {
  double best_u = 0.0, best_v = -1e300;
  for (double u : {d.lo, 0.0, d.hi}) {
    if (u < d.lo || u > d.hi) continue;
    double v = u * d.c0 - d.abs_pen * std::abs(u);
    if (v > best_v) {
      best_v = v;
      best_u = u;
    }
  }
  return best_u;
}

// The loss module decides kink membership by exact comparison; the optimality
// certificate widens it: a fitted value within kink_tol*(1+|t|) of a kink
// gets the full kink interval. Without the widening no numerical optimum
// could certify, since fitted values approach kinks without landing on them.
double kkt_residual_impl(const Problem& pb, const LossSpec& L, double lambda,
                         const Eigen::VectorXd& alpha, double kink_tol) {
  const auto R = static_cast<Eigen::Index>(pb.support.size());
  Eigen::VectorXd t = pb.gram * alpha;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < R; ++i) {
    if (pb.gram(i, i) <= kPinnedDiag) continue;
    double lo = 2.0 * lambda * t[i], hi = lo;
    const auto* col = pb.gram.col(i).data();
    for (std::size_t m = 0; m < pb.y.size(); ++m) {
      double c = col[pb.row[m]];
      if (c == 0.0) continue;
      double tm = t[pb.row[m]];
      double pad = kink_tol * (1.0 + std::abs(tm));
      LossSpec::Interval g{L.subgrad(pb.y[m], tm - pad).lo,
                           L.subgrad(pb.y[m], tm + pad).hi};
      if (c > 0.0) {
        lo += pb.w[m] * g.lo * c;
        hi += pb.w[m] * g.hi * c;
      } else {
        lo += pb.w[m] * g.hi * c;
        hi += pb.w[m] * g.lo * c;
      }
    }
    worst = std::max(worst, std::max(0.0, std::max(lo, -hi)));
  }
  return worst;
}

}  // namespace

SvmModel::SvmModel(std::vector<Eigen::VectorXd> support, Eigen::VectorXd alpha,
                   KernelSpec kernel, LossSpec loss, double lambda)
    : support_(std::move(support)),
      alpha_(std::move(alpha)),
      kernel_(std::move(kernel)),
      loss_(loss),
      lambda_(lambda) {
  if (alpha_.size() != static_cast<Eigen::Index>(support_.size()))
    throw std::invalid_argument("SvmModel: alpha/support size mismatch");
  if (!(lambda_ > 0.0))
    throw std::invalid_argument("SvmModel: lambda must be > 0");
  gram_ = addsvm::gram(kernel_, support_);
}

double SvmModel::predict(const Eigen::VectorXd& x) const {
  if (x.size() != kernel_.input_dim())
    throw std::invalid_argument("predict: dimension mismatch");
  if (kernel_.kind() == KernelSpec::Kind::Sum) {
    // Components-first summation, so that additive_components always
    // recombine to predict exactly.
    auto comps = additive_components(x);
    double s = 0.0;
    for (double c : comps) s += c;
    return s;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i)
    s += alpha_[static_cast<Eigen::Index>(i)] * eval(kernel_, x, support_[i]);
  return s;
}

std::vector<double> SvmModel::additive_components(
    const Eigen::VectorXd& x) const {
  if (kernel_.kind() != KernelSpec::Kind::Sum)
    throw std::invalid_argument("additive_components: kernel is not a Sum");
  if (x.size() != kernel_.input_dim())
    throw std::invalid_argument("additive_components: dimension mismatch");
  std::vector<double> out;
  out.reserve(kernel_.blocks().size());
  for (const auto& b : kernel_.blocks()) {
    Eigen::VectorXd xb = x.segment(b.range.lo, b.range.size());
    double s = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
      Eigen::VectorXd sb = support_[i].segment(b.range.lo, b.range.size());
      s += alpha_[static_cast<Eigen::Index>(i)] * eval(b.kernel, xb, sb);
    }
    out.push_back(s);
  }
  return out;
}

double SvmModel::rkhs_norm() const {
  double sq = alpha_.dot(gram_ * alpha_);
  return std::sqrt(std::max(0.0, sq));
}

std::pair<SvmModel, TrainReport> train_from(const KernelSpec& k,
                                            const LossSpec& L,
                                            const DiscreteMeasure& P,
                                            double lambda,
                                            const Eigen::VectorXd& alpha0,
                                            const SolverOptions& opts) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("train: lambda must be > 0");
  Problem pb = build_problem(k, P);
  const auto R = static_cast<Eigen::Index>(pb.support.size());
  const std::size_t M = pb.y.size();
  if (alpha0.size() != R)
    throw std::invalid_argument("train: alpha0 size mismatch");

  std::vector<DualForm> df(M);
  for (std::size_t m = 0; m < M; ++m) df[m] = dual_form(L, pb.y[m]);

  // Dual variables. A nonzero alpha0 only biases the warm start (u seeded
  // from subgradients at the starting predictions); the dual optimum, and
  // with it the returned f, does not depend on the start.
  Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(M));
  if (!alpha0.isZero(0.0)) {
    Eigen::VectorXd t0 = pb.gram * alpha0;
    for (std::size_t m = 0; m < M; ++m) {
      auto g = L.subgrad(pb.y[m], t0[pb.row[m]]);
      double sel = 0.5 * (g.lo + g.hi);
      u[static_cast<Eigen::Index>(m)] =
          std::clamp(-sel * df[m].s, df[m].lo, df[m].hi);
    }
  }

  auto row_alpha = [&](const Eigen::VectorXd& uu) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(R);
    for (std::size_t m = 0; m < M; ++m)
      a[pb.row[m]] += pb.w[m] * uu[static_cast<Eigen::Index>(m)] * df[m].s;
    return Eigen::VectorXd((a / (2.0 * lambda)).eval());
  };
  Eigen::VectorXd alpha = row_alpha(u);
  // Fitted values at the support rows; kept incrementally within a sweep,
  // refreshed from scratch at each gap test.
  Eigen::VectorXd t = pb.gram * alpha;

  const double inv2l = 1.0 / (2.0 * lambda);
  double unshifted_const = 0.0;
  for (std::size_t m = 0; m < M; ++m)
    unshifted_const += pb.w[m] * L.eval(pb.y[m], 0.0);

  TrainReport rep;
  bool gap_ok = false;
  double primal = 0.0;
  double cur_tol = opts.tol;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    for (std::size_t m = 0; m < M; ++m) {
      const auto mi = static_cast<Eigen::Index>(m);
      const int r = pb.row[m];
      const double krr = pb.gram(r, r);
      const DualForm& d = df[m];
      double u_new;
      if (krr <= kPinnedDiag) {
        u_new = linear_argmax(d);
      } else {
        const double h = pb.w[m] * krr * inv2l;  // d t_r / d u_m
        const double a = d.c0 - d.s * t[r] + h * u[mi];
        if (d.abs_pen == 0.0) {
          u_new = std::clamp(a / h, d.lo, d.hi);
        } else {
          double up = (a - d.abs_pen) / h;
          double un = (a + d.abs_pen) / h;
          u_new = up > 0.0 ? up : (un < 0.0 ? un : 0.0);
          u_new = std::clamp(u_new, d.lo, d.hi);
        }
      }
      double delta = u_new - u[mi];
      if (delta != 0.0) {
        u[mi] = u_new;
        if (krr > kPinnedDiag)
          t.noalias() += (pb.w[m] * d.s * delta * inv2l) * pb.gram.col(r);
      }
    }
    ++rep.sweeps;

    alpha = row_alpha(u);
    t.noalias() = pb.gram * alpha;
    double reg = lambda * alpha.dot(t);
    primal = loss_sum(pb, L, t, /*shifted=*/false) + reg;
    double dual = -reg;
    for (std::size_t m = 0; m < M; ++m) {
      double um = u[static_cast<Eigen::Index>(m)];
      dual += pb.w[m] * (um * df[m].c0 - df[m].abs_pen * std::abs(um));
    }
    double gap = primal - dual;
    if (gap <= cur_tol * std::max(1.0, std::abs(primal))) {
      // Gap is small; accept only if the KKT certificate also passes,
      // otherwise keep sweeping against a tighter gap target.
      if (kkt_residual_impl(pb, L, lambda, alpha, opts.kink_tol) <=
          opts.kkt_tol) {
        gap_ok = true;
        break;
      }
      cur_tol *= 0.1;
      if (cur_tol < 1e-15) {
        gap_ok = true;
        break;
      }
    }
  }

  for (Eigen::Index r = 0; r < R; ++r)
    if (pb.gram(r, r) <= kPinnedDiag) alpha[r] = 0.0;

  double shifted_obj = primal - unshifted_const;
  rep.final_objective = opts.shifted ? shifted_obj : primal;
  rep.kkt_residual = kkt_residual_impl(pb, L, lambda, alpha, opts.kink_tol);
  rep.converged = gap_ok && rep.kkt_residual <= opts.kkt_tol;

  SvmModel model(std::move(pb.support), std::move(alpha), k, L, lambda);
  model.set_objective(shifted_obj);
  return {std::move(model), rep};
}

std::pair<SvmModel, TrainReport> train(const KernelSpec& k, const LossSpec& L,
                                       const DiscreteMeasure& P, double lambda,
                                       const SolverOptions& opts) {
  auto groups = P.x_groups();
  Eigen::VectorXd zero =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(groups.size()));
  return train_from(k, L, P, lambda, zero, opts);
}

double kkt_residual(const SvmModel& m, const DiscreteMeasure& P,
                    double kink_tol) {
  Problem pb = build_problem(m.kernel(), P);
  if (pb.support.size() != m.support().size())
    throw std::invalid_argument("kkt_residual: model/measure support mismatch");
  return kkt_residual_impl(pb, m.loss(), m.lambda(), m.alpha(), kink_tol);
}

double objective_value(const KernelSpec& k, const LossSpec& L,
                       const DiscreteMeasure& P, double lambda,
                       const Eigen::VectorXd& alpha, bool shifted) {
  Problem pb = build_problem(k, P);
  if (alpha.size() != static_cast<Eigen::Index>(pb.support.size()))
    throw std::invalid_argument("objective_value: alpha size mismatch");
  Eigen::VectorXd t = pb.gram * alpha;
  return loss_sum(pb, L, t, shifted) + lambda * alpha.dot(t);
}

}  // namespace addsvm
