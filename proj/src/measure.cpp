#include "addsvm/measure.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace addsvm {

namespace {

// Lexicographic key over (x, y) for exact-equality dedup.
struct AtomKey {
  const double* x;
  int dim;
  double y;
  bool operator<(const AtomKey& o) const {
    for (int i = 0; i < dim; ++i) {
      if (x[i] < o.x[i]) return true;
      if (x[i] > o.x[i]) return false;
    }
    return y < o.y;
  }
};

struct XKey {
  const double* x;
  int dim;
  bool operator<(const XKey& o) const {
    for (int i = 0; i < dim; ++i) {
      if (x[i] < o.x[i]) return true;
      if (x[i] > o.x[i]) return false;
    }
    return false;
  }
};

}  // namespace

DiscreteMeasure DiscreteMeasure::from_atoms(std::vector<Atom> raw) {
  if (raw.empty())
    throw std::invalid_argument("measure: needs at least one atom");
  const int dim = static_cast<int>(raw.front().x.size());
  double total = 0.0;
  for (const auto& a : raw) {
    if (a.x.size() != dim)
      throw std::invalid_argument("measure: inconsistent input_dim");
    if (a.w < 0.0) throw std::invalid_argument("measure: negative weight");
    total += a.w;
  }
  if (!(total > 0.0))
    throw std::invalid_argument("measure: weights must not all be zero");

  DiscreteMeasure m;
  m.dim_ = dim;
  std::map<AtomKey, int> index;
  for (auto& a : raw) {
    if (a.w == 0.0) continue;
    AtomKey key{a.x.data(), dim, a.y};
    auto it = index.find(key);
    if (it == index.end()) {
      int pos = static_cast<int>(m.atoms_.size());
      m.atoms_.push_back(Atom{std::move(a.x), a.y, a.w / total});
      index.emplace(AtomKey{m.atoms_.back().x.data(), dim, a.y}, pos);
    } else {
      m.atoms_[it->second].w += a.w / total;
    }
  }
  if (m.atoms_.empty())
    throw std::invalid_argument("measure: weights must not all be zero");
  return m;
}

DiscreteMeasure DiscreteMeasure::from_points(
    const std::vector<std::pair<Eigen::VectorXd, double>>& points,
    const std::vector<double>* weights) {
  if (points.empty())
    throw std::invalid_argument("measure: empty point list");
  if (weights && weights->size() != points.size())
    throw std::invalid_argument("measure: weight count mismatch");
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    atoms.push_back(
        Atom{points[i].first, points[i].second, weights ? (*weights)[i] : 1.0});
  return from_atoms(std::move(atoms));
}

DiscreteMeasure DiscreteMeasure::mix(const DiscreteMeasure& p,
                                     const DiscreteMeasure& q, double eps) {
  if (p.dim_ != q.dim_)
    throw std::invalid_argument("mix: input_dim mismatch");
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("mix: eps must be in [0,1]");
  std::vector<Atom> atoms;
  atoms.reserve(p.size() + q.size());
  for (const auto& a : p.atoms_) atoms.push_back(Atom{a.x, a.y, (1.0 - eps) * a.w});
  for (const auto& a : q.atoms_) atoms.push_back(Atom{a.x, a.y, eps * a.w});
  return from_atoms(std::move(atoms));
}

double tv_norm_diff(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  if (p.input_dim() != q.input_dim())
    throw std::invalid_argument("tv_norm_diff: input_dim mismatch");
  const int dim = p.input_dim();
  std::map<AtomKey, double> diff;
  for (const auto& a : p.atoms()) diff[AtomKey{a.x.data(), dim, a.y}] += a.w;
  for (const auto& a : q.atoms()) diff[AtomKey{a.x.data(), dim, a.y}] -= a.w;
  double s = 0.0;
  for (const auto& [k, v] : diff) s += std::abs(v);
  return s;
}

double DiscreteMeasure::cond_cdf(const Eigen::VectorXd& x, double t) const {
  if (x.size() != dim_)
    throw std::invalid_argument("cond_cdf: dimension mismatch");
  double wx = 0.0, wle = 0.0;
  for (const auto& a : atoms_) {
    if (a.x == x) {
      wx += a.w;
      if (a.y <= t) wle += a.w;
    }
  }
  if (wx == 0.0)
    throw std::invalid_argument("cond_cdf: x not in the support of P_X");
  return wle / wx;
}

std::vector<DiscreteMeasure::XGroup> DiscreteMeasure::x_groups() const {
  std::vector<XGroup> groups;
  std::map<XKey, int> index;
  for (int i = 0; i < static_cast<int>(atoms_.size()); ++i) {
    XKey key{atoms_[i].x.data(), dim_};
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, static_cast<int>(groups.size()));
      groups.push_back(XGroup{atoms_[i].x, atoms_[i].w, {i}});
    } else {
      groups[it->second].wx += atoms_[i].w;
      groups[it->second].atom_idx.push_back(i);
    }
  }
  return groups;
}

}  // namespace addsvm
