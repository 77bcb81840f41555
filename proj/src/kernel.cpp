#include "addsvm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace addsvm {

struct KernelSpec::Node {
  Kind kind;
  int input_dim = 0;
  double gamma = 0.0;
  int degree = 0;
  double offset = 0.0;
  std::vector<KernelBlock> blocks;
};

KernelSpec KernelSpec::gaussian(double gamma, int input_dim) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("gaussian kernel: gamma must be > 0");
  if (input_dim < 1)
    throw std::invalid_argument("gaussian kernel: input_dim must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gaussian;
  n->input_dim = input_dim;
  n->gamma = gamma;
  return KernelSpec(std::move(n));
}

KernelSpec KernelSpec::polynomial(int degree, double offset, int input_dim) {
  // Integer degree >= 1 only: non-integer exponents do not give a PSD kernel.
  if (degree < 1)
    throw std::invalid_argument("polynomial kernel: degree must be >= 1");
  if (offset < 0.0)
    throw std::invalid_argument("polynomial kernel: offset must be >= 0");
  if (input_dim < 1)
    throw std::invalid_argument("polynomial kernel: input_dim must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Polynomial;
  n->input_dim = input_dim;
  n->degree = degree;
  n->offset = offset;
  return KernelSpec(std::move(n));
}

KernelSpec KernelSpec::dot(int input_dim) {
  if (input_dim < 1)
    throw std::invalid_argument("dot kernel: input_dim must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Dot;
  n->input_dim = input_dim;
  return KernelSpec(std::move(n));
}

namespace {

int validate_blocks(const std::vector<KernelBlock>& blocks,
                    const char* what) {
  if (blocks.empty())
    throw std::invalid_argument(std::string(what) + ": needs >= 1 block");
  int max_hi = -1;
  for (const auto& b : blocks) {
    if (b.range.lo < 0 || b.range.hi < b.range.lo)
      throw std::invalid_argument(std::string(what) + ": bad coordinate range");
    if (b.kernel.input_dim() != b.range.size())
      throw std::invalid_argument(std::string(what) +
                                  ": block kernel dim does not match range");
    max_hi = std::max(max_hi, b.range.hi);
  }
  int dim = max_hi + 1;
  std::vector<int> covered(dim, 0);
  for (const auto& b : blocks)
    for (int i = b.range.lo; i <= b.range.hi; ++i) ++covered[i];
  for (int i = 0; i < dim; ++i) {
    if (covered[i] == 0)
      throw std::invalid_argument(std::string(what) +
                                  ": ranges do not cover all coordinates");
    if (covered[i] > 1)
      throw std::invalid_argument(std::string(what) + ": overlapping ranges");
  }
  return dim;
}

}  // namespace

KernelSpec KernelSpec::sum(std::vector<KernelBlock> blocks) {
  int dim = validate_blocks(blocks, "sum kernel");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->input_dim = dim;
  n->blocks = std::move(blocks);
  return KernelSpec(std::move(n));
}

KernelSpec KernelSpec::product(std::vector<KernelBlock> blocks) {
  int dim = validate_blocks(blocks, "product kernel");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->input_dim = dim;
  n->blocks = std::move(blocks);
  return KernelSpec(std::move(n));
}

KernelSpec::Kind KernelSpec::kind() const { return node_->kind; }
int KernelSpec::input_dim() const { return node_->input_dim; }
double KernelSpec::gamma() const { return node_->gamma; }
int KernelSpec::degree() const { return node_->degree; }
double KernelSpec::offset() const { return node_->offset; }
const std::vector<KernelBlock>& KernelSpec::blocks() const {
  return node_->blocks;
}

bool KernelSpec::operator==(const KernelSpec& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind ||
      node_->input_dim != other.node_->input_dim)
    return false;
  switch (node_->kind) {
    case Kind::Gaussian:
      return node_->gamma == other.node_->gamma;
    case Kind::Polynomial:
      return node_->degree == other.node_->degree &&
             node_->offset == other.node_->offset;
    case Kind::Dot:
      return true;
    case Kind::Sum:
    case Kind::Product: {
      const auto& a = node_->blocks;
      const auto& b = other.node_->blocks;
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].range.lo != b[i].range.lo || a[i].range.hi != b[i].range.hi ||
            !(a[i].kernel == b[i].kernel))
          return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

double eval_impl(const KernelSpec& k, const double* x, const double* xp) {
  switch (k.kind()) {
    case KernelSpec::Kind::Gaussian: {
      double s = 0.0;
      for (int i = 0; i < k.input_dim(); ++i) {
        double d = x[i] - xp[i];
        s += d * d;
      }
      double g = k.gamma();
      return std::exp(-s / (g * g));
    }
    case KernelSpec::Kind::Polynomial: {
      double s = k.offset();
      for (int i = 0; i < k.input_dim(); ++i) s += x[i] * xp[i];
      double r = 1.0;
      for (int j = 0; j < k.degree(); ++j) r *= s;
      return r;
    }
    case KernelSpec::Kind::Dot: {
      double s = 0.0;
      for (int i = 0; i < k.input_dim(); ++i) s += x[i] * xp[i];
      return s;
    }
    case KernelSpec::Kind::Sum: {
      double s = 0.0;
      for (const auto& b : k.blocks())
        s += eval_impl(b.kernel, x + b.range.lo, xp + b.range.lo);
      return s;
    }
    case KernelSpec::Kind::Product: {
      double s = 1.0;
      for (const auto& b : k.blocks())
        s *= eval_impl(b.kernel, x + b.range.lo, xp + b.range.lo);
      return s;
    }
  }
  return 0.0;
}

}  // namespace

double eval(const KernelSpec& k, const Eigen::VectorXd& x,
            const Eigen::VectorXd& xp) {
  if (x.size() != k.input_dim() || xp.size() != k.input_dim())
    throw std::invalid_argument("kernel eval: dimension mismatch");
  return eval_impl(k, x.data(), xp.data());
}

Eigen::MatrixXd gram(const KernelSpec& k,
                     const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) throw std::invalid_argument("gram: empty point list");
  const auto n = static_cast<Eigen::Index>(points.size());
  for (const auto& p : points)
    if (p.size() != k.input_dim())
      throw std::invalid_argument("gram: dimension mismatch");
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      double v = eval_impl(k, points[i].data(), points[j].data());
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

namespace {

std::optional<Box> slice_box(const std::optional<Box>& box,
                             const CoordRange& r) {
  if (!box) return std::nullopt;
  Box sub;
  sub.lo = box->lo.segment(r.lo, r.size());
  sub.hi = box->hi.segment(r.lo, r.size());
  return sub;
}

// max_{x in box} ||x||^2; attained coordinate-wise at a corner.
double max_sq_norm(const Box& box) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < box.lo.size(); ++i)
    s += std::max(box.lo[i] * box.lo[i], box.hi[i] * box.hi[i]);
  return s;
}

}  // namespace

BoundCertificate sup_norm_bound(const KernelSpec& k,
                                const std::optional<Box>& box) {
  if (box && (box->lo.size() != k.input_dim() ||
              box->hi.size() != k.input_dim()))
    throw std::invalid_argument("sup_norm_bound: box dimension mismatch");
  BoundCertificate cert;
  cert.domain_box = box;
  switch (k.kind()) {
    case KernelSpec::Kind::Gaussian:
      cert.sup_norm = 1.0;  // k(x,x) = exp(0) = 1
      return cert;
    case KernelSpec::Kind::Polynomial:
      if (box)
        cert.sup_norm = std::sqrt(
            std::pow(max_sq_norm(*box) + k.offset(), double(k.degree())));
      return cert;
    case KernelSpec::Kind::Dot:
      if (box) cert.sup_norm = std::sqrt(max_sq_norm(*box));
      return cert;
    case KernelSpec::Kind::Sum: {
      // k(x,x) = sum_j k_j(x_j,x_j), so sqrt(sum of squared block bounds).
      double s = 0.0;
      for (const auto& b : k.blocks()) {
        auto sub = sup_norm_bound(b.kernel, slice_box(box, b.range));
        if (!sub.finite()) return cert;
        s += sub.sup_norm * sub.sup_norm;
      }
      cert.sup_norm = std::sqrt(s);
      return cert;
    }
    case KernelSpec::Kind::Product: {
      double p = 1.0;
      for (const auto& b : k.blocks()) {
        auto sub = sup_norm_bound(b.kernel, slice_box(box, b.range));
        if (!sub.finite()) return cert;
        p *= sub.sup_norm;
      }
      cert.sup_norm = p;
      return cert;
    }
  }
  return cert;
}

}  // namespace addsvm
