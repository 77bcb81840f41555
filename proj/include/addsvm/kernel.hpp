#pragma once

#include <Eigen/Dense>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace addsvm {

// Inclusive coordinate range [lo, hi] of a composite-kernel block.
struct CoordRange {
  int lo = 0;
  int hi = 0;
  int size() const { return hi - lo + 1; }
};

// Per-coordinate box [lo_i, hi_i], used to certify sup-norm bounds for
// kernels that are unbounded on all of R^d.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

// Certified upper bound on sup_x sqrt(k(x,x)). `sup_norm` is +inf when the
// kernel is unbounded and no box was supplied.
struct BoundCertificate {
  double sup_norm = std::numeric_limits<double>::infinity();
  std::optional<Box> domain_box;
  bool finite() const { return std::isfinite(sup_norm); }
};

struct KernelBlock;

// Immutable, declarative kernel description.
//
// Convention: the Gaussian kernel is exp(-gamma^{-2} * ||x-x'||^2). Note the
// *inverse squared* bandwidth; many libraries use exp(-gamma*||x-x'||^2)
// instead, so gamma values are not interchangeable.
class KernelSpec {
 public:
  enum class Kind { Gaussian, Polynomial, Dot, Sum, Product };

  static KernelSpec gaussian(double gamma, int input_dim);
  static KernelSpec polynomial(int degree, double offset, int input_dim);
  static KernelSpec dot(int input_dim);
  // Blocks must have pairwise-disjoint ranges covering {0,...,d-1}.
  static KernelSpec sum(std::vector<KernelBlock> blocks);
  static KernelSpec product(std::vector<KernelBlock> blocks);

  Kind kind() const;
  int input_dim() const;
  double gamma() const;    // Gaussian only
  int degree() const;      // Polynomial only
  double offset() const;   // Polynomial only
  const std::vector<KernelBlock>& blocks() const;  // Sum/Product only

  bool operator==(const KernelSpec& other) const;

 private:
  struct Node;
  explicit KernelSpec(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// One coordinate block of a Sum/Product kernel.
struct KernelBlock {
  CoordRange range;
  KernelSpec kernel;
};

double eval(const KernelSpec& k, const Eigen::VectorXd& x,
            const Eigen::VectorXd& xp);

// Gram matrix G[i][j] = k(X[i], X[j]); upper triangle computed, lower
// mirrored, so the result is exactly symmetric.
Eigen::MatrixXd gram(const KernelSpec& k,
                     const std::vector<Eigen::VectorXd>& points);

BoundCertificate sup_norm_bound(const KernelSpec& k,
                                const std::optional<Box>& box = std::nullopt);

}  // namespace addsvm
