#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "addsvm/rng.hpp"
#include "addsvm/svm.hpp"
#include "support/instances.hpp"
#include "support/oracle.hpp"

using namespace addsvm;

namespace {

Eigen::VectorXd vec1(double v) { return Eigen::VectorXd::Constant(1, v); }

DiscreteMeasure single_atom(double x, double y) {
  return DiscreteMeasure::from_points({{vec1(x), y}});
}

}  // namespace

TEST_CASE("single-atom pinball closed form") {
  // With k(x,x)=1 the problem is min over t of L*(y,t) + lambda t^2, whose
  // minimizer for y > 0 is t* = min(y, tau/(2 lambda)).
  KernelSpec k = KernelSpec::gaussian(1.0, 1);
  struct Case { double tau, lambda, y; };
  for (const Case& c : {Case{0.5, 0.1, 1.0}, Case{0.5, 2.0, 1.0},
                        Case{0.25, 0.5, 2.0}}) {
    auto [m, rep] = train(k, LossSpec::pinball(c.tau), single_atom(0.3, c.y),
                          c.lambda);
    double expect = std::min(c.y, c.tau / (2.0 * c.lambda));
    CHECK(m.predict(vec1(0.3)) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(rep.converged);
  }
  // The two worked examples.
  CHECK(train(k, LossSpec::pinball(0.5), single_atom(0, 1), 0.1)
            .first.predict(vec1(0)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(train(k, LossSpec::pinball(0.5), single_atom(0, 1), 2.0)
            .first.predict(vec1(0)) == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("objective matches independent oracle on random instances") {
  for (const auto& I : addsvm::testing::random_instances(9, 5, 2024)) {
    CAPTURE(I.name);
    auto [m, rep] = train(I.kernel, I.loss, I.measure, I.lambda);
    CHECK(rep.converged);
    auto orc = addsvm::testing::oracle_train(I.kernel, I.loss, I.measure, I.lambda);
    CHECK(std::abs(m.objective() - orc.objective) <= 1e-8);
    CHECK(kkt_residual(m, I.measure) <= 1e-6);
  }
}

TEST_CASE("rkhs norm bound from the loss and kernel") {
  for (const auto& I : addsvm::testing::random_instances(6, 4, 77)) {
    auto [m, rep] = train(I.kernel, I.loss, I.measure, I.lambda);
    double knorm = sup_norm_bound(I.kernel,
                                  Box{Eigen::VectorXd::Zero(I.kernel.input_dim()),
                                      Eigen::VectorXd::Ones(I.kernel.input_dim())})
                       .sup_norm;
    CHECK(m.rkhs_norm() <= I.loss.lipschitz() * knorm / I.lambda + 1e-9);
  }
}

TEST_CASE("huge lambda pins coefficients near zero") {
  auto insts = addsvm::testing::random_instances(3, 4, 99);
  for (const auto& I : insts) {
    auto [m, rep] = train(I.kernel, I.loss, I.measure, 1e6);
    CHECK(m.alpha().cwiseAbs().maxCoeff() <= 1e-4);
  }
}

TEST_CASE("predict consistency with cached gram rows") {
  auto I = addsvm::testing::random_instances(1, 5, 5).front();
  auto [m, rep] = train(I.kernel, I.loss, I.measure, I.lambda);
  Eigen::VectorXd t = m.gram() * m.alpha();
  for (std::size_t i = 0; i < m.support().size(); ++i)
    CHECK(m.predict(m.support()[i]) ==
          doctest::Approx(t[static_cast<Eigen::Index>(i)]).epsilon(1e-12));
}

TEST_CASE("additive components recombine and split the norm") {
  KernelSpec k = KernelSpec::sum({{{0, 0}, KernelSpec::polynomial(2, 1.0, 1)},
                                  {{1, 1}, KernelSpec::gaussian(2.0, 1)}});
  Rng rng(41);
  std::vector<Atom> atoms;
  for (int i = 0; i < 8; ++i) {
    Eigen::VectorXd x(2);
    x << rng.uniform01(), rng.uniform01();
    atoms.push_back(Atom{x, rng.uniform(-2, 2), 1.0});
  }
  DiscreteMeasure P = DiscreteMeasure::from_atoms(atoms);
  auto [m, rep] = train(k, LossSpec::pinball(0.5), P, 0.05);
  REQUIRE(rep.converged);

  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd x(2);
    x << rng.uniform(-1, 2), rng.uniform(-1, 2);
    auto comps = m.additive_components(x);
    REQUIRE(comps.size() == 2);
    // predict sums the components in block order, so agreement is exact.
    CHECK(comps[0] + comps[1] == m.predict(x));
  }

  // alpha' G alpha splits across the block Grams.
  double total = m.alpha().dot(m.gram() * m.alpha());
  double split = 0.0;
  for (const auto& b : k.blocks()) {
    std::vector<Eigen::VectorXd> slice;
    for (const auto& s : m.support())
      slice.push_back(s.segment(b.range.lo, b.range.size()));
    split += m.alpha().dot(gram(b.kernel, slice) * m.alpha());
  }
  CHECK(std::abs(total - split) <= 1e-10);

  CHECK_THROWS_AS(
      train(KernelSpec::gaussian(1.0, 2), LossSpec::pinball(0.5), P, 0.1)
          .first.additive_components(atoms[0].x),
      std::invalid_argument);
}

TEST_CASE("shifted and unshifted training coincide") {
  for (const auto& I : addsvm::testing::random_instances(10, 4, 314)) {
    CAPTURE(I.name);
    SolverOptions shifted, unshifted;
    unshifted.shifted = false;
    auto [ms, rs] = train(I.kernel, I.loss, I.measure, I.lambda, shifted);
    auto [mu, ru] = train(I.kernel, I.loss, I.measure, I.lambda, unshifted);
    for (const auto& x : ms.support())
      CHECK(std::abs(ms.predict(x) - mu.predict(x)) <= 1e-6);
    double offset = 0.0;
    for (const auto& a : I.measure.atoms()) offset += a.w * I.loss.eval(a.y, 0.0);
    CHECK(std::abs(ru.final_objective - rs.final_objective - offset) <= 1e-10);
  }
}

TEST_CASE("uniqueness proxy: warm starts reach the same function") {
  Rng rng(55);
  for (const auto& I : addsvm::testing::random_instances(6, 5, 123)) {
    CAPTURE(I.name);
    auto [m0, r0] = train(I.kernel, I.loss, I.measure, I.lambda);
    Eigen::VectorXd a1(m0.alpha().size());
    for (Eigen::Index i = 0; i < a1.size(); ++i) a1[i] = rng.uniform(-1, 1);
    auto [m1, r1] = train_from(I.kernel, I.loss, I.measure, I.lambda, a1);
    CHECK(std::abs(r0.final_objective - r1.final_objective) <= 1e-9);
    for (int p = 0; p < 20; ++p) {
      Eigen::VectorXd x(I.kernel.input_dim());
      for (Eigen::Index d = 0; d < x.size(); ++d) x[d] = rng.uniform01();
      CHECK(std::abs(m0.predict(x) - m1.predict(x)) <= 1e-6);
    }
  }
}

TEST_CASE("rkhs norm is nonincreasing in lambda") {
  auto I = addsvm::testing::random_instances(4, 5, 888)[3];
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {0.01, 0.05, 0.2, 1.0, 5.0}) {
    auto [m, rep] = train(I.kernel, I.loss, I.measure, lambda);
    CHECK(m.rkhs_norm() <= prev + 1e-8);
    prev = m.rkhs_norm();
  }
}

TEST_CASE("kkt residual separates optima from perturbations") {
  KernelSpec k = KernelSpec::gaussian(1.0, 1);
  DiscreteMeasure P = single_atom(0.0, 1.0);
  auto [m, rep] = train(k, LossSpec::pinball(0.5), P, 2.0);
  CHECK(kkt_residual(m, P) <= 1e-9);

  SvmModel perturbed(m.support(), Eigen::VectorXd(m.alpha().array() + 0.1), m.kernel(), m.loss(),
                     m.lambda());
  CHECK(kkt_residual(perturbed, P) > 1e-3);
}

TEST_CASE("degenerate gram coordinate is pinned to zero") {
  // Dot kernel at the origin: the feature vector is the zero element.
  DiscreteMeasure P = DiscreteMeasure::from_points(
      {{vec1(0.0), 5.0}, {vec1(1.0), 1.0}});
  auto [m, rep] = train(KernelSpec::dot(1), LossSpec::pinball(0.5), P, 0.1);
  CHECK(rep.converged);
  for (std::size_t i = 0; i < m.support().size(); ++i)
    if (m.support()[i][0] == 0.0)
      CHECK(m.alpha()[static_cast<Eigen::Index>(i)] == 0.0);
}

TEST_CASE("training validates inputs") {
  DiscreteMeasure P = single_atom(0.0, 1.0);
  CHECK_THROWS_AS(train(KernelSpec::gaussian(1.0, 2), LossSpec::hinge(), P, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(train(KernelSpec::gaussian(1.0, 1), LossSpec::pinball(0.5), P, 0.0),
                  std::invalid_argument);
}
