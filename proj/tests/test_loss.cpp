#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "addsvm/loss.hpp"
#include "addsvm/rng.hpp"

using namespace addsvm;

TEST_CASE("eval formulas") {
  CHECK(LossSpec::pinball(0.5).eval(1.0, 0.0) == 0.5);
  CHECK(LossSpec::eps_insensitive(0.5).eval(0.0, 2.0) == 1.5);
  CHECK(LossSpec::hinge().eval(-1.0, 0.5) == 1.5);

  // L(y,y) = 0 (y = +1 for hinge).
  CHECK(LossSpec::pinball(0.3).eval(2.5, 2.5) == 0.0);
  CHECK(LossSpec::eps_insensitive(0.1).eval(-1.0, -1.0) == 0.0);
  CHECK(LossSpec::hinge().eval(1.0, 1.0) == 0.0);
}

TEST_CASE("hinge rejects non-binary labels") {
  CHECK_THROWS_AS(LossSpec::hinge().eval(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(LossSpec::hinge().subgrad(2.0, 0.0), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(LossSpec::pinball(0.0), std::invalid_argument);
  CHECK_THROWS_AS(LossSpec::pinball(1.0), std::invalid_argument);
  CHECK_THROWS_AS(LossSpec::eps_insensitive(0.0), std::invalid_argument);
}

TEST_CASE("shifted loss") {
  CHECK(LossSpec::pinball(0.7).shifted(1.3, 0.0) == 0.0);
  CHECK(LossSpec::pinball(0.5).shifted(1.0, 1.0) == -0.5);
  CHECK(LossSpec::hinge().shifted(1.0, 2.0) == -1.0);

  // shifted differences equal eval differences (up to the roundoff of
  // subtracting the shift constant twice).
  Rng rng(5);
  LossSpec L = LossSpec::eps_insensitive(0.2);
  for (int i = 0; i < 1000; ++i) {
    double y = rng.uniform(-3, 3), t = rng.uniform(-3, 3), tp = rng.uniform(-3, 3);
    double a = L.shifted(y, t) - L.shifted(y, tp);
    double b = L.eval(y, t) - L.eval(y, tp);
    CHECK(std::abs(a - b) <= 1e-14 * (1.0 + std::abs(b)));
  }
}

TEST_CASE("lipschitz constants") {
  CHECK(LossSpec::pinball(0.5).lipschitz() == 0.5);
  CHECK(LossSpec::pinball(0.9).lipschitz() == 0.9);
  CHECK(LossSpec::pinball(0.2).lipschitz() == 0.8);
  CHECK(LossSpec::eps_insensitive(0.3).lipschitz() == 1.0);
  CHECK(LossSpec::hinge().lipschitz() == 1.0);
}

TEST_CASE("subgradient intervals") {
  LossSpec p = LossSpec::pinball(0.5);
  CHECK(p.subgrad(1.0, 0.0).lo == -0.5);
  CHECK(p.subgrad(1.0, 0.0).hi == -0.5);
  CHECK(p.subgrad(1.0, 1.0).lo == -0.5);
  CHECK(p.subgrad(1.0, 1.0).hi == 0.5);

  LossSpec e = LossSpec::eps_insensitive(1.0);
  CHECK(e.subgrad(0.0, 3.0).lo == 1.0);
  CHECK(e.subgrad(0.0, 3.0).hi == 1.0);
  CHECK(e.subgrad(0.0, 0.5).lo == 0.0);
  CHECK(e.subgrad(0.0, 0.5).hi == 0.0);
  CHECK(e.subgrad(0.0, 1.0).lo == 0.0);  // upper kink
  CHECK(e.subgrad(0.0, 1.0).hi == 1.0);

  LossSpec h = LossSpec::hinge();
  CHECK(h.subgrad(1.0, 0.0).lo == -1.0);
  CHECK(h.subgrad(1.0, 1.0).lo == -1.0);
  CHECK(h.subgrad(1.0, 1.0).hi == 0.0);
  CHECK(h.subgrad(1.0, 2.0).lo == 0.0);
  CHECK(h.subgrad(-1.0, -2.0).lo == 0.0);
}

namespace {

double random_y(Rng& rng, const LossSpec& L) {
  if (L.kind() == LossSpec::Kind::Hinge)
    return rng.uniform01() < 0.5 ? -1.0 : 1.0;
  return rng.uniform(-3, 3);
}

}  // namespace

TEST_CASE("uniform Lipschitz property on samples") {
  Rng rng(13);
  for (const LossSpec& L : {LossSpec::pinball(0.35), LossSpec::eps_insensitive(0.2),
                            LossSpec::hinge()})
    for (int i = 0; i < 10000; ++i) {
      double y = random_y(rng, L);
      double t = rng.uniform(-4, 4), tp = rng.uniform(-4, 4);
      CHECK(std::abs(L.eval(y, t) - L.eval(y, tp)) <=
            L.lipschitz() * std::abs(t - tp) + 1e-14);
    }
}

TEST_CASE("subgradient inequality on samples") {
  Rng rng(17);
  for (const LossSpec& L : {LossSpec::pinball(0.7), LossSpec::eps_insensitive(0.4),
                            LossSpec::hinge()})
    for (int i = 0; i < 10000; ++i) {
      double y = random_y(rng, L);
      double t = rng.uniform(-4, 4);
      LossSpec::Interval iv = L.subgrad(y, t);
      for (double g : {iv.lo, iv.hi, 0.5 * (iv.lo + iv.hi)})
        for (int p = 0; p < 10; ++p) {
          double tp = rng.uniform(-4, 4);
          CHECK(L.eval(y, tp) >= L.eval(y, t) + g * (tp - t) - 1e-12);
        }
    }
}

TEST_CASE("midpoint convexity on samples") {
  Rng rng(23);
  for (const LossSpec& L : {LossSpec::pinball(0.5), LossSpec::eps_insensitive(0.1),
                            LossSpec::hinge()})
    for (int i = 0; i < 5000; ++i) {
      double y = random_y(rng, L);
      double t = rng.uniform(-4, 4), tp = rng.uniform(-4, 4);
      CHECK(L.eval(y, 0.5 * (t + tp)) <=
            0.5 * (L.eval(y, t) + L.eval(y, tp)) + 1e-12);
    }
}
