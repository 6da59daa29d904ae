#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "extdiv/entropy.hpp"
#include "oracles.hpp"

using namespace extdiv;

namespace {
constexpr double kE = 2.7182818284590451;

const LegendreKind kAllKinds[] = {LegendreKind::BoltzmannShannon,
                                  LegendreKind::Burg,
                                  LegendreKind::HalvedSquaredEuclidean};

Vec random_interior(LegendreKind kind, std::size_t n, std::mt19937_64& rng) {
  Vec x(n);
  if (kind == LegendreKind::HalvedSquaredEuclidean) {
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    for (auto& v : x) v = d(rng);
  } else {
    std::uniform_real_distribution<double> d(-4.0, 4.0);  // log-uniform 1e-4ish..1e2ish
    for (auto& v : x) v = std::exp(d(rng));
  }
  return x;
}
}  // namespace

TEST_CASE("grad_h closed forms") {
  CHECK(grad_h(LegendreKind::BoltzmannShannon, Vec{1.0, 1.0}) == Vec{1.0, 1.0});
  CHECK(grad_h(LegendreKind::Burg, Vec{2.0}) == Vec{-0.5});
  CHECK_THAT(grad_h(LegendreKind::BoltzmannShannon, Vec{kE})[0],
             Catch::Matchers::WithinAbs(2.0, 1e-14));
  CHECK(grad_h(LegendreKind::HalvedSquaredEuclidean, Vec{-3.0, 7.0}) ==
        Vec{-3.0, 7.0});
}

TEST_CASE("grad_h domain checks") {
  CHECK_THROWS_AS(grad_h(LegendreKind::BoltzmannShannon, Vec{0.0}), DomainError);
  CHECK_THROWS_AS(grad_h(LegendreKind::Burg, Vec{1.0, -2.0}), DomainError);
  CHECK_NOTHROW(grad_h(LegendreKind::HalvedSquaredEuclidean, Vec{0.0}));
}

TEST_CASE("grad_h_conj closed forms and domain") {
  CHECK(grad_h_conj(LegendreKind::BoltzmannShannon, Vec{1.0}) == Vec{1.0});
  CHECK(grad_h_conj(LegendreKind::Burg, Vec{-0.5}) == Vec{2.0});
  CHECK_THAT(grad_h_conj(LegendreKind::BoltzmannShannon, Vec{2.0})[0],
             Catch::Matchers::WithinRel(kE, 1e-15));
  CHECK_THROWS_AS(grad_h_conj(LegendreKind::Burg, Vec{0.5}), DomainError);
  CHECK_THROWS_AS(grad_h_conj(LegendreKind::Burg, Vec{0.0}), DomainError);
}

TEST_CASE("bregman_div reference values") {
  CHECK(bregman_div(LegendreKind::BoltzmannShannon, Vec{3.0, 5.0}, Vec{3.0, 5.0}) ==
        0.0);
  CHECK_THAT(bregman_div(LegendreKind::BoltzmannShannon, Vec{kE}, Vec{1.0}),
             Catch::Matchers::WithinAbs(1.0, 1e-14));
  // 0 log 0 = 0 convention: D([0], [1]) = 0 - 0 - (0 - 1) = 1.
  CHECK(bregman_div(LegendreKind::BoltzmannShannon, Vec{0.0}, Vec{1.0}) == 1.0);
  // ... consistent with the limit of t log t as t -> 0.
  double prev = std::abs(1e-4 * std::log(1e-4));
  for (double t = 1e-6; t > 1e-15; t *= 1e-2) {
    const double cur = std::abs(t * std::log(t));
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(
      bregman_div(LegendreKind::BoltzmannShannon, Vec{-1.0}, Vec{1.0}),
      DomainError);
  CHECK_THROWS_AS(bregman_div(LegendreKind::Burg, Vec{0.0}, Vec{1.0}), DomainError);
}

TEST_CASE("mirror map round trip") {
  std::mt19937_64 rng(42);
  for (LegendreKind kind : kAllKinds) {
    for (int rep = 0; rep < 10000; ++rep) {
      const Vec x = random_interior(kind, 3, rng);
      const Vec back = grad_h_conj(kind, grad_h(kind, x));
      for (std::size_t i = 0; i < x.size(); ++i) {
        REQUIRE_THAT(back[i], Catch::Matchers::WithinRel(x[i], 1e-10));
      }
    }
  }
}

TEST_CASE("conjugate round trip in the dual") {
  // grad_h(grad_h_conj(u)) = u within 1e-12 per coordinate.
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> bs(-20.0, 20.0);
  std::uniform_real_distribution<double> burg(-1e3, -1e-3);
  for (int rep = 0; rep < 1000; ++rep) {
    const Vec u{bs(rng)};
    const Vec r = grad_h(LegendreKind::BoltzmannShannon,
                         grad_h_conj(LegendreKind::BoltzmannShannon, u));
    REQUIRE_THAT(r[0], Catch::Matchers::WithinAbs(u[0], 1e-12));
    const Vec v{burg(rng)};
    const Vec s = grad_h(LegendreKind::Burg, grad_h_conj(LegendreKind::Burg, v));
    REQUIRE_THAT(s[0], Catch::Matchers::WithinRel(v[0], 1e-12));
  }
}

TEST_CASE("bregman divergence nonnegativity and identity of indiscernibles") {
  std::mt19937_64 rng(7);
  for (LegendreKind kind : kAllKinds) {
    for (int rep = 0; rep < 2000; ++rep) {
      const Vec xi = random_interior(kind, 4, rng);
      const Vec x = random_interior(kind, 4, rng);
      const double d = bregman_div(kind, xi, x);
      REQUIRE(d >= 0.0);
      REQUIRE(bregman_div(kind, x, x) <= 1e-12);
      if (dist2(xi, x) > 1e-6) REQUIRE(d > 0.0);
    }
  }
}

TEST_CASE("gradient matches finite differences of the entropy") {
  std::mt19937_64 rng(11);
  for (LegendreKind kind : kAllKinds) {
    for (int rep = 0; rep < 200; ++rep) {
      Vec x = random_interior(kind, 3, rng);
      for (auto& v : x) v = std::clamp(v, -50.0, 50.0);
      if (kind != LegendreKind::HalvedSquaredEuclidean) {
        for (auto& v : x) v = std::clamp(v, 0.05, 50.0);
      }
      const Vec g = grad_h(kind, x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto f = [&](double t) {
          Vec y = x;
          y[i] = t;
          return entropy_value(kind, y);
        };
        const double fd = oracles::central_diff(f, x[i], 1e-6);
        REQUIRE_THAT(fd, Catch::Matchers::WithinRel(g[i], 1e-5) ||
                             Catch::Matchers::WithinAbs(g[i], 1e-7));
      }
    }
  }
}

TEST_CASE("Euclidean divergence reduces to half squared distance exactly") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const Vec xi{d(rng), d(rng)};
    const Vec x{d(rng), d(rng)};
    double half_sq = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
      half_sq += 0.5 * (xi[i] - x[i]) * (xi[i] - x[i]);
    }
    CHECK(bregman_div(LegendreKind::HalvedSquaredEuclidean, xi, x) == half_sq);
    // and agrees with the defining formula h(xi) - h(x) - <grad h(x), xi - x>
    const Vec g = grad_h(LegendreKind::HalvedSquaredEuclidean, x);
    Vec diff(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) diff[i] = xi[i] - x[i];
    const double defn = entropy_value(LegendreKind::HalvedSquaredEuclidean, xi) -
                        entropy_value(LegendreKind::HalvedSquaredEuclidean, x) -
                        dot(g, diff);
    CHECK_THAT(defn, Catch::Matchers::WithinAbs(half_sq, 1e-10));
  }
}

TEST_CASE("closed-form divergences agree with the defining formula") {
  std::mt19937_64 rng(17);
  for (LegendreKind kind : {LegendreKind::BoltzmannShannon, LegendreKind::Burg}) {
    for (int rep = 0; rep < 500; ++rep) {
      const Vec xi = random_interior(kind, 3, rng);
      const Vec x = random_interior(kind, 3, rng);
      const Vec g = grad_h(kind, x);
      Vec diff(xi.size());
      for (std::size_t i = 0; i < xi.size(); ++i) diff[i] = xi[i] - x[i];
      const double defn =
          entropy_value(kind, xi) - entropy_value(kind, x) - dot(g, diff);
      const double closed = bregman_div(kind, xi, x);
      REQUIRE_THAT(defn, Catch::Matchers::WithinRel(closed, 1e-9) ||
                             Catch::Matchers::WithinAbs(closed, 1e-9));
    }
  }
}
