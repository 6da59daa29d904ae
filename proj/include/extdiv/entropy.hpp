#pragma once

#include <cmath>
#include <span>

#include "extdiv/errors.hpp"
#include "extdiv/vec.hpp"

namespace extdiv {

/// The Legendre entropies used throughout: Boltzmann-Shannon on the
/// nonnegative orthant, Burg on the strictly positive orthant, and the
/// halved squared Euclidean norm on all of n-space.
enum class LegendreKind {
  BoltzmannShannon,
  Burg,
  HalvedSquaredEuclidean,
};

inline const char* to_string(LegendreKind kind) {
  switch (kind) {
    case LegendreKind::BoltzmannShannon: return "boltzmann-shannon";
    case LegendreKind::Burg: return "burg";
    case LegendreKind::HalvedSquaredEuclidean: return "halved-squared-euclidean";
  }
  return "?";
}

/// x log x with the 0 log 0 = 0 convention (exact branch, no epsilon).
inline double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

namespace detail {

inline void require_interior(LegendreKind kind, std::span<const double> x,
                             const char* what) {
  switch (kind) {
    case LegendreKind::BoltzmannShannon:
    case LegendreKind::Burg:
      for (double xi : x) {
        if (!(xi > 0.0) || !std::isfinite(xi)) {
          throw DomainError(std::string(what) +
                            ": coordinate not strictly positive");
        }
      }
      return;
    case LegendreKind::HalvedSquaredEuclidean:
      require_finite(x, what);
      return;
  }
}

inline void require_closure(LegendreKind kind, std::span<const double> x,
                            const char* what) {
  switch (kind) {
    case LegendreKind::BoltzmannShannon:
      for (double xi : x) {
        if (!(xi >= 0.0) || !std::isfinite(xi)) {
          throw DomainError(std::string(what) + ": coordinate negative");
        }
      }
      return;
    case LegendreKind::Burg:
      require_interior(kind, x, what);
      return;
    case LegendreKind::HalvedSquaredEuclidean:
      require_finite(x, what);
      return;
  }
}

}  // namespace detail

/// Entropy value h(x). Boltzmann-Shannon accepts the domain closure
/// (zeros contribute nothing); Burg needs strictly positive input.
inline double entropy_value(LegendreKind kind, std::span<const double> x) {
  detail::require_closure(kind, x, "entropy_value");
  double s = 0.0;
  switch (kind) {
    case LegendreKind::BoltzmannShannon:
      for (double xi : x) s += xlogx(xi);
      return s;
    case LegendreKind::Burg:
      for (double xi : x) s -= std::log(xi);
      return s;
    case LegendreKind::HalvedSquaredEuclidean:
      for (double xi : x) s += 0.5 * xi * xi;
      return s;
  }
  return s;
}

/// Mirror map: the gradient of the entropy, carrying interior points of the
/// primal domain into the dual space.
inline Vec grad_h(LegendreKind kind, std::span<const double> x) {
  detail::require_interior(kind, x, "grad_h");
  Vec u(x.size());
  switch (kind) {
    case LegendreKind::BoltzmannShannon:
      for (std::size_t i = 0; i < x.size(); ++i) u[i] = std::log(x[i]) + 1.0;
      break;
    case LegendreKind::Burg:
      for (std::size_t i = 0; i < x.size(); ++i) u[i] = -1.0 / x[i];
      break;
    case LegendreKind::HalvedSquaredEuclidean:
      for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i];
      break;
  }
  return u;
}

/// Inverse mirror map (gradient of the conjugate entropy). The Burg dual
/// domain is the strictly negative orthant; anything else is rejected.
inline Vec grad_h_conj(LegendreKind kind, std::span<const double> u) {
  require_finite(u, "grad_h_conj");
  Vec x(u.size());
  switch (kind) {
    case LegendreKind::BoltzmannShannon:
      for (std::size_t i = 0; i < u.size(); ++i) x[i] = std::exp(u[i] - 1.0);
      break;
    case LegendreKind::Burg:
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] < 0.0)) {
          throw DomainError("grad_h_conj: Burg dual point not strictly negative");
        }
        x[i] = -1.0 / u[i];
      }
      break;
    case LegendreKind::HalvedSquaredEuclidean:
      for (std::size_t i = 0; i < u.size(); ++i) x[i] = u[i];
      break;
  }
  return x;
}

/// Bregman divergence D_h(xi, x) = h(xi) - h(x) - <grad_h(x), xi - x>,
/// evaluated through the per-kind closed form so that sparse first arguments
/// (Boltzmann-Shannon) and the Euclidean reduction stay exact.
inline double bregman_div(LegendreKind kind, std::span<const double> xi,
                          std::span<const double> x) {
  require_same_size(xi.size(), x.size(), "bregman_div");
  detail::require_closure(kind, xi, "bregman_div (first argument)");
  detail::require_interior(kind, x, "bregman_div (second argument)");
  double s = 0.0;
  switch (kind) {
    case LegendreKind::BoltzmannShannon:
      // Generalized KL: xi log(xi/x) - xi + x, with 0 log 0 = 0.
      for (std::size_t i = 0; i < x.size(); ++i) {
        s += (xi[i] == 0.0 ? 0.0 : xi[i] * std::log(xi[i] / x[i])) - xi[i] + x[i];
      }
      return s;
    case LegendreKind::Burg:
      // Itakura-Saito: -log(xi/x) + xi/x - 1.
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = xi[i] / x[i];
        s += -std::log(r) + r - 1.0;
      }
      return s;
    case LegendreKind::HalvedSquaredEuclidean:
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = xi[i] - x[i];
        s += 0.5 * d * d;
      }
      return s;
  }
  return s;
}

}  // namespace extdiv
