#pragma once

#include <cmath>
#include <span>
#include <string>

#include "extdiv/entropy.hpp"
#include "extdiv/errors.hpp"
#include "extdiv/linear_map.hpp"
#include "extdiv/vec.hpp"

namespace extdiv {

/// Orientation of the KL data-fidelity term.
/// ForwardKL = D(b, Ax+eps), the Poisson likelihood orientation (Burg
/// geometry); ReverseKL = D(Ax+eps, b) (Boltzmann-Shannon geometry).
enum class FidelityKind { ForwardKL, ReverseKL };

inline const char* to_string(FidelityKind k) {
  return k == FidelityKind::ForwardKL ? "forward-kl" : "reverse-kl";
}

/// Additive constant inside the logarithms of the fidelity terms, for
/// numerical stability. Applied to log/division arguments only, never to
/// iterates.
inline constexpr double kLogFloor = 1e-12;

/// Poisson observation model b ~ Poisson(Ax + background).
struct PoissonModel {
  LinearMap A;
  Vec b;           // observed counts, length rows()
  Vec background;  // nonnegative background counts, length rows()

  PoissonModel() = default;

  PoissonModel(LinearMap a, Vec obs, Vec bg)
      : A(std::move(a)), b(std::move(obs)), background(std::move(bg)) {
    validate();
  }

  PoissonModel(LinearMap a, Vec obs, double bg_value = 0.0)
      : A(std::move(a)), b(std::move(obs)) {
    background.assign(static_cast<std::size_t>(A.rows()), bg_value);
    validate();
  }

  int m() const { return A.rows(); }
  int n() const { return A.cols(); }

  void validate() const {
    require_same_size(b.size(), static_cast<std::size_t>(A.rows()), "PoissonModel: b");
    require_same_size(background.size(), static_cast<std::size_t>(A.rows()),
                      "PoissonModel: background");
    for (double v : b) {
      if (!std::isfinite(v) || v < 0.0) throw ParamError("PoissonModel: b must be nonnegative");
    }
    for (double v : background) {
      if (!std::isfinite(v) || v < 0.0) {
        throw ParamError("PoissonModel: background must be nonnegative");
      }
    }
    const Vec cs = A.column_sums();
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (!(cs[j] > 0.0)) {
        throw ParamError("PoissonModel: column " + std::to_string(j) +
                         " of A is identically zero");
      }
    }
  }

  /// Forward prediction y = Ax + background.
  Vec predict(std::span<const double> x) const {
    Vec y = A.apply(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += background[i];
    return y;
  }
};

namespace detail {

// ForwardKL pairs with the Burg entropy whose domain is open, so the point
// must be strictly positive; ReverseKL pairs with Boltzmann-Shannon and the
// fidelity extends to the closure (zeros allowed, y = Ax + eps stays valid).
inline void require_fidelity_point(FidelityKind kind, std::span<const double> x,
                                   const char* what) {
  if (kind == FidelityKind::ForwardKL) {
    for (double xi : x) {
      if (!(xi > 0.0) || !std::isfinite(xi)) {
        throw DomainError(std::string(what) + ": x must be strictly positive");
      }
    }
  } else {
    for (double xi : x) {
      if (!(xi >= 0.0) || !std::isfinite(xi)) {
        throw DomainError(std::string(what) + ": x must be nonnegative");
      }
    }
  }
}

}  // namespace detail

/// Data-fidelity value. ReverseKL: D(y, b); ForwardKL: D(b, y); both with
/// y = Ax + background and the log floor inside the logarithms.
inline double fidelity_value(FidelityKind kind, const PoissonModel& model,
                             std::span<const double> x) {
  detail::require_fidelity_point(kind, x, "fidelity_value");
  const Vec y = model.predict(x);
  double s = 0.0;
  if (kind == FidelityKind::ReverseKL) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double ratio = (y[i] + kLogFloor) / (model.b[i] + kLogFloor);
      s += (y[i] == 0.0 ? 0.0 : y[i] * std::log(ratio)) - y[i] + model.b[i];
    }
  } else {
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double bi = model.b[i];
      const double ratio = (bi + kLogFloor) / (y[i] + kLogFloor);
      s += (bi == 0.0 ? 0.0 : bi * std::log(ratio)) - bi + y[i];
    }
  }
  return s;
}

/// Gradient of the fidelity. ReverseKL: A^T log(y ./ b); ForwardKL:
/// A^T (1 - b ./ y); with the same log floor as fidelity_value.
inline Vec fidelity_grad(FidelityKind kind, const PoissonModel& model,
                         std::span<const double> x) {
  detail::require_fidelity_point(kind, x, "fidelity_grad");
  Vec y = model.predict(x);
  Vec r(y.size());
  if (kind == FidelityKind::ReverseKL) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      r[i] = std::log((y[i] + kLogFloor) / (model.b[i] + kLogFloor));
    }
  } else {
    for (std::size_t i = 0; i < y.size(); ++i) {
      r[i] = 1.0 - model.b[i] / (y[i] + kLogFloor);
    }
  }
  return model.A.apply_adjoint(r);
}

/// Largest step size covered by the Lipschitz-like convexity condition:
/// ForwardKL (Burg geometry) 1/||b||_1; ReverseKL (Boltzmann-Shannon
/// geometry) 1/max column sum of A, a conservative surrogate for the exact
/// constant.
inline double step_bound(FidelityKind kind, const PoissonModel& model) {
  if (kind == FidelityKind::ForwardKL) {
    const double l1 = norm1(model.b);
    if (!(l1 > 0.0)) {
      throw ParamError("step_bound: forward-KL bound undefined for b = 0");
    }
    return 1.0 / l1;
  }
  const Vec cs = model.A.column_sums();
  double mx = 0.0;
  for (double c : cs) mx = std::max(mx, c);
  if (!(mx > 0.0)) throw ParamError("step_bound: A has no mass");
  return 1.0 / mx;
}

}  // namespace extdiv
