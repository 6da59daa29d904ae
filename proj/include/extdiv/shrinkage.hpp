#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "extdiv/entropy.hpp"
#include "extdiv/errors.hpp"
#include "extdiv/vec.hpp"

namespace extdiv {

/// Soft shrinkage: sgn(x) max{|x| - gamma, 0}.
inline double soft(double x, double gamma) {
  if (!(gamma > 0.0)) throw ParamError("soft: gamma must be positive");
  const double m = std::abs(x) - gamma;
  return m > 0.0 ? std::copysign(m, x) : 0.0;
}

/// Firm shrinkage: identity for |x| >= gamma, dead zone below tau, linear
/// interpolation in between. Requires gamma > tau > 0.
inline double firm(double x, double tau, double gamma) {
  if (!(gamma > tau) || !(tau > 0.0)) {
    throw ParamError("firm: requires gamma > tau > 0");
  }
  const double ax = std::abs(x);
  if (ax >= gamma) return x;
  if (ax < tau) return 0.0;
  return std::copysign(gamma * (ax - tau) / (gamma - tau), x);
}

/// Firm shrinkage written as the external division of two soft-shrinkage
/// operators with weights gamma/(gamma-tau) and tau/(gamma-tau).
inline double external_division_euclidean(double x, double tau, double gamma) {
  if (!(gamma > tau) || !(tau > 0.0)) {
    throw ParamError("external_division_euclidean: requires gamma > tau > 0");
  }
  const double w = gamma - tau;
  return (gamma / w) * soft(x, tau) - (tau / w) * soft(x, gamma);
}

/// Proximity operator of eta*|. - center|: soft shrinkage translated to a
/// sparsity center.
inline double shifted_soft(double u, double eta, double center) {
  return center + soft(u - center, eta);
}

/// Parameter bundle for the external-division operator, with all derived
/// constants (kappa, eta2, shifted center, breakpoints, branch slopes)
/// computed once at validation time.
struct ExtDivParams {
  double omega = 0.0;  // external-division weight, > 1
  double eta1 = 0.0;   // inner threshold, in (0, log omega)
  double a = 0.0;      // sparsity center, >= 0
  double kappa = 0.0;  // (omega - 1) / (omega e^{-eta1} - 1)
  double eta2 = 0.0;   // log kappa, the outer threshold
  double a_tilde = std::numeric_limits<double>::quiet_NaN();  // log a + 1 when a > 0

  // Breakpoints of the piecewise closed form, in increasing order.
  double brk_inner = 0.0;    // a / kappa
  double brk_plateau_lo = 0.0;  // a e^{-eta1}
  double brk_plateau_hi = 0.0;  // a e^{+eta1}
  double brk_identity = 0.0;    // a kappa
  // Branch slopes.
  double slope_inner = 0.0;   // omega e^{eta1} - (omega - 1) kappa
  double slope_expand = 0.0;  // omega e^{eta1}
  double slope_shrink = 0.0;  // omega e^{-eta1}
  double affine_shift = 0.0;  // (omega - 1) a

  bool identity_only() const { return a == 0.0; }

  /// True when the inner branch slope is nonnegative, i.e. the coordinate map
  /// is nondecreasing everywhere. Holds iff eta1 <= log(2 - 1/omega).
  bool monotone() const { return slope_inner >= 0.0; }
};

/// Builds a fully derived ExtDivParams or throws ParamError. Constraints:
/// omega > 1, 0 < eta1 < log(omega) (so kappa is finite and positive), a >= 0.
inline ExtDivParams validate_ext_div_params(double omega, double eta1, double a) {
  if (!std::isfinite(omega) || !(omega > 1.0)) {
    throw ParamError("ext_div: omega must be finite and > 1");
  }
  if (!std::isfinite(eta1) || !(eta1 > 0.0)) {
    throw ParamError("ext_div: eta1 must be finite and > 0");
  }
  if (!(eta1 < std::log(omega))) {
    throw ParamError("ext_div: requires eta1 < log(omega)");
  }
  if (!std::isfinite(a) || a < 0.0) {
    throw ParamError("ext_div: a must be finite and >= 0");
  }

  ExtDivParams p;
  p.omega = omega;
  p.eta1 = eta1;
  p.a = a;
  const double denom = omega * std::exp(-eta1) - 1.0;
  if (!(denom > 0.0)) {
    // Same constraint as eta1 < log(omega); kept as a float-level guard.
    throw ParamError("ext_div: omega e^{-eta1} - 1 must be positive");
  }
  p.kappa = (omega - 1.0) / denom;
  p.eta2 = std::log(p.kappa);
  if (a > 0.0) p.a_tilde = std::log(a) + 1.0;

  // kappa >= e^{eta1} (hence eta2 > eta1 and ordered breakpoints) is an
  // algebraic consequence of eta1 in (0, log omega); checked anyway.
  if (!(p.kappa >= std::exp(eta1)) || !(p.eta2 > p.eta1)) {
    throw ParamError("ext_div: derived kappa/eta2 inconsistent");
  }

  p.brk_inner = a / p.kappa;
  p.brk_plateau_lo = a * std::exp(-eta1);
  p.brk_plateau_hi = a * std::exp(eta1);
  p.brk_identity = a * p.kappa;
  p.slope_expand = omega * std::exp(eta1);
  p.slope_shrink = omega * std::exp(-eta1);
  p.slope_inner = p.slope_expand - (omega - 1.0) * p.kappa;
  p.affine_shift = (omega - 1.0) * a;

  if (!(p.brk_inner <= p.brk_plateau_lo && p.brk_plateau_lo <= p.brk_plateau_hi &&
        p.brk_plateau_hi <= p.brk_identity)) {
    throw ParamError("ext_div: breakpoints out of order");
  }
  return p;
}

/// Bregman proximity operator of eta*||. - a 1||_1 under the Boltzmann-Shannon
/// entropy, coordinate-wise closed form: multiplicative shrink x e^{-eta}
/// above a e^{eta}, multiplicative expand x e^{eta} below a e^{-eta}, the
/// center a in between.
inline double bregman_prox_shifted_l1_bs_scalar(double x, double eta, double a) {
  if (!(x > 0.0)) throw DomainError("bregman_prox_shifted_l1_bs: x must be > 0");
  if (!(a > 0.0)) throw ParamError("bregman_prox_shifted_l1_bs: a must be > 0");
  if (!(eta >= 0.0)) throw ParamError("bregman_prox_shifted_l1_bs: eta must be >= 0");
  if (x > a * std::exp(eta)) return x * std::exp(-eta);
  if (x < a * std::exp(-eta)) return x * std::exp(eta);
  return a;
}

inline Vec bregman_prox_shifted_l1_bs(std::span<const double> x, double eta,
                                      double a) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = bregman_prox_shifted_l1_bs_scalar(x[i], eta, a);
  }
  return out;
}

/// Bregman proximity operator of eta*||.||_1 under the Burg entropy,
/// coordinate-wise x / (1 + eta x) from first-order optimality on x > 0.
inline double bregman_prox_l1_burg_scalar(double x, double eta) {
  if (!(x > 0.0)) throw DomainError("bregman_prox_l1_burg: x must be > 0");
  if (!(eta >= 0.0)) throw ParamError("bregman_prox_l1_burg: eta must be >= 0");
  return x / (1.0 + eta * x);
}

inline Vec bregman_prox_l1_burg(std::span<const double> x, double eta) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = bregman_prox_l1_burg_scalar(x[i], eta);
  }
  return out;
}

/// The external-division operator, five-branch piecewise closed form.
/// Interval boundaries follow the closed form literally (half-open as
/// printed); the map is continuous so boundary assignment does not change
/// values. a = 0 degenerates to the identity without touching a_tilde.
inline double ext_div_scalar(double x, const ExtDivParams& p) {
  if (!(x >= 0.0)) throw DomainError("ext_div: coordinate must be nonnegative");
  if (p.identity_only()) return x;
  if (x > p.brk_identity) return x;
  if (x > p.brk_plateau_hi) return p.slope_shrink * x - p.affine_shift;
  if (x >= p.brk_plateau_lo) return p.a;
  if (x >= p.brk_inner) return p.slope_expand * x - p.affine_shift;
  return p.slope_inner * x;
}

inline Vec ext_div_closed_form(std::span<const double> x, const ExtDivParams& p) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = ext_div_scalar(x[i], p);
  return out;
}

/// Equivalent composed form: the affine combination
///   omega * (grad_h_conj o shifted_soft(eta1) o grad_h)
///   - (omega-1) * (grad_h_conj o shifted_soft(eta2) o grad_h)
/// with the Boltzmann-Shannon mirror maps. Sparsity is induced in the dual
/// space; the bias-reducing combination happens in the primal space.
inline double ext_div_composed_scalar(double x, const ExtDivParams& p) {
  if (!(x > 0.0)) throw DomainError("ext_div_composed: x must be > 0");
  if (!(p.a > 0.0)) throw ParamError("ext_div_composed: requires a > 0");
  const double u = std::log(x) + 1.0;
  const double p1 = std::exp(shifted_soft(u, p.eta1, p.a_tilde) - 1.0);
  const double p2 = std::exp(shifted_soft(u, p.eta2, p.a_tilde) - 1.0);
  return p.omega * p1 - (p.omega - 1.0) * p2;
}

inline Vec ext_div_composed(std::span<const double> x, const ExtDivParams& p) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = ext_div_composed_scalar(x[i], p);
  }
  return out;
}

/// Dual-space form: a single perturbed shrinkage
///   S(u) = S1(u) + log[omega (1 - exp(S2(u) - S1(u)))]
/// with S1 the eta1-shifted soft shrinkage and S2 the eta2-shifted one plus
/// log((omega-1)/omega). Valid where the log argument is positive, which
/// covers all u = grad_h(x) with x >= a e^{-eta1}; for such u,
/// grad_h_conj(S(grad_h(x))) reproduces the closed form coordinate-wise.
inline double dual_correction_S(double u, const ExtDivParams& p) {
  if (!(p.a > 0.0)) throw ParamError("dual_correction_S: requires a > 0");
  if (!std::isfinite(u)) throw DomainError("dual_correction_S: u not finite");
  const double s1 = shifted_soft(u, p.eta1, p.a_tilde);
  const double s2 =
      shifted_soft(u, p.eta2, p.a_tilde) + std::log((p.omega - 1.0) / p.omega);
  const double arg = p.omega * (1.0 - std::exp(s2 - s1));
  if (!(arg > 0.0)) {
    throw DomainError("dual_correction_S: input outside validity region");
  }
  return s1 + std::log(arg);
}

}  // namespace extdiv
