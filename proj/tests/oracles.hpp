#pragma once

// Test-only numerical oracles, kept independent of the closed forms they
// check: golden-section minimization for Bregman proximity operators and
// central finite differences for gradients.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracles {

/// Golden-section search for the minimizer of a unimodal f on [lo, hi].
inline double golden_section(const std::function<double(double)>& f, double lo,
                             double hi, int iters = 220) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iters; ++k) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// argmin over xi > 0 of g(xi) + D(xi), searched in log space (any convex
/// objective in xi is unimodal along t = log xi). [lo, hi] brackets the
/// minimizer in xi.
inline double minimize_positive(const std::function<double(double)>& objective,
                                double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("bad bracket");
  auto in_log = [&objective](double t) { return objective(std::exp(t)); };
  return std::exp(golden_section(in_log, std::log(lo), std::log(hi)));
}

/// Boltzmann-Shannon divergence of scalars, from the defining formula.
inline double div_bs(double xi, double x) {
  return (xi == 0.0 ? 0.0 : xi * std::log(xi / x)) - xi + x;
}

/// Burg (Itakura-Saito) divergence of scalars.
inline double div_burg(double xi, double x) {
  return -std::log(xi / x) + xi / x - 1.0;
}

/// Oracle for the Boltzmann-Shannon prox of eta*|xi - a|.
inline double prox_shifted_l1_bs(double x, double eta, double a) {
  auto obj = [=](double xi) { return eta * std::abs(xi - a) + div_bs(xi, x); };
  const double lo = 0.5 * std::min(x * std::exp(-eta), a);
  const double hi = 2.0 * std::max(x * std::exp(eta), a);
  return minimize_positive(obj, lo, hi);
}

/// Oracle for the Burg prox of eta*xi on xi > 0.
inline double prox_l1_burg(double x, double eta) {
  auto obj = [=](double xi) { return eta * xi + div_burg(xi, x); };
  return minimize_positive(obj, 0.25 * x / (1.0 + eta * x), 2.0 * x);
}

/// Oracle for the Boltzmann-Shannon prox of eta*xi on xi > 0 (the
/// multiplicative shrink used by the reverse-KL backward step).
inline double prox_l1_bs(double x, double eta) {
  auto obj = [=](double xi) { return eta * xi + div_bs(xi, x); };
  return minimize_positive(obj, 0.25 * x * std::exp(-eta), 2.0 * x);
}

/// Central finite difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracles
