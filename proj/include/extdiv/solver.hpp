#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "extdiv/entropy.hpp"
#include "extdiv/errors.hpp"
#include "extdiv/poisson.hpp"
#include "extdiv/shrinkage.hpp"
#include "extdiv/synthetic.hpp"
#include "extdiv/vec.hpp"

namespace extdiv {

/// The four solver variants: forward-KL and reverse-KL with l1
/// regularization, the external-division method, and its non-translated
/// (a = 0, identity backward step) counterpart.
enum class SolverVariant { FklL1, RklL1, Proposed, ProposedA0 };

inline const char* to_string(SolverVariant v) {
  switch (v) {
    case SolverVariant::FklL1: return "fkl";
    case SolverVariant::RklL1: return "rkl";
    case SolverVariant::Proposed: return "proposed";
    case SolverVariant::ProposedA0: return "proposed-a0";
  }
  return "?";
}

/// Entropy geometry paired with each variant: Burg for forward-KL,
/// Boltzmann-Shannon for everything else.
inline LegendreKind entropy_for(SolverVariant v) {
  return v == SolverVariant::FklL1 ? LegendreKind::Burg
                                   : LegendreKind::BoltzmannShannon;
}

inline FidelityKind fidelity_for(SolverVariant v) {
  return v == SolverVariant::FklL1 ? FidelityKind::ForwardKL
                                   : FidelityKind::ReverseKL;
}

struct SolverConfig {
  SolverVariant variant = SolverVariant::RklL1;
  double lambda = 0.0;     // step size; 0 means pure backward iteration
  int max_iter = 10000;
  double tol = 1e-4;       // stop when ||x_{k+1} - x_k||_2 <= tol
  double l1_weight = 0.0;  // eta for the l1 variants
  std::optional<ExtDivParams> ext_div;  // required for Proposed
  Vec x0;                  // empty => all-ones of the model dimension
  int trace_every = 1;
  bool record_trace = true;
  bool allow_lambda_above_bound = false;

  void validate(const PoissonModel& model) const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw ParamError("SolverConfig: lambda must be finite and >= 0");
    }
    if (max_iter < 1) throw ParamError("SolverConfig: max_iter must be >= 1");
    if (!(tol > 0.0)) throw ParamError("SolverConfig: tol must be > 0");
    if (!(l1_weight >= 0.0)) throw ParamError("SolverConfig: l1_weight must be >= 0");
    if (trace_every < 1) throw ParamError("SolverConfig: trace_every must be >= 1");
    if (variant == SolverVariant::Proposed && !ext_div.has_value()) {
      throw ParamError("SolverConfig: Proposed requires ext_div parameters");
    }
    if (!x0.empty()) {
      require_same_size(x0.size(), static_cast<std::size_t>(model.n()),
                        "SolverConfig: x0");
      for (double v : x0) {
        if (!(v > 0.0) || !std::isfinite(v)) {
          throw ParamError("SolverConfig: x0 must be strictly positive");
        }
      }
    }
    if (!allow_lambda_above_bound) {
      const double bound = step_bound(fidelity_for(variant), model);
      if (lambda > bound * (1.0 + 1e-12)) {
        throw ParamError("SolverConfig: lambda exceeds step bound " +
                         std::to_string(bound) +
                         " (set allow_lambda_above_bound to override)");
      }
    }
  }
};

/// Per-iteration diagnostics record.
struct IterateTrace {
  int iteration = 0;
  double delta_norm = 0.0;
  double fidelity = 0.0;
  double nmse = std::numeric_limits<double>::quiet_NaN();  // NaN when no truth
  double elapsed_s = 0.0;
};

struct SolveResult {
  Vec x;
  bool converged = false;
  int iterations = 0;
  std::vector<IterateTrace> trace;
  // Best iterate by NMSE, tracked when ground truth is supplied (no
  // convergence guarantee is claimed for the external-division method).
  double best_nmse = std::numeric_limits<double>::quiet_NaN();
  int best_nmse_iteration = -1;
};

/// One mirror-descent step: grad_h_conj(grad_h(x) - lambda * grad_f).
/// lambda = 0 is the exact identity (the mirror maps are mutually inverse).
/// Throws StepError when the dual point leaves the dual domain (Burg
/// geometry with too large a step).
inline Vec mirror_step(std::span<const double> x, double lambda,
                       LegendreKind kind, std::span<const double> grad_f) {
  require_same_size(x.size(), grad_f.size(), "mirror_step");
  if (lambda == 0.0) return Vec(x.begin(), x.end());
  Vec u = grad_h(kind, x);
  bool moved = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double step = lambda * grad_f[i];
    if (step != 0.0) moved = true;
    u[i] -= step;
  }
  // Zero effective gradient: grad_h_conj(grad_h(x)) = x holds exactly.
  if (!moved) return Vec(x.begin(), x.end());
  if (kind == LegendreKind::Burg) {
    for (double ui : u) {
      if (!(ui < 0.0)) {
        throw StepError("mirror_step: dual point left the Burg dual domain "
                        "(step size too large)");
      }
    }
  }
  require_finite(u, "mirror_step: dual point");
  return grad_h_conj(kind, u);
}

/// Backward (plug-in) step applied after the mirror step. `lambda` is the
/// step size actually used by the mirror step, so the Bregman prox index
/// lambda * l1_weight stays consistent when the step was halved.
inline Vec backward_step(SolverVariant variant, std::span<const double> point,
                         const SolverConfig& config, double lambda) {
  switch (variant) {
    case SolverVariant::FklL1:
      return bregman_prox_l1_burg(point, lambda * config.l1_weight);
    case SolverVariant::RklL1: {
      // Boltzmann-Shannon prox of the unshifted l1 norm on the positive
      // orthant: multiplicative shrink by e^{-lambda*eta}.
      const double factor = std::exp(-lambda * config.l1_weight);
      Vec out(point.size());
      for (std::size_t i = 0; i < point.size(); ++i) out[i] = point[i] * factor;
      return out;
    }
    case SolverVariant::Proposed:
      return ext_div_closed_form(point, *config.ext_div);
    case SolverVariant::ProposedA0:
      return Vec(point.begin(), point.end());
  }
  throw ParamError("backward_step: unknown variant");
}

inline Vec backward_step(SolverVariant variant, std::span<const double> point,
                         const SolverConfig& config) {
  return backward_step(variant, point, config, config.lambda);
}

/// NoLips iteration with pluggable backward step. Stops at the first
/// iteration with ||x_{k+1} - x_k||_2 <= tol or at max_iter. On a Burg
/// dual-domain violation the step size is halved for that iteration, up to
/// 30 times, before giving up with StepError.
inline SolveResult solve(const SolverConfig& config, const PoissonModel& model,
                         std::span<const double> ground_truth = {}) {
  config.validate(model);
  const LegendreKind kind = entropy_for(config.variant);
  const FidelityKind fid = fidelity_for(config.variant);
  const auto t0 = std::chrono::steady_clock::now();

  SolveResult res;
  res.x = config.x0.empty() ? ones(static_cast<std::size_t>(model.n())) : config.x0;

  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  auto record = [&](int iteration, double delta, const Vec& x) {
    IterateTrace t;
    t.iteration = iteration;
    t.delta_norm = delta;
    t.fidelity = fidelity_value(fid, model, x);
    if (!ground_truth.empty()) t.nmse = nmse(x, ground_truth);
    t.elapsed_s = elapsed();
    res.trace.push_back(t);
  };
  auto track_best = [&](int iteration, const Vec& x) {
    if (ground_truth.empty()) return;
    const double e = nmse(x, ground_truth);
    if (!(e >= res.best_nmse)) {  // also catches the initial NaN
      res.best_nmse = e;
      res.best_nmse_iteration = iteration;
    }
  };

  track_best(0, res.x);
  for (int k = 0; k < config.max_iter; ++k) {
    Vec mirrored;
    double lambda_k = config.lambda;
    try {
      const Vec grad = fidelity_grad(fid, model, res.x);
      for (int halvings = 0;; ++halvings) {
        try {
          mirrored = mirror_step(res.x, lambda_k, kind, grad);
          break;
        } catch (const StepError&) {
          if (halvings >= 30) throw;
          lambda_k *= 0.5;
        }
      }
    } catch (const DomainError& e) {
      // An iterate on the domain boundary (exact zero) cannot be mirrored.
      throw StepError("solve: iterate left the interior of the entropy domain "
                      "at iteration " + std::to_string(k + 1) + " (" + e.what() + ")");
    }

    Vec next = backward_step(config.variant, mirrored, config, lambda_k);
    // The external-division map can push a coordinate to zero or below (its
    // inner branch slope may be negative for some valid parameters). Exact
    // zeros may stand in a returned iterate; anything worse is a failed step.
    for (double v : next) {
      if (!std::isfinite(v) ||
          (kind == LegendreKind::BoltzmannShannon && v < 0.0) ||
          (kind == LegendreKind::Burg && !(v > 0.0))) {
        throw StepError("solve: iterate left the entropy domain at iteration " +
                        std::to_string(k + 1));
      }
    }

    const double delta = dist2(next, res.x);
    res.x = std::move(next);
    res.iterations = k + 1;
    track_best(k + 1, res.x);

    const bool done = (delta <= config.tol) || (k + 1 == config.max_iter);
    if (config.record_trace && ((k + 1) % config.trace_every == 0 || done)) {
      record(k + 1, delta, res.x);
    }
    if (delta <= config.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace extdiv
