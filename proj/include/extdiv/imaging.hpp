#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "extdiv/errors.hpp"
#include "extdiv/solver.hpp"
#include "extdiv/synthetic.hpp"
#include "extdiv/vec.hpp"

namespace extdiv {

/// Intensity ceiling of the restoration experiment; PGM bytes are mapped
/// linearly onto [0, kMaxIntensity].
inline constexpr double kMaxIntensity = 30.0;

/// 2-D nonnegative intensity field, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  Vec intensities;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h), intensities(static_cast<std::size_t>(w) * h, fill) {
    if (w < 1 || h < 1) throw ParamError("GrayImage: dimensions must be positive");
  }

  std::size_t size() const { return intensities.size(); }
  double& at(int x, int y) { return intensities[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return intensities[static_cast<std::size_t>(y) * width + x]; }

  void validate() const {
    if (width < 1 || height < 1) throw ParamError("GrayImage: dimensions must be positive");
    require_same_size(intensities.size(), static_cast<std::size_t>(width) * height,
                      "GrayImage");
    for (double v : intensities) {
      if (!std::isfinite(v) || v < 0.0) {
        throw DomainError("GrayImage: intensities must be nonnegative and finite");
      }
    }
  }
};

enum class Boundary { Reflect, Zero };

inline const char* to_string(Boundary b) {
  return b == Boundary::Reflect ? "reflect" : "zero";
}

/// Normalized 7x7 moving-average blur over the image grid.
struct BlurOperator {
  int width = 0;
  int height = 0;
  static constexpr int kernel_half = 3;  // 7x7 window
  Boundary boundary = Boundary::Reflect;

  BlurOperator(int w, int h, Boundary b = Boundary::Reflect)
      : width(w), height(h), boundary(b) {
    if (w < 1 || h < 1) throw ParamError("BlurOperator: dimensions must be positive");
  }
};

namespace detail {

// Symmetric reflection (edge pixel not repeated), folded until in range.
inline int reflect_index(int k, int n) {
  while (k < 0 || k >= n) {
    if (k < 0) k = -k - 1;
    if (k >= n) k = 2 * n - 1 - k;
  }
  return k;
}

// 1-D 7-tap average along contiguous stretches of length n with stride.
inline void blur_gather_1d(const double* in, double* out, int n, int stride,
                           Boundary boundary) {
  constexpr int H = BlurOperator::kernel_half;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = i - H; k <= i + H; ++k) {
      if (boundary == Boundary::Reflect) {
        s += in[reflect_index(k, n) * stride];
      } else if (k >= 0 && k < n) {
        s += in[k * stride];
      }
    }
    out[i * stride] = s / (2 * H + 1);
  }
}

// Transpose of blur_gather_1d: scatter each input tap into its window.
inline void blur_scatter_1d(const double* in, double* out, int n, int stride,
                            Boundary boundary) {
  constexpr int H = BlurOperator::kernel_half;
  for (int i = 0; i < n; ++i) out[i * stride] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = in[i * stride] / (2 * H + 1);
    for (int k = i - H; k <= i + H; ++k) {
      if (boundary == Boundary::Reflect) {
        out[reflect_index(k, n) * stride] += v;
      } else if (k >= 0 && k < n) {
        out[k * stride] += v;
      }
    }
  }
}

}  // namespace detail

/// Forward blur: separable horizontal then vertical 7-tap average.
inline Vec blur_apply(const BlurOperator& op, std::span<const double> x) {
  const std::size_t n = static_cast<std::size_t>(op.width) * op.height;
  require_same_size(x.size(), n, "blur_apply");
  Vec tmp(n), out(n);
  for (int row = 0; row < op.height; ++row) {
    detail::blur_gather_1d(x.data() + static_cast<std::size_t>(row) * op.width,
                           tmp.data() + static_cast<std::size_t>(row) * op.width,
                           op.width, 1, op.boundary);
  }
  for (int col = 0; col < op.width; ++col) {
    detail::blur_gather_1d(tmp.data() + col, out.data() + col, op.height,
                           op.width, op.boundary);
  }
  return out;
}

/// Adjoint blur: scatter transposes of the two passes, applied in reverse
/// order. Kept as an independent code path so the adjoint identity
/// <Ax, y> = <x, A^T y> is a real check, not a tautology.
inline Vec blur_adjoint(const BlurOperator& op, std::span<const double> y) {
  const std::size_t n = static_cast<std::size_t>(op.width) * op.height;
  require_same_size(y.size(), n, "blur_adjoint");
  Vec tmp(n), out(n);
  for (int col = 0; col < op.width; ++col) {
    detail::blur_scatter_1d(y.data() + col, tmp.data() + col, op.height,
                            op.width, op.boundary);
  }
  for (int row = 0; row < op.height; ++row) {
    detail::blur_scatter_1d(tmp.data() + static_cast<std::size_t>(row) * op.width,
                            out.data() + static_cast<std::size_t>(row) * op.width,
                            op.width, 1, op.boundary);
  }
  return out;
}

inline LinearMap blur_map(const BlurOperator& op) {
  const int n = op.width * op.height;
  return LinearMap(
      n, n,
      [op](std::span<const double> x, std::span<double> y) {
        Vec r = blur_apply(op, x);
        std::copy(r.begin(), r.end(), y.begin());
      },
      [op](std::span<const double> y, std::span<double> x) {
        Vec r = blur_adjoint(op, y);
        std::copy(r.begin(), r.end(), x.begin());
      });
}

/// Peak signal-to-noise ratio in decibels: 10 log10(peak^2 * n / ||e - t||^2).
/// Returns +infinity when the estimate matches the truth exactly.
inline double psnr(std::span<const double> estimate, std::span<const double> truth,
                   double peak) {
  require_same_size(estimate.size(), truth.size(), "psnr");
  if (!(peak > 0.0)) throw ParamError("psnr: peak must be positive");
  double sq = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = estimate[i] - truth[i];
    sq += d * d;
  }
  if (sq == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sq / static_cast<double>(truth.size());
  return 10.0 * std::log10(peak * peak / mse);
}

/// Binary PGM (P5, maxval 255) reader. Intensities are rescaled onto
/// [0, kMaxIntensity] so images plug straight into the restoration protocol.
inline GrayImage load_pgm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("load_pgm: cannot open " + path);

  auto next_token = [&f, &path]() -> std::string {
    std::string tok;
    int c;
    while ((c = f.get()) != EOF) {
      if (c == '#') {  // comment to end of line
        while ((c = f.get()) != EOF && c != '\n') {}
        continue;
      }
      if (std::isspace(c)) {
        if (!tok.empty()) return tok;
        continue;
      }
      tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw FormatError("load_pgm: truncated header in " + path);
    return tok;
  };

  const std::string magic = next_token();
  if (magic != "P5") {
    throw FormatError("load_pgm: unsupported magic '" + magic + "' (need binary P5)");
  }
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(next_token());
    height = std::stoi(next_token());
    maxval = std::stoi(next_token());
  } catch (const std::exception&) {
    throw FormatError("load_pgm: malformed header in " + path);
  }
  if (width < 1 || height < 1) throw FormatError("load_pgm: bad dimensions");
  if (maxval != 255) throw FormatError("load_pgm: maxval must be 255");
  // The single whitespace byte after maxval was consumed by the tokenizer.

  GrayImage img(width, height);
  std::vector<unsigned char> raw(img.size());
  f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (f.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw FormatError("load_pgm: truncated pixel data in " + path);
  }
  const double scale = kMaxIntensity / 255.0;
  for (std::size_t i = 0; i < raw.size(); ++i) img.intensities[i] = raw[i] * scale;
  return img;
}

/// Binary PGM writer, inverse scaling of load_pgm (values clamped to the
/// byte range).
inline void save_pgm(const GrayImage& img, const std::string& path) {
  img.validate();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("save_pgm: cannot open " + path);
  f << "P5\n" << img.width << " " << img.height << "\n255\n";
  const double scale = 255.0 / kMaxIntensity;
  std::vector<unsigned char> raw(img.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = std::lround(img.intensities[i] * scale);
    raw[i] = static_cast<unsigned char>(std::clamp(v, 0.0, 255.0));
  }
  f.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!f) throw FormatError("save_pgm: write failed for " + path);
}

/// Built-in test phantom: a soma disk, a thin bending dendrite, and a
/// mushroom-shaped spine (head on a short neck), on a zero background,
/// normalized so the maximum intensity is exactly kMaxIntensity.
inline GrayImage make_phantom(int width = 64, int height = 64) {
  GrayImage img(width, height);
  const double sx = width / 64.0, sy = height / 64.0;

  auto soft_disk = [](double d, double r, double edge) {
    // 1 inside radius r, smooth falloff over `edge`.
    if (d <= r) return 1.0;
    if (d >= r + edge) return 0.0;
    const double t = (d - r) / edge;
    return 0.5 * (1.0 + std::cos(t * 3.14159265358979323846));
  };

  const double soma_x = 17.0 * sx, soma_y = 42.0 * sy;
  // Dendrite: quadratic path from the soma to the upper-right corner area.
  const int segments = 200;
  std::vector<std::pair<double, double>> path(segments + 1);
  for (int s = 0; s <= segments; ++s) {
    const double t = static_cast<double>(s) / segments;
    path[s] = {(17.0 + 38.0 * t) * sx,
               (42.0 - 26.0 * t + 7.0 * t * (1.0 - t)) * sy};
  }
  // Spine: neck leaving the dendrite at t ~ 0.6, head above it.
  const double base_x = (17.0 + 38.0 * 0.6) * sx;
  const double base_y = (42.0 - 26.0 * 0.6 + 7.0 * 0.6 * 0.4) * sy;
  const double head_x = base_x, head_y = base_y - 7.5 * sy;

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double px = x + 0.5, py = y + 0.5;
      double v = 0.0;
      // Soma.
      const double ds = std::hypot(px - soma_x, py - soma_y);
      v = std::max(v, 1.0 * soft_disk(ds, 6.5 * sx, 2.5 * sx));
      // Dendrite.
      double dmin = std::numeric_limits<double>::infinity();
      for (const auto& [qx, qy] : path) dmin = std::min(dmin, std::hypot(px - qx, py - qy));
      v = std::max(v, 0.55 * soft_disk(dmin, 0.9 * sx, 1.2 * sx));
      // Spine neck (distance to the vertical segment) and mushroom head.
      const double dneck = std::hypot(px - base_x, py - std::clamp(py, head_y, base_y));
      v = std::max(v, 0.5 * soft_disk(dneck, 0.7 * sx, 1.0 * sx));
      const double dhead = std::hypot(px - head_x, (py - head_y) * 1.25);
      v = std::max(v, 0.85 * soft_disk(dhead, 2.6 * sx, 1.5 * sx));
      img.at(x, y) = v;
    }
  }
  double mx = 0.0;
  for (double v : img.intensities) mx = std::max(mx, v);
  for (double& v : img.intensities) v *= kMaxIntensity / mx;
  return img;
}

/// Restoration run description.
struct RestoreOptions {
  Boundary boundary = Boundary::Reflect;
  double background = 1.0;  // background counts added to the blurred image
  bool add_noise = true;    // false: observe the blurred image directly
  int max_iter = 10000;
  double tol = 1e-4;
};

struct RestoreReport {
  SolverVariant method = SolverVariant::RklL1;
  double lambda = 0.0;
  double eta = 0.0;
  double omega = 0.0;
  double eta1 = 0.0;
  double a = 0.0;
  double psnr_db = 0.0;
  int iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

struct RestoreOutput {
  GrayImage restored;
  RestoreReport report;
};

/// Builds the observation model for a ground-truth image: blur, add
/// background, Poisson-corrupt (unless disabled).
inline PoissonModel make_restore_model(const GrayImage& truth,
                                       const RestoreOptions& opt,
                                       std::uint64_t seed) {
  truth.validate();
  BlurOperator blur(truth.width, truth.height, opt.boundary);
  Vec mean = blur_apply(blur, truth.intensities);
  for (double& v : mean) v += opt.background;
  Vec b = opt.add_noise ? sample_poisson(mean, derive_seed(seed, 0)) : mean;
  return PoissonModel(blur_map(blur), std::move(b), opt.background);
}

/// Restores with one explicit solver configuration.
inline RestoreOutput restore_with_config(const GrayImage& truth,
                                         const SolverConfig& cfg,
                                         std::uint64_t seed,
                                         const RestoreOptions& opt = {}) {
  const PoissonModel model = make_restore_model(truth, opt, seed);
  const SolveResult r = solve(cfg, model, truth.intensities);

  RestoreOutput out;
  out.restored = GrayImage(truth.width, truth.height);
  out.restored.intensities = r.x;
  out.report.method = cfg.variant;
  out.report.lambda = cfg.lambda;
  out.report.eta = cfg.l1_weight;
  if (cfg.ext_div) {
    out.report.omega = cfg.ext_div->omega;
    out.report.eta1 = cfg.ext_div->eta1;
    out.report.a = cfg.ext_div->a;
  }
  out.report.psnr_db = psnr(r.x, truth.intensities, kMaxIntensity);
  out.report.iterations = r.iterations;
  out.report.converged = r.converged;
  out.report.seed = seed;
  return out;
}

/// Per-method default hyperparameter candidates for restoration, searched
/// by oracle PSNR the way the synthetic benchmark searches by NMSE.
struct RestoreCandidate {
  double lambda_frac = 0.9;
  double eta = 0.0;
  double omega = 2.0;
  double eta1 = 0.3;
  double a = 0.0;
};

inline std::vector<RestoreCandidate> default_restore_candidates(SolverVariant method) {
  std::vector<RestoreCandidate> cs;
  auto add = [&](double lf, double eta, double omega, double eta1, double a) {
    cs.push_back({lf, eta, omega, eta1, a});
  };
  switch (method) {
    case SolverVariant::FklL1:
      for (double eta : {0.003, 0.03, 0.3}) add(1.0, eta, 2.0, 0.3, 0.0);
      break;
    case SolverVariant::RklL1:
      for (double eta : {0.003, 0.01, 0.03, 0.1, 0.3}) add(0.9, eta, 2.0, 0.3, 0.0);
      break;
    case SolverVariant::Proposed:
      for (double a : {0.2, 0.5, 1.0, 2.0, 4.0}) add(0.9, 0.0, 2.0, 0.3, a);
      break;
    case SolverVariant::ProposedA0:
      add(0.9, 0.0, 2.0, 0.3, 0.0);
      break;
  }
  return cs;
}

/// Restores with the best default candidate for the method (oracle PSNR
/// selection, mirroring the grid-search protocol).
inline RestoreOutput restore(const GrayImage& truth, SolverVariant method,
                             std::uint64_t seed, const RestoreOptions& opt = {}) {
  const PoissonModel model = make_restore_model(truth, opt, seed);
  const double bound = step_bound(fidelity_for(method), model);

  RestoreOutput best;
  double best_psnr = -std::numeric_limits<double>::infinity();
  for (const RestoreCandidate& c : default_restore_candidates(method)) {
    SolverConfig cfg;
    cfg.variant = method;
    cfg.lambda = c.lambda_frac * bound;
    cfg.max_iter = opt.max_iter;
    cfg.tol = opt.tol;
    cfg.l1_weight = c.eta;
    cfg.record_trace = false;
    if (method == SolverVariant::Proposed) {
      cfg.ext_div = validate_ext_div_params(c.omega, c.eta1, c.a);
    }
    try {
      const SolveResult r = solve(cfg, model, truth.intensities);
      const double p = psnr(r.x, truth.intensities, kMaxIntensity);
      if (p > best_psnr) {
        best_psnr = p;
        best.restored = GrayImage(truth.width, truth.height);
        best.restored.intensities = r.x;
        best.report.method = method;
        best.report.lambda = cfg.lambda;
        best.report.eta = cfg.l1_weight;
        best.report.omega = cfg.ext_div ? cfg.ext_div->omega : 0.0;
        best.report.eta1 = cfg.ext_div ? cfg.ext_div->eta1 : 0.0;
        best.report.a = cfg.ext_div ? cfg.ext_div->a : 0.0;
        best.report.psnr_db = p;
        best.report.iterations = r.iterations;
        best.report.converged = r.converged;
        best.report.seed = seed;
      }
    } catch (const std::exception&) {
      // non-competitive candidate
    }
  }
  if (!(best_psnr > -std::numeric_limits<double>::infinity())) {
    throw StepError("restore: every candidate configuration failed");
  }
  return best;
}

}  // namespace extdiv
