#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <random>
#include <span>

#include "extdiv/errors.hpp"
#include "extdiv/linear_map.hpp"
#include "extdiv/rng.hpp"
#include "extdiv/vec.hpp"

namespace extdiv {

/// Configuration of one synthetic recovery problem family.
struct SyntheticSpec {
  int m = 100;            // observations
  int n = 150;            // unknowns
  double rho = 0.1;       // sparsity fraction (nonzeros / n)
  double k_max = 50.0;    // nonzero magnitudes drawn uniformly from [0, k_max]
  std::uint64_t seed = 1;
  int trials = 50;

  void validate() const {
    if (m < 1 || n < 1) throw ParamError("SyntheticSpec: m, n must be >= 1");
    if (!(rho > 0.0) || rho > 1.0) throw ParamError("SyntheticSpec: rho in (0, 1]");
    if (std::lround(rho * n) < 1) {
      throw ParamError("SyntheticSpec: round(rho*n) must be >= 1");
    }
    if (!(k_max > 0.0)) throw ParamError("SyntheticSpec: k_max must be > 0");
    if (trials < 1) throw ParamError("SyntheticSpec: trials must be >= 1");
  }
};

/// Sensing matrix with IID entries 0 or 1/m with equal probability. Any
/// column that comes out identically zero is redrawn so every coordinate
/// stays identifiable.
inline DenseMatrix gen_sensing_matrix(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ParamError("gen_sensing_matrix: m, n must be >= 1");
  auto rng = make_rng(seed);
  std::bernoulli_distribution coin(0.5);
  const double v = 1.0 / m;
  DenseMatrix A(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = coin(rng) ? v : 0.0;
  }
  for (int j = 0; j < n; ++j) {
    bool zero = true;
    for (int i = 0; i < m && zero; ++i) zero = (A(i, j) == 0.0);
    int redraws = 0;
    while (zero) {
      for (int i = 0; i < m; ++i) A(i, j) = coin(rng) ? v : 0.0;
      zero = true;
      for (int i = 0; i < m && zero; ++i) zero = (A(i, j) == 0.0);
      ++redraws;
    }
    if (redraws > 0) {
      std::cerr << "gen_sensing_matrix: resampled all-zero column " << j
                << " (" << redraws << " redraw(s))\n";
    }
  }
  return A;
}

/// Sparse ground truth: exactly round(rho*n) nonzeros on a uniformly random
/// support, values uniform on [0, k_max].
inline Vec gen_ground_truth(int n, double rho, double k_max, std::uint64_t seed) {
  if (n < 1) throw ParamError("gen_ground_truth: n must be >= 1");
  if (!(rho > 0.0) || rho > 1.0) throw ParamError("gen_ground_truth: rho in (0, 1]");
  if (!(k_max > 0.0)) throw ParamError("gen_ground_truth: k_max must be > 0");
  const int k = static_cast<int>(std::lround(rho * n));
  if (k < 1) throw ParamError("gen_ground_truth: round(rho*n) must be >= 1");

  auto rng = make_rng(seed);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates: the first k slots become the support.
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::uniform_real_distribution<double> mag(0.0, k_max);
  Vec x(n, 0.0);
  for (int i = 0; i < k; ++i) x[idx[i]] = mag(rng);
  return x;
}

/// Independent Poisson draws per coordinate, returned as reals.
inline Vec sample_poisson(std::span<const double> mean, std::uint64_t seed) {
  auto rng = make_rng(seed);
  Vec out(mean.size());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const double mu = mean[i];
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw DomainError("sample_poisson: mean must be nonnegative and finite");
    }
    if (mu == 0.0) {
      out[i] = 0.0;
    } else {
      std::poisson_distribution<long> pois(mu);
      out[i] = static_cast<double>(pois(rng));
    }
  }
  return out;
}

/// Normalized mean squared error ||estimate - truth||_2 / ||truth||_2.
inline double nmse(std::span<const double> estimate, std::span<const double> truth) {
  require_same_size(estimate.size(), truth.size(), "nmse");
  const double denom = norm2(truth);
  if (!(denom > 0.0)) throw ParamError("nmse: truth must be nonzero");
  return dist2(estimate, truth) / denom;
}

}  // namespace extdiv
