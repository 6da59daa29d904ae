#pragma once

#include <functional>
#include <memory>
#include <span>
#include <utility>

#include "extdiv/errors.hpp"
#include "extdiv/vec.hpp"

namespace extdiv {

/// Dense row-major matrix, just enough linear algebra for the solvers.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  Vec data;  // row-major, rows*cols entries

  DenseMatrix() = default;
  DenseMatrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  void apply(std::span<const double> x, std::span<double> y) const {
    require_same_size(x.size(), static_cast<std::size_t>(cols), "DenseMatrix::apply");
    require_same_size(y.size(), static_cast<std::size_t>(rows), "DenseMatrix::apply");
    for (int i = 0; i < rows; ++i) {
      const double* row = data.data() + static_cast<std::size_t>(i) * cols;
      double s = 0.0;
      for (int j = 0; j < cols; ++j) s += row[j] * x[j];
      y[i] = s;
    }
  }

  void apply_adjoint(std::span<const double> y, std::span<double> x) const {
    require_same_size(y.size(), static_cast<std::size_t>(rows), "DenseMatrix::apply_adjoint");
    require_same_size(x.size(), static_cast<std::size_t>(cols), "DenseMatrix::apply_adjoint");
    for (int j = 0; j < cols; ++j) x[j] = 0.0;
    for (int i = 0; i < rows; ++i) {
      const double* row = data.data() + static_cast<std::size_t>(i) * cols;
      const double yi = y[i];
      if (yi == 0.0) continue;
      for (int j = 0; j < cols; ++j) x[j] += row[j] * yi;
    }
  }
};

/// Type-erased m x n linear operator given by an apply/adjoint pair, so that
/// stencil operators (image blur) never materialize a matrix.
class LinearMap {
 public:
  using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

  LinearMap() = default;
  LinearMap(int rows, int cols, ApplyFn apply, ApplyFn adjoint)
      : rows_(rows), cols_(cols), apply_(std::move(apply)), adjoint_(std::move(adjoint)) {}

  static LinearMap dense(DenseMatrix m) {
    auto shared = std::make_shared<DenseMatrix>(std::move(m));
    const int r = shared->rows;
    const int c = shared->cols;
    return LinearMap(
        r, c,
        [shared](std::span<const double> x, std::span<double> y) { shared->apply(x, y); },
        [shared](std::span<const double> y, std::span<double> x) { shared->apply_adjoint(y, x); });
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void apply(std::span<const double> x, std::span<double> y) const {
    require_same_size(x.size(), static_cast<std::size_t>(cols_), "LinearMap::apply");
    require_same_size(y.size(), static_cast<std::size_t>(rows_), "LinearMap::apply");
    apply_(x, y);
  }

  void apply_adjoint(std::span<const double> y, std::span<double> x) const {
    require_same_size(y.size(), static_cast<std::size_t>(rows_), "LinearMap::apply_adjoint");
    require_same_size(x.size(), static_cast<std::size_t>(cols_), "LinearMap::apply_adjoint");
    adjoint_(y, x);
  }

  Vec apply(std::span<const double> x) const {
    Vec y(rows_);
    apply(x, y);
    return y;
  }

  Vec apply_adjoint(std::span<const double> y) const {
    Vec x(cols_);
    apply_adjoint(y, x);
    return x;
  }

  /// Column sums, computed as adjoint applied to the all-ones vector.
  Vec column_sums() const {
    Vec one(rows_, 1.0);
    return apply_adjoint(one);
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  ApplyFn apply_;
  ApplyFn adjoint_;
};

}  // namespace extdiv
