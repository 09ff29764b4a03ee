#pragma once

#include <span>
#include <vector>

#include "chebstep/util.hpp"

namespace chebstep {

/// n x k column block (column-major). Holds Krylov bases and direction
/// blocks; columns are independent and column writes leave the rest of the
/// storage untouched.
struct VectorBlock {
  index_t n = 0;
  index_t k = 0;
  std::vector<double> data;

  VectorBlock() = default;
  VectorBlock(index_t n_, index_t k_);

  double* col(index_t j) { return data.data() + j * n; }
  const double* col(index_t j) const { return data.data() + j * n; }
  std::span<double> col_span(index_t j) { return {col(j), static_cast<std::size_t>(n)}; }
  std::span<const double> col_span(index_t j) const {
    return {col(j), static_cast<std::size_t>(n)};
  }
  void set_col(index_t j, std::span<const double> v);

  /// Columns [first, first+count) as a new block.
  VectorBlock columns(index_t first, index_t count) const;

  static VectorBlock from_column(std::span<const double> v);
};

inline constexpr int kSmallDenseMax = 64;

/// Small column-major dense matrix; dimensions are capped at 64 so the
/// Cholesky and sweep kernels never need workspace management.
struct SmallDense {
  int rows = 0, cols = 0;
  std::vector<double> data;

  SmallDense() = default;
  SmallDense(int r, int c);

  double& at(int i, int j) { return data[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows]; }
  double at(int i, int j) const {
    return data[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows];
  }
  std::span<double> col_span(int j) { return {data.data() + static_cast<std::size_t>(j) * rows, static_cast<std::size_t>(rows)}; }
  std::span<const double> col_span(int j) const {
    return {data.data() + static_cast<std::size_t>(j) * rows, static_cast<std::size_t>(rows)};
  }

  static SmallDense identity(int m);
  static SmallDense from_column(std::span<const double> v);
};

double frobenius_norm(const SmallDense& m);
double max_abs(const SmallDense& m);

}  // namespace chebstep
