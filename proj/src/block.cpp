#include "chebstep/block.hpp"

#include <algorithm>
#include <cmath>

#include "chebstep/errors.hpp"

namespace chebstep {

VectorBlock::VectorBlock(index_t n_, index_t k_) : n(n_), k(k_) {
  if (n_ < 0 || k_ < 0) throw DimensionError("VectorBlock: negative shape");
  data.assign(static_cast<std::size_t>(n_ * k_), 0.0);
}

void VectorBlock::set_col(index_t j, std::span<const double> v) {
  if (static_cast<index_t>(v.size()) != n)
    throw DimensionError("set_col: length mismatch");
  std::copy(v.begin(), v.end(), col(j));
}

VectorBlock VectorBlock::columns(index_t first, index_t count) const {
  if (first < 0 || count < 0 || first + count > k)
    throw DimensionError("columns: range out of bounds");
  VectorBlock out(n, count);
  std::copy(col(first), col(first) + n * count, out.data.begin());
  return out;
}

VectorBlock VectorBlock::from_column(std::span<const double> v) {
  VectorBlock out(static_cast<index_t>(v.size()), 1);
  out.set_col(0, v);
  return out;
}

SmallDense::SmallDense(int r, int c) : rows(r), cols(c) {
  if (r < 0 || c < 0 || r > kSmallDenseMax || c > kSmallDenseMax)
    throw DimensionError("SmallDense: dimensions must be in [0, 64]");
  data.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0.0);
}

SmallDense SmallDense::identity(int m) {
  SmallDense out(m, m);
  for (int i = 0; i < m; ++i) out.at(i, i) = 1.0;
  return out;
}

SmallDense SmallDense::from_column(std::span<const double> v) {
  SmallDense out(static_cast<int>(v.size()), 1);
  std::copy(v.begin(), v.end(), out.data.begin());
  return out;
}

double frobenius_norm(const SmallDense& m) {
  double acc = 0.0;
  for (double x : m.data) acc += x * x;
  return std::sqrt(acc);
}

double max_abs(const SmallDense& m) {
  double best = 0.0;
  for (double x : m.data) best = std::max(best, std::abs(x));
  return best;
}

}  // namespace chebstep
