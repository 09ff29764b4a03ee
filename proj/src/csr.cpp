#include "chebstep/csr.hpp"

#include <algorithm>
#include <cmath>

#include "chebstep/errors.hpp"

namespace chebstep {

double CsrMatrix::diagonal(index_t i) const {
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), i);
  if (it == cols.end() || *it != i) return 0.0;
  return values[row_offsets[i] + (it - cols.begin())];
}

CsrMatrix CsrMatrix::identity(index_t n) {
  CsrMatrix a;
  a.n = n;
  a.row_offsets.resize(n + 1);
  a.col_indices.resize(n);
  a.values.assign(n, 1.0);
  for (index_t i = 0; i <= n; ++i) a.row_offsets[i] = i;
  for (index_t i = 0; i < n; ++i) a.col_indices[i] = i;
  return a;
}

CsrMatrix CsrMatrix::diagonal_matrix(std::span<const double> d) {
  CsrMatrix a = identity(static_cast<index_t>(d.size()));
  std::copy(d.begin(), d.end(), a.values.begin());
  return a;
}

CsrMatrix CsrMatrix::from_triplets(
    index_t n, std::vector<std::pair<std::pair<index_t, index_t>, double>> t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return a.first < b.first;
  });
  for (std::size_t k = 1; k < t.size(); ++k)
    if (t[k].first == t[k - 1].first)
      throw InvalidMatrixError("duplicate entry in triplet list");
  CsrMatrix a;
  a.n = n;
  a.row_offsets.assign(n + 1, 0);
  a.col_indices.reserve(t.size());
  a.values.reserve(t.size());
  for (const auto& [ij, v] : t) {
    const auto [i, j] = ij;
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw InvalidMatrixError("triplet index out of range");
    a.row_offsets[i + 1]++;
    a.col_indices.push_back(j);
    a.values.push_back(v);
  }
  for (index_t i = 0; i < n; ++i) a.row_offsets[i + 1] += a.row_offsets[i];
  return a;
}

void validate_structure(const CsrMatrix& a) {
  if (a.n < 0 || static_cast<index_t>(a.row_offsets.size()) != a.n + 1)
    throw InvalidMatrixError("row_offsets length must be n+1");
  if (a.row_offsets.front() != 0)
    throw InvalidMatrixError("row_offsets[0] must be 0");
  if (a.row_offsets.back() != a.nnz() ||
      a.values.size() != a.col_indices.size())
    throw InvalidMatrixError("row_offsets[n] must equal nnz");
  for (index_t i = 0; i < a.n; ++i) {
    if (a.row_offsets[i] > a.row_offsets[i + 1])
      throw InvalidMatrixError("row_offsets must be nondecreasing");
    const auto cols = a.row_cols(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] < 0 || cols[k] >= a.n)
        throw InvalidMatrixError("column index out of range");
      if (k > 0 && cols[k] <= cols[k - 1])
        throw InvalidMatrixError("column indices must be strictly increasing");
    }
  }
  for (double v : a.values)
    if (!std::isfinite(v)) throw InvalidMatrixError("non-finite matrix value");
}

void validate_symmetric(const CsrMatrix& a) {
  validate_structure(a);
  for (index_t i = 0; i < a.n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const index_t j = cols[k];
      const auto jcols = a.row_cols(j);
      const auto it = std::lower_bound(jcols.begin(), jcols.end(), i);
      if (it == jcols.end() || *it != i)
        throw InvalidMatrixError("missing symmetric counterpart entry");
      const double vt = a.values[a.row_offsets[j] + (it - jcols.begin())];
      if (vt != vals[k])
        throw InvalidMatrixError("symmetric counterpart value differs");
    }
  }
}

void validate_spd_diagonal(const CsrMatrix& a) {
  for (index_t i = 0; i < a.n; ++i) {
    const auto cols = a.row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), i);
    if (it == cols.end() || *it != i)
      throw NotSpdError("missing diagonal entry in SPD matrix");
    if (a.values[a.row_offsets[i] + (it - cols.begin())] <= 0.0)
      throw NotSpdError("non-positive diagonal entry in SPD matrix");
  }
}

void spmv_into(const CsrMatrix& a, std::span<const double> x,
               std::span<double> y) {
  if (static_cast<index_t>(x.size()) != a.n ||
      static_cast<index_t>(y.size()) != a.n)
    throw DimensionError("spmv: vector length must equal matrix dimension");
  for (index_t i = 0; i < a.n; ++i) {
    const index_t begin = a.row_offsets[i];
    const index_t end = a.row_offsets[i + 1];
    double acc = 0.0;
    for (index_t k = begin; k < end; ++k)
      acc = acc + a.values[k] * x[a.col_indices[k]];
    y[i] = acc;
  }
}

std::vector<double> spmv(const CsrMatrix& a, std::span<const double> x) {
  std::vector<double> y(static_cast<std::size_t>(a.n));
  spmv_into(a, x, y);
  return y;
}

}  // namespace chebstep
