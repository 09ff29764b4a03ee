#pragma once

#include <span>
#include <vector>

#include "chebstep/util.hpp"

namespace chebstep {

/// Symmetric sparse matrix in compressed-row form. Column indices within a
/// row are strictly increasing; values are stored for both (i,j) and (j,i).
struct CsrMatrix {
  index_t n = 0;
  std::vector<index_t> row_offsets;  // length n+1, row_offsets[0] == 0
  std::vector<index_t> col_indices;  // length nnz
  std::vector<double> values;        // length nnz

  index_t nnz() const { return static_cast<index_t>(col_indices.size()); }

  std::span<const index_t> row_cols(index_t i) const {
    return {col_indices.data() + row_offsets[i],
            static_cast<std::size_t>(row_offsets[i + 1] - row_offsets[i])};
  }
  std::span<const double> row_vals(index_t i) const {
    return {values.data() + row_offsets[i],
            static_cast<std::size_t>(row_offsets[i + 1] - row_offsets[i])};
  }

  /// Stored diagonal entry, or 0 when absent.
  double diagonal(index_t i) const;

  static CsrMatrix identity(index_t n);
  static CsrMatrix diagonal_matrix(std::span<const double> d);

  /// Sorted COO triples (upper or full) -> CSR. Triples must cover a full
  /// symmetric pattern already; no mirroring happens here.
  static CsrMatrix from_triplets(index_t n,
                                 std::vector<std::pair<std::pair<index_t, index_t>, double>> t);
};

/// Structural invariants: offset monotonicity, sorted in-range columns.
void validate_structure(const CsrMatrix& a);

/// Structural and numerical symmetry: every stored (i,j,v) has (j,i,v).
void validate_symmetric(const CsrMatrix& a);

/// All diagonal entries present and strictly positive.
void validate_spd_diagonal(const CsrMatrix& a);

/// y = A x, each row accumulated in stored column order. Deterministic:
/// identical inputs give bitwise-identical output.
std::vector<double> spmv(const CsrMatrix& a, std::span<const double> x);
void spmv_into(const CsrMatrix& a, std::span<const double> x, std::span<double> y);

}  // namespace chebstep
