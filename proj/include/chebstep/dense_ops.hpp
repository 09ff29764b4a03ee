#pragma once

#include <span>
#include <vector>

#include "chebstep/block.hpp"
#include "chebstep/csr.hpp"

namespace chebstep {

/// Ascending-index summation; the fixed order makes every reduction in the
/// library bitwise reproducible.
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

/// G = u^T v, entry (i,j) accumulated over rows in ascending order.
SmallDense block_gram(const VectorBlock& u, const VectorBlock& v);

/// y + x*c. Shapes: x is n x m, c is m x k, y is n x k.
VectorBlock block_update(const VectorBlock& y, const VectorBlock& x,
                         const SmallDense& c);

/// x*c for a single coefficient column.
std::vector<double> block_combine(const VectorBlock& x, std::span<const double> c);

/// Cholesky solve of W X = rhs for SPD W (order <= 64). Throws NotSpdError
/// on a non-positive pivot.
SmallDense small_cholesky_solve(const SmallDense& w, const SmallDense& rhs);

/// LDL^T pivot sequence without failing on semidefiniteness; used to test
/// positive semidefiniteness up to roundoff.
std::vector<double> ldlt_pivots(const SmallDense& w);

struct InnerProduct {
  enum class Kind { euclidean, a_weighted };
  Kind kind = Kind::euclidean;
  const CsrMatrix* a = nullptr;

  static InnerProduct euclidean() { return {}; }
  static InnerProduct a_inner(const CsrMatrix& a_) {
    return {Kind::a_weighted, &a_};
  }

  /// x^T y or x^T (A y).
  double dot(std::span<const double> x, std::span<const double> y) const;
  double norm(std::span<const double> x) const;
};

/// One modified Gram-Schmidt pass: orthogonalize the first column against
/// the rest with the running vector, v <- v - <p_j, v> p_j for j = 2..s.
/// Columns must be unit-norm in the chosen inner product.
std::vector<double> mgs_orthogonalize_first(const VectorBlock& p,
                                            const InnerProduct& ip);

}  // namespace chebstep
