#pragma once

#include <span>
#include <vector>

#include "chebstep/block.hpp"
#include "chebstep/csr.hpp"
#include "chebstep/dense_ops.hpp"

namespace chebstep {

/// Small SPD Gram system W with its diagonal and the splitting
/// W = D + L + L^T implied by it. Immutable after assembly.
struct GramSystem {
  SmallDense w;
  std::vector<double> diag;
  bool normalized = false;  // unit diagonal, exactly

  int order() const { return w.rows; }

  /// Strictly lower triangular part L.
  SmallDense strict_lower() const;
};

/// W = q^T aq, symmetrized as (W + W^T)/2 to remove roundoff asymmetry.
/// A non-positive diagonal entry signals basis degeneracy.
GramSystem assemble_gram(const VectorBlock& q, const VectorBlock& aq);

/// Gram system from an explicit symmetric matrix (analysis paths).
GramSystem gram_from_matrix(const SmallDense& w);

/// D^{-1/2} W D^{-1/2} with the unit diagonal stored exactly.
GramSystem normalize_gram(const GramSystem& g);

struct FgsConfig {
  int nu = 30;           // sweep count
  bool multi_rhs = true; // accept block right-hand sides
};

struct FgsResult {
  SmallDense x;
  double rel_residual;  // ||rhs - W x||_F / ||rhs||_F
};

/// nu forward Gauss-Seidel sweeps on W x = rhs from x = 0, using the true
/// diagonal splitting W = D + L + L^T (on a normalized system D = I).
/// Right-hand-side columns are solved independently with the same sweep
/// count. A zero rhs returns x = 0 with residual 0.
FgsResult fgs_solve(const GramSystem& g, const SmallDense& rhs,
                    const FgsConfig& cfg);

/// Closed-form residual after nu sweeps on a normalized system,
/// (-1)^nu (L^T (I+L)^{-1})^nu m, evaluated by repeated triangular solves.
/// Test oracle; independent of fgs_solve.
std::vector<double> fgs_residual_oracle(const GramSystem& g,
                                        std::span<const double> m, int nu);

struct FgsRate {
  double spectral_norm;    // ||L^T (I+L)^{-1}||_2
  double spectral_radius;  // rho(L^T (I+L)^{-1})
};

/// Norm and radius of the residual iteration matrix of a normalized system.
FgsRate fgs_rate(const GramSystem& g);

/// One FGS sweep on W alpha = e_1 against one MGS pass: returns
/// ||P alpha - mgs_orthogonalize_first(p)||_2. Columns of p must be
/// unit-norm in the chosen inner product.
double ruhe_equivalence_check(const VectorBlock& p, const InnerProduct& ip);

struct GramKappa {
  double kappa_w;         // kappa_2(W)
  double kappa_a_half_q;  // kappa_2(A^{1/2} Q)
};

/// Condition numbers verifying kappa_2(A^{1/2}Q)^2 = kappa_2(W) for an
/// A-normalized block. Needs the dense path, so n <= 2048.
GramKappa gram_kappa_check(const VectorBlock& q, const CsrMatrix& a);

}  // namespace chebstep
