#pragma once

#include <span>

#include "chebstep/block.hpp"
#include "chebstep/csr.hpp"
#include "chebstep/precond.hpp"
#include "chebstep/spectral.hpp"

namespace chebstep {

/// Recurrence coefficients of the shifted-scaled Chebyshev basis on the
/// interval [lambda_min, lambda_max].
struct ChebyshevParams {
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  static ChebyshevParams from_interval(double lo, double hi);
  static ChebyshevParams from_estimate(const SpectrumEstimate& e) {
    return from_interval(e.lambda_min, e.lambda_max);
  }

  double alpha() const { return 2.0 / (lambda_max - lambda_min); }
  double sigma() const {
    return (lambda_max + lambda_min) / (lambda_max - lambda_min);
  }
  double gamma() const { return 1.0; }
};

struct MpkResult {
  VectorBlock z;  // n x s, z_j = M^{-1} T_{j-1}(shifted A) r
  VectorBlock p;  // n x (s+1); column 0 carries r, columns 1..s carry A z_j
};

/// Matrix power kernel for the Chebyshev block basis:
///   p_1 = r, zp_1 = p_1, z_1 = M^{-1} zp_1
///   p_2 = A z_1, zp_2 = alpha p_2 - sigma zp_1, z_2 = M^{-1} zp_2
///   p_{q+1} = A z_q, zp_{q+1} = 2 alpha p_{q+1} - 2 sigma zp_q - gamma zp_{q-1}
///   p_{s+1} = A z_s
/// The first step uses (alpha, sigma), later steps (2 alpha, 2 sigma, gamma):
/// T_1(x) = x while T_{j+1}(x) = 2x T_j(x) - T_{j-1}(x). Preconditioner and
/// operator applications alternate, one per column.
MpkResult mpk_chebyshev(const CsrMatrix& a, std::span<const double> r, int s,
                        const Preconditioner& m, const ChebyshevParams& params);

}  // namespace chebstep
