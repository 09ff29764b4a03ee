#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chebstep/csr.hpp"
#include "chebstep/precond.hpp"

namespace chebstep {

/// Largest dimension accepted by the dense analysis paths.
inline constexpr index_t kDenseAnalysisGuard = 2048;

enum class SpectrumMethod { lanczos, gershgorin, exact_dense };

/// Positive interval covering the spectrum of the (preconditioned) operator.
/// lambda_min/lambda_max already include the safety widening recorded in
/// low_factor/high_factor.
struct SpectrumEstimate {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  SpectrumMethod method = SpectrumMethod::lanczos;
  double low_factor = 1.0;
  double high_factor = 1.0;
};

struct DenseEigen {
  index_t n = 0;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major, column l pairs with values[l]
};

/// Full eigendecomposition of a symmetric sparse matrix, n <= 2048.
DenseEigen dense_eigendecomposition(const CsrMatrix& a);

/// V f(Lambda) V^T as a dense column-major matrix.
std::vector<double> dense_from_eigen(const DenseEigen& e,
                                     double (*f)(double));

/// A^{1/2} from an eigendecomposition of an SPD matrix.
std::vector<double> dense_sqrt(const DenseEigen& e);

/// Lanczos in the M inner product on M^{-1}A with a seeded start vector and
/// full reorthogonalization. Ritz extremes are widened by factors 0.9/1.1;
/// Chebyshev stability needs coverage of the spectrum, not tight bounds.
/// A zero off-diagonal ends the iteration early and the interval comes from
/// the completed steps.
SpectrumEstimate estimate_interval(const CsrMatrix& a, const Preconditioner& m,
                                   int steps, std::uint64_t seed);

/// Exact extremes from the dense path, no widening. n <= 2048.
SpectrumEstimate exact_dense_interval(const CsrMatrix& a);

/// Row-wise enclosure [min_i (a_ii - r_i), max_i (a_ii + r_i)]; the lower
/// end may be non-positive (diagonally semi-dominant rows).
std::pair<double, double> gershgorin_bounds(const CsrMatrix& a);

}  // namespace chebstep
