#include "chebstep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chebstep/dense_ops.hpp"
#include "chebstep/errors.hpp"
#include "chebstep/kernels.hpp"
#include "chebstep/lapack.hpp"

namespace chebstep {

namespace {

std::vector<double> to_dense(const CsrMatrix& a) {
  std::vector<double> dense(static_cast<std::size_t>(a.n) * a.n, 0.0);
  for (index_t i = 0; i < a.n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      dense[static_cast<std::size_t>(i) + static_cast<std::size_t>(cols[k]) * a.n] = vals[k];
  }
  return dense;
}

}  // namespace

DenseEigen dense_eigendecomposition(const CsrMatrix& a) {
  if (a.n > kDenseAnalysisGuard)
    throw GuardExceededError("dense_eigendecomposition: n exceeds 2048");
  DenseEigen e;
  e.n = a.n;
  e.vectors = to_dense(a);
  e.values = lapack::sym_eig(a.n, e.vectors);
  return e;
}

std::vector<double> dense_from_eigen(const DenseEigen& e, double (*f)(double)) {
  const index_t n = e.n;
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> scaled(static_cast<std::size_t>(n));
  for (index_t l = 0; l < n; ++l) {
    const double fl = f(e.values[static_cast<std::size_t>(l)]);
    const double* v = e.vectors.data() + static_cast<std::size_t>(l) * n;
    for (index_t i = 0; i < n; ++i) scaled[static_cast<std::size_t>(i)] = fl * v[i];
    for (index_t j = 0; j < n; ++j)
      kernels::active().axpy(static_cast<std::size_t>(n), v[j], scaled.data(),
                             out.data() + static_cast<std::size_t>(j) * n);
  }
  return out;
}

std::vector<double> dense_sqrt(const DenseEigen& e) {
  for (double l : e.values)
    if (!(l > 0.0)) throw NotSpdError("dense_sqrt: non-positive eigenvalue");
  return dense_from_eigen(e, [](double x) { return std::sqrt(x); });
}

SpectrumEstimate estimate_interval(const CsrMatrix& a, const Preconditioner& m,
                                   int steps, std::uint64_t seed) {
  if (steps < 2) throw InvalidArgumentError("estimate_interval: steps >= 2");
  const index_t n = a.n;
  const std::size_t un = static_cast<std::size_t>(n);

  // Lanczos on M^{-1}A in the M inner product. Basis vectors v_j are
  // M-orthonormal; the companion vectors g_j = M v_j never require applying
  // M itself because g updates mirror v updates on the A side.
  std::vector<std::vector<double>> vs, gs;
  std::vector<double> alpha, beta;

  std::vector<double> v = random_vector(n, seed);
  std::vector<double> g(un), t(un);
  // g0 = M v0 is unknown without M; start instead from v0 = M^{-1} u with
  // u random, so g0 = u exactly.
  g = v;
  m.apply(g, v);
  double nrm = std::sqrt(dot(v, g));
  if (!(nrm > 0.0)) throw Error("estimate_interval: degenerate start vector");
  for (std::size_t i = 0; i < un; ++i) {
    v[i] /= nrm;
    g[i] /= nrm;
  }

  for (int j = 0; j < steps; ++j) {
    spmv_into(a, v, t);                    // t = A v_j
    const double aj = dot(v, t);           // <v_j, M^{-1}A v_j>_M
    if (!std::isfinite(aj)) throw Error("estimate_interval: non-finite value");
    alpha.push_back(aj);
    vs.push_back(v);
    gs.push_back(g);

    std::vector<double> r(un), gr(un);
    m.apply(t, r);  // r = M^{-1} A v_j
    gr = t;
    const auto& kern = kernels::active();
    kern.axpy(un, -aj, vs.back().data(), r.data());
    kern.axpy(un, -aj, gs.back().data(), gr.data());
    if (j > 0) {
      kern.axpy(un, -beta.back(), vs[vs.size() - 2].data(), r.data());
      kern.axpy(un, -beta.back(), gs[gs.size() - 2].data(), gr.data());
    }
    // Full reorthogonalization in the M inner product.
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const double proj = dot(gs[i], r);
      kern.axpy(un, -proj, vs[i].data(), r.data());
      kern.axpy(un, -proj, gs[i].data(), gr.data());
    }
    const double bj = std::sqrt(std::max(0.0, dot(r, gr)));
    if (!std::isfinite(bj)) throw Error("estimate_interval: non-finite value");
    if (bj == 0.0) break;  // invariant subspace found; use completed steps
    if (j + 1 < steps) {
      beta.push_back(bj);
      for (std::size_t i = 0; i < un; ++i) {
        v[i] = r[i] / bj;
        g[i] = gr[i] / bj;
      }
    }
  }

  std::vector<double> ritz =
      lapack::tridiag_eigvals(alpha, beta.empty() ? std::vector<double>{} : beta);
  SpectrumEstimate est;
  est.method = SpectrumMethod::lanczos;
  est.low_factor = 0.9;
  est.high_factor = 1.1;
  est.lambda_min = est.low_factor * ritz.front();
  est.lambda_max = est.high_factor * ritz.back();
  if (!(est.lambda_min > 0.0) || !std::isfinite(est.lambda_max))
    throw NotSpdError("estimate_interval: operator not positive definite");
  return est;
}

SpectrumEstimate exact_dense_interval(const CsrMatrix& a) {
  const DenseEigen e = dense_eigendecomposition(a);
  SpectrumEstimate est;
  est.method = SpectrumMethod::exact_dense;
  est.lambda_min = e.values.front();
  est.lambda_max = e.values.back();
  return est;
}

std::pair<double, double> gershgorin_bounds(const CsrMatrix& a) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (index_t i = 0; i < a.n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_vals(i);
    double diag = 0.0, radius = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == i)
        diag = vals[k];
      else
        radius += std::abs(vals[k]);
    }
    lo = std::min(lo, diag - radius);
    hi = std::max(hi, diag + radius);
  }
  return {lo, hi};
}

}  // namespace chebstep
