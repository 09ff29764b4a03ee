#include "chebstep/mpk.hpp"

#include <cmath>
#include <string>

#include "chebstep/errors.hpp"
#include "chebstep/kernels.hpp"

namespace chebstep {

ChebyshevParams ChebyshevParams::from_interval(double lo, double hi) {
  if (!(hi > lo) || !(lo > 0.0) || !std::isfinite(hi))
    throw InvalidArgumentError(
        "ChebyshevParams: need lambda_max > lambda_min > 0");
  return {lo, hi};
}

namespace {
bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}
}  // namespace

MpkResult mpk_chebyshev(const CsrMatrix& a, std::span<const double> r, int s,
                        const Preconditioner& m,
                        const ChebyshevParams& params) {
  if (s < 1) throw InvalidArgumentError("mpk: s must be >= 1");
  if (static_cast<index_t>(r.size()) != a.n)
    throw DimensionError("mpk: residual length mismatch");
  const std::size_t n = r.size();
  const double alpha = params.alpha();
  const double sigma = params.sigma();
  const double gamma = params.gamma();
  const auto& kern = kernels::active();

  MpkResult out;
  out.z = VectorBlock(a.n, s);
  out.p = VectorBlock(a.n, s + 1);
  VectorBlock zp(a.n, s);  // unpreconditioned recurrence vectors

  const auto check = [&](std::span<const double> v, int col) {
    if (!all_finite(v))
      throw BasisBreakdownError(
          "mpk: non-finite basis column " + std::to_string(col + 1), col);
  };

  out.p.set_col(0, r);
  zp.set_col(0, r);
  m.apply(zp.col_span(0), out.z.col_span(0));
  check(out.z.col_span(0), 0);

  if (s > 1) {
    spmv_into(a, out.z.col_span(0), out.p.col_span(1));
    kern.lincomb3(n, alpha, out.p.col(1), -sigma, zp.col(0), 0.0, zp.col(0),
                  zp.col(1));
    m.apply(zp.col_span(1), out.z.col_span(1));
    check(out.z.col_span(1), 1);
    for (int q = 2; q < s; ++q) {
      spmv_into(a, out.z.col_span(q - 1), out.p.col_span(q));
      kern.lincomb3(n, 2.0 * alpha, out.p.col(q), -2.0 * sigma, zp.col(q - 1),
                    -gamma, zp.col(q - 2), zp.col(q));
      m.apply(zp.col_span(q), out.z.col_span(q));
      check(out.z.col_span(q), q);
    }
  }
  spmv_into(a, out.z.col_span(s - 1), out.p.col_span(s));
  check(out.p.col_span(s), s - 1);
  return out;
}

}  // namespace chebstep
