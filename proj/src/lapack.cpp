#include "chebstep/lapack.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "chebstep/errors.hpp"

namespace chebstep::lapack {

namespace {
void check_info(lapack_int info, const char* what) {
  if (info != 0)
    throw Error(std::string(what) + ": LAPACK info=" + std::to_string(info));
}
}  // namespace

std::vector<double> sym_eig(index_t n, std::vector<double>& a) {
  std::vector<double> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                     a.data(), static_cast<lapack_int>(n), w.data());
  check_info(info, "dsyevd");
  return w;
}

std::vector<double> sym_eigvals(index_t n, std::vector<double> a) {
  std::vector<double> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', static_cast<lapack_int>(n),
                     a.data(), static_cast<lapack_int>(n), w.data());
  check_info(info, "dsyevd");
  return w;
}

std::vector<double> singular_values(index_t m, index_t n,
                                    std::vector<double> a) {
  std::vector<double> s(static_cast<std::size_t>(std::min(m, n)));
  std::vector<double> superb(s.size());
  const lapack_int info = LAPACKE_dgesvd(
      LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(m),
      static_cast<lapack_int>(n), a.data(), static_cast<lapack_int>(m),
      s.data(), nullptr, 1, nullptr, 1, superb.data());
  check_info(info, "dgesvd");
  return s;
}

std::vector<double> general_eigvals_mod(index_t n, std::vector<double> a) {
  std::vector<double> wr(static_cast<std::size_t>(n));
  std::vector<double> wi(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_dgeev(
      LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(n), a.data(),
      static_cast<lapack_int>(n), wr.data(), wi.data(), nullptr, 1, nullptr, 1);
  check_info(info, "dgeev");
  std::vector<double> mod(wr.size());
  for (std::size_t i = 0; i < wr.size(); ++i) mod[i] = std::hypot(wr[i], wi[i]);
  return mod;
}

std::vector<double> tridiag_eigvals(std::vector<double> diag,
                                    std::vector<double> offdiag) {
  if (offdiag.size() + 1 < diag.size())
    throw DimensionError("tridiag_eigvals: offdiagonal too short");
  offdiag.resize(diag.size(), 0.0);  // dsterf reads n-1 entries
  const lapack_int info =
      LAPACKE_dsterf(static_cast<lapack_int>(diag.size()), diag.data(),
                     offdiag.data());
  check_info(info, "dsterf");
  return diag;
}

void spd_solve(index_t n, std::vector<double> a, index_t nrhs,
               std::vector<double>& b) {
  const lapack_int info = LAPACKE_dposv(
      LAPACK_COL_MAJOR, 'L', static_cast<lapack_int>(n),
      static_cast<lapack_int>(nrhs), a.data(), static_cast<lapack_int>(n),
      b.data(), static_cast<lapack_int>(n));
  if (info > 0) throw NotSpdError("dposv: matrix not positive definite");
  check_info(info, "dposv");
}

}  // namespace chebstep::lapack
