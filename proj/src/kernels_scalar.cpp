#include "chebstep/kernels.hpp"

namespace chebstep::kernels {
namespace {

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void xpby_scalar(std::size_t n, const double* x, double b, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void lincomb3_scalar(std::size_t n, double a, const double* x, double b,
                     const double* y, double c, const double* z, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = a * x[i] + b * y[i];
    out[i] = t + c * z[i];
  }
}

void gram_scalar(std::size_t n, std::size_t ucols, std::size_t vcols,
                 const double* u, const double* v, double* g) {
  for (std::size_t j = 0; j < vcols; ++j) {
    const double* vj = v + j * n;
    for (std::size_t i = 0; i < ucols; ++i) {
      const double* ui = u + i * n;
      double acc = 0.0;
      for (std::size_t l = 0; l < n; ++l) acc = acc + ui[l] * vj[l];
      g[i + j * ucols] = acc;
    }
  }
}

}  // namespace

const Table& scalar_table() {
  static const Table table{"scalar", axpy_scalar, xpby_scalar, lincomb3_scalar,
                           gram_scalar};
  return table;
}

}  // namespace chebstep::kernels
