// AVX2 variants. Built with -mavx2 for this translation unit only; callers
// reach it through the runtime-dispatched table. Multiplies and adds stay
// separate (no FMA) so each lane rounds exactly like the scalar reference.

#include "chebstep/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

namespace chebstep::kernels {
namespace {

void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void xpby_avx2(std::size_t n, const double* x, double b, double* y) {
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vx, _mm256_mul_pd(vb, vy)));
  }
  for (; i < n; ++i) y[i] = x[i] + b * y[i];
}

void lincomb3_avx2(std::size_t n, double a, const double* x, double b,
                   const double* y, double c, const double* z, double* out) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)),
                                    _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
    const __m256d r = _mm256_add_pd(t, _mm256_mul_pd(vc, _mm256_loadu_pd(z + i)));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) {
    const double t = a * x[i] + b * y[i];
    out[i] = t + c * z[i];
  }
}

// One accumulator lane per output column; each lane receives its products in
// ascending l, matching the scalar chain bitwise. The 4x4 transpose only
// turns strided column loads into contiguous ones.
void gram_avx2(std::size_t n, std::size_t ucols, std::size_t vcols,
               const double* u, const double* v, double* g) {
  std::size_t j = 0;
  for (; j + 4 <= vcols; j += 4) {
    const double* vj0 = v + (j + 0) * n;
    const double* vj1 = v + (j + 1) * n;
    const double* vj2 = v + (j + 2) * n;
    const double* vj3 = v + (j + 3) * n;
    for (std::size_t i = 0; i < ucols; ++i) {
      const double* ui = u + i * n;
      __m256d acc = _mm256_setzero_pd();
      std::size_t l = 0;
      for (; l + 4 <= n; l += 4) {
        const __m256d c0 = _mm256_loadu_pd(vj0 + l);
        const __m256d c1 = _mm256_loadu_pd(vj1 + l);
        const __m256d c2 = _mm256_loadu_pd(vj2 + l);
        const __m256d c3 = _mm256_loadu_pd(vj3 + l);
        const __m256d t0 = _mm256_unpacklo_pd(c0, c1);
        const __m256d t1 = _mm256_unpackhi_pd(c0, c1);
        const __m256d t2 = _mm256_unpacklo_pd(c2, c3);
        const __m256d t3 = _mm256_unpackhi_pd(c2, c3);
        const __m256d r0 = _mm256_permute2f128_pd(t0, t2, 0x20);
        const __m256d r1 = _mm256_permute2f128_pd(t1, t3, 0x20);
        const __m256d r2 = _mm256_permute2f128_pd(t0, t2, 0x31);
        const __m256d r3 = _mm256_permute2f128_pd(t1, t3, 0x31);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(ui[l + 0]), r0));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(ui[l + 1]), r1));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(ui[l + 2]), r2));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(ui[l + 3]), r3));
      }
      alignas(32) double lanes[4];
      _mm256_store_pd(lanes, acc);
      for (; l < n; ++l) {
        lanes[0] = lanes[0] + ui[l] * vj0[l];
        lanes[1] = lanes[1] + ui[l] * vj1[l];
        lanes[2] = lanes[2] + ui[l] * vj2[l];
        lanes[3] = lanes[3] + ui[l] * vj3[l];
      }
      g[i + (j + 0) * ucols] = lanes[0];
      g[i + (j + 1) * ucols] = lanes[1];
      g[i + (j + 2) * ucols] = lanes[2];
      g[i + (j + 3) * ucols] = lanes[3];
    }
  }
  for (; j < vcols; ++j) {
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

const Table* avx2_table() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Table table{"avx2", axpy_avx2, xpby_avx2, lincomb3_avx2,
                           gram_avx2};
  return &table;
}

}  // namespace chebstep::kernels

#else

namespace chebstep::kernels {
const Table* avx2_table() { return nullptr; }
}  // namespace chebstep::kernels

#endif
