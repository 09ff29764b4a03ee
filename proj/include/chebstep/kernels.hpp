#pragma once

#include <cstddef>

// Dense inner-loop kernels in two variants: portable scalar reference and
// AVX2. Every kernel is specified by the exact per-element operation
// sequence below, and the AVX2 variants keep that sequence (one rounding
// per multiply, one per add, accumulation chains untouched), so both
// variants produce bitwise-identical results and are tested for it.
//
// Order-pinned reductions (CSR row products, dot products) are not in this
// table: their contract fixes a single serial summation order, which rules
// out lane-parallel accumulation. They live with their callers.

namespace chebstep::kernels {

struct Table {
  const char* name;

  /// y[i] = y[i] + a*x[i]
  void (*axpy)(std::size_t n, double a, const double* x, double* y);

  /// y[i] = x[i] + b*y[i]
  void (*xpby)(std::size_t n, const double* x, double b, double* y);

  /// out[i] = ((a*x[i]) + (b*y[i])) + (c*z[i])
  void (*lincomb3)(std::size_t n, double a, const double* x, double b,
                   const double* y, double c, const double* z, double* out);

  /// g[i + j*ucols] = sum over l = 0..n-1, in ascending l order, of
  /// u[l + i*n] * v[l + j*n]. u, v, g column-major.
  void (*gram)(std::size_t n, std::size_t ucols, std::size_t vcols,
               const double* u, const double* v, double* g);
};

const Table& scalar_table();

/// Compiled on x86-64 only; returns nullptr when the CPU lacks AVX2.
const Table* avx2_table();

/// Variant used by the library. Selected once: CHEBSTEP_KERNELS=scalar|avx2
/// forces a table (avx2 falls back to scalar with a warning if unsupported);
/// unset or "auto" picks AVX2 when available.
const Table& active();

}  // namespace chebstep::kernels
