#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chebstep/csr.hpp"

namespace chebstep {

/// Interior grid of a unit-cube Poisson problem with Dirichlet boundaries
/// already eliminated.
struct PoissonSpec {
  index_t nx = 1, ny = 1, nz = 1;
  index_t size() const { return nx * ny * nz; }
};

struct PoissonSystem {
  CsrMatrix a;
  std::vector<double> rhs;  // all ones
};

/// 27-point stencil on an nx x ny x nz grid: diagonal 26, -1 for each of the
/// up-to-26 neighbors in the 3x3x3 cube, lexicographic (x fastest) ordering,
/// unit right-hand side. SPD by irreducible diagonal dominance.
PoissonSystem poisson27(const PoissonSpec& spec);

/// Matrix Market coordinate format, real symmetric, 1-based indices.
/// Symmetric storage is expanded to the full pattern. With require_spd the
/// diagonal must be fully present and positive.
CsrMatrix read_matrix_market(const std::string& path, bool require_spd = false);

/// Writes the lower triangle with round-trip-exact decimal values.
void write_matrix_market(const std::string& path, const CsrMatrix& a);

}  // namespace chebstep
