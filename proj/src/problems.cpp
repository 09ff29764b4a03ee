#include "chebstep/problems.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include "chebstep/errors.hpp"
#include "chebstep/util.hpp"

namespace chebstep {

PoissonSystem poisson27(const PoissonSpec& spec) {
  if (spec.nx < 1 || spec.ny < 1 || spec.nz < 1)
    throw InvalidArgumentError("poisson27: grid dimensions must be >= 1");
  constexpr index_t kMaxN = index_t{1} << 31;
  if (spec.nx > kMaxN / spec.ny || spec.nx * spec.ny > kMaxN / spec.nz)
    throw InvalidArgumentError("poisson27: grid size overflow");
  const index_t nx = spec.nx, ny = spec.ny, nz = spec.nz;
  const index_t n = nx * ny * nz;

  CsrMatrix a;
  a.n = n;
  a.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  a.col_indices.reserve(static_cast<std::size_t>(n) * 27);
  a.values.reserve(static_cast<std::size_t>(n) * 27);

  index_t row = 0;
  for (index_t iz = 0; iz < nz; ++iz) {
    for (index_t iy = 0; iy < ny; ++iy) {
      for (index_t ix = 0; ix < nx; ++ix, ++row) {
        // (dz, dy, dx) in lexicographic order keeps column indices ascending.
        for (index_t dz = -1; dz <= 1; ++dz) {
          const index_t jz = iz + dz;
          if (jz < 0 || jz >= nz) continue;
          for (index_t dy = -1; dy <= 1; ++dy) {
            const index_t jy = iy + dy;
            if (jy < 0 || jy >= ny) continue;
            for (index_t dx = -1; dx <= 1; ++dx) {
              const index_t jx = ix + dx;
              if (jx < 0 || jx >= nx) continue;
              const index_t col = jx + nx * (jy + ny * jz);
              a.col_indices.push_back(col);
              a.values.push_back(col == row ? 26.0 : -1.0);
            }
          }
        }
        a.row_offsets[row + 1] = static_cast<index_t>(a.col_indices.size());
      }
    }
  }
  return {std::move(a), std::vector<double>(static_cast<std::size_t>(n), 1.0)};
}

CsrMatrix read_matrix_market(const std::string& path, bool require_spd) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty file: " + path);
  {
    std::istringstream hs(header);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    for (auto* s : {&object, &format, &field, &symmetry})
      for (auto& c : *s) c = static_cast<char>(std::tolower(c));
    if (banner != "%%MatrixMarket" || object != "matrix" ||
        format != "coordinate" || field != "real")
      throw ParseError("unsupported MatrixMarket header: " + header);
    if (symmetry != "symmetric")
      throw ParseError("matrix must be declared symmetric, got: " + symmetry);
  }

  std::string line;
  index_t rows = 0, cols = 0, entries = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> rows >> cols >> entries))
      throw ParseError("bad size line: " + line);
    break;
  }
  if (rows <= 0 || rows != cols)
    throw ParseError("matrix must be square and non-empty");
  if (entries <= 0) throw ParseError("empty coordinate section");

  std::vector<std::pair<std::pair<index_t, index_t>, double>> triplets;
  triplets.reserve(static_cast<std::size_t>(entries) * 2);
  index_t seen = 0;
  while (seen < entries && std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    index_t i, j;
    double v;
    if (!(ls >> i >> j >> v)) throw ParseError("bad entry line: " + line);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError("entry index out of range: " + line);
    --i;
    --j;
    triplets.push_back({{i, j}, v});
    if (i != j) triplets.push_back({{j, i}, v});
    ++seen;
  }
  if (seen < entries) throw ParseError("fewer entries than declared");

  CsrMatrix a = CsrMatrix::from_triplets(rows, std::move(triplets));
  validate_structure(a);
  if (require_spd) validate_spd_diagonal(a);
  return a;
}

void write_matrix_market(const std::string& path, const CsrMatrix& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  index_t lower_nnz = 0;
  for (index_t i = 0; i < a.n; ++i)
    for (index_t j : a.row_cols(i))
      if (j <= i) ++lower_nnz;
  out << a.n << " " << a.n << " " << lower_nnz << "\n";
  for (index_t i = 0; i < a.n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (cols[k] <= i)
        out << (i + 1) << " " << (cols[k] + 1) << " " << fmt_double(vals[k])
            << "\n";
  }
}

}  // namespace chebstep
