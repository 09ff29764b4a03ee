#include "chebstep/dense_ops.hpp"

#include <cmath>

#include "chebstep/errors.hpp"
#include "chebstep/kernels.hpp"

namespace chebstep {

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc = acc + x[i] * y[i];
  return acc;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

SmallDense block_gram(const VectorBlock& u, const VectorBlock& v) {
  if (u.n != v.n) throw DimensionError("block_gram: row counts differ");
  SmallDense g(static_cast<int>(u.k), static_cast<int>(v.k));
  kernels::active().gram(static_cast<std::size_t>(u.n),
                         static_cast<std::size_t>(u.k),
                         static_cast<std::size_t>(v.k), u.data.data(),
                         v.data.data(), g.data.data());
  return g;
}

VectorBlock block_update(const VectorBlock& y, const VectorBlock& x,
                         const SmallDense& c) {
  if (x.n != y.n || x.k != c.rows || y.k != c.cols)
    throw DimensionError("block_update: shape mismatch");
  VectorBlock out = y;
  const auto& k = kernels::active();
  for (index_t j = 0; j < out.k; ++j) {
    double* oj = out.col(j);
    for (index_t q = 0; q < x.k; ++q)
      k.axpy(static_cast<std::size_t>(x.n), c.at(static_cast<int>(q), static_cast<int>(j)),
             x.col(q), oj);
  }
  return out;
}

std::vector<double> block_combine(const VectorBlock& x,
                                  std::span<const double> c) {
  if (static_cast<index_t>(c.size()) != x.k)
    throw DimensionError("block_combine: coefficient length mismatch");
  std::vector<double> out(static_cast<std::size_t>(x.n), 0.0);
  const auto& k = kernels::active();
  for (index_t q = 0; q < x.k; ++q)
    k.axpy(static_cast<std::size_t>(x.n), c[q], x.col(q), out.data());
  return out;
}

SmallDense small_cholesky_solve(const SmallDense& w, const SmallDense& rhs) {
  if (w.rows != w.cols) throw DimensionError("cholesky: matrix not square");
  if (rhs.rows != w.rows) throw DimensionError("cholesky: rhs rows mismatch");
  const int s = w.rows;
  SmallDense l(s, s);
  for (int j = 0; j < s; ++j) {
    double d = w.at(j, j);
    for (int q = 0; q < j; ++q) d -= l.at(j, q) * l.at(j, q);
    if (!(d > 0.0) || !std::isfinite(d))
      throw NotSpdError("cholesky: non-positive pivot (basis breakdown)");
    const double diag = std::sqrt(d);
    l.at(j, j) = diag;
    for (int i = j + 1; i < s; ++i) {
      double v = w.at(i, j);
      for (int q = 0; q < j; ++q) v -= l.at(i, q) * l.at(j, q);
      l.at(i, j) = v / diag;
    }
  }
  SmallDense x = rhs;
  for (int col = 0; col < rhs.cols; ++col) {
    auto xc = x.col_span(col);
    for (int i = 0; i < s; ++i) {
      double v = xc[i];
      for (int q = 0; q < i; ++q) v -= l.at(i, q) * xc[q];
      xc[i] = v / l.at(i, i);
    }
    for (int i = s - 1; i >= 0; --i) {
      double v = xc[i];
      for (int q = i + 1; q < s; ++q) v -= l.at(q, i) * xc[q];
      xc[i] = v / l.at(i, i);
    }
  }
  return x;
}

std::vector<double> ldlt_pivots(const SmallDense& w) {
  if (w.rows != w.cols) throw DimensionError("ldlt: matrix not square");
  const int s = w.rows;
  SmallDense l = SmallDense::identity(s);
  std::vector<double> d(static_cast<std::size_t>(s), 0.0);
  for (int j = 0; j < s; ++j) {
    double dj = w.at(j, j);
    for (int q = 0; q < j; ++q) dj -= l.at(j, q) * l.at(j, q) * d[q];
    d[j] = dj;
    for (int i = j + 1; i < s; ++i) {
      double v = w.at(i, j);
      for (int q = 0; q < j; ++q) v -= l.at(i, q) * l.at(j, q) * d[q];
      // A vanishing pivot ends meaningful elimination; keep going so the
      // caller sees the full pivot sequence.
      l.at(i, j) = (dj != 0.0) ? v / dj : 0.0;
    }
  }
  return d;
}

double InnerProduct::dot(std::span<const double> x,
                         std::span<const double> y) const {
  if (kind == Kind::euclidean) return chebstep::dot(x, y);
  return chebstep::dot(x, spmv(*a, y));
}

double InnerProduct::norm(std::span<const double> x) const {
  return std::sqrt(dot(x, x));
}

std::vector<double> mgs_orthogonalize_first(const VectorBlock& p,
                                            const InnerProduct& ip) {
  if (p.k < 1) throw DimensionError("mgs: empty block");
  for (index_t j = 0; j < p.k; ++j)
    if (!(ip.norm(p.col_span(j)) > 0.0))
      throw InvalidArgumentError("mgs: zero-norm column");
  std::vector<double> v(p.col(0), p.col(0) + p.n);
  const auto& k = kernels::active();
  for (index_t j = 1; j < p.k; ++j) {
    const double proj = ip.dot(p.col_span(j), v);
    k.axpy(static_cast<std::size_t>(p.n), -proj, p.col(j), v.data());
  }
  return v;
}

}  // namespace chebstep
