#include "chebstep/gram.hpp"

#include <algorithm>
#include <cmath>

#include "chebstep/errors.hpp"
#include "chebstep/lapack.hpp"
#include "chebstep/spectral.hpp"

namespace chebstep {

SmallDense GramSystem::strict_lower() const {
  const int s = order();
  SmallDense l(s, s);
  for (int j = 0; j < s; ++j)
    for (int i = j + 1; i < s; ++i) l.at(i, j) = w.at(i, j);
  return l;
}

namespace {

GramSystem finish_assembly(SmallDense w, bool normalized) {
  GramSystem g;
  g.diag.resize(static_cast<std::size_t>(w.rows));
  for (int i = 0; i < w.rows; ++i) {
    const double d = w.at(i, i);
    if (!(d > 0.0) || !std::isfinite(d))
      throw NotSpdError("gram: non-positive diagonal (basis degeneracy)");
    g.diag[static_cast<std::size_t>(i)] = d;
  }
  g.w = std::move(w);
  g.normalized = normalized;
  return g;
}

}  // namespace

GramSystem assemble_gram(const VectorBlock& q, const VectorBlock& aq) {
  if (q.n != aq.n || q.k != aq.k)
    throw DimensionError("assemble_gram: block shapes differ");
  SmallDense w = block_gram(q, aq);
  for (int j = 0; j < w.cols; ++j)
    for (int i = 0; i < j; ++i) {
      const double s = 0.5 * (w.at(i, j) + w.at(j, i));
      w.at(i, j) = s;
      w.at(j, i) = s;
    }
  return finish_assembly(std::move(w), false);
}

GramSystem gram_from_matrix(const SmallDense& w) {
  if (w.rows != w.cols) throw DimensionError("gram_from_matrix: not square");
  for (int j = 0; j < w.cols; ++j)
    for (int i = 0; i < j; ++i)
      if (w.at(i, j) != w.at(j, i))
        throw InvalidMatrixError("gram_from_matrix: matrix not symmetric");
  return finish_assembly(w, false);
}

GramSystem normalize_gram(const GramSystem& g) {
  const int s = g.order();
  SmallDense wc(s, s);
  std::vector<double> inv_sqrt(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i)
    inv_sqrt[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(g.diag[static_cast<std::size_t>(i)]);
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < s; ++i)
      wc.at(i, j) = (i == j) ? 1.0
                             : g.w.at(i, j) * inv_sqrt[static_cast<std::size_t>(i)] *
                                   inv_sqrt[static_cast<std::size_t>(j)];
  GramSystem out;
  out.w = std::move(wc);
  out.diag.assign(static_cast<std::size_t>(s), 1.0);
  out.normalized = true;
  return out;
}

FgsResult fgs_solve(const GramSystem& g, const SmallDense& rhs,
                    const FgsConfig& cfg) {
  if (cfg.nu < 1) throw InvalidArgumentError("fgs: nu must be >= 1");
  if (rhs.rows != g.order()) throw DimensionError("fgs: rhs rows mismatch");
  if (!cfg.multi_rhs && rhs.cols > 1)
    throw InvalidArgumentError("fgs: multiple right-hand sides disabled");
  const int s = g.order();
  for (double d : g.diag)
    if (!(d > 0.0)) throw NotSpdError("fgs: zero diagonal");

  const double rhs_norm = frobenius_norm(rhs);
  SmallDense x(s, rhs.cols);
  if (rhs_norm == 0.0) return {std::move(x), 0.0};

  for (int col = 0; col < rhs.cols; ++col) {
    const auto b = rhs.col_span(col);
    auto xc = x.col_span(col);
    for (int sweep = 0; sweep < cfg.nu; ++sweep) {
      for (int i = 0; i < s; ++i) {
        double acc = b[static_cast<std::size_t>(i)];
        for (int j = 0; j < s; ++j)
          if (j != i) acc -= g.w.at(i, j) * xc[static_cast<std::size_t>(j)];
        xc[static_cast<std::size_t>(i)] = acc / g.diag[static_cast<std::size_t>(i)];
      }
    }
  }

  // delta = ||rhs - W x||_F / ||rhs||_F, the inexact-solve quality handed to
  // the outer iteration monitor.
  double res_sq = 0.0;
  for (int col = 0; col < rhs.cols; ++col) {
    const auto b = rhs.col_span(col);
    const auto xc = x.col_span(col);
    for (int i = 0; i < s; ++i) {
      double acc = b[static_cast<std::size_t>(i)];
      for (int j = 0; j < s; ++j)
        acc -= g.w.at(i, j) * xc[static_cast<std::size_t>(j)];
      res_sq += acc * acc;
    }
  }
  return {std::move(x), std::sqrt(res_sq) / rhs_norm};
}

std::vector<double> fgs_residual_oracle(const GramSystem& g,
                                        std::span<const double> m, int nu) {
  if (!g.normalized)
    throw InvalidArgumentError("fgs_residual_oracle: system must be normalized");
  if (static_cast<int>(m.size()) != g.order())
    throw DimensionError("fgs_residual_oracle: length mismatch");
  const int s = g.order();
  const SmallDense l = g.strict_lower();
  std::vector<double> r(m.begin(), m.end());
  std::vector<double> u(static_cast<std::size_t>(s));
  for (int sweep = 0; sweep < nu; ++sweep) {
    // u = (I + L)^{-1} r by forward substitution.
    for (int i = 0; i < s; ++i) {
      double acc = r[static_cast<std::size_t>(i)];
      for (int j = 0; j < i; ++j) acc -= l.at(i, j) * u[static_cast<std::size_t>(j)];
      u[static_cast<std::size_t>(i)] = acc;
    }
    // r = -L^T u.
    for (int i = 0; i < s; ++i) {
      double acc = 0.0;
      for (int j = i + 1; j < s; ++j) acc += l.at(j, i) * u[static_cast<std::size_t>(j)];
      r[static_cast<std::size_t>(i)] = -acc;
    }
  }
  return r;
}

FgsRate fgs_rate(const GramSystem& g) {
  if (!g.normalized)
    throw InvalidArgumentError("fgs_rate: system must be normalized");
  const int s = g.order();
  const SmallDense l = g.strict_lower();
  // Columns of X solve (I + L) X = I; the iteration matrix is L^T X.
  SmallDense x = SmallDense::identity(s);
  for (int col = 0; col < s; ++col) {
    auto xc = x.col_span(col);
    for (int i = 0; i < s; ++i) {
      double acc = xc[static_cast<std::size_t>(i)];
      for (int j = 0; j < i; ++j) acc -= l.at(i, j) * xc[static_cast<std::size_t>(j)];
      xc[static_cast<std::size_t>(i)] = acc;
    }
  }
  std::vector<double> iter_mat(static_cast<std::size_t>(s) * s, 0.0);
  for (int col = 0; col < s; ++col)
    for (int i = 0; i < s; ++i) {
      double acc = 0.0;
      for (int j = i + 1; j < s; ++j) acc += l.at(j, i) * x.at(j, col);
      iter_mat[static_cast<std::size_t>(i) + static_cast<std::size_t>(col) * s] = acc;
    }
  const auto sv = lapack::singular_values(s, s, iter_mat);
  const auto mods = lapack::general_eigvals_mod(s, iter_mat);
  return {sv.empty() ? 0.0 : sv.front(),
          mods.empty() ? 0.0 : *std::max_element(mods.begin(), mods.end())};
}

double ruhe_equivalence_check(const VectorBlock& p, const InnerProduct& ip) {
  if (p.k < 1) throw DimensionError("ruhe: empty block");
  const int s = static_cast<int>(p.k);

  SmallDense w(s, s);
  if (ip.kind == InnerProduct::Kind::euclidean) {
    w = block_gram(p, p);
  } else {
    VectorBlock ap(p.n, p.k);
    for (index_t j = 0; j < p.k; ++j)
      spmv_into(*ip.a, p.col_span(j), ap.col_span(j));
    w = block_gram(p, ap);
  }
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < j; ++i) {
      const double sym = 0.5 * (w.at(i, j) + w.at(j, i));
      w.at(i, j) = sym;
      w.at(j, i) = sym;
    }
  const GramSystem gc = normalize_gram(finish_assembly(std::move(w), false));

  // One sweep on Wc alpha = e1 from alpha = 0: plain forward substitution.
  std::vector<double> alpha(static_cast<std::size_t>(s), 0.0);
  for (int i = 0; i < s; ++i) {
    double acc = (i == 0) ? 1.0 : 0.0;
    for (int j = 0; j < i; ++j) acc -= gc.w.at(i, j) * alpha[static_cast<std::size_t>(j)];
    alpha[static_cast<std::size_t>(i)] = acc;
  }
  const std::vector<double> via_fgs = block_combine(p, alpha);
  const std::vector<double> via_mgs = mgs_orthogonalize_first(p, ip);

  double dev_sq = 0.0;
  for (std::size_t i = 0; i < via_fgs.size(); ++i) {
    const double d = via_fgs[i] - via_mgs[i];
    dev_sq += d * d;
  }
  return std::sqrt(dev_sq);
}

GramKappa gram_kappa_check(const VectorBlock& q, const CsrMatrix& a) {
  if (a.n > kDenseAnalysisGuard)
    throw GuardExceededError("gram_kappa_check: n exceeds 2048");
  VectorBlock aq(q.n, q.k);
  for (index_t j = 0; j < q.k; ++j)
    spmv_into(a, q.col_span(j), aq.col_span(j));
  const GramSystem g = assemble_gram(q, aq);

  std::vector<double> w_dense(g.w.data.begin(), g.w.data.end());
  const auto eig = lapack::sym_eigvals(g.order(), std::move(w_dense));
  if (!(eig.front() > 0.0)) throw NotSpdError("gram_kappa_check: W singular");
  const double kappa_w = eig.back() / eig.front();

  const DenseEigen ae = dense_eigendecomposition(a);
  const std::vector<double> sqrt_a = dense_sqrt(ae);
  std::vector<double> f(static_cast<std::size_t>(q.n) * q.k, 0.0);
  for (index_t col = 0; col < q.k; ++col)
    for (index_t i = 0; i < q.n; ++i) {
      double acc = 0.0;
      for (index_t j = 0; j < q.n; ++j)
        acc += sqrt_a[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * q.n] *
               q.col(col)[j];
      f[static_cast<std::size_t>(i) + static_cast<std::size_t>(col) * q.n] = acc;
    }
  const auto sv = lapack::singular_values(q.n, q.k, std::move(f));
  if (!(sv.back() > 0.0)) throw NotSpdError("gram_kappa_check: A^{1/2}Q rank-deficient");
  return {kappa_w, sv.front() / sv.back()};
}

}  // namespace chebstep
