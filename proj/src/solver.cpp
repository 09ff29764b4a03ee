#include "chebstep/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chebstep/errors.hpp"
#include "chebstep/kernels.hpp"
#include "chebstep/lapack.hpp"
#include "chebstep/mpk.hpp"

namespace chebstep {

void SolverConfig::validate() const {
  if (s < 1 || s > kSmallDenseMax)
    throw InvalidArgumentError("SolverConfig: s must be in [1, 64]");
  if (!(tol > 0.0)) throw InvalidArgumentError("SolverConfig: tol must be > 0");
  if (max_outer < 1)
    throw InvalidArgumentError("SolverConfig: max_outer must be >= 1");
  if (fgs.nu < 1) throw InvalidArgumentError("SolverConfig: nu must be >= 1");
}

double a_norm_error(const CsrMatrix& a, std::span<const double> x,
                    std::span<const double> ref) {
  std::vector<double> e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) e[i] = x[i] - ref[i];
  return std::sqrt(std::max(0.0, dot(e, spmv(a, e))));
}

namespace {

double gram_rel_residual(const GramSystem& g, const SmallDense& rhs,
                         const SmallDense& x) {
  double res_sq = 0.0;
  for (int col = 0; col < rhs.cols; ++col)
    for (int i = 0; i < g.order(); ++i) {
      double acc = rhs.at(i, col);
      for (int j = 0; j < g.order(); ++j) acc -= g.w.at(i, j) * x.at(j, col);
      res_sq += acc * acc;
    }
  const double rhs_norm = frobenius_norm(rhs);
  return rhs_norm == 0.0 ? 0.0 : std::sqrt(res_sq) / rhs_norm;
}

struct GramSolveOutcome {
  SmallDense x;
  double delta;
};

GramSolveOutcome solve_gram(const GramSystem& g, const SmallDense& rhs,
                            const SolverConfig& cfg, int outer) {
  try {
    if (cfg.gram_solver == GramSolverKind::fgs) {
      auto [x, delta] = fgs_solve(g, rhs, cfg.fgs);
      return {std::move(x), delta};
    }
    SmallDense x = small_cholesky_solve(g.w, rhs);
    const double delta = gram_rel_residual(g, rhs, x);
    return {std::move(x), delta};
  } catch (const NotSpdError& e) {
    throw SolverBreakdownError(
        "gram solve failed at outer iteration " + std::to_string(outer) +
            ": " + e.what(),
        outer);
  }
}

double kappa_of(const GramSystem& g) {
  std::vector<double> w(g.w.data.begin(), g.w.data.end());
  const auto eig = lapack::sym_eigvals(g.order(), std::move(w));
  if (!(eig.front() > 0.0)) return std::numeric_limits<double>::infinity();
  return eig.back() / eig.front();
}

}  // namespace

SolveResult pcg_s_solve(const CsrMatrix& a, std::span<const double> b,
                        std::span<const double> x0, const Preconditioner& m,
                        const SolverConfig& cfg) {
  cfg.validate();
  if (static_cast<index_t>(b.size()) != a.n ||
      static_cast<index_t>(x0.size()) != a.n)
    throw DimensionError("pcg_s_solve: vector length mismatch");
  const std::size_t n = b.size();
  const int s = cfg.s;
  const auto& kern = kernels::active();

  SolveResult out;
  out.x.assign(x0.begin(), x0.end());
  SolveReport& rep = out.report;

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    out.x.assign(n, 0.0);
    rep.converged = true;
    rep.rel_residual = {0.0};
    return out;
  }

  rep.spectrum_used =
      cfg.spectrum ? *cfg.spectrum
                   : estimate_interval(a, m, cfg.lanczos_steps, cfg.seed);
  const ChebyshevParams params =
      ChebyshevParams::from_estimate(rep.spectrum_used);

  const auto record_extras = [&] {
    if (cfg.error_reference)
      rep.a_norm_error.push_back(a_norm_error(a, out.x, *cfg.error_reference));
    if (cfg.collect_iterates) rep.iterates.push_back(out.x);
    if (cfg.track_true_residual) {
      std::vector<double> t = spmv(a, out.x);
      for (std::size_t i = 0; i < n; ++i) t[i] = b[i] - t[i];
      rep.true_rel_residual.push_back(norm2(t) / bnorm);
    }
  };

  // r0 = b - A x0
  std::vector<double> r = spmv(a, out.x);
  rep.spmv_count += 1;
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  rep.rel_residual.push_back(norm2(r) / bnorm);
  record_extras();

  MpkResult basis = mpk_chebyshev(a, r, s, m, params);
  rep.spmv_count += s;
  rep.precond_count += s;
  VectorBlock q = std::move(basis.z);
  VectorBlock aq = basis.p.columns(1, s);

  const double local_flops_per_outer =
      3.5 * (static_cast<double>(s) * s + s) * static_cast<double>(n);
  const double gram_flops_per_solve =
      cfg.gram_solver == GramSolverKind::fgs
          ? static_cast<double>(cfg.fgs.nu) * (static_cast<double>(s) * s + 2.0 * s)
          : static_cast<double>(s) * s * s / 3.0 + 2.0 * s * s * (s + 1.0);

  for (int k = 1; k <= cfg.max_outer; ++k) {
    GramSystem gram = [&] {
      try {
        return assemble_gram(q, aq);
      } catch (const NotSpdError& e) {
        throw SolverBreakdownError("Gram assembly degenerate at outer iteration " +
                                       std::to_string(k) + ": " + e.what(),
                                   k);
      }
    }();
    if (cfg.collect_gram) {
      rep.gram_history.push_back(gram.w);
      rep.kappa_w.push_back(kappa_of(gram));
    }

    const SmallDense b1 =
        block_gram(q, VectorBlock::from_column(basis.p.col_span(0)));
    auto [alpha, delta_a] = solve_gram(gram, b1, cfg, k);
    rep.delta_alpha.push_back(delta_a);
    rep.gram_solve_flops += gram_flops_per_solve;

    for (int j = 0; j < s; ++j) {
      kern.axpy(n, alpha.at(j, 0), q.col(j), out.x.data());
      kern.axpy(n, -alpha.at(j, 0), aq.col(j), r.data());
    }
    rep.local_update_flops += local_flops_per_outer;

    rep.outer_iters = k;
    rep.rel_residual.push_back(norm2(r) / bnorm);
    record_extras();
    if (rep.rel_residual.back() <= cfg.tol) {
      rep.converged = true;
      break;
    }

    basis = mpk_chebyshev(a, r, s, m, params);
    rep.spmv_count += s;
    rep.precond_count += s;
    VectorBlock aq_new = basis.p.columns(1, s);

    SmallDense b2 = block_gram(q, aq_new);
    for (double& v : b2.data) v = -v;
    auto [beta, delta_b] = solve_gram(gram, b2, cfg, k);
    rep.delta_beta.push_back(delta_b);
    rep.gram_solve_flops += gram_flops_per_solve;

    q = block_update(basis.z, q, beta);
    aq = block_update(aq_new, aq, beta);
  }

  rep.allreduce_count = 2 * static_cast<std::int64_t>(rep.outer_iters);
  return out;
}

SolveResult pcg_solve(const CsrMatrix& a, std::span<const double> b,
                      std::span<const double> x0, const Preconditioner& m,
                      const PcgConfig& cfg) {
  if (!(cfg.tol >= 0.0) || cfg.max_iter < 1)
    throw InvalidArgumentError("pcg_solve: bad tol/max_iter");
  if (static_cast<index_t>(b.size()) != a.n ||
      static_cast<index_t>(x0.size()) != a.n)
    throw DimensionError("pcg_solve: vector length mismatch");
  const std::size_t n = b.size();
  const auto& kern = kernels::active();

  SolveResult out;
  out.x.assign(x0.begin(), x0.end());
  SolveReport& rep = out.report;

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    out.x.assign(n, 0.0);
    rep.converged = true;
    rep.rel_residual = {0.0};
    return out;
  }

  const auto record_extras = [&] {
    if (cfg.error_reference)
      rep.a_norm_error.push_back(a_norm_error(a, out.x, *cfg.error_reference));
    if (cfg.collect_iterates) rep.iterates.push_back(out.x);
  };

  std::vector<double> r = spmv(a, out.x);
  rep.spmv_count += 1;
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  rep.rel_residual.push_back(norm2(r) / bnorm);
  record_extras();

  std::vector<double> z(n);
  m.apply(r, z);
  rep.precond_count += 1;
  std::vector<double> p = z;
  std::vector<double> q(n);
  double rho = dot(r, z);

  for (int it = 1; it <= cfg.max_iter; ++it) {
    spmv_into(a, p, q);
    rep.spmv_count += 1;
    const double pq = dot(p, q);
    if (!(pq > 0.0))
      throw SolverBreakdownError(
          "pcg: non-positive curvature at iteration " + std::to_string(it), it);
    const double step = rho / pq;
    kern.axpy(n, step, p.data(), out.x.data());
    kern.axpy(n, -step, q.data(), r.data());
    rep.local_update_flops += 8.0 * static_cast<double>(n);

    rep.outer_iters = it;
    rep.rel_residual.push_back(norm2(r) / bnorm);
    record_extras();
    if (rep.rel_residual.back() <= cfg.tol) {
      rep.converged = true;
      break;
    }

    m.apply(r, z);
    rep.precond_count += 1;
    const double rho_new = dot(r, z);
    const double beta = rho_new / rho;
    rho = rho_new;
    kern.xpby(n, z.data(), beta, p.data());
  }

  rep.allreduce_count = 2 * static_cast<std::int64_t>(rep.outer_iters);
  return out;
}

SolveResult pcg_solve(const CsrMatrix& a, std::span<const double> b,
                      std::span<const double> x0, const Preconditioner& m,
                      double tol, int max_iter) {
  PcgConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  return pcg_solve(a, b, x0, m, cfg);
}

InexactVerdict monitor_inexact(const SolveReport& report, double delta_cap) {
  // The inexact-solve condition constrains the alpha-system residual; the
  // beta-system quality is reported separately in the SolveReport.
  double max_delta = 0.0;
  for (double d : report.delta_alpha) max_delta = std::max(max_delta, d);
  const double budget = static_cast<double>(report.outer_iters) * max_delta;
  return {max_delta, budget, budget <= delta_cap};
}

}  // namespace chebstep
