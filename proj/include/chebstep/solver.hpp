#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chebstep/csr.hpp"
#include "chebstep/gram.hpp"
#include "chebstep/precond.hpp"
#include "chebstep/spectral.hpp"

namespace chebstep {

enum class GramSolverKind { fgs, cholesky };

struct SolverConfig {
  int s = 4;
  double tol = 1e-6;
  int max_outer = 500;
  FgsConfig fgs{};
  GramSolverKind gram_solver = GramSolverKind::fgs;

  /// Spectrum interval for the Chebyshev basis; estimated once with Lanczos
  /// on the preconditioned operator when not supplied, then reused for the
  /// whole solve.
  std::optional<SpectrumEstimate> spectrum{};
  int lanczos_steps = 40;
  std::uint64_t seed = 1234;

  // Analysis hooks. None of these change the iterate sequence.
  bool collect_gram = false;           // store W_k and kappa_2(W_k)
  bool track_true_residual = false;    // recompute ||b - A x_k|| for drift
  std::optional<std::vector<double>> error_reference{};  // x*, A-norm errors
  bool collect_iterates = false;

  void validate() const;
};

struct SolveReport {
  bool converged = false;
  int outer_iters = 0;

  /// Recurrence residuals ||r_k||/||b||; entry 0 is the initial residual.
  std::vector<double> rel_residual;
  /// Gram-solve relative residuals per outer iteration. delta_beta has one
  /// fewer entry than delta_alpha when the run converged (the stopping
  /// iteration solves no beta system).
  std::vector<double> delta_alpha;
  std::vector<double> delta_beta;

  std::vector<double> kappa_w;            // collect_gram
  std::vector<SmallDense> gram_history;   // collect_gram
  std::vector<double> true_rel_residual;  // track_true_residual
  std::vector<double> a_norm_error;       // error_reference
  std::vector<std::vector<double>> iterates;  // collect_iterates

  // Kernel counts for the iteration itself (spectrum estimation and
  // analysis hooks excluded). allreduce_count follows the cost-model
  // convention of two reductions per (outer) iteration.
  std::int64_t spmv_count = 0;
  std::int64_t precond_count = 0;
  std::int64_t allreduce_count = 0;
  // Model flop tallies: block/vector updates and Gram solves.
  double local_update_flops = 0.0;
  double gram_solve_flops = 0.0;

  SpectrumEstimate spectrum_used{};
};

struct SolveResult {
  std::vector<double> x;
  SolveReport report;
};

/// s-step PCG with the Chebyshev block basis. Residuals are carried by the
/// recurrence r <- r - AQ alpha, never recomputed; the stopping test uses
/// the recurrence residual. The Gram matrix assembled for the alpha system
/// is reused for the beta system of the same outer iteration. Breakdown of
/// the Gram assembly or solve raises SolverBreakdownError; a degenerate
/// basis column raises BasisBreakdownError.
SolveResult pcg_s_solve(const CsrMatrix& a, std::span<const double> b,
                        std::span<const double> x0, const Preconditioner& m,
                        const SolverConfig& cfg);

struct PcgConfig {
  double tol = 1e-6;
  int max_iter = 1000;
  std::optional<std::vector<double>> error_reference{};
  bool collect_iterates = false;
};

/// Classical preconditioned CG with the textbook kernel structure: one
/// SpMV, one preconditioner application, three axpy-type updates and two
/// reduction-bearing dot products per iteration.
SolveResult pcg_solve(const CsrMatrix& a, std::span<const double> b,
                      std::span<const double> x0, const Preconditioner& m,
                      const PcgConfig& cfg);
SolveResult pcg_solve(const CsrMatrix& a, std::span<const double> b,
                      std::span<const double> x0, const Preconditioner& m,
                      double tol, int max_iter);

struct InexactVerdict {
  double max_delta;  // max over all alpha/beta Gram-solve residuals
  double budget;     // outer_iters * max_delta
  bool pass;         // budget <= delta_cap
};

/// Inexact-solve budget check: the accumulated Gram-solve perturbation
/// stays compatible with outer convergence while N_outer * delta stays
/// of order one.
InexactVerdict monitor_inexact(const SolveReport& report,
                               double delta_cap = 1.0);

/// sqrt((x - ref)^T A (x - ref)).
double a_norm_error(const CsrMatrix& a, std::span<const double> x,
                    std::span<const double> ref);

}  // namespace chebstep
