#include "chebstep/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "chebstep/errors.hpp"
#include "chebstep/gram.hpp"
#include "chebstep/moments.hpp"
#include "chebstep/perf_model.hpp"
#include "chebstep/problems.hpp"
#include "chebstep/solver.hpp"
#include "chebstep/util.hpp"

namespace chebstep::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Argument-level failure detected after CLI11 parsing; maps to exit 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProblemOptions {
  std::vector<index_t> poisson;  // nx ny nz
  std::string matrix_path;

  void add_flags(CLI::App& app) {
    app.add_option("--poisson", poisson, "Poisson grid dimensions NX NY NZ")
        ->expected(3);
    app.add_option("--matrix", matrix_path, "Matrix Market file (symmetric)");
  }

  std::pair<CsrMatrix, std::vector<double>> load() const {
    const bool have_poisson = !poisson.empty();
    const bool have_matrix = !matrix_path.empty();
    if (have_poisson == have_matrix)
      throw UsageError("exactly one of --poisson or --matrix is required");
    if (have_poisson) {
      auto sys = poisson27({poisson[0], poisson[1], poisson[2]});
      return {std::move(sys.a), std::move(sys.rhs)};
    }
    CsrMatrix a = read_matrix_market(matrix_path, /*require_spd=*/true);
    return {std::move(a), std::vector<double>(static_cast<std::size_t>(a.n), 1.0)};
  }

  std::string label() const {
    if (!poisson.empty()) {
      std::ostringstream os;
      os << "poisson-" << poisson[0] << "x" << poisson[1] << "x" << poisson[2];
      return os.str();
    }
    return fs::path(matrix_path).filename().string();
  }
};

struct SolverOptions {
  int s = 4;
  std::string gram = "fgs";
  int nu = 30;
  double tol = 1e-6;
  int max_outer = 500;
  std::string precond = "identity";
  std::uint64_t seed = 1234;

  void add_flags(CLI::App& app, bool with_s = true) {
    if (with_s) app.add_option("--s", s, "step size");
    app.add_option("--gram", gram, "Gram solver: fgs | cholesky")
        ->check(CLI::IsMember({"fgs", "cholesky"}));
    app.add_option("--nu", nu, "FGS sweep count");
    app.add_option("--tol", tol, "relative residual tolerance");
    app.add_option("--max-outer", max_outer, "maximum outer iterations");
    app.add_option("--precond", precond, "preconditioner: identity | jacobi")
        ->check(CLI::IsMember({"identity", "jacobi"}));
    app.add_option("--seed", seed, "seed for the spectrum estimate");
  }

  SolverConfig to_config() const {
    SolverConfig cfg;
    cfg.s = s;
    cfg.tol = tol;
    cfg.max_outer = max_outer;
    cfg.fgs.nu = nu;
    cfg.gram_solver =
        gram == "cholesky" ? GramSolverKind::cholesky : GramSolverKind::fgs;
    cfg.seed = seed;
    return cfg;
  }

  std::unique_ptr<Preconditioner> make_precond(const CsrMatrix& a) const {
    if (precond == "jacobi") return std::make_unique<JacobiPreconditioner>(a);
    return std::make_unique<IdentityPreconditioner>();
  }
};

struct OutputOptions {
  std::string out_dir = ".";
  std::string format = "csv";

  void add_flags(CLI::App& app) {
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "history format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  fs::path prepare() const {
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
      throw Error("cannot create output directory: " + out_dir);
    return dir;
  }
};

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& schema,
            const std::string& header)
      : out_(path) {
    if (!out_) throw Error("cannot open for writing: " + path.string());
    out_ << "# chebstep-csv v1 " << schema << "\n" << header << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

std::string cell(double v) { return fmt_double(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(index_t v) { return std::to_string(v); }

json summary_json(const SolveReport& rep, const std::string& method,
                  const ProblemOptions& prob, const SolverOptions& sopt) {
  const InexactVerdict verdict = monitor_inexact(rep);
  json j;
  j["schema"] = "chebstep-solve-summary/1";
  j["problem"] = prob.label();
  j["method"] = method;
  j["converged"] = rep.converged;
  j["outer_iters"] = rep.outer_iters;
  j["final_rel_residual"] = rep.rel_residual.back();
  j["counts"] = {{"spmv", rep.spmv_count},
                 {"precond", rep.precond_count},
                 {"allreduce", rep.allreduce_count}};
  j["model_flops"] = {{"local_updates", rep.local_update_flops},
                      {"gram_solves", rep.gram_solve_flops}};
  j["inexact"] = {{"max_delta", verdict.max_delta},
                  {"budget", verdict.budget},
                  {"pass", verdict.pass}};
  j["config"] = {{"s", sopt.s},           {"gram", sopt.gram},
                 {"nu", sopt.nu},         {"tol", sopt.tol},
                 {"max_outer", sopt.max_outer}, {"precond", sopt.precond},
                 {"seed", sopt.seed}};
  j["spectrum"] = {{"lambda_min", rep.spectrum_used.lambda_min},
                   {"lambda_max", rep.spectrum_used.lambda_max}};
  return j;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

std::string delta_cell(const std::vector<double>& deltas, int k) {
  // k is 1-based; row 0 (initial residual) and missing trailing entries
  // stay empty.
  if (k < 1 || k > static_cast<int>(deltas.size())) return "";
  return fmt_double(deltas[static_cast<std::size_t>(k - 1)]);
}

int cmd_solve(const ProblemOptions& prob, const SolverOptions& sopt,
              const OutputOptions& oopt) {
  auto [a, b] = prob.load();
  const auto m = sopt.make_precond(a);
  SolverConfig cfg = sopt.to_config();
  const std::vector<double> x0(static_cast<std::size_t>(a.n), 0.0);
  const SolveResult res = pcg_s_solve(a, b, x0, *m, cfg);
  const SolveReport& rep = res.report;

  const fs::path dir = oopt.prepare();
  json summary = summary_json(rep, "pcgs-" + sopt.gram, prob, sopt);
  if (oopt.format == "csv") {
    CsvWriter csv(dir / "solve_history.csv", "solve-history",
                  "k,rel_res,delta_alpha,delta_beta");
    for (std::size_t k = 0; k < rep.rel_residual.size(); ++k)
      csv.row({cell(static_cast<int>(k)), cell(rep.rel_residual[k]),
               delta_cell(rep.delta_alpha, static_cast<int>(k)),
               delta_cell(rep.delta_beta, static_cast<int>(k))});
  } else {
    summary["history"] = {{"rel_residual", rep.rel_residual},
                          {"delta_alpha", rep.delta_alpha},
                          {"delta_beta", rep.delta_beta}};
  }
  write_json(dir / "solve_summary.json", summary);
  log_info("solve: " + std::string(rep.converged ? "converged" : "not converged") +
           " in " + std::to_string(rep.outer_iters) + " outer iterations");
  return rep.converged ? kExitOk : kExitNotConverged;
}

int cmd_compare(const ProblemOptions& prob, const SolverOptions& sopt,
                const OutputOptions& oopt, const std::vector<int>& s_list) {
  if (s_list.empty()) throw UsageError("compare: --s list must not be empty");
  auto [a, b] = prob.load();
  const auto m = sopt.make_precond(a);
  const std::vector<double> x0(static_cast<std::size_t>(a.n), 0.0);

  const fs::path dir = oopt.prepare();
  CsvWriter csv(dir / "compare.csv", "compare-history", "method,s,k,rel_res");
  json summary;
  summary["schema"] = "chebstep-compare-summary/1";
  summary["problem"] = prob.label();
  summary["runs"] = json::array();

  const auto emit = [&](const std::string& method, int s,
                        const SolveReport& rep) {
    for (std::size_t k = 0; k < rep.rel_residual.size(); ++k)
      csv.row({method, cell(s), cell(static_cast<int>(k)),
               cell(rep.rel_residual[k])});
    summary["runs"].push_back({{"method", method},
                               {"s", s},
                               {"converged", rep.converged},
                               {"iters", rep.outer_iters},
                               {"final_rel_residual", rep.rel_residual.back()}});
  };

  bool all_converged = true;
  {
    const SolveResult res =
        pcg_solve(a, b, x0, *m, sopt.tol, sopt.max_outer * std::max(1, sopt.s));
    emit("pcg", 1, res.report);
    all_converged &= res.report.converged;
  }
  for (const GramSolverKind kind :
       {GramSolverKind::cholesky, GramSolverKind::fgs}) {
    for (int s : s_list) {
      SolverConfig cfg = sopt.to_config();
      cfg.s = s;
      cfg.gram_solver = kind;
      const SolveResult res = pcg_s_solve(a, b, x0, *m, cfg);
      emit(kind == GramSolverKind::cholesky ? "pcgs-cholesky" : "pcgs-fgs", s,
           res.report);
      all_converged &= res.report.converged;
    }
  }
  write_json(dir / "compare_summary.json", summary);
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_gram_analysis(const ProblemOptions& prob, const SolverOptions& sopt,
                      const OutputOptions& oopt) {
  auto [a, b] = prob.load();
  const auto m = sopt.make_precond(a);
  SolverConfig cfg = sopt.to_config();
  cfg.collect_gram = true;
  const std::vector<double> x0(static_cast<std::size_t>(a.n), 0.0);
  const SolveResult res = pcg_s_solve(a, b, x0, *m, cfg);
  const SolveReport& rep = res.report;

  // Moment-structure deviation of the initial-residual Gram matrix; needs
  // the dense path, so past the guard the column is left absent.
  std::string structure_dev;
  if (a.n <= kDenseAnalysisGuard)
    structure_dev =
        fmt_double(verify_gram_structure(a, b, cfg.s, InnerKind::euclidean));

  const fs::path dir = oopt.prepare();
  {
    CsvWriter csv(dir / "gram_analysis.csv", "gram-analysis",
                  "k,rel_res,delta_alpha,delta_beta,kappa_w,fgs_spectral_norm,"
                  "fgs_spectral_radius,structure_dev");
    for (int k = 1; k <= rep.outer_iters; ++k) {
      const GramSystem g =
          gram_from_matrix(rep.gram_history[static_cast<std::size_t>(k - 1)]);
      const FgsRate rate = fgs_rate(normalize_gram(g));
      csv.row({cell(k), cell(rep.rel_residual[static_cast<std::size_t>(k)]),
               delta_cell(rep.delta_alpha, k), delta_cell(rep.delta_beta, k),
               cell(rep.kappa_w[static_cast<std::size_t>(k - 1)]),
               cell(rate.spectral_norm), cell(rate.spectral_radius),
               k == 1 ? structure_dev : ""});
    }
  }
  {
    CsvWriter csv(dir / "gram_matrices.csv", "gram-entries", "k,i,j,w_ij");
    for (int k = 1; k <= rep.outer_iters; ++k) {
      const SmallDense& w = rep.gram_history[static_cast<std::size_t>(k - 1)];
      for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < w.cols; ++j)
          csv.row({cell(k), cell(i + 1), cell(j + 1), cell(w.at(i, j))});
    }
  }
  return rep.converged ? kExitOk : kExitNotConverged;
}

int cmd_perf_model(const OutputOptions& oopt, double c_local, double n_global,
                   double alpha_lat, double t_flop, int nu, int s_min,
                   int s_max, double p_min, double p_max) {
  if (!(alpha_lat > 0.0))
    throw UsageError("perf-model: alpha-lat must be > 0 (crossover undefined)");
  if (s_min > s_max || p_min > p_max || p_min < 2.0)
    throw UsageError("perf-model: empty or invalid s/P range");
  MachineParams machine;
  machine.alpha_lat = alpha_lat;
  machine.t_flop = t_flop;

  const fs::path dir = oopt.prepare();
  {
    CsvWriter csv(dir / "pcrit.csv", "pcrit-table", "s,log2_pcrit,pcrit");
    for (int s = s_min; s <= s_max; ++s) {
      if (s <= 1) {
        csv.row({cell(s), "n/a", "n/a"});  // crossover defined only for s > 1
        continue;
      }
      const PCritResult r = p_crit(s, nu, c_local, machine);
      csv.row({cell(s), cell(r.log2_p), cell(static_cast<index_t>(r.p))});
    }
  }
  {
    CsvWriter weak(dir / "delta_weak.csv", "delta-weak", "s,p,delta_seconds");
    CsvWriter strong(dir / "delta_strong.csv", "delta-strong",
                     "s,p,delta_seconds");
    for (int s = std::max(1, s_min); s <= s_max; ++s) {
      for (double p = p_min; p <= p_max; p *= 2.0) {
        ModelQuery q;
        q.p = p;
        q.s = s;
        q.nu = nu;
        q.c_local = c_local;
        weak.row({cell(s), cell(p), cell(delta_weak(q, machine))});
        q.n_global = n_global;
        strong.row({cell(s), cell(p), cell(delta_strong(q, machine))});
      }
    }
  }
  {
    CsvWriter csv(dir / "cost_breakdown.csv", "cost-breakdown",
                  "method,s,p,spmv,precond,allreduce,local_flops,gram_flops,"
                  "allreduce_count,total");
    for (int s = std::max(2, s_min); s <= s_max; ++s) {
      ModelQuery q;
      q.p = p_max;
      q.s = s;
      q.nu = nu;
      q.c_local = c_local;
      const CostBreakdown cb = cost_breakdown(q, machine);
      const auto side_row = [&](const std::string& method,
                                const CostBreakdown::Side& side) {
        csv.row({method, cell(s), cell(p_max), cell(side.spmv),
                 cell(side.precond), cell(side.allreduce),
                 cell(side.local_flops), cell(side.gram_flops),
                 cell(static_cast<index_t>(side.allreduce_count)),
                 cell(side.total())});
      };
      side_row("pcg", cb.pcg);
      side_row("pcgs", cb.pcgs);
    }
  }
  return kExitOk;
}

int cmd_moments(const ProblemOptions& prob, const OutputOptions& oopt,
                const std::string& density, index_t nodes, int p_max,
                int s_max, const std::string& r0_mode, std::uint64_t seed) {
  const fs::path dir = oopt.prepare();

  if (!density.empty()) {
    if (!prob.poisson.empty() || !prob.matrix_path.empty())
      throw UsageError("moments: --density excludes --poisson/--matrix");
    const DensityKind kind =
        density == "uniform" ? DensityKind::uniform : DensityKind::chebyshev;
    const DecayTable table = moment_decay_experiment(kind, nodes, p_max);
    CsvWriter csv(dir / "moment_decay.csv", "moment-decay", "p,mu_tilde");
    for (const auto& row : table.rows)
      csv.row({cell(row.p), cell(row.mu_tilde)});
    json j;
    j["schema"] = "chebstep-moments-summary/1";
    j["density"] = density;
    j["nodes"] = nodes;
    j["fitted_exponent"] = table.fitted_exponent;
    write_json(dir / "moments_summary.json", j);
    return kExitOk;
  }

  auto [a, b] = prob.load();
  std::vector<double> r0 = r0_mode == "random"
                               ? random_vector(a.n, seed)
                               : std::vector<double>(b.begin(), b.end());
  const SpectralMeasure measure = measure_from_matrix(a, r0);
  const std::vector<double> mu = chebyshev_moments(measure, p_max);
  {
    CsvWriter csv(dir / "moments.csv", "chebyshev-moments", "p,mu,mu_tilde");
    for (int p = 0; p <= p_max; ++p)
      csv.row({cell(p), cell(mu[static_cast<std::size_t>(p)]),
               cell(mu[static_cast<std::size_t>(p)] / mu[0])});
  }
  {
    std::vector<int> s_range;
    for (int s = 1; s <= s_max; ++s) s_range.push_back(s);
    const auto cheb =
        conditioning_experiment(a, r0, s_range, BasisKind::chebyshev);
    const auto mono =
        conditioning_experiment(a, r0, s_range, BasisKind::monomial);
    CsvWriter csv(dir / "conditioning.csv", "basis-conditioning",
                  "s,kappa_chebyshev,kappa_monomial");
    for (std::size_t i = 0; i < cheb.size(); ++i)
      csv.row({cell(cheb[i].s), cell(cheb[i].kappa), cell(mono[i].kappa)});
  }
  json j;
  j["schema"] = "chebstep-moments-summary/1";
  j["problem"] = prob.label();
  j["r0"] = r0_mode;
  j["structure_deviation"] =
      verify_gram_structure(a, r0, std::min(s_max, 12), InnerKind::euclidean);
  write_json(dir / "moments_summary.json", j);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Chebyshev-basis s-step PCG solver and analysis tool"};
  app.require_subcommand(1);

  ProblemOptions prob_solve, prob_compare, prob_gram, prob_moments;
  SolverOptions sopt_solve, sopt_compare, sopt_gram;
  OutputOptions oopt_solve, oopt_compare, oopt_gram, oopt_perf, oopt_moments;
  std::vector<int> compare_s{2, 4, 6};

  CLI::App* solve = app.add_subcommand("solve", "run the s-step solver");
  prob_solve.add_flags(*solve);
  sopt_solve.add_flags(*solve);
  oopt_solve.add_flags(*solve);

  CLI::App* compare = app.add_subcommand(
      "compare", "classical PCG vs s-step with Cholesky and FGS Gram solves");
  prob_compare.add_flags(*compare);
  sopt_compare.add_flags(*compare, /*with_s=*/false);
  compare->add_option("--s", compare_s, "step sizes to sweep");
  oopt_compare.add_flags(*compare);

  CLI::App* gram = app.add_subcommand(
      "gram-analysis", "per-iteration Gram matrices, conditioning and deltas");
  prob_gram.add_flags(*gram);
  sopt_gram.add_flags(*gram);
  oopt_gram.add_flags(*gram);

  CLI::App* perf =
      app.add_subcommand("perf-model", "latency-bandwidth cost model tables");
  double c_local = 8.0e6, n_global = 1.25e8, alpha_lat = 1e-6, t_flop = 1e-13;
  int nu = 30, s_min = 2, s_max = 10;
  double p_min = 4, p_max = 1 << 20;
  perf->add_option("--c", c_local, "local problem size per process");
  perf->add_option("--n", n_global, "global problem size (strong scaling)");
  perf->add_option("--alpha-lat", alpha_lat, "allreduce latency [s]");
  perf->add_option("--t-flop", t_flop, "time per flop [s]");
  perf->add_option("--nu", nu, "FGS sweep count");
  perf->add_option("--s-min", s_min, "smallest step size");
  perf->add_option("--s-max", s_max, "largest step size");
  perf->add_option("--p-min", p_min, "smallest process count");
  perf->add_option("--p-max", p_max, "largest process count");
  oopt_perf.add_flags(*perf);

  CLI::App* moments =
      app.add_subcommand("moments", "Chebyshev moment and conditioning tables");
  prob_moments.add_flags(*moments);
  std::string density;
  index_t nodes = 100000;
  int p_max_m = 40, s_max_m = 12;
  std::string r0_mode = "ones";
  std::uint64_t seed_m = 1234;
  moments->add_option("--density", density, "synthetic density: uniform | chebyshev")
      ->check(CLI::IsMember({"", "uniform", "chebyshev"}));
  moments->add_option("--nodes", nodes, "node count for synthetic densities");
  moments->add_option("--p-max", p_max_m, "largest moment order");
  moments->add_option("--s-max", s_max_m, "largest basis size");
  moments->add_option("--r0", r0_mode, "initial vector: ones | random")
      ->check(CLI::IsMember({"ones", "random"}));
  moments->add_option("--seed", seed_m, "seed for --r0 random");
  oopt_moments.add_flags(*moments);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(prob_solve, sopt_solve, oopt_solve);
    if (compare->parsed())
      return cmd_compare(prob_compare, sopt_compare, oopt_compare, compare_s);
    if (gram->parsed()) return cmd_gram_analysis(prob_gram, sopt_gram, oopt_gram);
    if (perf->parsed())
      return cmd_perf_model(oopt_perf, c_local, n_global, alpha_lat, t_flop,
                            nu, s_min, s_max, p_min, p_max);
    if (moments->parsed())
      return cmd_moments(prob_moments, oopt_moments, density, nodes, p_max_m,
                         s_max_m, r0_mode, seed_m);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    std::fprintf(stderr, "%s\n", app.help().c_str());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("chebstep");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace chebstep::cli
