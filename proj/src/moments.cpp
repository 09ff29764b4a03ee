#include "chebstep/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "chebstep/dense_ops.hpp"
#include "chebstep/errors.hpp"
#include "chebstep/gram.hpp"
#include "chebstep/kernels.hpp"
#include "chebstep/lapack.hpp"

namespace chebstep {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_guard(const CsrMatrix& a, const char* what) {
  if (a.n > kDenseAnalysisGuard)
    throw GuardExceededError(std::string(what) + ": n exceeds 2048");
}

std::pair<double, double> spectrum_extremes(const DenseEigen& e) {
  const double lo = e.values.front();
  const double hi = e.values.back();
  if (!(hi > lo))
    throw InvalidArgumentError("degenerate spectrum: lambda_max == lambda_min");
  return {lo, hi};
}
}  // namespace

double SpectralMeasure::total_weight() const {
  double acc = 0.0;
  for (double w : weights) acc += w;
  return acc;
}

SpectralMeasure measure_from_eigen(const DenseEigen& e,
                                   std::span<const double> r0) {
  if (static_cast<index_t>(r0.size()) != e.n)
    throw DimensionError("measure_from_eigen: vector length mismatch");
  const auto [lo, hi] = spectrum_extremes(e);
  SpectralMeasure m;
  m.nodes.reserve(static_cast<std::size_t>(e.n));
  m.weights.reserve(static_cast<std::size_t>(e.n));
  m.eigenvalues = e.values;
  for (index_t l = 0; l < e.n; ++l) {
    const double c = dot({e.vectors.data() + static_cast<std::size_t>(l) * e.n,
                          static_cast<std::size_t>(e.n)},
                         r0);
    m.weights.push_back(c * c);
    m.nodes.push_back((2.0 * e.values[static_cast<std::size_t>(l)] - hi - lo) /
                      (hi - lo));
  }
  return m;
}

SpectralMeasure measure_from_matrix(const CsrMatrix& a,
                                    std::span<const double> r0) {
  require_guard(a, "measure_from_matrix");
  return measure_from_eigen(dense_eigendecomposition(a), r0);
}

namespace {

/// Accumulates f(w_l, lambda_l) * T_p(node_l) into moments[p] for all nodes,
/// ascending l, recurrence in p per node.
template <typename WeightFn>
std::vector<double> moments_impl(const SpectralMeasure& m, int p_max,
                                 WeightFn&& weight) {
  if (p_max < 0) throw InvalidArgumentError("moments: p_max must be >= 0");
  std::vector<double> mu(static_cast<std::size_t>(p_max) + 1, 0.0);
  for (std::size_t l = 0; l < m.nodes.size(); ++l) {
    const double x = m.nodes[l];
    const double w = weight(l);
    double t_prev = 1.0;  // T_0
    mu[0] += w;
    if (p_max >= 1) {
      double t_cur = x;  // T_1
      mu[1] += w * t_cur;
      for (int p = 2; p <= p_max; ++p) {
        const double t_next = 2.0 * x * t_cur - t_prev;
        mu[static_cast<std::size_t>(p)] += w * t_next;
        t_prev = t_cur;
        t_cur = t_next;
      }
    }
  }
  return mu;
}

}  // namespace

std::vector<double> chebyshev_moments(const SpectralMeasure& m, int p_max) {
  return moments_impl(m, p_max, [&](std::size_t l) { return m.weights[l]; });
}

std::vector<double> chebyshev_moments_a(const SpectralMeasure& m, int p_max) {
  if (m.eigenvalues.size() != m.nodes.size())
    throw InvalidArgumentError("chebyshev_moments_a: measure has no eigenvalues");
  return moments_impl(
      m, p_max, [&](std::size_t l) { return m.weights[l] * m.eigenvalues[l]; });
}

namespace {

VectorBlock basis_impl(const CsrMatrix& a, std::span<const double> r, int cols,
                       double lo, double hi, bool chebyshev) {
  if (cols < 1) throw InvalidArgumentError("basis: cols must be >= 1");
  if (!(hi > lo)) throw InvalidArgumentError("basis: need hi > lo");
  const std::size_t n = r.size();
  const double alpha = 2.0 / (hi - lo);
  const double sigma = (hi + lo) / (hi - lo);
  const auto& kern = kernels::active();

  VectorBlock out(a.n, cols);
  out.set_col(0, r);
  std::vector<double> av(n);
  for (int j = 1; j < cols; ++j) {
    spmv_into(a, out.col_span(j - 1), av);
    if (chebyshev && j >= 2) {
      // T_{j} = 2 shifted(A) T_{j-1} - T_{j-2}
      kern.lincomb3(n, 2.0 * alpha, av.data(), -2.0 * sigma, out.col(j - 1),
                    -1.0, out.col(j - 2), out.col(j));
    } else {
      // first Chebyshev step and every monomial step: shifted(A) * previous
      kern.lincomb3(n, alpha, av.data(), -sigma, out.col(j - 1), 0.0,
                    out.col(j - 1), out.col(j));
    }
  }
  return out;
}

}  // namespace

VectorBlock chebyshev_basis(const CsrMatrix& a, std::span<const double> r,
                            int cols, double lo, double hi) {
  return basis_impl(a, r, cols, lo, hi, true);
}

VectorBlock monomial_basis(const CsrMatrix& a, std::span<const double> r,
                           int cols, double lo, double hi) {
  return basis_impl(a, r, cols, lo, hi, false);
}

namespace {

SmallDense direct_gram(const CsrMatrix& a, const VectorBlock& basis,
                       InnerKind inner) {
  if (inner == InnerKind::euclidean) return block_gram(basis, basis);
  VectorBlock ab(basis.n, basis.k);
  for (index_t j = 0; j < basis.k; ++j)
    spmv_into(a, basis.col_span(j), ab.col_span(j));
  return block_gram(basis, ab);
}

}  // namespace

double verify_gram_structure(const CsrMatrix& a, std::span<const double> r0,
                             int s, InnerKind inner) {
  require_guard(a, "verify_gram_structure");
  if (s < 1 || s + 1 > kSmallDenseMax)
    throw InvalidArgumentError("verify_gram_structure: bad s");
  const DenseEigen eig = dense_eigendecomposition(a);
  const auto [lo, hi] = spectrum_extremes(eig);

  const VectorBlock basis = chebyshev_basis(a, r0, s + 1, lo, hi);
  const SmallDense w = direct_gram(a, basis, inner);

  const SpectralMeasure measure = measure_from_eigen(eig, r0);
  const std::vector<double> mu = inner == InnerKind::euclidean
                                     ? chebyshev_moments(measure, 2 * s)
                                     : chebyshev_moments_a(measure, 2 * s);

  double max_dev = 0.0;
  const int m = s + 1;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      const double pred =
          0.5 * (mu[static_cast<std::size_t>(i + j - 2)] +
                 mu[static_cast<std::size_t>(std::abs(i - j))]);
      max_dev = std::max(max_dev, std::abs(w.at(i - 1, j - 1) - pred));
    }
  return max_dev;
}

double normalized_gram_bound_check(const CsrMatrix& a,
                                   std::span<const double> r0, int s) {
  require_guard(a, "normalized_gram_bound_check");
  if (s < 1 || s + 1 > kSmallDenseMax)
    throw InvalidArgumentError("normalized_gram_bound_check: bad s");
  const DenseEigen eig = dense_eigendecomposition(a);
  const auto [lo, hi] = spectrum_extremes(eig);

  const VectorBlock basis = chebyshev_basis(a, r0, s + 1, lo, hi);
  SmallDense w = block_gram(basis, basis);
  for (int j = 0; j < w.cols; ++j)
    for (int i = 0; i < j; ++i) {
      const double sym = 0.5 * (w.at(i, j) + w.at(j, i));
      w.at(i, j) = sym;
      w.at(j, i) = sym;
    }
  const GramSystem gc = normalize_gram(gram_from_matrix(w));

  const SpectralMeasure measure = measure_from_eigen(eig, r0);
  std::vector<double> mu = chebyshev_moments(measure, 2 * s);
  const double mu0 = mu[0];
  for (double& v : mu) v /= mu0;

  double worst = 0.0;
  const int m = s + 1;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      if (i == j) continue;
      const double bound =
          0.5 * (std::abs(mu[static_cast<std::size_t>(std::abs(i - j))]) +
                 std::abs(mu[static_cast<std::size_t>(i + j - 2)]));
      const double entry = std::abs(gc.w.at(i - 1, j - 1));
      if (bound == 0.0) {
        if (entry > 1e-14) worst = kInf;
        continue;
      }
      worst = std::max(worst, entry / bound);
    }
  return worst;
}

std::vector<ConditioningRow> conditioning_experiment(
    const CsrMatrix& a, std::span<const double> r0,
    std::span<const int> s_range, BasisKind basis) {
  require_guard(a, "conditioning_experiment");
  if (s_range.empty())
    throw InvalidArgumentError("conditioning_experiment: empty s range");
  const int s_max = *std::max_element(s_range.begin(), s_range.end());
  if (s_max < 1 || s_max > kSmallDenseMax)
    throw InvalidArgumentError("conditioning_experiment: bad s range");
  const DenseEigen eig = dense_eigendecomposition(a);
  const auto [lo, hi] = spectrum_extremes(eig);

  const VectorBlock full = basis == BasisKind::chebyshev
                               ? chebyshev_basis(a, r0, s_max, lo, hi)
                               : monomial_basis(a, r0, s_max, lo, hi);

  std::vector<ConditioningRow> rows;
  rows.reserve(s_range.size());
  for (int s : s_range) {
    if (s < 1 || s > s_max)
      throw InvalidArgumentError("conditioning_experiment: bad s entry");
    const VectorBlock head = full.columns(0, s);
    SmallDense w = block_gram(head, head);
    for (int j = 0; j < s; ++j)
      for (int i = 0; i < j; ++i) {
        const double sym = 0.5 * (w.at(i, j) + w.at(j, i));
        w.at(i, j) = sym;
        w.at(j, i) = sym;
      }
    bool degenerate = false;
    for (int i = 0; i < s; ++i)
      if (!(w.at(i, i) > 0.0)) degenerate = true;
    if (degenerate) {
      rows.push_back({s, kInf});  // rank collapse, reported not raised
      continue;
    }
    const GramSystem gc = normalize_gram(gram_from_matrix(w));
    const auto ev =
        lapack::sym_eigvals(s, std::vector<double>(gc.w.data.begin(), gc.w.data.end()));
    rows.push_back({s, ev.front() > 0.0 ? ev.back() / ev.front() : kInf});
  }
  return rows;
}

double ClusterSpec::separation() const {
  if (centers.size() < 2) return kInf;
  double best = kInf;
  for (std::size_t i = 1; i < centers.size(); ++i)
    best = std::min(best, centers[i] - centers[i - 1]);
  return best;
}

double ClusterSpec::total_weight() const {
  double acc = 0.0;
  for (double w : weights) acc += w;
  return acc;
}

void ClusterSpec::validate() const {
  if (centers.empty() || centers.size() != weights.size() ||
      centers.size() != smoothness.size())
    throw InvalidArgumentError("ClusterSpec: inconsistent field lengths");
  if (!(half_width > 0.0))
    throw InvalidArgumentError("ClusterSpec: half_width must be > 0");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (std::abs(centers[i]) + half_width > 1.0)
      throw InvalidArgumentError("ClusterSpec: cluster interval leaves [-1,1]");
    if (i > 0 && !(centers[i] > centers[i - 1]))
      throw InvalidArgumentError("ClusterSpec: centers must be ascending");
    if (!(weights[i] > 0.0) || smoothness[i] < 0.0)
      throw InvalidArgumentError("ClusterSpec: bad weight or smoothness");
  }
  if (!(separation() > 2.0 * half_width))
    throw InvalidArgumentError("ClusterSpec: separation must exceed 2*half_width");
  if (std::abs(total_weight() - 1.0) > 1e-9)
    throw InvalidArgumentError("ClusterSpec: weights must sum to 1");
}

ClusterBound cluster_bound_eval(const ClusterSpec& spec, int p) {
  spec.validate();
  if (p < 1) throw InvalidArgumentError("cluster_bound_eval: p must be >= 1");
  const double p_limit = 1.0 / (2.0 * spec.half_width);
  if (static_cast<double>(p) > p_limit)
    throw InvalidArgumentError(
        "cluster_bound_eval: p outside validity range 1 <= p <= 1/(2*delta) = " +
        fmt_double(p_limit));
  const double w_tot = spec.total_weight();
  double c_delta = 0.0;
  for (double m : spec.smoothness) c_delta += m;
  const double sep = spec.separation();
  if (std::isfinite(sep)) c_delta += 2.0 * w_tot / (sep * sep);
  const double bound =
      c_delta / (static_cast<double>(p) * p) + 0.5 * w_tot;
  return {bound, c_delta};
}

double cluster_smoothness_epanechnikov(double weight, double half_width) {
  return 3.0 * weight / (half_width * half_width);
}

SpectralMeasure synthesize_clustered_measure(const ClusterSpec& spec,
                                             int nodes_per_cluster) {
  spec.validate();
  if (nodes_per_cluster < 1)
    throw InvalidArgumentError("synthesize_clustered_measure: need >= 1 node");
  SpectralMeasure m;
  const double delta = spec.half_width;
  for (std::size_t a = 0; a < spec.centers.size(); ++a) {
    const double center = spec.centers[a];
    const double target = spec.weights[a];
    std::vector<double> w(static_cast<std::size_t>(nodes_per_cluster));
    double sum = 0.0;
    for (int i = 0; i < nodes_per_cluster; ++i) {
      const double u =
          -delta + (2.0 * i + 1.0) * delta / nodes_per_cluster;  // midpoints
      const double density = delta * delta - u * u;  // parabolic bump
      w[static_cast<std::size_t>(i)] = density;
      sum += density;
      m.nodes.push_back(center + u);
    }
    for (double& wi : w) m.weights.push_back(wi * target / sum);
  }
  return m;
}

DecayTable moment_decay_experiment(const SpectralMeasure& m, int p_max) {
  const double total = m.total_weight();
  if (!(total > 0.0))
    throw InvalidArgumentError("moment_decay_experiment: empty measure");
  std::vector<double> mu = chebyshev_moments(m, p_max);
  DecayTable table;
  table.rows.reserve(mu.size());
  for (int p = 0; p <= p_max; ++p)
    table.rows.push_back({p, mu[static_cast<std::size_t>(p)] / total});

  std::vector<double> xs, ys;
  for (int p = 2; p <= p_max; ++p) {
    const double v = std::abs(table.rows[static_cast<std::size_t>(p)].mu_tilde);
    if (v > 1e-14) {
      xs.push_back(static_cast<double>(p));
      ys.push_back(v);
    }
  }
  table.fitted_exponent = xs.size() >= 2 ? -fit_log_log_slope(xs, ys) : 0.0;
  return table;
}

DecayTable moment_decay_experiment(DensityKind kind, index_t n_nodes,
                                   int p_max) {
  if (n_nodes < 1 || n_nodes > 1000000)
    throw InvalidArgumentError("moment_decay_experiment: n_nodes in [1, 1e6]");
  SpectralMeasure m;
  m.nodes.reserve(static_cast<std::size_t>(n_nodes));
  m.weights.assign(static_cast<std::size_t>(n_nodes),
                   1.0 / static_cast<double>(n_nodes));
  for (index_t l = 0; l < n_nodes; ++l) {
    const double frac = (2.0 * static_cast<double>(l) + 1.0) /
                        (2.0 * static_cast<double>(n_nodes));
    m.nodes.push_back(kind == DensityKind::uniform
                          ? -1.0 + 2.0 * frac
                          : std::cos(std::numbers::pi * frac));
  }
  return moment_decay_experiment(m, p_max);
}

double fit_log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidArgumentError("fit_log_log_slope: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace chebstep
