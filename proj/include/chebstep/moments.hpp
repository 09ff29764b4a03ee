#pragma once

#include <span>
#include <vector>

#include "chebstep/block.hpp"
#include "chebstep/csr.hpp"
#include "chebstep/spectral.hpp"

namespace chebstep {

/// Discrete spectral measure induced by (A, r0): nodes are eigenvalues
/// mapped to [-1,1], weights are squared eigenvector components of r0.
/// Synthetic measures (no originating matrix) leave eigenvalues empty.
struct SpectralMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> eigenvalues;

  double total_weight() const;  // = ||r0||^2 for matrix-induced measures
};

SpectralMeasure measure_from_eigen(const DenseEigen& e,
                                   std::span<const double> r0);
SpectralMeasure measure_from_matrix(const CsrMatrix& a,
                                    std::span<const double> r0);

/// mu_p = sum_l w_l T_p(node_l) for p = 0..p_max, via the three-term
/// recurrence at each node (stays polynomial slightly outside [-1,1]).
std::vector<double> chebyshev_moments(const SpectralMeasure& m, int p_max);

/// Operator-weighted moments sum_l w_l lambda_l T_p(node_l); these play the
/// role of mu_p when Gram matrices are formed in the A inner product.
std::vector<double> chebyshev_moments_a(const SpectralMeasure& m, int p_max);

/// [T_0(shifted A) r, ..., T_{cols-1}(shifted A) r] by the vector recurrence,
/// with the spectrum mapped from [lo, hi].
VectorBlock chebyshev_basis(const CsrMatrix& a, std::span<const double> r,
                            int cols, double lo, double hi);

/// [r, shifted-A r, (shifted A)^2 r, ...]; only used for the conditioning
/// contrast against the Chebyshev basis.
VectorBlock monomial_basis(const CsrMatrix& a, std::span<const double> r,
                           int cols, double lo, double hi);

enum class InnerKind { euclidean, a_inner };

/// Assembles the (s+1)-column Chebyshev Gram matrix directly from basis
/// vectors and compares it with the half-sum moment prediction
/// W_ij = (mu_{i+j-2} + mu_{|i-j|})/2; returns the max entry deviation.
double verify_gram_structure(const CsrMatrix& a, std::span<const double> r0,
                             int s, InnerKind inner);

/// Checks |(W_c)_ij| <= (|mu~_{|i-j|}| + |mu~_{i+j-2}|)/2 entrywise on the
/// diagonally normalized Chebyshev Gram matrix; returns the worst ratio of
/// entry to bound over i != j.
double normalized_gram_bound_check(const CsrMatrix& a,
                                   std::span<const double> r0, int s);

enum class BasisKind { monomial, chebyshev };

struct ConditioningRow {
  int s;
  double kappa;  // +inf marks rank collapse
};

/// kappa_2 of the diagonally normalized Gram matrix of each basis size.
std::vector<ConditioningRow> conditioning_experiment(
    const CsrMatrix& a, std::span<const double> r0, std::span<const int> s_range,
    BasisKind basis);

/// Spectral density supported on p_c intervals of half-width delta around
/// separated centers, with per-cluster smoothness budgets.
struct ClusterSpec {
  std::vector<double> centers;     // ascending, inside (-1, 1)
  double half_width = 0.0;         // delta
  std::vector<double> weights;     // W_a, summing to 1
  std::vector<double> smoothness;  // M_a >= ||phi''|_{I_a}||_L1

  double separation() const;  // min center gap; +inf for one cluster
  double total_weight() const;
  void validate() const;
};

struct ClusterBound {
  double bound;    // C_delta / p^2 + W_tot / 2
  double c_delta;  // sum M_a + 2 W_tot / Delta^2
};

/// Moment bound for clustered densities; valid for 1 <= p <= 1/(2 delta).
ClusterBound cluster_bound_eval(const ClusterSpec& spec, int p);

/// Discrete measure matching the spec: per cluster, a midpoint-discretized
/// parabolic (Epanechnikov) density. Its honest smoothness constant is
/// cluster_smoothness_epanechnikov(W_a, delta).
SpectralMeasure synthesize_clustered_measure(const ClusterSpec& spec,
                                             int nodes_per_cluster);
double cluster_smoothness_epanechnikov(double weight, double half_width);

enum class DensityKind { uniform, chebyshev };

struct DecayRow {
  int p;
  double mu_tilde;
};

struct DecayTable {
  std::vector<DecayRow> rows;
  /// Least-squares exponent q of |mu~_p| ~ p^{-q}; informational only,
  /// finite-n discrete measures may oscillate instead of decaying.
  double fitted_exponent;
};

DecayTable moment_decay_experiment(DensityKind kind, index_t n_nodes, int p_max);
DecayTable moment_decay_experiment(const SpectralMeasure& m, int p_max);

/// Least-squares slope of log(y) against log(x).
double fit_log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace chebstep
