#pragma once

#include <cstdint>

namespace chebstep {

/// Latency-bandwidth machine description. One allreduce among P processes
/// costs alpha_lat * log2(P). Operator and preconditioner application times
/// cancel in every difference indicator, so they default to zero.
struct MachineParams {
  double alpha_lat = 1e-6;  // seconds per allreduce latency unit
  double t_flop = 1e-13;    // seconds per double-precision flop
  double t_spmv = 0.0;      // seconds per operator application
  double t_prec = 0.0;      // seconds per preconditioner application
};

struct ModelQuery {
  double p = 2.0;        // process count (log2 taken as a real)
  int s = 2;             // step size
  int nu = 30;           // Gram-solve sweep count
  double n_global = 0.0; // global problem size (strong scaling)
  double c_local = 0.0;  // per-process problem size (weak scaling)
};

/// Time for one s-step outer iteration minus s classical iterations at
/// fixed global size n:
///   2 a_lat (1-s) log2 P + [s(7s-9)/2] (n/P) t_flop + nu (s^2+2s) t_flop.
/// Negative means the s-step outer iteration is faster.
double delta_strong(const ModelQuery& q, const MachineParams& m);

/// Same indicator at fixed local size c (n = c P):
///   2 a_lat (1-s) log2 P + [c s(7s-9)/2] t_flop + nu (s^2+2s) t_flop.
double delta_weak(const ModelQuery& q, const MachineParams& m);

struct PCritResult {
  double log2_p;
  std::int64_t p;  // round(2^log2_p)
};

/// Weak-scaling crossover: the process count beyond which one s-step outer
/// iteration beats s classical iterations,
///   log2 P = t_flop [c s(7s-9)/2 + nu (s^2+2s)] / (2 a_lat (s-1)),  s > 1.
PCritResult p_crit(int s, int nu, double c_local, const MachineParams& m);

/// Itemized per-kernel costs of s classical iterations and of one s-step
/// outer iteration, plus the reduction counts behind the allreduce terms.
struct CostBreakdown {
  struct Side {
    double spmv = 0.0;
    double precond = 0.0;
    double allreduce = 0.0;
    double local_flops = 0.0;
    double gram_flops = 0.0;
    std::int64_t allreduce_count = 0;
    double total() const {
      return spmv + precond + allreduce + local_flops + gram_flops;
    }
  };
  Side pcg;   // s classical iterations
  Side pcgs;  // one outer iteration
};

CostBreakdown cost_breakdown(const ModelQuery& q, const MachineParams& m);

}  // namespace chebstep
