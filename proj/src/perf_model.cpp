#include "chebstep/perf_model.hpp"

#include <cmath>

#include "chebstep/errors.hpp"

namespace chebstep {

namespace {

void check_query(const ModelQuery& q) {
  if (q.s < 1) throw InvalidArgumentError("perf model: s must be >= 1");
  if (q.nu < 1) throw InvalidArgumentError("perf model: nu must be >= 1");
  if (!(q.p >= 2.0)) throw InvalidArgumentError("perf model: P must be >= 2");
}

double comm_term(const ModelQuery& q, const MachineParams& m) {
  return 2.0 * m.alpha_lat * (1.0 - q.s) * std::log2(q.p);
}

double gram_term(const ModelQuery& q, const MachineParams& m) {
  const double s = q.s;
  return q.nu * (s * s + 2.0 * s) * m.t_flop;
}

}  // namespace

double delta_strong(const ModelQuery& q, const MachineParams& m) {
  check_query(q);
  if (!(q.n_global > 0.0))
    throw InvalidArgumentError("delta_strong: n_global must be > 0");
  const double s = q.s;
  return comm_term(q, m) +
         (s * (7.0 * s - 9.0) / 2.0) * (q.n_global / q.p) * m.t_flop +
         gram_term(q, m);
}

double delta_weak(const ModelQuery& q, const MachineParams& m) {
  check_query(q);
  if (!(q.c_local > 0.0))
    throw InvalidArgumentError("delta_weak: c_local must be > 0");
  const double s = q.s;
  return comm_term(q, m) + (q.c_local * s * (7.0 * s - 9.0) / 2.0) * m.t_flop +
         gram_term(q, m);
}

PCritResult p_crit(int s, int nu, double c_local, const MachineParams& m) {
  if (s <= 1)
    throw InvalidArgumentError("p_crit: defined only for s > 1");
  if (nu < 1) throw InvalidArgumentError("p_crit: nu must be >= 1");
  if (!(c_local > 0.0))
    throw InvalidArgumentError("p_crit: c_local must be > 0");
  if (!(m.alpha_lat > 0.0))
    throw InvalidArgumentError("p_crit: undefined for alpha_lat = 0");
  const double sd = s;
  const double log2_p =
      m.t_flop * (c_local * sd * (7.0 * sd - 9.0) / 2.0 + nu * (sd * sd + 2.0 * sd)) /
      (2.0 * m.alpha_lat * (sd - 1.0));
  return {log2_p, static_cast<std::int64_t>(std::llround(std::exp2(log2_p)))};
}

CostBreakdown cost_breakdown(const ModelQuery& q, const MachineParams& m) {
  check_query(q);
  const double s = q.s;
  const double log2p = std::log2(q.p);
  const double n_over_p =
      q.n_global > 0.0 ? q.n_global / q.p : q.c_local;  // weak view when c set
  if (!(n_over_p > 0.0) && m.t_flop > 0.0)
    throw InvalidArgumentError("cost_breakdown: need n_global or c_local");

  CostBreakdown out;
  out.pcg.spmv = s * m.t_spmv;
  out.pcg.precond = s * m.t_prec;
  out.pcg.allreduce_count = 2 * q.s;
  out.pcg.allreduce = 2.0 * s * m.alpha_lat * log2p;
  out.pcg.local_flops = 8.0 * s * n_over_p * m.t_flop;
  out.pcg.gram_flops = 0.0;

  out.pcgs.spmv = s * m.t_spmv;
  out.pcgs.precond = s * m.t_prec;
  out.pcgs.allreduce_count = 2;
  out.pcgs.allreduce = 2.0 * m.alpha_lat * log2p;
  out.pcgs.local_flops = 3.5 * (s * s + s) * n_over_p * m.t_flop;
  out.pcgs.gram_flops = q.nu * (s * s + 2.0 * s) * m.t_flop;
  return out;
}

}  // namespace chebstep
