#include "chebstep/precond.hpp"

#include <algorithm>

#include "chebstep/errors.hpp"

namespace chebstep {

void IdentityPreconditioner::apply(std::span<const double> in,
                                   std::span<double> out) const {
  if (in.size() != out.size()) throw DimensionError("identity: size mismatch");
  std::copy(in.begin(), in.end(), out.begin());
}

JacobiPreconditioner::JacobiPreconditioner(const CsrMatrix& a) {
  inv_diag_.resize(static_cast<std::size_t>(a.n));
  for (index_t i = 0; i < a.n; ++i) {
    const double d = a.diagonal(i);
    if (!(d > 0.0))
      throw NotSpdError("jacobi: diagonal must be strictly positive");
    inv_diag_[static_cast<std::size_t>(i)] = 1.0 / d;
  }
}

void JacobiPreconditioner::apply(std::span<const double> in,
                                 std::span<double> out) const {
  if (in.size() != out.size() || in.size() != inv_diag_.size())
    throw DimensionError("jacobi: size mismatch");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = inv_diag_[i] * in[i];
}

}  // namespace chebstep
