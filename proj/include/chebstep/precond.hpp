#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "chebstep/csr.hpp"

namespace chebstep {

/// SPD preconditioner interface: one action, out = M^{-1} in.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual void apply(std::span<const double> in, std::span<double> out) const = 0;
  virtual std::string_view name() const = 0;

  std::vector<double> apply_copy(std::span<const double> in) const {
    std::vector<double> out(in.size());
    apply(in, out);
    return out;
  }
};

/// M = I; apply is a bitwise copy.
class IdentityPreconditioner final : public Preconditioner {
 public:
  void apply(std::span<const double> in, std::span<double> out) const override;
  std::string_view name() const override { return "identity"; }
};

/// M = diag(A); requires a strictly positive diagonal.
class JacobiPreconditioner final : public Preconditioner {
 public:
  explicit JacobiPreconditioner(const CsrMatrix& a);
  void apply(std::span<const double> in, std::span<double> out) const override;
  std::string_view name() const override { return "jacobi"; }

 private:
  std::vector<double> inv_diag_;
};

}  // namespace chebstep
