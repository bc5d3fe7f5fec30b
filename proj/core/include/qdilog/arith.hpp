#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qdilog/error.hpp"

namespace qdilog {

using complex = std::complex<double>;

/// The ambient setting: a level N >= 2 and a primitive root of unity
/// omega = exp(2 pi i k / N) with gcd(k, N) = 1.
///
/// Powers of omega and the cyclic Pochhammer symbols are tabulated once at
/// construction, so every omega^e lookup is an exact table read after
/// reducing e mod N. The context is an immutable value type.
class ModularContext {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  /// Throws BadLevel for N < 2, NonPrimitiveRoot unless 1 <= k < N and
  /// gcd(k, N) = 1, InvalidArgument for a non-positive tolerance.
  static ModularContext make(int level, int root_exponent = 1,
                             double tolerance = kDefaultTolerance);

  int level() const noexcept { return level_; }
  int root_exponent() const noexcept { return root_exponent_; }
  double tolerance() const noexcept { return tolerance_; }
  complex omega() const noexcept { return powers_[1]; }

  /// omega^e for any integer e.
  complex omega_pow(std::int64_t e) const noexcept {
    return powers_[static_cast<std::size_t>(bracket(e))];
  }

  /// [n]: the representative of n mod N in {0, ..., N-1}, as an integer.
  int bracket(std::int64_t n) const noexcept {
    const std::int64_t r = n % level_;
    return static_cast<int>(r < 0 ? r + level_ : r);
  }

  /// 1 if 0 <= n < N, else 0.
  int theta(std::int64_t n) const noexcept { return n >= 0 && n < level_ ? 1 : 0; }

  /// (omega)_n for 0 <= n < N. Throws IndexOutOfRange otherwise.
  complex pochhammer(int n) const;
  /// (omega*)_n, the symbol built from the conjugate root.
  complex pochhammer_conj(int n) const;

  // Unchecked reciprocal tables used on the hot path of the weight function.
  complex inv_pochhammer(int n) const noexcept {
    return inv_poch_[static_cast<std::size_t>(n)];
  }
  complex inv_pochhammer_conj(int n) const noexcept {
    return inv_poch_conj_[static_cast<std::size_t>(n)];
  }

  /// Context with omega replaced by its complex conjugate (k -> N - k).
  ModularContext conjugate() const;

 private:
  ModularContext(int level, int root_exponent, double tolerance);

  int level_;
  int root_exponent_;
  double tolerance_;
  std::vector<complex> powers_;
  std::vector<complex> poch_;
  std::vector<complex> poch_conj_;
  std::vector<complex> inv_poch_;
  std::vector<complex> inv_poch_conj_;
};

ModularContext make_context(int level, int root_exponent = 1,
                            double tolerance = ModularContext::kDefaultTolerance);

complex pochhammer(const ModularContext& ctx, int n);
int theta(const ModularContext& ctx, std::int64_t n);
int bracket(const ModularContext& ctx, std::int64_t n);

/// Smallest m > 0 with |omega^m - 1| < tol, computed by repeated
/// multiplication (independent of the power table).
int multiplicative_order(const ModularContext& ctx);

}  // namespace qdilog
