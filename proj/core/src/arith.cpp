#include "qdilog/arith.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace qdilog {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BadLevel: return "BadLevel";
    case ErrorKind::NonPrimitiveRoot: return "NonPrimitiveRoot";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ChargeSumViolation: return "ChargeSumViolation";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValenceError: return "ValenceError";
    case ErrorKind::PlanarityError: return "PlanarityError";
    case ErrorKind::EdgeNotFound: return "EdgeNotFound";
    case ErrorKind::IllegalMove: return "IllegalMove";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::RankCapExceeded: return "RankCapExceeded";
    case ErrorKind::EvenLevel: return "EvenLevel";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::FermatViolation: return "FermatViolation";
    case ErrorKind::GluingInconsistency: return "GluingInconsistency";
  }
  return "Unknown";
}

ModularContext ModularContext::make(int level, int root_exponent, double tolerance) {
  if (level < 2) {
    throw Error(ErrorKind::BadLevel, "level N must be >= 2, got " + std::to_string(level));
  }
  if (root_exponent < 1 || root_exponent >= level) {
    throw Error(ErrorKind::NonPrimitiveRoot,
                "root exponent must lie in [1, N), got " + std::to_string(root_exponent));
  }
  if (std::gcd(root_exponent, level) != 1) {
    throw Error(ErrorKind::NonPrimitiveRoot,
                "gcd(" + std::to_string(root_exponent) + ", " + std::to_string(level) + ") != 1");
  }
  if (!(tolerance > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  }
  return ModularContext(level, root_exponent, tolerance);
}

ModularContext::ModularContext(int level, int root_exponent, double tolerance)
    : level_(level), root_exponent_(root_exponent), tolerance_(tolerance) {
  const auto n = static_cast<std::size_t>(level);
  powers_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    // exp(2 pi i k m / N) from the reduced numerator keeps every table entry
    // within one rounding of the true root.
    const auto num = static_cast<double>((static_cast<long long>(root_exponent) *
                                          static_cast<long long>(m)) % level);
    powers_[m] = std::polar(1.0, 2.0 * std::numbers::pi * num / level);
  }
  poch_.resize(n);
  poch_conj_.resize(n);
  poch_[0] = poch_conj_[0] = 1.0;
  for (std::size_t m = 1; m < n; ++m) {
    poch_[m] = poch_[m - 1] * (1.0 - powers_[m]);
    poch_conj_[m] = poch_conj_[m - 1] * (1.0 - std::conj(powers_[m]));
  }
  inv_poch_.resize(n);
  inv_poch_conj_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    inv_poch_[m] = 1.0 / poch_[m];
    inv_poch_conj_[m] = 1.0 / poch_conj_[m];
  }
}

complex ModularContext::pochhammer(int n) const {
  if (n < 0 || n >= level_) {
    throw Error(ErrorKind::IndexOutOfRange,
                "Pochhammer index " + std::to_string(n) + " outside [0, N)");
  }
  return poch_[static_cast<std::size_t>(n)];
}

complex ModularContext::pochhammer_conj(int n) const {
  if (n < 0 || n >= level_) {
    throw Error(ErrorKind::IndexOutOfRange,
                "Pochhammer index " + std::to_string(n) + " outside [0, N)");
  }
  return poch_conj_[static_cast<std::size_t>(n)];
}

ModularContext ModularContext::conjugate() const {
  return ModularContext(level_, level_ - root_exponent_, tolerance_);
}

ModularContext make_context(int level, int root_exponent, double tolerance) {
  return ModularContext::make(level, root_exponent, tolerance);
}

complex pochhammer(const ModularContext& ctx, int n) { return ctx.pochhammer(n); }

int theta(const ModularContext& ctx, std::int64_t n) { return ctx.theta(n); }

int bracket(const ModularContext& ctx, std::int64_t n) { return ctx.bracket(n); }

int multiplicative_order(const ModularContext& ctx) {
  complex p = 1.0;
  for (int m = 1; m <= 4 * ctx.level(); ++m) {
    p *= ctx.omega();
    if (std::abs(p - 1.0) < ctx.tolerance()) return m;
  }
  return 0;
}

}  // namespace qdilog
