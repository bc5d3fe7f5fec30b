#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "qdilog/arith.hpp"

namespace qdilog {

/// Arguments of the eight-index Boltzmann weight. Edge indices are
/// unrestricted integers; the sector charges must sum to 1 mod N.
struct RSymbolArgs {
  std::int64_t i = 0, j = 0, k = 0, l = 0;
  int a = 0, b = 0, c = 0, d = 0;
};

/// Four-argument weight
///   W(k,l,m,n) = N w^{(l+m)(m+n)} th([k]+[m]) th([l]+[n])
///                / ((w)_[k] (w*)_[l] (w)_[m] (w*)_[n]).
/// Returns exactly 0 when a theta factor vanishes; the Pochhammer
/// denominators are not touched in that case.
complex weight_w(const ModularContext& ctx, std::int64_t k, std::int64_t l,
                 std::int64_t m, std::int64_t n);

/// R(i,j,k,l|a,b,c,d) = w^{a-k-j} W(j-i-a, i-l-d, l-k-c, k-j-b).
/// Throws ChargeSumViolation unless a+b+c+d = 1 mod N.
complex r_symbol(const ModularContext& ctx, const RSymbolArgs& args);

/// Same as r_symbol without the charge check; callers guarantee it.
complex r_symbol_unchecked(const ModularContext& ctx, const RSymbolArgs& args) noexcept;

/// N^2 x N^2 matrix in <out|R|in> form: row index i*N+j is the outgoing
/// pair |i,j>, column index k*N+l the incoming pair |k,l>.
class RTensor {
 public:
  RTensor(int level, int root_exponent, Eigen::MatrixXcd entries);

  int level() const noexcept { return level_; }
  int root_exponent() const noexcept { return root_exponent_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }

  /// <i,j|R|k,l>
  complex operator()(int i, int j, int k, int l) const {
    return entries_(i * level_ + j, k * level_ + l);
  }

  bool all_finite() const;

 private:
  int level_;
  int root_exponent_;
  Eigen::MatrixXcd entries_;
};

/// <i,j|R|k,l> = R(i,j,k,l|1,0,0,0) w^{k+l}.
RTensor r_matrix(const ModularContext& ctx);

/// Inverse R-matrix, <i,l|Rbar|k,j> = R(i,j,k,l|0,0,0,1) w^{j+k-1}.
/// The extra w^{-1} normalizes R Rbar to the identity.
RTensor r_inverse(const ModularContext& ctx);

/// Lifts an operator on factors (p, q) of C^N (x) C^N to C^N (x) C^N (x) C^N:
///   R_pq |x> = sum_{x'} |x' with x'_p, x'_q replaced> <x'_p, x'_q|R|x_p, x_q>.
/// Basis index of |a,b,c> is a*N^2 + b*N + c.
Eigen::MatrixXcd embed_pair(const RTensor& r, int p, int q);

/// max |R12 R13 R23 - R23 R13 R12| / max |R12 R13 R23|.
double verify_ybe(const ModularContext& ctx);

/// max |R Rbar - I| and max |Rbar R - I| (the larger of the two).
double inverse_residual(const ModularContext& ctx);

/// max over i,l of |sum_j w^j R(i,j,j,l|0,1,0,0) - w^{-i} delta_{i,l}|.
double verify_kink(const ModularContext& ctx);

struct SymmetryReport {
  double rotation_residual = 0.0;    ///< R(i,j,k,l|a,b,c,d) vs R(k,l,i,j|c,d,a,b)
  double reflection_residual = 0.0;  ///< vs R(-j,-i,-l,-k|a,d,c,b) w^{-i-j-k-l}
  std::int64_t tuples_checked = 0;
  bool exhaustive = false;
};

/// Checks the rotation and reflection symmetries of the R-symbols. For
/// N <= exhaustive_max_level every index tuple in [0,N)^4 and every charge
/// tuple with unit sum is visited; above that, `samples` random tuples with
/// indices drawn from a window wider than [0,N) are checked.
SymmetryReport verify_symmetries(const ModularContext& ctx, int exhaustive_max_level = 4,
                                 std::int64_t samples = 100000, std::uint64_t seed = 1);

}  // namespace qdilog
