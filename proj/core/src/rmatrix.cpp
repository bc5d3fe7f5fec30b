#include "qdilog/rmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qdilog {

complex weight_w(const ModularContext& ctx, std::int64_t k, std::int64_t l, std::int64_t m,
                 std::int64_t n) {
  const int bk = ctx.bracket(k);
  const int bl = ctx.bracket(l);
  const int bm = ctx.bracket(m);
  const int bn = ctx.bracket(n);
  if (ctx.theta(bk + bm) == 0 || ctx.theta(bl + bn) == 0) return 0.0;
  // (l+m)(m+n) only matters mod N; reduce first so the product cannot overflow.
  const std::int64_t e = static_cast<std::int64_t>(ctx.bracket(l + m)) * ctx.bracket(m + n);
  return static_cast<double>(ctx.level()) * ctx.omega_pow(e) * ctx.inv_pochhammer(bk) *
         ctx.inv_pochhammer_conj(bl) * ctx.inv_pochhammer(bm) * ctx.inv_pochhammer_conj(bn);
}

complex r_symbol_unchecked(const ModularContext& ctx, const RSymbolArgs& r) noexcept {
  const auto& [i, j, k, l, a, b, c, d] = r;
  return ctx.omega_pow(a - k - j) * weight_w(ctx, j - i - a, i - l - d, l - k - c, k - j - b);
}

complex r_symbol(const ModularContext& ctx, const RSymbolArgs& r) {
  const std::int64_t sum = static_cast<std::int64_t>(r.a) + r.b + r.c + r.d;
  if (ctx.bracket(sum) != ctx.bracket(1)) {
    throw Error(ErrorKind::ChargeSumViolation,
                "sector charges sum to " + std::to_string(sum) + ", expected 1 mod " +
                    std::to_string(ctx.level()));
  }
  return r_symbol_unchecked(ctx, r);
}

RTensor::RTensor(int level, int root_exponent, Eigen::MatrixXcd entries)
    : level_(level), root_exponent_(root_exponent), entries_(std::move(entries)) {}

bool RTensor::all_finite() const {
  for (Eigen::Index c = 0; c < entries_.cols(); ++c)
    for (Eigen::Index r = 0; r < entries_.rows(); ++r)
      if (!std::isfinite(entries_(r, c).real()) || !std::isfinite(entries_(r, c).imag()))
        return false;
  return true;
}

RTensor r_matrix(const ModularContext& ctx) {
  const int n = ctx.level();
  Eigen::MatrixXcd m(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          m(i * n + j, k * n + l) =
              r_symbol_unchecked(ctx, {i, j, k, l, 1, 0, 0, 0}) * ctx.omega_pow(k + l);
  return RTensor(n, ctx.root_exponent(), std::move(m));
}

RTensor r_inverse(const ModularContext& ctx) {
  const int n = ctx.level();
  Eigen::MatrixXcd m(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          m(i * n + l, k * n + j) =
              r_symbol_unchecked(ctx, {i, j, k, l, 0, 0, 0, 1}) * ctx.omega_pow(j + k - 1);
  return RTensor(n, ctx.root_exponent(), std::move(m));
}

Eigen::MatrixXcd embed_pair(const RTensor& r, int p, int q) {
  const int n = r.level();
  const int dim = n * n * n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  int stride[3] = {n * n, n, 1};
  for (int col = 0; col < dim; ++col) {
    const int in[3] = {col / (n * n), (col / n) % n, col % n};
    const int base = col - in[p] * stride[p] - in[q] * stride[q];
    for (int op = 0; op < n; ++op)
      for (int oq = 0; oq < n; ++oq)
        out(base + op * stride[p] + oq * stride[q], col) = r(op, oq, in[p], in[q]);
  }
  return out;
}

double verify_ybe(const ModularContext& ctx) {
  const RTensor r = r_matrix(ctx);
  const Eigen::MatrixXcd r12 = embed_pair(r, 0, 1);
  const Eigen::MatrixXcd r13 = embed_pair(r, 0, 2);
  const Eigen::MatrixXcd r23 = embed_pair(r, 1, 2);
  const Eigen::MatrixXcd lhs = r12 * r13 * r23;
  const Eigen::MatrixXcd rhs = r23 * r13 * r12;
  const double scale = lhs.cwiseAbs().maxCoeff();
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

double inverse_residual(const ModularContext& ctx) {
  const Eigen::MatrixXcd r = r_matrix(ctx).matrix();
  const Eigen::MatrixXcd rbar = r_inverse(ctx).matrix();
  const auto id = Eigen::MatrixXcd::Identity(r.rows(), r.cols());
  return std::max((r * rbar - id).cwiseAbs().maxCoeff(), (rbar * r - id).cwiseAbs().maxCoeff());
}

double verify_kink(const ModularContext& ctx) {
  const int n = ctx.level();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      complex sum = 0.0;
      for (int j = 0; j < n; ++j)
        sum += ctx.omega_pow(j) * r_symbol_unchecked(ctx, {i, j, j, l, 0, 1, 0, 0});
      const complex expected = i == l ? ctx.omega_pow(-i) : complex(0.0);
      worst = std::max(worst, std::abs(sum - expected));
    }
  }
  return worst;
}

namespace {

void check_symmetry_tuple(const ModularContext& ctx, const RSymbolArgs& t, SymmetryReport& rep) {
  const complex base = r_symbol_unchecked(ctx, t);
  const complex rotated = r_symbol_unchecked(ctx, {t.k, t.l, t.i, t.j, t.c, t.d, t.a, t.b});
  const complex reflected =
      r_symbol_unchecked(ctx, {-t.j, -t.i, -t.l, -t.k, t.a, t.d, t.c, t.b}) *
      ctx.omega_pow(-t.i - t.j - t.k - t.l);
  rep.rotation_residual = std::max(rep.rotation_residual, std::abs(base - rotated));
  rep.reflection_residual = std::max(rep.reflection_residual, std::abs(base - reflected));
  ++rep.tuples_checked;
}

}  // namespace

SymmetryReport verify_symmetries(const ModularContext& ctx, int exhaustive_max_level,
                                 std::int64_t samples, std::uint64_t seed) {
  const int n = ctx.level();
  SymmetryReport rep;
  if (n <= exhaustive_max_level) {
    rep.exhaustive = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                  const int d = ctx.bracket(1 - a - b - c);
                  check_symmetry_tuple(ctx, {i, j, k, l, a, b, c, d}, rep);
                }
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> index(-3 * n, 3 * n);
  std::uniform_int_distribution<int> charge(0, n - 1);
  for (std::int64_t s = 0; s < samples; ++s) {
    RSymbolArgs t{index(rng), index(rng), index(rng), index(rng),
                  charge(rng), charge(rng), charge(rng), 0};
    t.d = ctx.bracket(1 - t.a - t.b - t.c);
    check_symmetry_tuple(ctx, t, rep);
  }
  return rep;
}

}  // namespace qdilog
