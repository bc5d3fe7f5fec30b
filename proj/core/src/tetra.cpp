#include "qdilog/tetra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "qdilog/rmatrix.hpp"
#include "qdilog/statesum.hpp"

namespace qdilog {

namespace {

void require_odd(const ModularContext& ctx) {
  if (ctx.level() % 2 == 0) {
    throw Error(ErrorKind::EvenLevel,
                "tetrahedral symbols need odd N, got " + std::to_string(ctx.level()));
  }
}

// (w^{1/2})^e
complex half_pow(const ModularContext& ctx, std::int64_t e) {
  return ctx.omega_pow(static_cast<std::int64_t>((ctx.level() + 1) / 2) * ctx.bracket(e));
}

}  // namespace

complex half_omega(const ModularContext& ctx) {
  require_odd(ctx);
  return half_pow(ctx, 1);
}

complex nth_root(const ModularContext& ctx, complex z) {
  const double inv = 1.0 / ctx.level();
  if (z.imag() == 0.0 && (ctx.level() % 2 == 1 || z.real() >= 0.0)) {
    return std::copysign(std::pow(std::abs(z.real()), inv), z.real());
  }
  return std::pow(z, inv);
}

double fermat_residual(const ModularContext& ctx, const FermatTriple& f) {
  const int n = ctx.level();
  const complex xn = std::pow(f.x, n);
  const complex yn = std::pow(f.y, n);
  const complex zn = std::pow(f.z, n);
  const double scale = std::max({std::abs(xn), std::abs(yn), std::abs(zn)});
  if (scale == 0.0) return 0.0;
  return std::abs(xn + yn - zn) / scale;
}

complex fermat_w(const ModularContext& ctx, const FermatTriple& f, std::int64_t n) {
  const double scale = std::max(std::abs(f.x), std::abs(f.z));
  auto factor = [&](std::int64_t j) {
    const complex d = f.z - f.x * ctx.omega_pow(j);
    if (std::abs(d) <= 1e-12 * scale) {
      throw Error(ErrorKind::PoleError, "z - x w^" + std::to_string(ctx.bracket(j)) + " vanishes");
    }
    return d;
  };
  complex p = 1.0;
  if (n >= 0) {
    for (std::int64_t j = 1; j <= n; ++j) p *= f.y / factor(j);
  } else {
    for (std::int64_t j = n + 1; j <= 0; ++j) p *= factor(j) / f.y;
  }
  return p;
}

complex fermat_w(const ModularContext& ctx, const FermatTriple& f, std::int64_t m, std::int64_t n) {
  require_odd(ctx);
  return fermat_w(ctx, f, m - n) * half_pow(ctx, n * n);
}

FermatTriple tetra_triple(const ModularContext& ctx, const std::array<complex, 4>& z) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (z[static_cast<std::size_t>(i)] == z[static_cast<std::size_t>(j)]) {
        throw Error(ErrorKind::InvalidArgument, "tetrahedron vertex points must be distinct");
      }
  auto x = [&](int i, int j) {
    return nth_root(ctx, z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
  };
  return {x(0, 3) * x(1, 2), x(0, 1) * x(2, 3), x(0, 2) * x(1, 3)};
}

namespace {

FermatTriple checked_triple(const ModularContext& ctx, const TetraData& d) {
  require_odd(ctx);
  const FermatTriple f = tetra_triple(ctx, d.points);
  const double res = fermat_residual(ctx, f);
  if (res > ctx.tolerance()) {
    throw Error(ErrorKind::FermatViolation,
                "composite triple misses x^N + y^N = z^N by " + std::to_string(res));
  }
  return f;
}

}  // namespace

complex t_symbol(const ModularContext& ctx, const TetraData& d) {
  const FermatTriple f = checked_triple(ctx, d);
  const std::int64_t a = d.c01, c = d.c12;
  const std::int64_t al = d.alpha[3], be = d.alpha[1], ga = d.alpha[2], de = d.alpha[0];
  if (ctx.bracket(be - ga - de) != 0) return 0.0;
  return d.rho * ctx.omega_pow(c * (ga - al) + al * de) * half_pow(ctx, a * c) *
         fermat_w(ctx, f, ga - a, al);
}

complex tbar_symbol(const ModularContext& ctx, const TetraData& d) {
  FermatTriple f = checked_triple(ctx, d);
  const std::int64_t a = d.c01, c = d.c12;
  const std::int64_t al = d.alpha[3], be = d.alpha[1], ga = d.alpha[2], de = d.alpha[0];
  if (ctx.bracket(be - ga - de) != 0) return 0.0;
  f.x /= ctx.omega();
  return d.rho * ctx.omega_pow(c * (ga - al) - al * de) * half_pow(ctx, -a * c) /
         fermat_w(ctx, f, ga + a, al);
}

complex tetra_weight(const ModularContext& ctx, const TetraData& d) {
  return d.orientation == Orientation::Right ? t_symbol(ctx, d) : tbar_symbol(ctx, d);
}

complex psi(const ModularContext& ctx, const std::array<double, 6>& s, int m, std::int64_t j,
            std::int64_t k) {
  if (m < 1 || m > 4) throw Error(ErrorKind::InvalidArgument, "psi needs 1 <= m <= 4");
  const double s0m = nth_root(ctx, s[0] - s[static_cast<std::size_t>(m)]).real();
  const double sm5 = nth_root(ctx, s[static_cast<std::size_t>(m)] - s[5]).real();
  return ctx.omega_pow(ctx.bracket(j) * static_cast<std::int64_t>(ctx.bracket(k))) *
         std::pow(s0m, ctx.bracket(k - 1)) * std::pow(sm5, ctx.bracket(-k));
}

const std::vector<GluedTetra>& octahedron_gluing() {
  static const std::vector<GluedTetra> table = {
      {"A", {1, 2, 3, 4}, Orientation::Right},   {"B1", {1, 2, 4, 5}, Orientation::Right},
      {"B2", {2, 3, 4, 5}, Orientation::Right},  {"C1", {0, 1, 2, 3}, Orientation::Right},
      {"C2", {0, 1, 3, 4}, Orientation::Right},  {"D12", {0, 1, 2, 5}, Orientation::Left},
      {"D23", {0, 2, 3, 5}, Orientation::Left},  {"D34", {0, 3, 4, 5}, Orientation::Left},
      {"D14", {0, 1, 4, 5}, Orientation::Right},
  };
  return table;
}

namespace {

using Triple = std::array<int, 3>;

Triple face_opposite(const std::array<int, 4>& v, int l) {
  Triple t{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != l) t[static_cast<std::size_t>(k++)] = v[static_cast<std::size_t>(i)];
  return t;
}

// Orientation induced on the face opposite local vertex l.
int induced_sign(const GluedTetra& t, int l) {
  const int eps = t.orientation == Orientation::Right ? 1 : -1;
  return (l % 2 == 0) ? eps : -eps;
}

bool is_boundary(const Triple& f) { return f[0] == 0 && f[2] == 5; }

}  // namespace

void check_gluing(const std::vector<GluedTetra>& tets) {
  std::map<Triple, std::vector<int>> signs;
  for (const auto& t : tets) {
    if (!std::is_sorted(t.vertices.begin(), t.vertices.end()) ||
        std::adjacent_find(t.vertices.begin(), t.vertices.end()) != t.vertices.end()) {
      throw Error(ErrorKind::GluingInconsistency, t.name + " vertices are not increasing");
    }
    for (int l = 0; l < 4; ++l) signs[face_opposite(t.vertices, l)].push_back(induced_sign(t, l));
  }
  for (const auto& [f, s] : signs) {
    const std::string name = "face u" + std::to_string(f[0]) + "u" + std::to_string(f[1]) + "u" +
                             std::to_string(f[2]);
    if (s.size() != 2) {
      throw Error(ErrorKind::GluingInconsistency, name + " occurs " + std::to_string(s.size()) +
                                                      " times, expected 2");
    }
    if (s[0] + s[1] != 0) {
      throw Error(ErrorKind::GluingInconsistency,
                  name + (is_boundary(f) ? " boundary copies carry the same sign"
                                         : " is glued with matching orientations"));
    }
  }
}

OctahedronReport octahedron_check(const ModularContext& ctx, std::uint64_t seed, double tolerance) {
  require_odd(ctx);
  std::mt19937_64 rng(seed ^ 0x5eedULL);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::array<double, 6> s{};
  for (;;) {
    for (auto& x : s) x = u(rng);
    double gap = 1e9;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) gap = std::min(gap, std::abs(s[static_cast<std::size_t>(i)] - s[static_cast<std::size_t>(j)]));
    if (gap > 1e-2) break;
  }
  return octahedron_check(ctx, s, seed, tolerance);
}

OctahedronReport octahedron_check(const ModularContext& ctx, const std::array<double, 6>& s,
                                  std::uint64_t seed, double tolerance) {
  require_odd(ctx);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (s[static_cast<std::size_t>(i)] == s[static_cast<std::size_t>(j)]) {
        throw Error(ErrorKind::InvalidArgument, "vertex values must be pairwise distinct");
      }
  const auto& tets = octahedron_gluing();
  check_gluing(tets);
  const int n = ctx.level();
  const int half = (n + 1) / 2;

  OctahedronReport rep;
  rep.level = n;
  rep.seed = seed;
  rep.s = s;
  rep.tolerance = tolerance;

  // Charges: the square edges u1u2, u2u3, u3u4, u1u4 carry total 1 and the
  // tangle edges u1u3, u2u4 total 0.
  struct EdgeTarget {
    int a, b, total;
  };
  const EdgeTarget targets[] = {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {1, 4, 1}, {1, 3, 0}, {2, 4, 0}};
  auto edge_charge = [&](const GluedTetra& t, const TetraCharge& c, int a, int b) -> int {
    const auto ia = std::find(t.vertices.begin(), t.vertices.end(), a);
    const auto ib = std::find(t.vertices.begin(), t.vertices.end(), b);
    if (ia == t.vertices.end() || ib == t.vertices.end()) return 0;
    const int i = static_cast<int>(std::min(ia, ib) - t.vertices.begin());
    const int j = static_cast<int>(std::max(ia, ib) - t.vertices.begin());
    if ((i == 0 && j == 1) || (i == 2 && j == 3)) return c.p;
    if ((i == 0 && j == 2) || (i == 1 && j == 3)) return c.q;
    return c.r;
  };
  auto total = [&](const std::vector<TetraCharge>& cs, int a, int b) {
    int t = 0;
    for (std::size_t i = 0; i < tets.size(); ++i) t += edge_charge(tets[i], cs[i], a, b);
    return ctx.bracket(t);
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> draw(0, n - 1);
  std::vector<TetraCharge> cs(tets.size());
  for (std::int64_t attempt = 0;; ++attempt) {
    if (attempt > 100000000) throw Error(ErrorKind::NoSolution, "no octahedron charges found");
    for (auto& c : cs) {
      c.p = draw(rng);
      c.q = draw(rng);
      c.r = ctx.bracket(half - c.p - c.q);
    }
    bool ok = true;
    for (const auto& e : targets) ok = ok && total(cs, e.a, e.b) == ctx.bracket(e.total);
    if (ok) break;
  }
  rep.charges = cs;
  for (int m = 1; m <= 4; ++m) rep.c_m[static_cast<std::size_t>(m - 1)] = total(cs, m, 5);
  const char* square[4] = {"D12", "D23", "D34", "D14"};
  for (int i = 0; i < 4; ++i) {
    for (std::size_t t = 0; t < tets.size(); ++t)
      if (tets[t].name == square[i]) rep.c_square[static_cast<std::size_t>(i)] = cs[t].r;
  }

  // Left side: one factor per tetrahedron, legs on its faces.
  std::map<Triple, int> interior;
  std::map<std::pair<int, int>, int> boundary;  // (m, sign) -> bond
  int next_bond = 0;
  std::vector<Factor> factors;
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t ti = 0; ti < tets.size(); ++ti) {
    const auto& t = tets[ti];
    Factor f;
    for (int l = 0; l < 4; ++l) {
      const Triple face = face_opposite(t.vertices, l);
      int bond;
      if (is_boundary(face)) {
        bond = next_bond++;
        boundary[{face[1], induced_sign(t, l) == -1 ? +1 : -1}] = bond;
      } else {
        auto it = interior.find(face);
        if (it == interior.end()) it = interior.emplace(face, next_bond++).first;
        bond = it->second;
      }
      f.bonds.push_back(bond);
    }
    TetraData d;
    for (int i = 0; i < 4; ++i) d.points[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(t.vertices[static_cast<std::size_t>(i)])];
    d.orientation = t.orientation;
    d.c01 = cs[ti].p;
    d.c12 = cs[ti].r;
    f.data.resize(un * un * un * un);
    std::size_t o = 0;
    for (int a0 = 0; a0 < n; ++a0)
      for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = 0; a2 < n; ++a2)
          for (int a3 = 0; a3 < n; ++a3) {
            d.alpha = {a0, a1, a2, a3};
            f.data[o++] = tetra_weight(ctx, d);
          }
    factors.push_back(std::move(f));
  }
  std::vector<int> open;
  for (int m = 1; m <= 4; ++m) {
    open.push_back(boundary.at({m, +1}));
    open.push_back(boundary.at({m, -1}));
  }
  const Factor lhs = contract_factors(std::move(factors), n, open, 1e8);

  // Right side depends on the boundary indices only through
  // k_m = alpha_m^- - alpha_m^+ + c_m.
  std::vector<complex> r_table(un * un * un * un);
  std::vector<std::array<std::vector<complex>, 4>> psi_tab(un);  // [k][m-1][j]
  for (int k = 0; k < n; ++k)
    for (int m = 1; m <= 4; ++m) {
      auto& v = psi_tab[static_cast<std::size_t>(k)][static_cast<std::size_t>(m - 1)];
      for (int j = 0; j < n; ++j) v.push_back(psi(ctx, s, m, j, k));
    }
  {
    std::size_t o = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            r_table[o++] = r_symbol(ctx, {i, j, k, l, rep.c_square[0], rep.c_square[1],
                                          rep.c_square[2], rep.c_square[3]});
  }
  std::vector<complex> rhs_by_k(un * un * un * un);
  {
    std::size_t ko = 0;
    for (int k1 = 0; k1 < n; ++k1)
      for (int k2 = 0; k2 < n; ++k2)
        for (int k3 = 0; k3 < n; ++k3)
          for (int k4 = 0; k4 < n; ++k4) {
            const auto& p1 = psi_tab[static_cast<std::size_t>(k1)][0];
            const auto& p2 = psi_tab[static_cast<std::size_t>(k2)][1];
            const auto& p3 = psi_tab[static_cast<std::size_t>(k3)][2];
            const auto& p4 = psi_tab[static_cast<std::size_t>(k4)][3];
            complex sum = 0.0;
            std::size_t o = 0;
            for (std::size_t i = 0; i < un; ++i)
              for (std::size_t j = 0; j < un; ++j)
                for (std::size_t k = 0; k < un; ++k)
                  for (std::size_t l = 0; l < un; ++l)
                    sum += r_table[o++] * p1[i] * p2[j] * p3[k] * p4[l];
            rhs_by_k[ko++] = sum;
          }
  }

  const std::size_t count = lhs.data.size();
  std::vector<complex> rhs(count);
  std::vector<int> idx(8, 0);
  for (std::size_t o = 0; o < count; ++o) {
    std::size_t ko = 0;
    for (int m = 0; m < 4; ++m) {
      const int k = ctx.bracket(idx[static_cast<std::size_t>(2 * m + 1)] - idx[static_cast<std::size_t>(2 * m)] +
                                rep.c_m[static_cast<std::size_t>(m)]);
      ko = ko * un + static_cast<std::size_t>(k);
    }
    rhs[o] = rhs_by_k[ko];
    std::size_t p = idx.size();
    while (p > 0 && ++idx[p - 1] == n) idx[--p] = 0;
  }

  double lmax = 0.0, rmax = 0.0;
  for (std::size_t o = 0; o < count; ++o) {
    lmax = std::max(lmax, std::abs(lhs.data[o]));
    rmax = std::max(rmax, std::abs(rhs[o]));
  }
  rep.configurations = static_cast<std::int64_t>(count);
  bool have_ratio = false;
  for (std::size_t o = 0; o < count; ++o) {
    const bool lz = std::abs(lhs.data[o]) <= 1e-9 * lmax;
    const bool rz = std::abs(rhs[o]) <= 1e-9 * rmax;
    if (lz && rz) continue;
    ++rep.nonzero;
    if (lz != rz) {
      ++rep.zero_mismatch;
      continue;
    }
    const complex q = lhs.data[o] / rhs[o];
    if (!have_ratio) {
      rep.ratio = q;
      have_ratio = true;
    }
    rep.spread = std::max(rep.spread, std::abs(q / rep.ratio - 1.0));
  }
  rep.constant = have_ratio && rep.zero_mismatch == 0 && rep.spread < tolerance;
  return rep;
}

}  // namespace qdilog
