#include "qdilog/charge.hpp"

#include <cstdio>
#include <numeric>
#include <random>
#include <utility>

namespace qdilog {

namespace {

using i64 = std::int64_t;

i64 mod(i64 x, i64 n) {
  const i64 r = x % n;
  return r < 0 ? r + n : r;
}

// g = gcd(a, b) = s a + t b.
i64 ext_gcd(i64 a, i64 b, i64& s, i64& t) {
  i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    const i64 q = a / b;
    a = std::exchange(b, a - q * b);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  s = s0;
  t = t0;
  return a;
}

i64 inverse_mod(i64 a, i64 n) {
  if (n == 1) return 0;
  i64 s = 0, t = 0;
  ext_gcd(mod(a, n), n, s, t);
  return mod(s, n);
}

using Matrix = std::vector<std::vector<i64>>;

struct Reduction {
  Matrix a;
  std::vector<i64> b;
  Matrix v;  // x = v y
  std::size_t rank = 0;
};

// Row combination (r1, r2) <- (s r1 + t r2, u r1 + w r2) with s w - t u = 1.
void combine_rows(Reduction& red, std::size_t r1, std::size_t r2, i64 s, i64 t, i64 u, i64 w,
                  i64 n) {
  auto& a = red.a;
  for (std::size_t j = 0; j < a[r1].size(); ++j) {
    const i64 x = a[r1][j];
    const i64 y = a[r2][j];
    a[r1][j] = mod(s * x + t * y, n);
    a[r2][j] = mod(u * x + w * y, n);
  }
  const i64 x = red.b[r1];
  const i64 y = red.b[r2];
  red.b[r1] = mod(s * x + t * y, n);
  red.b[r2] = mod(u * x + w * y, n);
}

void combine_cols(Reduction& red, std::size_t c1, std::size_t c2, i64 s, i64 t, i64 u, i64 w,
                  i64 n) {
  for (auto* m : {&red.a, &red.v}) {
    for (auto& row : *m) {
      const i64 x = row[c1];
      const i64 y = row[c2];
      row[c1] = mod(s * x + t * y, n);
      row[c2] = mod(u * x + w * y, n);
    }
  }
}

// Clears entry `other` against the pivot value p: returns the unimodular
// 2x2 (s, t, u, w) taking (p, c) to (g, 0).
void clearing_pair(i64 p, i64 c, i64& s, i64& t, i64& u, i64& w) {
  if (c % p == 0) {
    s = 1, t = 0, u = -(c / p), w = 1;
    return;
  }
  const i64 g = ext_gcd(p, c, s, t);
  u = -(c / g);
  w = p / g;
}

Reduction diagonalize(const ChargeSystem& sys) {
  const i64 n = sys.level;
  const std::size_t rows = sys.matrix.size();
  const std::size_t cols = sys.variables.size();
  Reduction red;
  red.a.assign(rows, std::vector<i64>(cols, 0));
  red.b.assign(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) red.a[i][j] = mod(sys.matrix[i][j], n);
    red.b[i] = mod(sys.rhs[i], n);
  }
  red.v.assign(cols, std::vector<i64>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j) red.v[j][j] = 1;

  std::size_t r = 0;
  while (r < std::min(rows, cols)) {
    // Pivot: the entry generating the largest ideal, first in scan order.
    std::size_t pi = rows, pj = cols;
    i64 best = n + 1;
    for (std::size_t i = r; i < rows; ++i)
      for (std::size_t j = r; j < cols; ++j)
        if (red.a[i][j] != 0) {
          const i64 g = std::gcd(red.a[i][j], n);
          if (g < best) best = g, pi = i, pj = j;
        }
    if (pi == rows) break;
    std::swap(red.a[r], red.a[pi]);
    std::swap(red.b[r], red.b[pi]);
    if (pj != r) {
      for (auto* m : {&red.a, &red.v})
        for (auto& row : *m) std::swap(row[r], row[pj]);
    }
    for (bool dirty = true; dirty;) {
      dirty = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (red.a[i][r] == 0) continue;
        i64 s, t, u, w;
        clearing_pair(red.a[r][r], red.a[i][r], s, t, u, w);
        combine_rows(red, r, i, s, t, u, w, n);
      }
      for (std::size_t j = r + 1; j < cols; ++j) {
        if (red.a[r][j] == 0) continue;
        i64 s, t, u, w;
        clearing_pair(red.a[r][r], red.a[r][j], s, t, u, w);
        combine_cols(red, r, j, s, t, u, w, n);
      }
      for (std::size_t i = r + 1; i < rows && !dirty; ++i) dirty = red.a[i][r] != 0;
    }
    ++r;
  }
  red.rank = r;
  return red;
}

}  // namespace

std::string ChargeAssignment::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(level_));
  mix(values_.size());
  for (const auto& v : values_)
    for (int x : v) mix(static_cast<std::uint64_t>(x));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ChargeSystem build_system(const TangleDiagram& t, int level) {
  if (level < 2) throw Error(ErrorKind::BadLevel, "level N must be >= 2");
  ChargeSystem sys;
  sys.level = level;
  const int nv = static_cast<int>(t.crossing_count());
  std::vector<int> var_of(static_cast<std::size_t>(4 * nv), -1);
  for (int v = 0; v < nv; ++v) {
    for (int s = 0; s < 4; ++s) {
      if (t.face_of({v, s}) == t.outer_face()) continue;
      var_of[static_cast<std::size_t>(4 * v + s)] = static_cast<int>(sys.variables.size());
      sys.variables.push_back({v, s});
    }
  }
  const std::size_t nvar = sys.variables.size();
  for (int v = 0; v < nv; ++v) {
    std::vector<int> row(nvar, 0);
    for (int s = 0; s < 4; ++s) {
      const int x = var_of[static_cast<std::size_t>(4 * v + s)];
      if (x >= 0) ++row[static_cast<std::size_t>(x)];
    }
    sys.matrix.push_back(std::move(row));
    sys.rhs.push_back(1);
  }
  sys.vertex_equations = nv;
  const auto& faces = t.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (static_cast<int>(f) == t.outer_face()) continue;
    const int walks = faces[f].cornered_boundaries();
    if (walks == 0) continue;
    std::vector<int> row(nvar, 0);
    for (const auto& b : faces[f].boundaries)
      for (const auto& c : b.corners) ++row[static_cast<std::size_t>(var_of[static_cast<std::size_t>(4 * c.crossing + c.sector)])];
    sys.matrix.push_back(std::move(row));
    sys.rhs.push_back(2 - walks);
  }
  return sys;
}

ChargeAssignment solve_charges(const TangleDiagram& t, const ChargeSystem& sys,
                               std::optional<std::uint64_t> seed) {
  const i64 n = sys.level;
  Reduction red = diagonalize(sys);
  for (std::size_t i = red.rank; i < red.b.size(); ++i) {
    if (red.b[i] != 0) {
      throw Error(ErrorKind::NoSolution, "charge constraints are inconsistent mod " +
                                             std::to_string(n));
    }
  }
  std::mt19937_64 rng(seed.value_or(0));
  auto draw = [&](i64 bound) -> i64 {
    if (!seed || bound <= 1) return 0;
    return std::uniform_int_distribution<i64>(0, bound - 1)(rng);
  };
  const std::size_t cols = sys.variables.size();
  std::vector<i64> y(cols, 0);
  for (std::size_t p = 0; p < red.rank; ++p) {
    const i64 d = red.a[p][p];
    const i64 c = red.b[p];
    const i64 g = std::gcd(d, n);
    if (c % g != 0) {
      throw Error(ErrorKind::NoSolution, "charge constraints are inconsistent mod " +
                                             std::to_string(n));
    }
    const i64 ng = n / g;
    y[p] = mod((c / g) * inverse_mod(d / g, ng), ng) + draw(g) * ng;
  }
  for (std::size_t p = red.rank; p < cols; ++p) y[p] = draw(n);

  std::vector<std::array<int, 4>> values(t.crossing_count(), std::array<int, 4>{0, 0, 0, 0});
  for (std::size_t j = 0; j < cols; ++j) {
    i64 x = 0;
    for (std::size_t q = 0; q < cols; ++q) x = mod(x + red.v[j][q] * y[q], n);
    const Corner c = sys.variables[j];
    values[static_cast<std::size_t>(c.crossing)][static_cast<std::size_t>(c.sector)] = static_cast<int>(x);
  }
  return ChargeAssignment(sys.level, std::move(values));
}

ChargeAssignment solve_charges(const TangleDiagram& t, int level, std::optional<std::uint64_t> seed) {
  return solve_charges(t, build_system(t, level), seed);
}

std::vector<std::string> charge_violations(const TangleDiagram& t, const ChargeAssignment& a) {
  std::vector<std::string> out;
  const int n = a.level();
  if (n < 2) {
    out.push_back("level is not set");
    return out;
  }
  if (a.crossing_count() != t.crossing_count()) {
    out.push_back("assignment covers " + std::to_string(a.crossing_count()) + " crossings, diagram has " +
                  std::to_string(t.crossing_count()));
    return out;
  }
  const int nv = static_cast<int>(t.crossing_count());
  for (int v = 0; v < nv; ++v) {
    int sum = 0;
    for (int s = 0; s < 4; ++s) {
      const int x = a(v, s);
      if (x < 0 || x >= n) {
        out.push_back("corner (" + std::to_string(v) + "," + std::to_string(s) + ") out of range");
      }
      if (t.face_of({v, s}) == t.outer_face() && mod(x, n) != 0) {
        out.push_back("corner (" + std::to_string(v) + "," + std::to_string(s) + ") in f0 is not 0");
      }
      sum += x;
    }
    if (mod(sum, n) != 1) out.push_back("crossing " + std::to_string(v) + " sums to " + std::to_string(mod(sum, n)));
  }
  const auto& faces = t.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (static_cast<int>(f) == t.outer_face()) continue;
    const int walks = faces[f].cornered_boundaries();
    if (walks == 0) continue;
    int sum = 0;
    for (const auto& b : faces[f].boundaries)
      for (const auto& c : b.corners) sum += a(c.crossing, c.sector);
    if (mod(sum - (2 - walks), n) != 0) {
      out.push_back("face " + std::to_string(f) + " sums to " + std::to_string(mod(sum, n)));
    }
  }
  return out;
}

bool verify_charges(const TangleDiagram& t, const ChargeAssignment& a, int level) {
  return a.level() == level && charge_violations(t, a).empty();
}

}  // namespace qdilog
