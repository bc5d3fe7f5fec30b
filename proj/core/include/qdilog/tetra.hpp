#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qdilog/arith.hpp"

namespace qdilog {

/// (x, y, z) with x^N + y^N = z^N.
struct FermatTriple {
  complex x, y, z;
};

enum class Orientation { Right, Left };

/// One vertex-ordered tetrahedron with its Z_N data.
struct TetraData {
  std::array<complex, 4> points{};        ///< z_0 .. z_3, pairwise distinct
  Orientation orientation = Orientation::Right;
  int c01 = 0;                            ///< charge on edges 01 and 23
  int c12 = 0;                            ///< charge on edges 12 and 03
  std::array<int, 4> alpha{};             ///< alpha_i sits on the face opposite vertex i
  complex rho{1.0, 0.0};
};

/// w^{1/2} = w^{(N+1)/2}. Throws EvenLevel.
complex half_omega(const ModularContext& ctx);

/// N-th root: the real root for real arguments (N odd), else principal.
complex nth_root(const ModularContext& ctx, complex z);

/// Relative residual |x^N + y^N - z^N| / max(|x|^N, |y|^N, |z|^N).
double fermat_residual(const ModularContext& ctx, const FermatTriple& f);

/// w(x,y,z|n) = prod_{j=1}^{n} y / (z - x w^j). For n < 0 it is
/// prod_{j=n+1}^{0} (z - x w^j) / y, so w(n) = w(n-1) y / (z - x w^n) holds
/// for every integer n. Throws PoleError.
complex fermat_w(const ModularContext& ctx, const FermatTriple& f, std::int64_t n);

/// w(x,y,z|m,n) = w(x,y,z|m-n) (w^{1/2})^{n^2}. Throws EvenLevel, PoleError.
complex fermat_w(const ModularContext& ctx, const FermatTriple& f, std::int64_t m, std::int64_t n);

/// Triple (x03 x12, x01 x23, x02 x13) built from the vertex points.
FermatTriple tetra_triple(const ModularContext& ctx, const std::array<complex, 4>& points);

/// T = rho w^{c(g-a)+a d} (w^{1/2})^{a c} w(x,y,z | g - a, al) delta_{b, g+d}
/// with (a, c) = (c01, c12) and (al, b, g, d) = (alpha_3, alpha_1,
/// alpha_2, alpha_0). Throws EvenLevel, FermatViolation, PoleError.
complex t_symbol(const ModularContext& ctx, const TetraData& d);

/// Tbar = rho w^{c(g-a)-a d} (w^{1/2})^{-a c} delta_{b, g+d}
///        / w(x/w, y, z | g + a, al).
complex tbar_symbol(const ModularContext& ctx, const TetraData& d);

/// T for a right-oriented tetrahedron, Tbar for a left one.
complex tetra_weight(const ModularContext& ctx, const TetraData& d);

/// psi_{m,j}^k = w^{jk} s_{0m}^{[k-1]} s_{m5}^{[-k]} with s_{ab} the N-th
/// root of s_a - s_b. `s` holds the six vertex values s_0 .. s_5.
complex psi(const ModularContext& ctx, const std::array<double, 6>& s, int m, std::int64_t j,
            std::int64_t k);

/// One row of the octahedron gluing table.
struct GluedTetra {
  std::string name;
  std::array<int, 4> vertices;            ///< increasing vertex labels u_0 .. u_5
  Orientation orientation;
};

/// The nine tetrahedra of the three-ball: the central u1u2u3u4, four glued
/// along its faces and four glued to the octahedron boundary.
const std::vector<GluedTetra>& octahedron_gluing();

/// Verifies that every interior face is shared by exactly two tetrahedra
/// with opposite induced orientations, and that each boundary face u0 um u5
/// occurs once with each sign. Throws GluingInconsistency.
void check_gluing(const std::vector<GluedTetra>& tets);

/// Per-tetrahedron charges: p = c01 = c23, q = c02 = c13, and
/// r = c03 = c12 = 1/2 - p - q.
struct TetraCharge {
  int p = 0;
  int q = 0;
  int r = 0;
};

struct OctahedronReport {
  int level = 0;
  std::uint64_t seed = 0;
  std::array<double, 6> s{};
  std::vector<TetraCharge> charges;
  std::array<int, 4> c_m{};                 ///< total charge on edge u_m u_5
  std::array<int, 4> c_square{};            ///< c12, c23, c34, c14
  std::int64_t configurations = 0;          ///< boundary index tuples checked
  std::int64_t nonzero = 0;                 ///< tuples where either side is nonzero
  std::int64_t zero_mismatch = 0;           ///< one side zero, the other not
  complex ratio;                            ///< LHS / RHS at the first nonzero tuple
  double spread = 0.0;                      ///< max |ratio_t / ratio - 1|
  double tolerance = 1e-6;
  bool constant = false;
};

/// Contracts the nine T-symbols (rho = 1) over the interior faces and
/// compares every boundary entry with the psi-dressed R-symbol sum.
/// Vertex values and charges are drawn from `seed`. Throws EvenLevel.
OctahedronReport octahedron_check(const ModularContext& ctx, std::uint64_t seed,
                                  double tolerance = 1e-6);

/// Same with explicit vertex values (must be pairwise distinct).
OctahedronReport octahedron_check(const ModularContext& ctx, const std::array<double, 6>& s,
                                  std::uint64_t seed, double tolerance = 1e-6);

}  // namespace qdilog
