#include <gtest/gtest.h>

#include <numeric>
#include <optional>
#include <random>

#include "qdilog/tetra.hpp"

using namespace qdilog;

namespace {

template <class F>
std::optional<ErrorKind> kind_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

std::array<complex, 4> random_points(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {complex(g(rng), g(rng)), complex(g(rng), g(rng)), complex(g(rng), g(rng)), complex(g(rng), g(rng))};
}

}  // namespace

TEST(HalfOmega, LevelThree) {
  const auto ctx = make_context(3);
  EXPECT_LT(std::abs(half_omega(ctx) - ctx.omega_pow(2)), 1e-15);
}

TEST(HalfOmega, SquaresToOmega) {
  for (int n : {3, 5, 7, 9, 11})
    for (int k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      const auto ctx = make_context(n, k);
      const complex h = half_omega(ctx);
      EXPECT_LT(std::abs(h * h - ctx.omega()), 1e-12);
    }
}

TEST(HalfOmega, EvenLevelRejected) {
  EXPECT_EQ(kind_of([] { half_omega(make_context(2)); }), ErrorKind::EvenLevel);
  EXPECT_EQ(kind_of([] { half_omega(make_context(6)); }), ErrorKind::EvenLevel);
}

TEST(NthRoot, RealBranchForRealArguments) {
  const auto ctx = make_context(3);
  EXPECT_LT(std::abs(nth_root(ctx, -8.0) - complex(-2.0)), 1e-12);
  EXPECT_LT(std::abs(nth_root(ctx, 27.0) - complex(3.0)), 1e-12);
  const complex z(1.0, 2.0);
  const complex r = nth_root(ctx, z);
  EXPECT_LT(std::abs(r * r * r - z), 1e-12);
  EXPECT_LT(std::abs(std::arg(r) - std::arg(z) / 3.0), 1e-12);
}

TEST(FermatW, ZeroIsOne) {
  const auto ctx = make_context(5);
  std::mt19937_64 rng(2);
  const auto f = tetra_triple(ctx, random_points(rng));
  EXPECT_EQ(fermat_w(ctx, f, 0), complex(1.0));
}

TEST(FermatW, PeriodicOnRandomTriples) {
  std::mt19937_64 rng(5);
  for (int n : {3, 5, 7}) {
    const auto ctx = make_context(n);
    for (int t = 0; t < 100; ++t) {
      const auto f = tetra_triple(ctx, random_points(rng));
      for (int m = -n; m <= n; ++m) {
        const complex a = fermat_w(ctx, f, m);
        const complex b = fermat_w(ctx, f, m + n);
        EXPECT_LT(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST(FermatW, RecursionHoldsForNegativeArguments) {
  const auto ctx = make_context(5);
  std::mt19937_64 rng(9);
  const auto f = tetra_triple(ctx, random_points(rng));
  for (int m = -7; m <= 7; ++m) {
    const complex lhs = fermat_w(ctx, f, m);
    const complex rhs = fermat_w(ctx, f, m - 1) * f.y / (f.z - f.x * ctx.omega_pow(m));
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(FermatW, TwoArgumentForm) {
  const auto ctx = make_context(7, 3);
  std::mt19937_64 rng(4);
  const auto f = tetra_triple(ctx, random_points(rng));
  const complex h = half_omega(ctx);
  for (int m = -3; m < 7; ++m)
    for (int n = -3; n < 7; ++n) {
      complex hp = 1.0;
      for (int i = 0; i < n * n; ++i) hp *= h;
      EXPECT_LT(std::abs(fermat_w(ctx, f, m, n) - fermat_w(ctx, f, m - n) * hp), 1e-9);
    }
}

TEST(FermatW, PoleDetected) {
  const auto ctx = make_context(3);
  // z = x w^2 makes the second factor singular.
  const complex x(1.0, 0.0);
  const complex z = x * ctx.omega_pow(2);
  const FermatTriple f{x, complex(0.0), z};
  EXPECT_EQ(kind_of([&] { fermat_w(ctx, f, 2); }), ErrorKind::PoleError);
  EXPECT_NO_THROW(fermat_w(ctx, f, 1));
}

TEST(TetraTriple, FermatIdentityOnRandomPoints) {
  std::mt19937_64 rng(11);
  for (int n : {3, 5, 7}) {
    const auto ctx = make_context(n);
    for (int t = 0; t < 100; ++t) {
      const auto p = random_points(rng);
      EXPECT_LT(fermat_residual(ctx, tetra_triple(ctx, p)), 1e-9);
      // The underlying cross-ratio identity.
      const complex lhs = (p[0] - p[3]) * (p[1] - p[2]) + (p[0] - p[1]) * (p[2] - p[3]);
      const complex rhs = (p[0] - p[2]) * (p[1] - p[3]);
      EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST(TetraTriple, RejectsCoincidentPoints) {
  const auto ctx = make_context(3);
  EXPECT_EQ(kind_of([&] { tetra_triple(ctx, {1.0, 2.0, 1.0, 3.0}); }), ErrorKind::InvalidArgument);
}

TEST(FermatResidual, DetectsNonFermatTriple) {
  const auto ctx = make_context(3);
  EXPECT_GT(fermat_residual(ctx, {1.0, 1.0, 1.0}), 0.1);
  EXPECT_LT(fermat_residual(ctx, {3.0, 4.0, std::cbrt(91.0)}), 1e-14);
}

TEST(TSymbol, VanishesOffDeltaSupport) {
  const auto ctx = make_context(3);
  std::mt19937_64 rng(3);
  TetraData d;
  d.points = random_points(rng);
  for (int c01 = 0; c01 < 3; ++c01)
    for (int c12 = 0; c12 < 3; ++c12)
      for (int a0 = 0; a0 < 3; ++a0)
        for (int a1 = 0; a1 < 3; ++a1)
          for (int a2 = 0; a2 < 3; ++a2)
            for (int a3 = 0; a3 < 3; ++a3) {
              d.c01 = c01;
              d.c12 = c12;
              d.alpha = {a0, a1, a2, a3};
              const bool on = (a1 - a2 - a0) % 3 == 0;
              const complex t = t_symbol(ctx, d);
              const complex tb = tbar_symbol(ctx, d);
              if (on) {
                EXPECT_GT(std::abs(t), 0.0);
                EXPECT_GT(std::abs(tb), 0.0);
              } else {
                EXPECT_EQ(t, complex(0.0));
                EXPECT_EQ(tb, complex(0.0));
              }
            }
}

TEST(TSymbol, OrientationPicksWeight) {
  const auto ctx = make_context(5);
  std::mt19937_64 rng(8);
  TetraData d;
  d.points = random_points(rng);
  d.c01 = 1;
  d.c12 = 3;
  d.alpha = {1, 3, 2, 4};
  d.orientation = Orientation::Right;
  EXPECT_EQ(tetra_weight(ctx, d), t_symbol(ctx, d));
  d.orientation = Orientation::Left;
  EXPECT_EQ(tetra_weight(ctx, d), tbar_symbol(ctx, d));
  d.rho = complex(0.0, 2.0);
  EXPECT_LT(std::abs(t_symbol(ctx, d) - complex(0.0, 2.0) * [&] {
              TetraData e = d;
              e.rho = 1.0;
              return t_symbol(ctx, e);
            }()),
            1e-12);
}

TEST(TSymbol, EvenLevelRejected) {
  const auto ctx = make_context(4);
  TetraData d;
  d.points = {0.0, 1.0, 2.0, 3.0};
  EXPECT_EQ(kind_of([&] { t_symbol(ctx, d); }), ErrorKind::EvenLevel);
}

TEST(TSymbol, FermatCheckUsesContextTolerance) {
  // Below double rounding the composite triple no longer passes.
  const std::array<complex, 4> p{complex(0.3, 0.1), complex(-1.7, 0.9), complex(2.2, -0.4), complex(0.5, 1.3)};
  const auto tight = make_context(7, 1, 1e-300);
  const double r = fermat_residual(tight, tetra_triple(tight, p));
  ASSERT_GT(r, 1e-300);
  TetraData d;
  d.points = p;
  EXPECT_EQ(kind_of([&] { t_symbol(tight, d); }), ErrorKind::FermatViolation);
  EXPECT_EQ(kind_of([&] { tbar_symbol(tight, d); }), ErrorKind::FermatViolation);
  EXPECT_NO_THROW(t_symbol(make_context(7), d));
}

TEST(Psi, ZeroChargeExample) {
  const auto ctx = make_context(5);
  const std::array<double, 6> s{0.1, 1.3, -0.7, 2.1, -1.9, 0.6};
  for (int m = 1; m <= 4; ++m) {
    const complex s0m = nth_root(ctx, s[0] - s[static_cast<std::size_t>(m)]);
    EXPECT_LT(std::abs(psi(ctx, s, m, 3, 0) - std::pow(s0m, 4)), 1e-12);
  }
}

TEST(Psi, PeriodicInJ) {
  const auto ctx = make_context(7, 2);
  const std::array<double, 6> s{0.1, 1.3, -0.7, 2.1, -1.9, 0.6};
  for (int m = 1; m <= 4; ++m)
    for (int j = 0; j < 7; ++j)
      for (int k = -7; k < 7; ++k) EXPECT_LT(std::abs(psi(ctx, s, m, j, k) - psi(ctx, s, m, j + 7, k)), 1e-12);
}

TEST(Psi, RejectsBadVertex) {
  const auto ctx = make_context(3);
  const std::array<double, 6> s{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(kind_of([&] { psi(ctx, s, 0, 0, 0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { psi(ctx, s, 5, 0, 0); }), ErrorKind::InvalidArgument);
}

TEST(Gluing, TableIsConsistent) {
  const auto& tets = octahedron_gluing();
  EXPECT_EQ(tets.size(), 9u);
  EXPECT_NO_THROW(check_gluing(tets));
  int left = 0;
  for (const auto& t : tets) left += t.orientation == Orientation::Left;
  EXPECT_EQ(left, 3);
}

TEST(Gluing, FlippedOrientationDetected) {
  auto tets = octahedron_gluing();
  for (std::size_t i = 0; i < tets.size(); ++i) {
    auto bad = tets;
    bad[i].orientation = bad[i].orientation == Orientation::Left ? Orientation::Right : Orientation::Left;
    EXPECT_EQ(kind_of([&] { check_gluing(bad); }), ErrorKind::GluingInconsistency) << tets[i].name;
  }
  auto missing = tets;
  missing.pop_back();
  EXPECT_EQ(kind_of([&] { check_gluing(missing); }), ErrorKind::GluingInconsistency);
  auto unordered = tets;
  std::swap(unordered[0].vertices[0], unordered[0].vertices[1]);
  EXPECT_EQ(kind_of([&] { check_gluing(unordered); }), ErrorKind::GluingInconsistency);
}

TEST(Octahedron, RatioConstantAtLevelThree) {
  const auto rep = octahedron_check(make_context(3), 1);
  EXPECT_TRUE(rep.constant);
  EXPECT_LT(rep.spread, 1e-6);
  EXPECT_EQ(rep.zero_mismatch, 0);
  EXPECT_GT(rep.nonzero, 0);
  EXPECT_EQ(rep.charges.size(), 9u);
  EXPECT_EQ(rep.level, 3);
  EXPECT_GT(std::abs(rep.ratio), 0.0);
}

TEST(Octahedron, DeltaSupportShrinksSum) {
  const auto rep = octahedron_check(make_context(3), 2);
  EXPECT_LT(rep.nonzero, rep.configurations);
}

TEST(Octahedron, RejectsDegenerateValues) {
  const auto ctx = make_context(3);
  const std::array<double, 6> s{0.0, 1.0, 2.0, 1.0, 3.0, 4.0};
  EXPECT_EQ(kind_of([&] { octahedron_check(ctx, s, 1); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { octahedron_check(make_context(4), 1); }), ErrorKind::EvenLevel);
}
