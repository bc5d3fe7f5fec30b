#include <gtest/gtest.h>

#include <cmath>

#include "qdilog/statesum.hpp"
#include "support.hpp"

using namespace qdilog;
using qdilog::test::corpus;
using qdilog::test::kFigureEight;
using qdilog::test::kTrefoil;
using qdilog::test::rel_diff;

namespace {

complex brute_value(const ModularContext& ctx, const TangleDiagram& t) {
  return brute_force(ctx, t, solve_charges(t, ctx.level())).value;
}

complex tensor_value(const ModularContext& ctx, const TangleDiagram& t) {
  return evaluate(ctx, t, solve_charges(t, ctx.level()), Engine::Tensor);
}

complex power(complex z, int n) {
  complex p = 1.0;
  for (int i = 0; i < n; ++i) p *= z;
  return p;
}

// <L>^N at k = 1, evaluated once with a separate brute-force state sum
// written independently of this library.
struct Golden {
  const char* pd;
  int level;
  complex value;
};

const Golden kGolden[] = {
    {kTrefoil, 2, {9.0, 0.0}},
    {kTrefoil, 3, {153.9999999999998, -77.94228634059951}},
    {kTrefoil, 5, {-226605.0244758451, -52090.19609168722}},
    {kFigureEight, 2, {25.0, 0.0}},
    {kFigureEight, 3, {2197.0, 0.0}},
    {kFigureEight, 5, {327535532.61318064, 0.0}},
};

}  // namespace

TEST(BruteForce, ZeroCrossingUnknotIsOne) {
  const auto t = cut_tangle(parse_pd("Loop[1]"));
  for (int n : {2, 3, 5}) {
    const auto ctx = make_context(n);
    const auto r = brute_force(ctx, t, solve_charges(t, n));
    EXPECT_EQ(r.value, complex(1.0));
    EXPECT_EQ(r.terms, 1);
  }
}

TEST(BruteForce, UnknotWithDisjointLoopVanishes) {
  const auto ctx = make_context(3);
  const auto t = cut_tangle(parse_pd("Loop[1] Loop[2]"), 1);
  const auto r = brute_force(ctx, t, solve_charges(t, 3));
  EXPECT_LT(std::abs(r.value), 1e-9);
  EXPECT_GT(r.magnitude, 0.0);
}

TEST(BruteForce, LoopListedFirstStillVanishes) {
  const auto t = cut_tangle(parse_pd("Loop[1] X[2,5,3,6] X[4,7,5,2] X[6,3,7,4]"));
  for (int n : {2, 3, 5}) {
    const auto r = brute_force(make_context(n), t, solve_charges(t, n));
    EXPECT_GT(r.magnitude, 0.0) << n;
    EXPECT_LT(std::abs(r.value), 1e-9 * r.magnitude) << n;
  }
}

TEST(BruteForce, TooLarge) {
  const auto ctx = make_context(5);
  const auto t = cut_tangle(parse_pd(kFigureEight));
  Limits lim;
  lim.brute_cap = 1000;
  try {
    brute_force(ctx, t, solve_charges(t, 5), lim);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(BruteForce, ThreadCountDoesNotChangeBits) {
  const auto ctx = make_context(5);
  const auto t = cut_tangle(parse_pd(kFigureEight));
  const auto a = solve_charges(t, 5);
  Limits one, four;
  one.threads = 1;
  four.threads = 4;
  const auto r1 = brute_force(ctx, t, a, one);
  const auto r4 = brute_force(ctx, t, a, four);
  EXPECT_EQ(r1.value, r4.value);
  EXPECT_EQ(r1.magnitude, r4.magnitude);
}

TEST(BuildNetwork, TrefoilShape) {
  const auto ctx = make_context(3);
  const auto t = cut_tangle(parse_pd(kTrefoil));
  const auto net = build_network(ctx, t, solve_charges(t, 3));
  EXPECT_EQ(net.nodes.size(), 3u);
  EXPECT_EQ(net.bond_count, 7);
  EXPECT_EQ(net.pinned.size(), 2u);
  for (const auto& f : net.nodes) {
    EXPECT_EQ(f.bonds.size(), 4u);
    EXPECT_EQ(f.data.size(), 81u);
  }
}

TEST(BuildNetwork, FigureEightShape) {
  const auto ctx = make_context(3);
  const auto t = cut_tangle(parse_pd(kFigureEight));
  const auto net = build_network(ctx, t, solve_charges(t, 3));
  EXPECT_EQ(net.nodes.size(), 4u);
  EXPECT_EQ(net.bond_count, 9);
}

TEST(BuildNetwork, EmptyTangleIsScalarOne) {
  const auto ctx = make_context(3);
  const auto t = cut_tangle(parse_pd("Loop[1]"));
  const auto net = build_network(ctx, t, solve_charges(t, 3));
  EXPECT_TRUE(net.nodes.empty());
  const auto plan = plan_contraction(net);
  EXPECT_TRUE(plan.order.empty());
  EXPECT_TRUE(plan.steps.empty());
  EXPECT_EQ(contract(net, plan), complex(1.0));
}

TEST(PlanContraction, TrefoilRankBounded) {
  const auto ctx = make_context(3);
  const auto t = cut_tangle(parse_pd(kTrefoil));
  const auto net = build_network(ctx, t, solve_charges(t, 3));
  const auto plan = plan_contraction(net);
  EXPECT_LE(plan.max_rank, 4);
  EXPECT_GT(plan.cost, 0.0);
  // Every non-pinned bond is eliminated exactly once.
  std::vector<int> order = plan.order;
  std::sort(order.begin(), order.end());
  EXPECT_EQ(std::adjacent_find(order.begin(), order.end()), order.end());
  EXPECT_EQ(order.size(), static_cast<std::size_t>(net.bond_count) - net.pinned.size());
}

TEST(PlanContraction, BraidCheaperThanBruteForce) {
  const auto d = parse_pd(qdilog::test::torus_2n(8));
  ASSERT_EQ(d.crossing_count(), 8u);
  const auto ctx = make_context(3);
  const auto t = cut_tangle(d);
  const auto net = build_network(ctx, t, solve_charges(t, 3));
  const auto plan = plan_contraction(net);
  const double free_edges = static_cast<double>(t.edges().size()) - 2.0;
  const double brute = std::pow(3.0, free_edges) * 8.0;
  EXPECT_LT(plan.cost * 100.0, brute);
  EXPECT_LE(plan.max_rank, 6);
}

TEST(PlanContraction, RankCapExceeded) {
  const auto ctx = make_context(5);
  const auto t = cut_tangle(parse_pd(kFigureEight));
  const auto net = build_network(ctx, t, solve_charges(t, 5));
  Limits lim;
  lim.tensor_cap = 10;
  try {
    plan_contraction(net, lim);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RankCapExceeded);
  }
}

TEST(Invariant, FallsBackToBruteForce) {
  const auto ctx = make_context(3);
  InvariantOptions o;
  o.limits.tensor_cap = 10;
  const auto r = invariant(ctx, parse_pd(kTrefoil), o);
  EXPECT_EQ(r.engine, Engine::Brute);
  EXPECT_TRUE(r.magnitude.has_value());
  EXPECT_LT(rel_diff(r.invariant, invariant(ctx, parse_pd(kTrefoil)).invariant), 1e-12);
}

TEST(Contract, MatchesBruteForce) {
  {
    const auto ctx = make_context(3);
    const auto t = cut_tangle(parse_pd(kTrefoil));
    EXPECT_LT(rel_diff(brute_value(ctx, t), tensor_value(ctx, t)), 1e-9);
  }
  {
    const auto ctx = make_context(5);
    const auto t = cut_tangle(parse_pd(kFigureEight));
    EXPECT_LT(rel_diff(brute_value(ctx, t), tensor_value(ctx, t)), 1e-9);
  }
}

TEST(ContractFactors, MatrixProduct) {
  // Two rank-2 factors sharing bond 1 form an ordinary matrix product.
  Factor a{{0, 1}, {1.0, 2.0, 3.0, 4.0}};
  Factor b{{1, 2}, {5.0, 6.0, 7.0, 8.0}};
  const Factor c = contract_factors({a, b}, 2, {0, 2});
  ASSERT_EQ(c.data.size(), 4u);
  EXPECT_EQ(c.data[0], complex(19.0));
  EXPECT_EQ(c.data[1], complex(22.0));
  EXPECT_EQ(c.data[2], complex(43.0));
  EXPECT_EQ(c.data[3], complex(50.0));
  const Factor ct = contract_factors({a, b}, 2, {2, 0});
  EXPECT_EQ(ct.data[1], complex(43.0));
}

TEST(Invariant, GoldenValues) {
  for (const auto& g : kGolden) {
    const auto ctx = make_context(g.level);
    for (Engine e : {Engine::Brute, Engine::Tensor}) {
      InvariantOptions o;
      o.engine = e;
      const auto r = invariant(ctx, parse_pd(g.pd), o);
      EXPECT_LT(rel_diff(r.invariant, g.value), 1e-9) << g.pd << " N=" << g.level << " " << to_string(e);
    }
  }
}

TEST(Invariant, TrefoilExactAtLevelThree) {
  // 154 - 45 sqrt(3) i
  const auto r = invariant(make_context(3), parse_pd(kTrefoil));
  EXPECT_LT(std::abs(r.invariant - complex(154.0, -45.0 * std::sqrt(3.0))), 1e-9);
  EXPECT_LT(std::abs(std::abs(r.value) - std::cbrt(std::abs(r.invariant))), 1e-12);
}

TEST(Invariant, UnknotDiagramsAgree) {
  for (int n : {2, 3, 5}) {
    const auto ctx = make_context(n);
    for (const char* name : {"unknot_loop", "unknot_curl_pos", "unknot_curl_neg", "unknot_r2", "unknot_r2_curl"})
      EXPECT_LT(std::abs(invariant(ctx, corpus(name)).invariant - complex(1.0)), 1e-6) << name << " N=" << n;
  }
}

TEST(Invariant, TrefoilRThreeVariant) {
  const auto ctx = make_context(5);
  const auto ref = invariant(ctx, corpus("trefoil")).invariant;
  EXPECT_LT(rel_diff(invariant(ctx, corpus("trefoil_r2")).invariant, ref), 1e-6);
  EXPECT_LT(rel_diff(invariant(ctx, corpus("trefoil_r3")).invariant, ref), 1e-6);
}

TEST(Invariant, IndependentOfCutEdge) {
  for (const char* pd : {kTrefoil, kFigureEight}) {
    const auto d = parse_pd(pd);
    for (int n : {3, 4}) {
      const auto ctx = make_context(n);
      const auto ref = invariant(ctx, d).invariant;
      for (const auto& e : d.edges()) {
        InvariantOptions o;
        o.cut_label = e.label;
        EXPECT_LT(rel_diff(invariant(ctx, d, o).invariant, ref), 1e-6) << pd << " cut " << e.label;
      }
    }
  }
}

TEST(Invariant, IndependentOfCharges) {
  const auto ctx = make_context(5);
  const auto d = parse_pd(kFigureEight);
  const auto ref = invariant(ctx, d);
  for (std::uint64_t s = 1; s <= 5; ++s) {
    InvariantOptions o;
    o.charge_seed = s;
    const auto r = invariant(ctx, d, o);
    EXPECT_LT(rel_diff(r.invariant, ref.invariant), 1e-6);
    EXPECT_NEAR(std::abs(r.value), std::abs(ref.value), 1e-9 * std::abs(ref.value));
  }
}

TEST(Invariant, LabelPermutationNeutral) {
  // Relabelling moves which under end starts each R-symbol; by the
  // half-turn symmetry the invariant cannot change.
  const auto ctx = make_context(5, 2);
  const auto a = parse_pd(kTrefoil);
  const auto b = parse_pd("X[6,3,5,2] X[4,1,3,6] X[2,5,1,4]");
  ASSERT_TRUE(isomorphic(a, b));
  EXPECT_LT(rel_diff(invariant(ctx, a).invariant, invariant(ctx, b).invariant), 1e-9);
}

TEST(Invariant, MirrorIsConjugateRoot) {
  for (int n : {3, 5}) {
    const auto ctx = make_context(n);
    for (const char* pd : {kTrefoil, kFigureEight}) {
      const auto d = parse_pd(pd);
      const auto lhs = invariant(ctx, mirror(d)).invariant;
      const auto rhs = invariant(ctx.conjugate(), d).invariant;
      EXPECT_LT(rel_diff(lhs, rhs), 1e-6) << pd << " N=" << n;
    }
  }
}

TEST(Invariant, SplitDiagramsVanish) {
  const auto ctx = make_context(3);
  for (const char* name : {"split_two_loops", "split_trefoil_loop", "split_hooked_trefoil", "split_hooked_curls"}) {
    InvariantOptions o;
    o.engine = Engine::Brute;
    const auto r = invariant(ctx, corpus(name), o);
    ASSERT_TRUE(r.magnitude.has_value());
    EXPECT_GT(*r.magnitude, 0.0) << name;
    EXPECT_LT(std::abs(r.value), 1e-9 * *r.magnitude) << name;
  }
}

TEST(Invariant, ConnectedSumMultiplies) {
  const auto ctx = make_context(5);
  const auto t = invariant(ctx, corpus("trefoil")).invariant;
  const auto m = invariant(ctx, corpus("trefoil_mirror")).invariant;
  EXPECT_LT(rel_diff(invariant(ctx, corpus("granny")).invariant, t * t), 1e-9);
  EXPECT_LT(rel_diff(invariant(ctx, corpus("square")).invariant, t * m), 1e-9);
}

TEST(Invariant, PowerOfValue) {
  const auto ctx = make_context(5);
  const auto r = invariant(ctx, parse_pd(kTrefoil));
  EXPECT_LT(rel_diff(r.invariant, power(r.value, 5)), 1e-14);
  EXPECT_EQ(r.level, 5);
  EXPECT_EQ(r.root_exponent, 1);
  EXPECT_EQ(r.cut_label, 1);
  EXPECT_EQ(r.charge_digest, solve_charges(cut_tangle(parse_pd(kTrefoil)), 5).digest());
}

TEST(Engine, Names) {
  EXPECT_EQ(to_string(Engine::Brute), "brute");
  EXPECT_EQ(to_string(Engine::Tensor), "tensor");
}
