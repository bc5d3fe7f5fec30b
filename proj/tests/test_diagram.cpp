#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "qdilog/diagram.hpp"
#include "support.hpp"

using namespace qdilog;
using qdilog::test::corpus;
using qdilog::test::kFigureEight;
using qdilog::test::kTrefoil;

namespace {

ErrorKind parse_error_kind(std::string_view text) {
  try {
    parse_pd(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorKind::InvalidArgument;
}

// Every corner appears in exactly one face, and Euler holds per component.
void expect_valid_faces(const LinkDiagram& d) {
  std::set<Corner> seen;
  for (const auto& f : d.faces())
    for (const auto& b : f.boundaries)
      for (const auto& c : b.corners) EXPECT_TRUE(seen.insert(c).second);
  EXPECT_EQ(seen.size(), 4 * d.crossing_count());
  for (std::size_t v = 0; v < d.crossing_count(); ++v)
    for (int s = 0; s < 4; ++s) {
      const int f = d.face_of({static_cast<int>(v), s});
      EXPECT_GE(f, 0);
      EXPECT_LT(f, static_cast<int>(d.faces().size()));
    }
  // Euler per component, counting boundary walks: 2 for each component
  // with crossings, 1 for each crossingless loop (one edge, two sides).
  if (d.edge_count() == 0) return;
  long walks = 0, loops = 0;
  for (const auto& f : d.faces()) walks += static_cast<long>(f.boundaries.size());
  for (const auto& e : d.edges()) loops += e.is_loop();
  const long v = static_cast<long>(d.crossing_count());
  const long e = static_cast<long>(d.edge_count());
  const long with_crossings = d.graph_component_count() - loops;
  EXPECT_EQ(v - e + walks, 2 * with_crossings + loops) << d.to_pd();
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& p : std::filesystem::directory_iterator(QDILOG_TEST_DATA_DIR))
    if (p.path().extension() == ".pd") out.push_back(p.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(ParsePd, Trefoil) {
  const auto d = parse_pd(kTrefoil);
  EXPECT_EQ(d.crossing_count(), 3u);
  EXPECT_EQ(d.edge_count(), 6u);
  EXPECT_EQ(d.faces().size(), 5u);
  EXPECT_EQ(d.link_component_count(), 1);
  EXPECT_EQ(d.to_pd(), kTrefoil);
}

TEST(ParsePd, EmptyDiagram) {
  const auto d = parse_pd("");
  EXPECT_EQ(d.crossing_count(), 0u);
  EXPECT_EQ(d.faces().size(), 1u);
  EXPECT_EQ(d.link_component_count(), 0);
}

TEST(ParsePd, Errors) {
  EXPECT_EQ(parse_error_kind("X[1,2,3]"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("X[1,2,3,4"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("Y[1,2,3,4]"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("X[0,1,1,0]"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("X[1,2,3,4]"), ErrorKind::ValenceError);
  EXPECT_EQ(parse_error_kind("X[1,1,1,2]"), ErrorKind::ValenceError);
  EXPECT_EQ(parse_error_kind("Loop[1] Loop[1]"), ErrorKind::ValenceError);
  EXPECT_EQ(parse_error_kind("X[1,2,2,1] Loop[1]"), ErrorKind::ValenceError);
}

TEST(ParsePd, NonPlanarRotationRejected) {
  // Two crossings joined so that face tracing cannot close on a sphere.
  bool rejected = false;
  for (const char* pd : {"X[1,2,3,4] X[1,3,2,4]", "X[1,3,2,4] X[1,2,3,4]"}) {
    try {
      parse_pd(pd);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::PlanarityError) << pd;
      rejected = true;
    }
  }
  EXPECT_TRUE(rejected);
}

TEST(ParsePd, AcceptsWrapperAndCommas) {
  const auto d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
  EXPECT_EQ(d.to_pd(), kTrefoil);
  const auto loops = parse_pd("Loop[3]\nLoop[9]");
  EXPECT_EQ(loops.edge_count(), 2u);
  EXPECT_EQ(loops.link_component_count(), 2);
}

TEST(ParsePd, EveryLabelTwice) {
  for (const auto& name : corpus_names()) {
    const auto d = corpus(name);
    std::map<int, int> count;
    for (const auto& x : d.crossings())
      for (int e : x.edges) ++count[d.edges()[static_cast<std::size_t>(e)].label];
    for (const auto& e : d.edges()) {
      if (e.is_loop()) EXPECT_EQ(count[e.label], 0);
      else EXPECT_EQ(count[e.label], 2) << name << " label " << e.label;
    }
  }
}

TEST(ComputeFaces, CurlHasThreeFaces) {
  EXPECT_EQ(parse_pd("X[1,2,2,1]").faces().size(), 3u);
  EXPECT_EQ(parse_pd("X[1,1,2,2]").faces().size(), 3u);
}

TEST(ComputeFaces, FigureEight) {
  const auto d = parse_pd(kFigureEight);
  EXPECT_EQ(d.faces().size(), 6u);
  expect_valid_faces(d);
}

TEST(ComputeFaces, CorpusPartitionsCorners) {
  for (const auto& name : corpus_names()) {
    SCOPED_TRACE(name);
    expect_valid_faces(corpus(name));
  }
}

TEST(ComputeFaces, ConnectedDiagramsHaveCPlusTwoFaces) {
  for (const char* name : {"trefoil", "figure_eight", "granny", "square", "hopf", "trefoil_r2"}) {
    const auto d = corpus(name);
    EXPECT_EQ(d.faces().size(), d.crossing_count() + 2) << name;
    EXPECT_EQ(d.edge_count(), 2 * d.crossing_count()) << name;
  }
}

TEST(ComputeFaces, SplitDiagramSharesOneFace) {
  const auto d = corpus("split_trefoil_loop");
  EXPECT_EQ(d.graph_component_count(), 2);
  int shared = 0;
  for (const auto& f : d.faces())
    if (f.boundaries.size() > 1) ++shared;
  EXPECT_EQ(shared, 1);
}

TEST(CutTangle, TrefoilAtEdgeOne) {
  const auto d = parse_pd(kTrefoil);
  const auto t = cut_tangle(d, 1);
  EXPECT_EQ(t.edges().size(), 7u);
  EXPECT_EQ(t.cut_label(), 1);
  EXPECT_NE(t.e1(), t.e2());
  const auto& e1 = t.edges()[static_cast<std::size_t>(t.e1())];
  const auto& e2 = t.edges()[static_cast<std::size_t>(t.e2())];
  EXPECT_TRUE(e1.pinned);
  EXPECT_TRUE(e2.pinned);
  EXPECT_EQ(e1.ends.size(), 1u);
  EXPECT_EQ(e2.ends.size(), 1u);
  EXPECT_EQ(e1.label, 1);
  EXPECT_EQ(e2.label, 7);
  // The two faces beside the cut merge into the outer region.
  EXPECT_EQ(t.faces().size(), 4u);
  EXPECT_EQ(t.outer_face(), 0);
  // Both cut ends open onto f0.
  for (const auto* h : {&e1, &e2}) {
    const EdgeEnd end = h->ends.front();
    EXPECT_EQ(t.face_of({end.crossing, end.slot}), t.outer_face());
    EXPECT_EQ(t.face_of({end.crossing, (end.slot + 3) & 3}), t.outer_face());
  }
  int pinned = 0;
  for (const auto& e : t.edges()) pinned += e.pinned;
  EXPECT_EQ(pinned, 2);
}

TEST(CutTangle, DefaultIsLowestLabel) {
  const auto d = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]");
  EXPECT_EQ(cut_tangle(d).cut_label(), 1);
}

TEST(CutTangle, DefaultSkipsFreeLoops) {
  const auto d = parse_pd("Loop[1] X[2,5,3,6] X[4,7,5,2] X[6,3,7,4]");
  EXPECT_EQ(cut_tangle(d).cut_label(), 2);
  EXPECT_EQ(cut_tangle(parse_pd("Loop[3] Loop[1]")).cut_label(), 1);
}

TEST(CutTangle, ZeroCrossingUnknot) {
  const auto t = cut_tangle(parse_pd("Loop[1]"));
  EXPECT_EQ(t.edges().size(), 2u);
  EXPECT_EQ(t.crossing_count(), 0u);
  EXPECT_TRUE(t.edges()[0].pinned);
  EXPECT_TRUE(t.edges()[1].pinned);
}

TEST(CutTangle, SplitKeepsOtherComponentWhole) {
  const auto d = corpus("split_trefoil_loop");
  const auto t = cut_tangle(d, 2);
  int pinned = 0, loops = 0;
  for (const auto& e : t.edges()) {
    pinned += e.pinned;
    if (!e.pinned && e.ends.empty()) ++loops;
  }
  EXPECT_EQ(pinned, 2);
  EXPECT_EQ(loops, 1);
}

TEST(CutTangle, MissingEdge) {
  try {
    cut_tangle(parse_pd(kTrefoil), 42);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EdgeNotFound);
  }
}

TEST(Moves, R1OnZeroCrossingUnknotGivesCurl) {
  const auto loop = parse_pd("Loop[1]");
  const auto sites = legal_sites(loop, Move::R1Add);
  ASSERT_FALSE(sites.empty());
  const auto curl = apply_move(loop, Move::R1Add, sites.front());
  EXPECT_EQ(curl.crossing_count(), 1u);
  EXPECT_EQ(curl.faces().size(), 3u);
  EXPECT_EQ(curl.link_component_count(), 1);
  const auto back = apply_move(curl, Move::R1Remove, legal_sites(curl, Move::R1Remove).front());
  EXPECT_EQ(back.crossing_count(), 0u);
  EXPECT_TRUE(isomorphic(back, loop));
}

TEST(Moves, R2ThenInverseIsIdentity) {
  for (const char* pd : {kTrefoil, kFigureEight}) {
    const auto d = parse_pd(pd);
    const auto sites = legal_sites(d, Move::R2Add);
    ASSERT_FALSE(sites.empty());
    for (std::size_t i = 0; i < sites.size(); i += 7) {
      const auto up = apply_move(d, Move::R2Add, sites[i]);
      EXPECT_EQ(up.crossing_count(), d.crossing_count() + 2);
      bool restored = false;
      for (const auto& s : legal_sites(up, Move::R2Remove))
        restored = restored || isomorphic(apply_move(up, Move::R2Remove, s), d);
      EXPECT_TRUE(restored) << up.to_pd();
    }
  }
}

TEST(Moves, R3KeepsCrossingAndFaceCounts) {
  const auto d = corpus("trefoil_r2");
  const auto sites = legal_sites(d, Move::R3);
  ASSERT_FALSE(sites.empty());
  for (const auto& s : sites) {
    const auto moved = apply_move(d, Move::R3, s);
    EXPECT_EQ(moved.crossing_count(), d.crossing_count());
    EXPECT_EQ(moved.faces().size(), d.faces().size());
    EXPECT_EQ(moved.link_component_count(), d.link_component_count());
    expect_valid_faces(moved);
  }
}

TEST(Moves, R3IsAnInvolution) {
  const auto d = corpus("trefoil_r2");
  const auto s = legal_sites(d, Move::R3).front();
  const auto moved = apply_move(d, Move::R3, s);
  bool restored = false;
  for (const auto& back : legal_sites(moved, Move::R3))
    restored = restored || isomorphic(apply_move(moved, Move::R3, back), d);
  EXPECT_TRUE(restored);
}

TEST(Moves, PreserveLinkComponents) {
  for (const char* name : {"trefoil", "hopf", "figure_eight", "split_trefoil_loop", "unknot_r2"}) {
    const auto d = corpus(name);
    const int comps = d.link_component_count();
    for (Move m : {Move::R1Add, Move::R1Remove, Move::R2Add, Move::R2Remove, Move::R3}) {
      for (const auto& s : legal_sites(d, m)) {
        const auto moved = apply_move(d, m, s);
        EXPECT_EQ(moved.link_component_count(), comps) << name << " " << to_string(m);
        expect_valid_faces(moved);
      }
    }
  }
}

TEST(Moves, IllegalSitesRejected) {
  const auto d = parse_pd(kTrefoil);
  auto kind = [&](Move m, MoveSite s) {
    try {
      apply_move(d, m, s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind(Move::R1Remove, {0, 0, 0, 0}), ErrorKind::IllegalMove);
  EXPECT_EQ(kind(Move::R2Remove, {0, 0, 1, 0}), ErrorKind::IllegalMove);
  EXPECT_EQ(kind(Move::R3, {0, 0, 0, 0}), ErrorKind::IllegalMove);
  EXPECT_TRUE(legal_sites(d, Move::R3).empty());
}

TEST(Moves, ToStringNames) {
  EXPECT_EQ(to_string(Move::R1Add), "R1+");
  EXPECT_EQ(to_string(Move::R2Remove), "R2-");
  EXPECT_EQ(to_string(Move::R3), "R3");
}

TEST(Mirror, InvolutionAndCorpusPairs) {
  for (const char* pd : {kTrefoil, kFigureEight}) {
    const auto d = parse_pd(pd);
    EXPECT_TRUE(isomorphic(mirror(mirror(d)), d));
  }
  EXPECT_TRUE(isomorphic(mirror(corpus("trefoil")), corpus("trefoil_mirror")));
  EXPECT_TRUE(isomorphic(mirror(corpus("figure_eight")), corpus("figure_eight_mirror")));
  EXPECT_FALSE(isomorphic(corpus("trefoil"), corpus("trefoil_mirror")));
}

TEST(Isomorphic, IgnoresLabels) {
  EXPECT_TRUE(isomorphic(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"),
                         parse_pd("X[11,14,12,15] X[13,16,14,11] X[15,12,16,13]")));
  EXPECT_TRUE(isomorphic(parse_pd(kTrefoil), parse_pd("X[3,6,4,1] X[5,2,6,3] X[1,4,2,5]")));
  EXPECT_FALSE(isomorphic(parse_pd(kTrefoil), parse_pd(kFigureEight)));
}

TEST(DisjointUnion, ShiftsLabels) {
  const auto u = disjoint_union(parse_pd(kTrefoil), parse_pd("Loop[1]"));
  EXPECT_EQ(u.to_pd(), "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3] Loop[7]");
  EXPECT_EQ(u.graph_component_count(), 2);
  EXPECT_EQ(u.link_component_count(), 2);
}

TEST(Crossing, StartSlotPicksLowerUnderLabel) {
  const auto d = parse_pd(kTrefoil);
  const auto labels = d.edge_labels();
  for (const auto& x : d.crossings()) {
    const int s = x.r_start_slot(labels);
    EXPECT_FALSE(x.is_over(s));
    const int other = (s + 2) & 3;
    EXPECT_LT(labels[static_cast<std::size_t>(x.edges[static_cast<std::size_t>(s)])],
              labels[static_cast<std::size_t>(x.edges[static_cast<std::size_t>(other)])]);
  }
}
