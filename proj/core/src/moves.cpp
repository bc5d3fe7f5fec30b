#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>

#include "qdilog/diagram.hpp"

namespace qdilog {

std::string_view to_string(Move m) noexcept {
  switch (m) {
    case Move::R1Add: return "R1+";
    case Move::R1Remove: return "R1-";
    case Move::R2Add: return "R2+";
    case Move::R2Remove: return "R2-";
    case Move::R3: return "R3";
  }
  return "?";
}

namespace {

// Label-level view of a diagram that is easy to rewire.
struct Terms {
  std::vector<std::array<int, 4>> x;
  std::vector<int> loops;
  int next_label = 1;

  explicit Terms(const LinkDiagram& d) {
    const auto labels = d.edge_labels();
    for (const auto& c : d.crossings()) {
      std::array<int, 4> t{};
      const int s0 = c.pd_start_slot();
      for (int s = 0; s < 4; ++s) t[static_cast<std::size_t>(s)] = labels[static_cast<std::size_t>(c.edges[static_cast<std::size_t>((s0 + s) & 3)])];
      x.push_back(t);
    }
    for (const auto& e : d.edges())
      if (e.is_loop()) loops.push_back(e.label);
    next_label = d.max_label() + 1;
  }

  int fresh() { return next_label++; }
  int& at(EdgeEnd e) { return x[static_cast<std::size_t>(e.crossing)][static_cast<std::size_t>(e.slot)]; }

  LinkDiagram build() const { return compute_faces(LinkDiagram::from_terms(x, loops)); }
};

[[noreturn]] void illegal(const std::string& what) { throw Error(ErrorKind::IllegalMove, what); }

const Face& face_at(const LinkDiagram& d, int f) {
  if (f < 0 || f >= static_cast<int>(d.faces().size())) {
    illegal("face " + std::to_string(f) + " does not exist");
  }
  return d.faces()[static_cast<std::size_t>(f)];
}

// Corners of a face with a single cornered walk and no loop sides.
const std::vector<Corner>* simple_walk(const Face& f) {
  if (f.boundaries.size() != 1 || f.boundaries[0].corners.empty()) return nullptr;
  return &f.boundaries[0].corners;
}

// Removes the crossings in `gone`, joining opposite slots. Edges chained
// through removed crossings merge under their smallest label; chains that
// close up become loops.
LinkDiagram smooth_through(const LinkDiagram& d, const std::set<int>& gone) {
  const auto labels = d.edge_labels();
  const std::size_t ne = d.edge_count();
  std::vector<int> merged(ne, -1);
  std::vector<int> loops;
  std::vector<char> seen(ne, 0);

  auto walk = [&](int e, EdgeEnd from, std::vector<int>& chain) {
    // Follow e away from `from` through removed crossings.
    EdgeEnd cur = from;
    for (;;) {
      chain.push_back(e);
      seen[static_cast<std::size_t>(e)] = 1;
      const EdgeEnd arrive = d.opposite_end(cur);
      if (!gone.count(arrive.crossing)) return;
      const EdgeEnd through{arrive.crossing, (arrive.slot + 2) & 3};
      e = d.edge_at(through);
      if (seen[static_cast<std::size_t>(e)]) return;  // closed up
      cur = through;
    }
  };

  for (std::size_t e = 0; e < ne; ++e) {
    const auto& edge = d.edges()[e];
    if (seen[e] || edge.is_loop()) continue;
    EdgeEnd start{-1, -1};
    for (const auto& end : edge.ends)
      if (!gone.count(end.crossing)) start = end;
    if (start.crossing < 0) continue;
    std::vector<int> chain;
    walk(static_cast<int>(e), start, chain);
    int lab = labels[static_cast<std::size_t>(chain.front())];
    for (int c : chain) lab = std::min(lab, labels[static_cast<std::size_t>(c)]);
    for (int c : chain) merged[static_cast<std::size_t>(c)] = lab;
  }
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& edge = d.edges()[e];
    if (edge.is_loop()) {
      loops.push_back(edge.label);
      continue;
    }
    if (seen[e]) continue;
    std::vector<int> chain;
    walk(static_cast<int>(e), edge.ends[0], chain);
    int lab = labels[e];
    for (int c : chain) lab = std::min(lab, labels[static_cast<std::size_t>(c)]);
    loops.push_back(lab);
  }

  std::vector<std::array<int, 4>> x;
  for (const auto& c : d.crossings()) {
    if (gone.count(c.id)) continue;
    std::array<int, 4> t{};
    const int s0 = c.pd_start_slot();
    for (int s = 0; s < 4; ++s)
      t[static_cast<std::size_t>(s)] = merged[static_cast<std::size_t>(c.edges[static_cast<std::size_t>((s0 + s) & 3)])];
    x.push_back(t);
  }
  return compute_faces(LinkDiagram::from_terms(x, loops));
}

LinkDiagram r1_add(const LinkDiagram& d, const MoveSite& site) {
  if (site.variant < 0 || site.variant > 3) illegal("R1+ variant must be 0..3");
  const int e = d.edge_index(site.edge);
  Terms t(d);
  const int s = site.variant & 1;
  const int loop = t.fresh();
  std::array<int, 4> slots{};
  slots[static_cast<std::size_t>(s)] = loop;
  slots[static_cast<std::size_t>(s + 1)] = loop;
  const auto& edge = d.edges()[static_cast<std::size_t>(e)];
  if (edge.is_loop()) {
    t.loops.erase(std::find(t.loops.begin(), t.loops.end(), edge.label));
    slots[static_cast<std::size_t>((s + 2) & 3)] = edge.label;
    slots[static_cast<std::size_t>((s + 3) & 3)] = edge.label;
  } else {
    const int b = t.fresh();
    // The first end keeps the label, the second is re-attached through b.
    const EdgeEnd second = edge.ends[1];
    const int s0 = d.crossings()[static_cast<std::size_t>(second.crossing)].pd_start_slot();
    t.at({second.crossing, (second.slot - s0 + 4) & 3}) = b;
    int x = (s + 2) & 3;
    int y = (s + 3) & 3;
    if (site.variant & 2) std::swap(x, y);
    slots[static_cast<std::size_t>(x)] = edge.label;
    slots[static_cast<std::size_t>(y)] = b;
  }
  t.x.push_back(slots);
  return t.build();
}

LinkDiagram r1_remove(const LinkDiagram& d, const MoveSite& site) {
  const auto* walk = simple_walk(face_at(d, site.face));
  if (!walk || walk->size() != 1) illegal("face " + std::to_string(site.face) + " is not a monogon");
  return smooth_through(d, {walk->front().crossing});
}

// Edge leaving corner (v, t) along slot t+1, with its near and far ends.
struct WalkEdge {
  int edge;
  EdgeEnd near;
  EdgeEnd far;
};

WalkEdge walk_edge(const LinkDiagram& d, Corner c) {
  const EdgeEnd p{c.crossing, (c.sector + 1) & 3};
  return {d.edge_at(p), p, d.opposite_end(p)};
}

std::vector<WalkEdge> face_edges(const LinkDiagram& d, const Face& f) {
  std::vector<WalkEdge> out;
  for (const auto& b : f.boundaries)
    for (const auto& c : b.corners) out.push_back(walk_edge(d, c));
  return out;
}

LinkDiagram r2_add(const LinkDiagram& d, const MoveSite& site) {
  if (site.variant != 0 && site.variant != 1) illegal("R2+ variant must be 0 or 1");
  const Face& face = face_at(d, site.face);
  const int ei = d.edge_index(site.edge);
  const int fi = d.edge_index(site.edge2);
  if (ei == fi) illegal("R2+ needs two distinct edges");
  const auto walk = face_edges(d, face);
  const WalkEdge* we = nullptr;
  const WalkEdge* wf = nullptr;
  for (const auto& w : walk) {
    if (w.edge == ei && !we) we = &w;
    if (w.edge == fi && !wf) wf = &w;
  }
  if (!we || !wf) illegal("R2+ edges must both bound face " + std::to_string(site.face));

  Terms t(d);
  auto local = [&](EdgeEnd e) {
    const int s0 = d.crossings()[static_cast<std::size_t>(e.crossing)].pd_start_slot();
    return EdgeEnd{e.crossing, (e.slot - s0 + 4) & 3};
  };
  const int e1 = site.edge;
  const int f1 = site.edge2;
  const int e2 = t.fresh();
  const int e3 = t.fresh();
  const int f2 = t.fresh();
  const int f3 = t.fresh();
  t.at(local(we->far)) = e3;
  t.at(local(wf->far)) = f3;
  if (site.variant == 0) {
    t.x.push_back({f2, e1, f3, e2});
    t.x.push_back({f1, e3, f2, e2});
  } else {
    t.x.push_back({e1, f3, e2, f2});
    t.x.push_back({e3, f2, e2, f1});
  }
  return t.build();
}

bool r2_removable(const LinkDiagram& d, const Face& face) {
  const auto* walk = simple_walk(face);
  if (!walk || walk->size() != 2) return false;
  if ((*walk)[0].crossing == (*walk)[1].crossing) return false;
  for (const auto& c : *walk) {
    const WalkEdge w = walk_edge(d, c);
    const auto& a = d.crossings()[static_cast<std::size_t>(w.near.crossing)];
    const auto& b = d.crossings()[static_cast<std::size_t>(w.far.crossing)];
    if (a.is_over(w.near.slot) != b.is_over(w.far.slot)) return false;
  }
  return true;
}

LinkDiagram r2_remove(const LinkDiagram& d, const MoveSite& site) {
  const Face& face = face_at(d, site.face);
  if (!r2_removable(d, face)) {
    illegal("face " + std::to_string(site.face) + " is not a removable bigon");
  }
  const auto& w = face.boundaries[0].corners;
  return smooth_through(d, {w[0].crossing, w[1].crossing});
}

bool r3_legal(const LinkDiagram& d, const Face& face) {
  const auto* walk = simple_walk(face);
  if (!walk || walk->size() != 3) return false;
  std::set<int> xs;
  std::set<int> es;
  bool parity_match = false;
  for (const auto& c : *walk) {
    xs.insert(c.crossing);
    const WalkEdge w = walk_edge(d, c);
    es.insert(w.edge);
    const auto& a = d.crossings()[static_cast<std::size_t>(w.near.crossing)];
    const auto& b = d.crossings()[static_cast<std::size_t>(w.far.crossing)];
    if (a.is_over(w.near.slot) == b.is_over(w.far.slot)) parity_match = true;
  }
  // A triangle whose edges alternate over/under all the way round is not an
  // RIII configuration: one strand must pass over (or under) both others.
  return xs.size() == 3 && es.size() == 3 && parity_match;
}

LinkDiagram r3(const LinkDiagram& d, const MoveSite& site) {
  const Face& face = face_at(d, site.face);
  if (!r3_legal(d, face)) illegal("face " + std::to_string(site.face) + " is not an RIII triangle");
  const auto labels = d.edge_labels();
  Terms t(d);
  auto local = [&](EdgeEnd e) {
    const int s0 = d.crossings()[static_cast<std::size_t>(e.crossing)].pd_start_slot();
    return EdgeEnd{e.crossing, (e.slot - s0 + 4) & 3};
  };
  auto lab = [&](EdgeEnd e) { return labels[static_cast<std::size_t>(d.edge_at(e))]; };
  // Each triangle edge slides across the opposite crossing: its two ends
  // swap with the outer continuations of its strand.
  for (const auto& c : face.boundaries[0].corners) {
    const WalkEdge w = walk_edge(d, c);
    const EdgeEnd po{w.near.crossing, (w.near.slot + 2) & 3};
    const EdgeEnd qo{w.far.crossing, (w.far.slot + 2) & 3};
    const int tri = labels[static_cast<std::size_t>(w.edge)];
    const int outer_p = lab(po);
    const int outer_q = lab(qo);
    t.at(local(w.far)) = outer_p;
    t.at(local(w.near)) = outer_q;
    t.at(local(po)) = tri;
    t.at(local(qo)) = tri;
  }
  return t.build();
}

}  // namespace

LinkDiagram apply_move(const LinkDiagram& in, Move move, const MoveSite& site) {
  const LinkDiagram d = in.has_faces() ? in : compute_faces(in);
  switch (move) {
    case Move::R1Add: return r1_add(d, site);
    case Move::R1Remove: return r1_remove(d, site);
    case Move::R2Add: return r2_add(d, site);
    case Move::R2Remove: return r2_remove(d, site);
    case Move::R3: return r3(d, site);
  }
  illegal("unknown move");
}

std::vector<MoveSite> legal_sites(const LinkDiagram& in, Move move) {
  const LinkDiagram d = in.has_faces() ? in : compute_faces(in);
  std::vector<MoveSite> out;
  const auto& faces = d.faces();
  switch (move) {
    case Move::R1Add:
      for (const auto& e : d.edges())
        for (int v = 0; v < 4; ++v) out.push_back({e.label, 0, -1, v});
      break;
    case Move::R1Remove:
      for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto* w = simple_walk(faces[f]);
        if (w && w->size() == 1) out.push_back({0, 0, static_cast<int>(f), 0});
      }
      break;
    case Move::R2Add: {
      const auto labels = d.edge_labels();
      for (std::size_t f = 0; f < faces.size(); ++f) {
        std::vector<int> es;
        for (const auto& w : face_edges(d, faces[f])) es.push_back(w.edge);
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        for (int a : es)
          for (int b : es)
            if (a != b)
              for (int v = 0; v < 2; ++v)
                out.push_back({labels[static_cast<std::size_t>(a)], labels[static_cast<std::size_t>(b)],
                               static_cast<int>(f), v});
      }
      break;
    }
    case Move::R2Remove:
      for (std::size_t f = 0; f < faces.size(); ++f)
        if (r2_removable(d, faces[f])) out.push_back({0, 0, static_cast<int>(f), 0});
      break;
    case Move::R3:
      for (std::size_t f = 0; f < faces.size(); ++f)
        if (r3_legal(d, faces[f])) out.push_back({0, 0, static_cast<int>(f), 0});
      break;
  }
  return out;
}

LinkDiagram mirror(const LinkDiagram& d) {
  Terms t(d);
  // Starting one slot later puts the old over-strand at slots 0 and 2.
  for (auto& x : t.x) x = {x[1], x[2], x[3], x[0]};
  return t.build();
}

LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
  Terms ta(a);
  Terms tb(b);
  const int shift = a.max_label();
  for (auto& x : tb.x)
    for (auto& l : x) l += shift;
  for (auto& l : tb.loops) l += shift;
  ta.x.insert(ta.x.end(), tb.x.begin(), tb.x.end());
  ta.loops.insert(ta.loops.end(), tb.loops.begin(), tb.loops.end());
  return ta.build();
}

namespace {

// Canonical code of the graph component containing `start`, read from a
// breadth-first relabelling. Each crossing is entered so that its under
// slots land at relative positions 0 and 2.
std::vector<int> component_code(const LinkDiagram& d, int start, int start_rot) {
  const auto& xs = d.crossings();
  std::map<int, std::pair<int, int>> seen;  // crossing -> (new id, rotation)
  std::vector<int> order{start};
  seen[start] = {0, start_rot};
  for (std::size_t q = 0; q < order.size(); ++q) {
    const int v = order[q];
    const int rot = seen[v].second;
    for (int rel = 0; rel < 4; ++rel) {
      const EdgeEnd far = d.opposite_end({v, (rot + rel) & 3});
      if (seen.count(far.crossing)) continue;
      const auto& w = xs[static_cast<std::size_t>(far.crossing)];
      const int wrot = w.is_over(far.slot) ? (far.slot + 3) & 3 : far.slot;
      seen[far.crossing] = {static_cast<int>(order.size()), wrot};
      order.push_back(far.crossing);
    }
  }
  std::vector<int> code;
  code.reserve(order.size() * 8);
  for (int v : order) {
    const int rot = seen[v].second;
    for (int rel = 0; rel < 4; ++rel) {
      const EdgeEnd far = d.opposite_end({v, (rot + rel) & 3});
      const auto& [id, frot] = seen[far.crossing];
      code.push_back(id);
      code.push_back((far.slot - frot + 4) & 3);
    }
  }
  return code;
}

std::vector<std::vector<int>> canonical(const LinkDiagram& d) {
  std::map<int, std::vector<int>> best;
  for (const auto& x : d.crossings()) {
    const int comp = d.crossing_components()[static_cast<std::size_t>(x.id)];
    for (int r : {x.pd_start_slot(), (x.pd_start_slot() + 2) & 3}) {
      auto code = component_code(d, x.id, r);
      auto it = best.find(comp);
      if (it == best.end() || code < it->second) best[comp] = std::move(code);
    }
  }
  std::vector<std::vector<int>> out;
  for (auto& [c, code] : best) out.push_back(std::move(code));
  for (const auto& e : d.edges())
    if (e.is_loop()) out.push_back({});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool isomorphic(const LinkDiagram& a, const LinkDiagram& b) {
  if (a.crossing_count() != b.crossing_count() || a.edge_count() != b.edge_count()) return false;
  return canonical(a) == canonical(b);
}

}  // namespace qdilog
