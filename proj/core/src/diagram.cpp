#include "qdilog/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace qdilog {

std::size_t Face::corner_count() const noexcept {
  std::size_t n = 0;
  for (const auto& b : boundaries) n += b.corners.size();
  return n;
}

int Face::cornered_boundaries() const noexcept {
  return static_cast<int>(std::count_if(boundaries.begin(), boundaries.end(),
                                        [](const Boundary& b) { return !b.corners.empty(); }));
}

LinkDiagram LinkDiagram::from_terms(std::span<const std::array<int, 4>> crossings,
                                    std::span<const int> loops) {
  std::map<int, std::vector<EdgeEnd>> ends;
  for (std::size_t v = 0; v < crossings.size(); ++v) {
    for (int s = 0; s < 4; ++s) {
      const int label = crossings[v][static_cast<std::size_t>(s)];
      if (label <= 0) {
        throw Error(ErrorKind::ParseError,
                    "edge labels must be positive, got " + std::to_string(label));
      }
      ends[label].push_back({static_cast<int>(v), s});
    }
  }
  for (const auto& [label, e] : ends) {
    if (e.size() != 2) {
      throw Error(ErrorKind::ValenceError, "edge " + std::to_string(label) + " occurs " +
                                               std::to_string(e.size()) +
                                               " times among crossings, expected 2");
    }
  }
  std::map<int, std::vector<EdgeEnd>> all = ends;
  for (int label : loops) {
    if (label <= 0) {
      throw Error(ErrorKind::ParseError,
                  "loop labels must be positive, got " + std::to_string(label));
    }
    if (!all.emplace(label, std::vector<EdgeEnd>{}).second) {
      throw Error(ErrorKind::ValenceError,
                  "loop label " + std::to_string(label) + " is used more than once");
    }
  }

  LinkDiagram d;
  std::map<int, int> index;
  for (const auto& [label, e] : all) {
    index[label] = static_cast<int>(d.edges_.size());
    d.edges_.push_back({label, e});
  }
  d.crossings_.resize(crossings.size());
  for (std::size_t v = 0; v < crossings.size(); ++v) {
    d.crossings_[v].id = static_cast<int>(v);
    for (std::size_t s = 0; s < 4; ++s) d.crossings_[v].edges[s] = index[crossings[v][s]];
  }
  d.index_components();
  return d;
}

void LinkDiagram::index_components() {
  const int nv = static_cast<int>(crossings_.size());
  std::vector<int> parent(static_cast<std::size_t>(nv));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& e : edges_) {
    if (e.ends.size() == 2) {
      const int a = find(e.ends[0].crossing);
      const int b = find(e.ends[1].crossing);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  crossing_component_.assign(static_cast<std::size_t>(nv), -1);
  std::map<int, int> root_id;
  for (int v = 0; v < nv; ++v) {
    const int r = find(v);
    auto it = root_id.find(r);
    if (it == root_id.end()) it = root_id.emplace(r, static_cast<int>(root_id.size())).first;
    crossing_component_[static_cast<std::size_t>(v)] = it->second;
  }
  int next = static_cast<int>(root_id.size());
  loop_component_.assign(edges_.size(), -1);
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].is_loop()) loop_component_[e] = next++;
  graph_components_ = next;
}

std::vector<int> LinkDiagram::edge_labels() const {
  std::vector<int> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.label);
  return out;
}

int LinkDiagram::edge_index(int label) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), label,
                             [](const Edge& e, int l) { return e.label < l; });
  if (it == edges_.end() || it->label != label) {
    throw Error(ErrorKind::EdgeNotFound, "no edge labelled " + std::to_string(label));
  }
  return static_cast<int>(it - edges_.begin());
}

int LinkDiagram::max_label() const noexcept { return edges_.empty() ? 0 : edges_.back().label; }

EdgeEnd LinkDiagram::opposite_end(EdgeEnd end) const {
  const auto& e = edges_.at(static_cast<std::size_t>(edge_at(end)));
  return e.ends[0] == end ? e.ends[1] : e.ends[0];
}

int LinkDiagram::face_of(Corner c) const {
  if (!faces_computed_) throw Error(ErrorKind::InvalidArgument, "faces not computed");
  return corner_face_.at(static_cast<std::size_t>(4 * c.crossing + c.sector));
}

int LinkDiagram::edge_component(int edge) const {
  const auto& e = edges_.at(static_cast<std::size_t>(edge));
  if (e.is_loop()) return loop_component_[static_cast<std::size_t>(edge)];
  return crossing_component_[static_cast<std::size_t>(e.ends[0].crossing)];
}

int LinkDiagram::link_component_count() const {
  // Strands run straight through crossings: slot s continues at slot s+2.
  std::vector<char> seen(edges_.size(), 0);
  int count = 0;
  for (std::size_t start = 0; start < edges_.size(); ++start) {
    if (seen[start]) continue;
    ++count;
    seen[start] = 1;
    if (edges_[start].is_loop()) continue;
    EdgeEnd cur = edges_[start].ends[1];
    for (;;) {
      const EdgeEnd through{cur.crossing, (cur.slot + 2) & 3};
      const int e = edge_at(through);
      if (seen[static_cast<std::size_t>(e)]) break;
      seen[static_cast<std::size_t>(e)] = 1;
      cur = opposite_end(through);
    }
  }
  return count;
}

std::string LinkDiagram::to_pd() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& x : crossings_) {
    if (!first) os << ' ';
    first = false;
    const int s0 = x.pd_start_slot();
    os << "X[";
    for (int t = 0; t < 4; ++t) {
      if (t) os << ',';
      os << edges_[static_cast<std::size_t>(x.edges[static_cast<std::size_t>((s0 + t) & 3)])].label;
    }
    os << ']';
  }
  for (const auto& e : edges_) {
    if (!e.is_loop()) continue;
    if (!first) os << ' ';
    first = false;
    os << "Loop[" << e.label << ']';
  }
  return os.str();
}

namespace {

class PdLexer {
 public:
  explicit PdLexer(std::string_view text) : text_(text) {}

  void skip_separators() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ','))
      ++pos_;
  }
  bool done() {
    skip_separators();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  std::string_view word() {
    const std::size_t b = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(b, pos_ - b);
  }
  void expect(char c) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  int integer() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t b = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string digits(text_.substr(b, pos_ - b));
    if (digits.empty() || digits == "-" || digits == "+") fail("expected an integer");
    if (digits.size() > 9) fail("label too large");
    return std::stoi(digits);
  }
  /// Integers separated by commas up to the closing bracket.
  std::vector<int> int_list() {
    std::vector<int> out;
    expect('[');
    for (;;) {
      out.push_back(integer());
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        return out;
      }
      fail("expected ',' or ']'");
    }
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at offset " + std::to_string(pos_));
  }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LinkDiagram parse_pd(std::string_view text) {
  PdLexer lex(text);
  std::vector<std::array<int, 4>> crossings;
  std::vector<int> loops;
  bool wrapped = false;
  if (!lex.done()) {
    const std::size_t save = lex.pos();
    if (lex.word() == "PD") {
      lex.expect('[');
      wrapped = true;
    } else {
      lex.set_pos(save);
    }
  }
  for (;;) {
    if (lex.done()) break;
    if (wrapped && lex.peek() == ']') {
      lex.set_pos(lex.pos() + 1);
      if (!lex.done()) lex.fail("trailing text after PD[...]");
      wrapped = false;
      break;
    }
    const std::string_view w = lex.word();
    if (w == "X") {
      const auto v = lex.int_list();
      if (v.size() != 4) lex.fail("crossing term needs 4 labels, got " + std::to_string(v.size()));
      crossings.push_back({v[0], v[1], v[2], v[3]});
    } else if (w == "Loop") {
      const auto v = lex.int_list();
      if (v.size() != 1) lex.fail("Loop term needs 1 label");
      loops.push_back(v[0]);
    } else if (w.empty()) {
      lex.fail(std::string("unexpected character '") + lex.peek() + "'");
    } else {
      lex.fail("unknown term '" + std::string(w) + "'");
    }
  }
  if (wrapped) lex.fail("missing closing ']' of PD[...]");
  return compute_faces(LinkDiagram::from_terms(crossings, loops));
}

LinkDiagram compute_faces(const LinkDiagram& in) {
  LinkDiagram d = in;
  const int nv = static_cast<int>(d.crossings_.size());
  const int ncomp = d.graph_components_;

  // Trace corner cycles, component by component in order of first corner.
  std::vector<int> cycle_of(static_cast<std::size_t>(4 * nv), -1);
  std::vector<std::vector<Corner>> cycles;
  std::vector<int> cycle_comp;
  for (int v = 0; v < nv; ++v) {
    for (int s = 0; s < 4; ++s) {
      if (cycle_of[static_cast<std::size_t>(4 * v + s)] >= 0) continue;
      const int id = static_cast<int>(cycles.size());
      std::vector<Corner> c;
      Corner cur{v, s};
      while (cycle_of[static_cast<std::size_t>(4 * cur.crossing + cur.sector)] < 0) {
        cycle_of[static_cast<std::size_t>(4 * cur.crossing + cur.sector)] = id;
        c.push_back(cur);
        const EdgeEnd arrive = d.opposite_end({cur.crossing, (cur.sector + 1) & 3});
        cur = {arrive.crossing, arrive.slot};
      }
      if (!(cur == c.front())) {
        throw Error(ErrorKind::PlanarityError, "corner walk does not close");
      }
      cycles.push_back(std::move(c));
      cycle_comp.push_back(d.crossing_component_[static_cast<std::size_t>(v)]);
    }
  }

  // Euler check per crossing component.
  std::vector<int> verts(static_cast<std::size_t>(ncomp), 0), edges(static_cast<std::size_t>(ncomp), 0),
      faces(static_cast<std::size_t>(ncomp), 0);
  for (int v = 0; v < nv; ++v) ++verts[static_cast<std::size_t>(d.crossing_component_[static_cast<std::size_t>(v)])];
  for (std::size_t e = 0; e < d.edges_.size(); ++e)
    if (!d.edges_[e].is_loop()) ++edges[static_cast<std::size_t>(d.edge_component(static_cast<int>(e)))];
  for (int c : cycle_comp) ++faces[static_cast<std::size_t>(c)];
  for (int c = 0; c < ncomp; ++c) {
    if (verts[static_cast<std::size_t>(c)] == 0) continue;  // crossingless loop
    const int chi = verts[static_cast<std::size_t>(c)] - edges[static_cast<std::size_t>(c)] + faces[static_cast<std::size_t>(c)];
    if (chi != 2) {
      throw Error(ErrorKind::PlanarityError,
                  "component " + std::to_string(c) + " has V - E + F = " + std::to_string(chi) +
                      ", not a planar 4-valent diagram");
    }
  }

  // The first walk of each component goes to the shared face 0; loops
  // contribute their outer side there and their inner side as a new face.
  d.faces_.assign(1, Face{});
  std::vector<char> first_taken(static_cast<std::size_t>(ncomp), 0);
  std::vector<int> cycle_face(cycles.size(), -1);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const int c = cycle_comp[i];
    Boundary b{cycles[i], -1, c};
    if (!first_taken[static_cast<std::size_t>(c)]) {
      first_taken[static_cast<std::size_t>(c)] = 1;
      cycle_face[i] = 0;
      d.faces_[0].boundaries.push_back(std::move(b));
    } else {
      cycle_face[i] = static_cast<int>(d.faces_.size());
      d.faces_.push_back(Face{{std::move(b)}});
    }
  }
  for (std::size_t e = 0; e < d.edges_.size(); ++e) {
    if (!d.edges_[e].is_loop()) continue;
    const int c = d.loop_component_[e];
    d.faces_[0].boundaries.push_back({{}, static_cast<int>(e), c});
    d.faces_.push_back(Face{{Boundary{{}, static_cast<int>(e), c}}});
  }
  d.corner_face_.assign(static_cast<std::size_t>(4 * nv), -1);
  for (std::size_t i = 0; i < 4 * static_cast<std::size_t>(nv); ++i)
    d.corner_face_[i] = cycle_face[static_cast<std::size_t>(cycle_of[i])];
  d.faces_computed_ = true;
  return d;
}

TangleDiagram cut_tangle(const LinkDiagram& in, int label) {
  const LinkDiagram d = in.has_faces() ? in : compute_faces(in);
  const int cut = d.edge_index(label);
  const Edge& ce = d.edges()[static_cast<std::size_t>(cut)];
  const int comp = d.edge_component(cut);

  TangleDiagram t;
  t.base_ = d;
  t.cut_label_ = label;
  for (const auto& e : d.edges()) t.edges_.push_back({e.label, e.ends, false});
  t.e1_ = cut;
  t.e2_ = static_cast<int>(t.edges_.size());
  t.edges_[static_cast<std::size_t>(cut)].pinned = true;
  TangleDiagram::HalfEdge second{d.max_label() + 1, {}, true};
  if (!ce.is_loop()) {
    t.edges_[static_cast<std::size_t>(cut)].ends = {ce.ends[0]};
    second.ends = {ce.ends[1]};
  }
  t.edges_.push_back(second);
  for (const auto& x : d.crossings()) t.slot_edges_.push_back(x.edges);
  if (!ce.is_loop()) {
    t.slot_edges_[static_cast<std::size_t>(ce.ends[1].crossing)][static_cast<std::size_t>(ce.ends[1].slot)] = t.e2_;
  }

  // Faces on the two sides of the cut edge.
  int fa = 0;
  int fb = 0;
  if (ce.is_loop()) {
    for (std::size_t f = 1; f < d.faces().size(); ++f) {
      const auto& bs = d.faces()[f].boundaries;
      if (bs.size() == 1 && bs[0].loop_edge == cut) fb = static_cast<int>(f);
    }
  } else {
    const EdgeEnd e0 = ce.ends[0];
    fa = d.face_of({e0.crossing, e0.slot});
    fb = d.face_of({e0.crossing, (e0.slot + 3) & 3});
  }

  // f0 first, remaining faces in their original order.
  t.faces_.push_back(Face{});
  t.f0_ = 0;
  for (std::size_t f = 0; f < d.faces().size(); ++f) {
    if (static_cast<int>(f) == fa || static_cast<int>(f) == fb) {
      for (const auto& b : d.faces()[f].boundaries) t.faces_[0].boundaries.push_back(b);
    } else {
      t.faces_.push_back(d.faces()[f]);
    }
  }

  // Components sharing f0 with the cut component are moved into an inner
  // face of it, so their walks do not all fall into the unconstrained face.
  int home = -1;
  for (std::size_t f = 1; f < t.faces_.size() && home < 0; ++f)
    for (const auto& b : t.faces_[f].boundaries)
      if (b.component == comp && !b.corners.empty()) home = static_cast<int>(f);
  if (home >= 0) {
    auto& bs = t.faces_[0].boundaries;
    std::vector<Boundary> keep;
    for (auto& b : bs) {
      if (b.component == comp) keep.push_back(std::move(b));
      else t.faces_[static_cast<std::size_t>(home)].boundaries.push_back(std::move(b));
    }
    bs = std::move(keep);
  }

  t.corner_face_.assign(4 * d.crossing_count(), -1);
  for (std::size_t f = 0; f < t.faces_.size(); ++f)
    for (const auto& b : t.faces_[f].boundaries)
      for (const auto& c : b.corners)
        t.corner_face_[static_cast<std::size_t>(4 * c.crossing + c.sector)] = static_cast<int>(f);
  return t;
}

TangleDiagram cut_tangle(const LinkDiagram& d) {
  if (d.edges().empty()) throw Error(ErrorKind::EdgeNotFound, "diagram has no edges");
  // Cutting a free loop beside a knot has no charges, so prefer a crossing edge.
  for (const auto& e : d.edges())
    if (!e.is_loop()) return cut_tangle(d, e.label);
  return cut_tangle(d, d.edges().front().label);
}

}  // namespace qdilog
