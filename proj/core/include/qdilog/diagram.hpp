#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdilog/error.hpp"

namespace qdilog {

/// One end of an edge: a slot (0..3, counter-clockwise) at a crossing.
struct EdgeEnd {
  int crossing = -1;
  int slot = -1;
  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
  friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

/// The sector of a crossing between slot `sector` and slot `sector + 1`
/// (counter-clockwise).
struct Corner {
  int crossing = -1;
  int sector = -1;
  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct Crossing {
  int id = 0;
  /// Edge index (into LinkDiagram::edges()) attached at each slot, in
  /// counter-clockwise order.
  std::array<int, 4> edges{};
  /// Slots over_pair and over_pair + 2 carry the over-strand. PD input always
  /// yields 1 (labels start at the incoming under-strand).
  int over_pair = 1;

  bool is_over(int slot) const noexcept { return ((slot - over_pair) & 1) == 0; }

  /// First slot of the PD term (an under-strand end).
  int pd_start_slot() const noexcept { return (over_pair + 3) & 3; }

  /// Slot that plays the role of index i in R(i,j,k,l|a,b,c,d): the
  /// under-strand end with the lower edge label (ties keep the PD start).
  /// The other under end gives the same weight by the half-turn symmetry.
  int r_start_slot(std::span<const int> edge_labels) const noexcept {
    const int s = pd_start_slot();
    const int t = (s + 2) & 3;
    return edge_labels[static_cast<std::size_t>(edges[static_cast<std::size_t>(t)])] <
                   edge_labels[static_cast<std::size_t>(edges[static_cast<std::size_t>(s)])]
               ? t
               : s;
  }
};

struct Edge {
  int label = 0;
  /// Two ends, or none for a crossingless closed component (Loop[label]).
  std::vector<EdgeEnd> ends;
  bool is_loop() const noexcept { return ends.empty(); }
};

/// One boundary walk of a face: corners in tracing order, or the side of a
/// crossingless loop (no corners, loop_edge set).
struct Boundary {
  std::vector<Corner> corners;
  int loop_edge = -1;
  int component = -1;  ///< graph component that produced this walk
};

/// A region of the sphere. Connected diagrams give faces with exactly one
/// boundary walk; split diagrams produce one shared face whose walks come
/// from several components.
struct Face {
  std::vector<Boundary> boundaries;

  std::size_t corner_count() const noexcept;
  /// Number of boundary walks that carry corners.
  int cornered_boundaries() const noexcept;
};

class LinkDiagram {
 public:
  LinkDiagram() = default;

  /// Builds a diagram from PD crossing terms (labels listed
  /// counter-clockwise from the incoming under-strand) and crossingless loop
  /// labels. Throws ValenceError unless every label occurs exactly twice
  /// among the crossing terms (loop labels: once, and not in any crossing).
  /// Faces are not computed; see compute_faces.
  static LinkDiagram from_terms(std::span<const std::array<int, 4>> crossings,
                                std::span<const int> loops);

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  bool has_faces() const noexcept { return faces_computed_; }

  std::size_t crossing_count() const noexcept { return crossings_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Edge labels indexed by edge index.
  std::vector<int> edge_labels() const;
  /// Throws EdgeNotFound.
  int edge_index(int label) const;
  int max_label() const noexcept;

  int edge_at(EdgeEnd end) const { return crossings_.at(end.crossing).edges.at(end.slot); }
  /// The other end of the edge plugged into `end`.
  EdgeEnd opposite_end(EdgeEnd end) const;

  /// Face index of a corner; requires faces.
  int face_of(Corner c) const;
  /// Graph component of each crossing (loops get their own components,
  /// numbered after the crossing components).
  const std::vector<int>& crossing_components() const noexcept { return crossing_component_; }
  int graph_component_count() const noexcept { return graph_components_; }
  /// Graph component of an edge.
  int edge_component(int edge) const;

  /// Number of link components (closed strands).
  int link_component_count() const;

  /// PD text, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3] Loop[7]".
  std::string to_pd() const;

 private:
  friend LinkDiagram compute_faces(const LinkDiagram& d);

  void index_components();

  std::vector<Crossing> crossings_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<int> corner_face_;            // 4 * crossing + sector -> face
  std::vector<int> crossing_component_;
  std::vector<int> loop_component_;         // per edge: component id for loops, -1 otherwise
  int graph_components_ = 0;
  bool faces_computed_ = false;
};

/// Parses PD text: crossing terms X[a,b,c,d] and Loop[n], optionally wrapped
/// in PD[...], separated by whitespace or commas. Faces are computed.
/// Throws ParseError, ValenceError or PlanarityError.
LinkDiagram parse_pd(std::string_view text);

/// Traces faces: from corner (v, s) leave along slot s+1, and the arrival
/// end (w, t) gives the next corner (w, t). One walk of each graph component
/// joins a single shared face. Throws PlanarityError if any component fails
/// V - E + F = 2.
LinkDiagram compute_faces(const LinkDiagram& d);

/// A link cut open at one edge. The two halves e1, e2 are pinned to index 0
/// by the state sum; the two faces on either side of the cut edge merge
/// into the outer face f0.
class TangleDiagram {
 public:
  struct HalfEdge {
    int label = 0;
    std::vector<EdgeEnd> ends;  ///< 0 or 1 end for e1/e2, 0 or 2 otherwise
    bool pinned = false;
  };

  const LinkDiagram& base() const noexcept { return base_; }
  int cut_label() const noexcept { return cut_label_; }

  /// Base edges with the cut edge replaced by e1 and e2.
  const std::vector<HalfEdge>& edges() const noexcept { return edges_; }
  int e1() const noexcept { return e1_; }
  int e2() const noexcept { return e2_; }

  /// Tangle edge index at a crossing slot.
  int edge_at(int crossing, int slot) const {
    return slot_edges_.at(crossing).at(slot);
  }

  const std::vector<Face>& faces() const noexcept { return faces_; }
  int outer_face() const noexcept { return f0_; }
  int face_of(Corner c) const { return corner_face_.at(4 * c.crossing + c.sector); }

  std::size_t crossing_count() const noexcept { return base_.crossing_count(); }

 private:
  friend TangleDiagram cut_tangle(const LinkDiagram& d, int label);

  LinkDiagram base_;
  int cut_label_ = 0;
  std::vector<HalfEdge> edges_;
  int e1_ = -1;
  int e2_ = -1;
  std::vector<std::array<int, 4>> slot_edges_;
  std::vector<Face> faces_;
  std::vector<int> corner_face_;
  int f0_ = -1;
};

/// Severs the edge with the given label. Throws EdgeNotFound.
TangleDiagram cut_tangle(const LinkDiagram& d, int label);
/// Cuts the lowest-labelled edge that meets a crossing, or a loop when
/// there are no crossings.
TangleDiagram cut_tangle(const LinkDiagram& d);

enum class Move { R1Add, R1Remove, R2Add, R2Remove, R3 };

std::string_view to_string(Move m) noexcept;

/// Where a move applies.
///  - R1Add: `edge` is curled; `variant` 0..3 picks crossing type (bit 0) and
///    the side of the strand (bit 1).
///  - R1Remove / R2Remove / R3: `face` is the monogon / bigon / triangle.
///  - R2Add: `edge` is pushed across `face` over (`variant` 0) or under
///    (`variant` 1) `edge2`; both must lie on that face.
struct MoveSite {
  int edge = 0;
  int edge2 = 0;
  int face = -1;
  int variant = 0;
};

/// Applies a Reidemeister move and recomputes faces. Throws IllegalMove when
/// the site does not admit the move.
LinkDiagram apply_move(const LinkDiagram& d, Move move, const MoveSite& site);

/// Every site at which `move` applies (R1Add: one per edge and variant;
/// R2Add: every ordered pair of distinct non-loop edges sharing a face,
/// both variants).
std::vector<MoveSite> legal_sites(const LinkDiagram& d, Move move);

/// Changes every crossing (reflection through the projection plane).
LinkDiagram mirror(const LinkDiagram& d);

/// Disjoint union; labels of `b` are shifted past those of `a`.
LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b);

/// Orientation-preserving combinatorial isomorphism of the underlying
/// planar diagrams (edge labels ignored).
bool isomorphic(const LinkDiagram& a, const LinkDiagram& b);

}  // namespace qdilog
