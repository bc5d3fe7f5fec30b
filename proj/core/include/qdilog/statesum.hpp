#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdilog/arith.hpp"
#include "qdilog/charge.hpp"
#include "qdilog/diagram.hpp"

namespace qdilog {

enum class Engine { Brute, Tensor };

std::string_view to_string(Engine e) noexcept;

struct Limits {
  double brute_cap = 1e8;    ///< max number of colorings summed by brute force
  double tensor_cap = 1e7;   ///< max entries of any intermediate tensor
  unsigned threads = 0;      ///< brute-force workers, 0 = hardware concurrency
};

struct BruteResult {
  complex value;
  double magnitude = 0.0;   ///< sum of |term| over all colorings
  std::int64_t terms = 0;   ///< number of colorings visited
};

/// Sum over every coloring of the unpinned edges (crossingless loops
/// included) of prod_v R(...) prod_e w^{j(e)}. Colorings are visited in
/// lexicographic order; the first free edge is split across workers and the
/// partial sums are added in worker order. Throws TooLarge above the cap.
BruteResult brute_force(const ModularContext& ctx, const TangleDiagram& t,
                        const ChargeAssignment& a, const Limits& limits = {});

/// Dense tensor with one N-dimensional leg per bond, row-major in `bonds`.
struct Factor {
  std::vector<int> bonds;
  std::vector<complex> data;
};

/// One rank-4 node per crossing with legs in R-symbol order (i, j, k, l).
/// The factor w^{j(e)} of each edge is folded into the node holding the
/// edge's canonical end (lower crossing id, then lower slot).
struct TensorNetwork {
  int level = 0;
  std::vector<Factor> nodes;
  int bond_count = 0;             ///< bonds are tangle edge indices
  std::vector<int> pinned;        ///< bonds fixed to index 0 (e1, e2)
  complex scalar{1.0, 0.0};       ///< crossingless loops
};

TensorNetwork build_network(const ModularContext& ctx, const TangleDiagram& t,
                            const ChargeAssignment& a);

struct ContractionStep {
  int lhs = 0;                    ///< factor ids; the result takes a new id
  int rhs = 0;
  std::vector<int> summed;        ///< bonds eliminated by this step
  int result_rank = 0;
};

struct ContractionPlan {
  std::vector<int> order;         ///< every non-pinned bond exactly once
  std::vector<ContractionStep> steps;
  double cost = 0.0;              ///< predicted multiply-adds
  int max_rank = 0;               ///< largest intermediate rank
};

/// Greedy elimination: repeatedly merge the pair of factors whose product
/// has the fewest open legs (ties: fewer multiply-adds, then lowest bond).
/// Throws RankCapExceeded if an intermediate would exceed the entry cap.
ContractionPlan plan_contraction(const TensorNetwork& net, const Limits& limits = {});

complex contract(const TensorNetwork& net, const ContractionPlan& plan);

/// Contracts factors over every bond shared by two of them (greedy order as
/// in plan_contraction) and returns the remaining open legs in `open` order.
/// Each bond may occur in at most two factors. Throws RankCapExceeded.
Factor contract_factors(std::vector<Factor> factors, int level, const std::vector<int>& open,
                        double cap = 1e7);

struct InvariantOptions {
  std::optional<int> cut_label;               ///< default: lowest edge label
  Engine engine = Engine::Tensor;
  std::optional<std::uint64_t> charge_seed;
  Limits limits;
};

struct InvariantResult {
  int level = 0;
  int root_exponent = 0;
  complex value;                  ///< <L>
  complex invariant;              ///< <L>^N
  Engine engine = Engine::Tensor; ///< engine that produced the value
  std::string charge_digest;
  int cut_label = 0;
  std::optional<double> magnitude;  ///< sum of |term|, brute force only
};

/// Solves charges and evaluates <L> and <L>^N. The tensor engine falls back
/// to brute force when planning hits the entry cap.
InvariantResult invariant(const ModularContext& ctx, const TangleDiagram& t,
                          const InvariantOptions& opts = {});
InvariantResult invariant(const ModularContext& ctx, const LinkDiagram& d,
                          const InvariantOptions& opts = {});

/// Evaluates <L> with a given assignment and engine (no fallback).
complex evaluate(const ModularContext& ctx, const TangleDiagram& t, const ChargeAssignment& a,
                 Engine engine, const Limits& limits = {});

}  // namespace qdilog
