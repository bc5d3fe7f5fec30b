#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdilog/diagram.hpp"

namespace qdilog {

/// Linear congruences A x = b (mod N) over the corner charges of a tangle.
/// Corners in the outer face are fixed to 0 and are not variables.
struct ChargeSystem {
  int level = 0;
  std::vector<Corner> variables;
  std::vector<std::vector<int>> matrix;  ///< one row per equation
  std::vector<int> rhs;
  int vertex_equations = 0;  ///< rows [0, vertex_equations) are per crossing
};

/// Per-corner charges in {0, ..., N-1}.
class ChargeAssignment {
 public:
  ChargeAssignment() = default;
  ChargeAssignment(int level, std::vector<std::array<int, 4>> values)
      : level_(level), values_(std::move(values)) {}

  int level() const noexcept { return level_; }
  std::size_t crossing_count() const noexcept { return values_.size(); }
  int operator()(int crossing, int sector) const {
    return values_.at(static_cast<std::size_t>(crossing)).at(static_cast<std::size_t>(sector));
  }
  int& at(int crossing, int sector) {
    return values_.at(static_cast<std::size_t>(crossing)).at(static_cast<std::size_t>(sector));
  }
  const std::vector<std::array<int, 4>>& values() const noexcept { return values_; }

  /// Short stable fingerprint (FNV-1a, hex) of N and all values.
  std::string digest() const;

  friend bool operator==(const ChargeAssignment&, const ChargeAssignment&) = default;

 private:
  int level_ = 0;
  std::vector<std::array<int, 4>> values_;
};

/// One equation per crossing (corners sum to 1) and one per face other than
/// f0 that carries corners (corners sum to 2 - #walks, which is 1 for a disk).
ChargeSystem build_system(const TangleDiagram& t, int level);

/// Solves the system by diagonalizing it with unimodular row and column
/// operations over Z/NZ. Without a seed every free parameter is 0; a seed
/// draws them at random. Throws NoSolution.
ChargeAssignment solve_charges(const TangleDiagram& t, const ChargeSystem& sys,
                               std::optional<std::uint64_t> seed = std::nullopt);
ChargeAssignment solve_charges(const TangleDiagram& t, int level,
                               std::optional<std::uint64_t> seed = std::nullopt);

/// Human-readable descriptions of every violated constraint (empty when
/// the assignment is valid).
std::vector<std::string> charge_violations(const TangleDiagram& t, const ChargeAssignment& a);

bool verify_charges(const TangleDiagram& t, const ChargeAssignment& a, int level);

}  // namespace qdilog
