#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "qdilog/statesum.hpp"

namespace qdilog::test {

inline constexpr const char* kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
inline constexpr const char* kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

inline std::string corpus_path(const std::string& name) {
  return std::string(QDILOG_TEST_DATA_DIR) + "/" + name + ".pd";
}

inline std::string read_corpus(const std::string& name) {
  std::ifstream in(corpus_path(name));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline LinkDiagram corpus(const std::string& name) { return parse_pd(read_corpus(name)); }

inline double rel_diff(complex a, complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Closure of the two-strand braid sigma_1^n.
inline std::string torus_2n(int n) {
  std::string pd;
  auto lab = [n](int x) { return (x - 1) % (2 * n) + 1; };
  for (int a = 1; a < 2 * n; a += 2) {
    pd += "X[" + std::to_string(lab(a)) + "," + std::to_string(lab(a + n)) + "," +
          std::to_string(lab(a + 1)) + "," + std::to_string(lab(a + n + 1)) + "] ";
  }
  return pd;
}

}  // namespace qdilog::test
