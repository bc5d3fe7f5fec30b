#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qdilog/statesum.hpp"

namespace qdilog::cli {

/// Exit status for a failed check; errors use their ErrorKind value.
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsageError = 2;

struct RunConfig {
  std::string subcommand;                 ///< invariant | verify | dump
  std::string target;                     ///< verify: ybe|symmetry|inverse|kink|octahedron|invariance; dump: rmatrix|diagram|charges
  int level = 3;
  int root = 1;
  std::optional<double> tolerance;        ///< default depends on the check
  Engine engine = Engine::Tensor;
  std::optional<int> cut_edge;
  std::optional<std::uint64_t> charge_seed;
  std::uint64_t seed = 1;
  bool json = false;
  Limits limits;
};

struct RunResult {
  int exit_code = 0;
  std::string out;   ///< report (stdout)
  std::string err;   ///< diagnostics (stderr)
};

/// Executes one command. `input` is PD text for the commands that read a
/// diagram. Never throws for library errors: they become exit codes.
RunResult run(const RunConfig& config, std::string_view input);

/// Applies QDILOG_TOL, QDILOG_BRUTE_CAP, QDILOG_TENSOR_CAP and
/// QDILOG_THREADS from the environment. Throws InvalidArgument on
/// unparsable values.
void apply_environment(RunConfig& config);

}  // namespace qdilog::cli
