#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

// A --pd argument names a file when one exists at that path.
std::string read_pd(const std::string& arg) {
  std::error_code ec;
  if (!arg.empty() && std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

}  // namespace

int main(int argc, char** argv) {
  using qdilog::cli::RunConfig;
  RunConfig cfg;
  try {
    qdilog::cli::apply_environment(cfg);
  } catch (const qdilog::Error& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(e.kind());
  }

  CLI::App app{"Cyclic quantum dilogarithm R-matrix and link invariant"};
  app.require_subcommand(1);
  std::string pd;
  std::string engine = "tensor";
  std::optional<double> tol;
  std::optional<int> cut;
  std::optional<std::uint64_t> charge_seed;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--level,-N", cfg.level, "level N >= 2")->capture_default_str();
    sub->add_option("--root,-k", cfg.root, "root exponent k, gcd(k, N) = 1")->capture_default_str();
    sub->add_option("--tol", tol, "tolerance (default depends on the check)");
    sub->add_flag("--json", cfg.json, "machine-readable output");
  };

  auto* inv = app.add_subcommand("invariant", "compute <L> and <L>^N of a diagram");
  common(inv);
  inv->add_option("--pd", pd, "PD code or path to a file holding one")->required();
  inv->add_option("--engine", engine, "brute | tensor")->check(CLI::IsMember({"brute", "tensor"}));
  inv->add_option("--cut-edge", cut, "label of the edge to cut");
  inv->add_option("--charge-seed", charge_seed, "sample another charge assignment");

  auto* ver = app.add_subcommand("verify", "numerical identity checks");
  common(ver);
  ver->add_option("check", cfg.target, "ybe | symmetry | inverse | kink | octahedron | invariance")
      ->required()
      ->check(CLI::IsMember({"ybe", "symmetry", "inverse", "kink", "octahedron", "invariance"}));
  ver->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  ver->add_option("--pd", pd, "diagram for the invariance check");
  ver->add_option("--engine", engine, "brute | tensor")->check(CLI::IsMember({"brute", "tensor"}));
  ver->add_option("--cut-edge", cut, "reference cut edge");

  auto* dump = app.add_subcommand("dump", "emit JSON");
  common(dump);
  dump->add_option("what", cfg.target, "rmatrix | diagram | charges")
      ->required()
      ->check(CLI::IsMember({"rmatrix", "diagram", "charges"}));
  dump->add_option("--pd", pd, "PD code or file (diagram, charges)");
  dump->add_option("--cut-edge", cut, "label of the edge to cut");
  dump->add_option("--charge-seed", charge_seed, "sample another charge assignment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qdilog::cli::kUsageError;
  }

  for (auto* sub : {inv, ver, dump})
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  if (tol) cfg.tolerance = tol;
  if (cut) cfg.cut_edge = cut;
  if (charge_seed) cfg.charge_seed = charge_seed;
  cfg.engine = engine == "brute" ? qdilog::Engine::Brute : qdilog::Engine::Tensor;

  const auto res = qdilog::cli::run(cfg, read_pd(pd));
  std::cout << res.out;
  std::cerr << res.err;
  return res.exit_code;
}
