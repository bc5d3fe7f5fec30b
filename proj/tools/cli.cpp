#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "qdilog/json_io.hpp"
#include "qdilog/rmatrix.hpp"
#include "qdilog/tetra.hpp"

namespace qdilog::cli {

using nlohmann::json;

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific << x;
  return os.str();
}

std::string fmt(complex z) {
  std::ostringstream os;
  os.precision(15);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

struct Check {
  std::string name;
  double residual;
  double tolerance;
  bool pass() const { return residual < tolerance; }
};

RunResult report(const RunConfig& cfg, const ModularContext& ctx, const std::vector<Check>& checks) {
  RunResult r;
  bool ok = true;
  json arr = json::array();
  std::ostringstream os;
  for (const auto& c : checks) {
    ok = ok && c.pass();
    arr.push_back({{"check", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
    os << c.name << " N=" << ctx.level() << " k=" << ctx.root_exponent() << " residual=" << fmt(c.residual)
       << " tol=" << fmt(c.tolerance) << (c.pass() ? " PASS" : " FAIL") << "\n";
  }
  if (cfg.json) {
    r.out = json{{"N", ctx.level()}, {"k", ctx.root_exponent()}, {"checks", arr}, {"pass", ok}}.dump(2) + "\n";
  } else {
    r.out = os.str();
  }
  r.exit_code = ok ? 0 : kCheckFailed;
  return r;
}

double rel_diff(complex a, complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 1e-300) return 0.0;
  return std::abs(a - b) / scale;
}

RunResult verify_invariance(const RunConfig& cfg, const ModularContext& ctx, std::string_view input) {
  const double tol = cfg.tolerance.value_or(1e-6);
  const LinkDiagram base = parse_pd(input);
  InvariantOptions opts;
  opts.engine = cfg.engine;
  opts.limits = cfg.limits;
  opts.cut_label = cfg.cut_edge;
  const complex ref = invariant(ctx, base, opts).invariant;

  std::vector<std::pair<std::string, complex>> rows;
  // Other cut edges.
  int cuts = 0;
  for (const auto& e : base.edges()) {
    if (cuts == 3) break;
    InvariantOptions o = opts;
    o.cut_label = e.label;
    rows.emplace_back("cut " + std::to_string(e.label), invariant(ctx, base, o).invariant);
    ++cuts;
  }
  // Other charge assignments.
  for (std::uint64_t s = 1; s <= 3; ++s) {
    InvariantOptions o = opts;
    o.charge_seed = s;
    rows.emplace_back("charge seed " + std::to_string(s), invariant(ctx, base, o).invariant);
  }
  // Reidemeister-equivalent diagrams.
  const auto eval = [&](const LinkDiagram& d) {
    InvariantOptions o = opts;
    o.cut_label.reset();
    return invariant(ctx, d, o).invariant;
  };
  for (Move m : {Move::R1Add, Move::R2Add, Move::R3, Move::R1Remove, Move::R2Remove}) {
    const auto sites = legal_sites(base, m);
    if (sites.empty()) continue;
    rows.emplace_back(std::string(to_string(m)), eval(apply_move(base, m, sites.front())));
  }

  RunResult r;
  bool ok = true;
  json arr = json::array();
  std::ostringstream os;
  os << "reference <L>^N = " << fmt(ref) << "\n";
  for (const auto& [name, v] : rows) {
    const double d = rel_diff(ref, v);
    const bool pass = d < tol;
    ok = ok && pass;
    arr.push_back({{"variant", name}, {"re", v.real()}, {"im", v.imag()}, {"rel_diff", d}, {"pass", pass}});
    os << name << ": " << fmt(v) << " rel_diff=" << fmt(d) << (pass ? " PASS" : " FAIL") << "\n";
  }
  if (cfg.json) {
    r.out = json{{"N", ctx.level()},
                 {"k", ctx.root_exponent()},
                 {"reference_re", ref.real()},
                 {"reference_im", ref.imag()},
                 {"tolerance", tol},
                 {"variants", arr},
                 {"pass", ok}}
                .dump(2) +
            "\n";
  } else {
    r.out = os.str();
  }
  r.exit_code = ok ? 0 : kCheckFailed;
  return r;
}

RunResult do_verify(const RunConfig& cfg, std::string_view input) {
  const ModularContext ctx = make_context(cfg.level, cfg.root);
  const std::string& t = cfg.target;
  if (t == "ybe") return report(cfg, ctx, {{"ybe", verify_ybe(ctx), cfg.tolerance.value_or(1e-9)}});
  if (t == "inverse") return report(cfg, ctx, {{"inverse", inverse_residual(ctx), cfg.tolerance.value_or(1e-9)}});
  if (t == "kink") return report(cfg, ctx, {{"kink", verify_kink(ctx), cfg.tolerance.value_or(1e-9)}});
  if (t == "symmetry") {
    const SymmetryReport s = verify_symmetries(ctx, 4, 100000, cfg.seed);
    const double tol = cfg.tolerance.value_or(1e-12);
    return report(cfg, ctx, {{"symmetry-rotation", s.rotation_residual, tol},
                             {"symmetry-reflection", s.reflection_residual, tol}});
  }
  if (t == "octahedron") {
    const OctahedronReport rep = octahedron_check(ctx, cfg.seed, cfg.tolerance.value_or(1e-6));
    RunResult r;
    if (cfg.json) {
      r.out = to_json(rep, 2) + "\n";
    } else {
      std::ostringstream os;
      os << "octahedron N=" << rep.level << " seed=" << rep.seed << " tuples=" << rep.configurations
         << " nonzero=" << rep.nonzero << " zero_mismatch=" << rep.zero_mismatch
         << " ratio=" << fmt(rep.ratio) << " spread=" << fmt(rep.spread)
         << (rep.constant ? " PASS" : " FAIL") << "\n";
      r.out = os.str();
    }
    r.exit_code = rep.constant ? 0 : kCheckFailed;
    return r;
  }
  if (t == "invariance") return verify_invariance(cfg, ctx, input);
  throw Error(ErrorKind::InvalidArgument, "unknown check '" + t + "'");
}

RunResult do_invariant(const RunConfig& cfg, std::string_view input) {
  const ModularContext ctx = make_context(cfg.level, cfg.root);
  const LinkDiagram d = parse_pd(input);
  InvariantOptions opts;
  opts.engine = cfg.engine;
  opts.cut_label = cfg.cut_edge;
  opts.charge_seed = cfg.charge_seed;
  opts.limits = cfg.limits;
  const InvariantResult res = invariant(ctx, d, opts);
  RunResult r;
  if (cfg.json) {
    r.out = to_json(res, 2) + "\n";
  } else {
    std::ostringstream os;
    os << "N=" << res.level << " k=" << res.root_exponent << " engine=" << to_string(res.engine)
       << " cut_edge=" << res.cut_label << " charges=" << res.charge_digest << "\n"
       << "<L>   = " << fmt(res.value) << "\n"
       << "<L>^N = " << fmt(res.invariant) << "\n";
    r.out = os.str();
  }
  return r;
}

RunResult do_dump(const RunConfig& cfg, std::string_view input) {
  const int indent = cfg.json ? 2 : -1;
  RunResult r;
  if (cfg.target == "rmatrix") {
    r.out = to_json(r_matrix(make_context(cfg.level, cfg.root)), indent) + "\n";
  } else if (cfg.target == "diagram") {
    r.out = to_json(parse_pd(input), indent) + "\n";
  } else if (cfg.target == "charges") {
    const LinkDiagram d = parse_pd(input);
    const TangleDiagram t = cfg.cut_edge ? cut_tangle(d, *cfg.cut_edge) : cut_tangle(d);
    r.out = to_json(solve_charges(t, cfg.level, cfg.charge_seed), indent) + "\n";
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown dump target '" + cfg.target + "'");
  }
  return r;
}

double env_number(const char* name, double fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(x > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be a positive number");
  }
  return x;
}

}  // namespace

void apply_environment(RunConfig& cfg) {
  if (std::getenv("QDILOG_TOL")) cfg.tolerance = env_number("QDILOG_TOL", 0.0);
  cfg.limits.brute_cap = env_number("QDILOG_BRUTE_CAP", cfg.limits.brute_cap);
  cfg.limits.tensor_cap = env_number("QDILOG_TENSOR_CAP", cfg.limits.tensor_cap);
  if (std::getenv("QDILOG_THREADS")) {
    cfg.limits.threads = static_cast<unsigned>(env_number("QDILOG_THREADS", 1.0));
  }
}

RunResult run(const RunConfig& cfg, std::string_view input) {
  try {
    if (cfg.subcommand == "invariant") return do_invariant(cfg, input);
    if (cfg.subcommand == "verify") return do_verify(cfg, input);
    if (cfg.subcommand == "dump") return do_dump(cfg, input);
    return {kUsageError, "", "unknown subcommand '" + cfg.subcommand + "'\n"};
  } catch (const Error& e) {
    return {static_cast<int>(e.kind()), "", std::string(e.what()) + "\n"};
  }
}

}  // namespace qdilog::cli
