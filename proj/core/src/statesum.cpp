#include "qdilog/statesum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "qdilog/rmatrix.hpp"

namespace qdilog {

std::string_view to_string(Engine e) noexcept {
  switch (e) {
    case Engine::Brute: return "brute";
    case Engine::Tensor: return "tensor";
  }
  return "?";
}

namespace {

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

struct Partial {
  complex value;
  double magnitude = 0.0;
};

}  // namespace

BruteResult brute_force(const ModularContext& ctx, const TangleDiagram& t,
                        const ChargeAssignment& a, const Limits& limits) {
  const int n = ctx.level();
  const auto un = static_cast<std::size_t>(n);
  const auto& edges = t.edges();

  // Free variables: every unpinned edge, loops included.
  std::vector<int> var_of(edges.size(), -1);
  int nfree = 0;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!edges[e].pinned) var_of[e] = nfree++;
  const double total = std::pow(static_cast<double>(n), nfree);
  if (total > limits.brute_cap) {
    throw Error(ErrorKind::TooLarge, std::to_string(n) + "^" + std::to_string(nfree) +
                                         " colorings exceed the brute-force cap of " +
                                         short_num(limits.brute_cap));
  }

  // Per-crossing weight tables indexed by the (i, j, k, l) legs.
  const auto labels = t.base().edge_labels();
  const std::size_t nv = t.crossing_count();
  std::vector<std::vector<complex>> table(nv);
  std::vector<std::array<int, 4>> leg_var(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& x = t.base().crossings()[v];
    const int s0 = x.r_start_slot(labels);
    int ch[4];
    for (int leg = 0; leg < 4; ++leg) {
      const int slot = (s0 + leg) & 3;
      leg_var[v][static_cast<std::size_t>(leg)] = var_of[static_cast<std::size_t>(t.edge_at(static_cast<int>(v), slot))];
      ch[leg] = a(static_cast<int>(v), slot);
    }
    auto& tab = table[v];
    tab.resize(un * un * un * un);
    std::size_t o = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) tab[o++] = r_symbol(ctx, {i, j, k, l, ch[0], ch[1], ch[2], ch[3]});
  }

  auto run = [&](int first_value) {
    // Sums all colorings with free variable 0 fixed to first_value (or the
    // single empty coloring when there are no free variables).
    Partial part;
    std::vector<int> j(static_cast<std::size_t>(nfree), 0);
    if (nfree > 0) j[0] = first_value;
    for (;;) {
      complex term = 1.0;
      for (std::size_t v = 0; v < nv && term != complex(0.0); ++v) {
        std::size_t off = 0;
        for (int leg = 0; leg < 4; ++leg) {
          const int var = leg_var[v][static_cast<std::size_t>(leg)];
          off = off * un + static_cast<std::size_t>(var < 0 ? 0 : j[static_cast<std::size_t>(var)]);
        }
        term *= table[v][off];
      }
      if (term != complex(0.0)) {
        std::int64_t sum = 0;
        for (int x : j) sum += x;
        term *= ctx.omega_pow(sum);
        part.value += term;
        part.magnitude += std::abs(term);
      }
      std::size_t p = j.size();
      while (p > 1 && ++j[p - 1] == n) j[--p] = 0;
      if (p <= 1) break;
    }
    return part;
  };

  const int outer = nfree > 0 ? n : 1;
  std::vector<Partial> parts(static_cast<std::size_t>(outer));
  unsigned workers = limits.threads ? limits.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(outer));
  if (workers <= 1 || total < 1e4) {
    for (int v = 0; v < outer; ++v) parts[static_cast<std::size_t>(v)] = run(v);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int v = static_cast<int>(w); v < outer; v += static_cast<int>(workers))
          parts[static_cast<std::size_t>(v)] = run(v);
      });
    }
    for (auto& th : pool) th.join();
  }

  BruteResult res;
  for (const auto& p : parts) {
    res.value += p.value;
    res.magnitude += p.magnitude;
  }
  res.terms = static_cast<std::int64_t>(std::llround(total));
  return res;
}

complex evaluate(const ModularContext& ctx, const TangleDiagram& t, const ChargeAssignment& a,
                 Engine engine, const Limits& limits) {
  if (engine == Engine::Brute) return brute_force(ctx, t, a, limits).value;
  const TensorNetwork net = build_network(ctx, t, a);
  return contract(net, plan_contraction(net, limits));
}

InvariantResult invariant(const ModularContext& ctx, const TangleDiagram& t,
                          const InvariantOptions& opts) {
  const ChargeAssignment a = solve_charges(t, ctx.level(), opts.charge_seed);
  InvariantResult r;
  r.level = ctx.level();
  r.root_exponent = ctx.root_exponent();
  r.charge_digest = a.digest();
  r.cut_label = t.cut_label();
  r.engine = opts.engine;
  if (opts.engine == Engine::Brute) {
    const BruteResult b = brute_force(ctx, t, a, opts.limits);
    r.value = b.value;
    r.magnitude = b.magnitude;
  } else {
    const TensorNetwork net = build_network(ctx, t, a);
    try {
      r.value = contract(net, plan_contraction(net, opts.limits));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankCapExceeded) throw;
      const BruteResult b = brute_force(ctx, t, a, opts.limits);  // TooLarge propagates
      r.value = b.value;
      r.magnitude = b.magnitude;
      r.engine = Engine::Brute;
    }
  }
  complex p = 1.0;
  for (int i = 0; i < ctx.level(); ++i) p *= r.value;
  r.invariant = p;
  return r;
}

InvariantResult invariant(const ModularContext& ctx, const LinkDiagram& d,
                          const InvariantOptions& opts) {
  const TangleDiagram t = opts.cut_label ? cut_tangle(d, *opts.cut_label) : cut_tangle(d);
  return invariant(ctx, t, opts);
}

}  // namespace qdilog
