#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "qdilog/rmatrix.hpp"
#include "qdilog/statesum.hpp"

namespace qdilog {

namespace {

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::size_t ipow(std::size_t n, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= n;
  return r;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Legs that survive pin slicing and self-tracing.
std::vector<int> open_bonds(const std::vector<int>& legs, const std::vector<int>& pinned) {
  std::vector<int> out;
  for (int b : legs) {
    if (contains(pinned, b)) continue;
    if (std::count(legs.begin(), legs.end(), b) > 1) continue;
    out.push_back(b);
  }
  return out;
}

// Slices pinned legs at 0 and traces legs that appear twice.
Factor prepare(const Factor& f, const std::vector<int>& pinned, int n) {
  const std::size_t rank = f.bonds.size();
  const auto un = static_cast<std::size_t>(n);
  Factor out;
  out.bonds = open_bonds(f.bonds, pinned);
  std::vector<int> traced;
  for (int b : f.bonds)
    if (!contains(pinned, b) && !contains(out.bonds, b) && !contains(traced, b)) traced.push_back(b);

  std::vector<std::size_t> stride(rank, 1);
  for (std::size_t i = rank; i-- > 1;) stride[i - 1] = stride[i] * un;

  out.data.assign(ipow(un, out.bonds.size()), complex(0.0));
  std::vector<int> oidx(out.bonds.size(), 0);
  std::vector<int> tidx(traced.size(), 0);
  for (std::size_t o = 0; o < out.data.size(); ++o) {
    std::fill(tidx.begin(), tidx.end(), 0);
    complex sum = 0.0;
    for (;;) {
      std::size_t off = 0;
      for (std::size_t leg = 0; leg < rank; ++leg) {
        const int b = f.bonds[leg];
        int x = 0;
        if (auto it = std::find(out.bonds.begin(), out.bonds.end(), b); it != out.bonds.end()) {
          x = oidx[static_cast<std::size_t>(it - out.bonds.begin())];
        } else if (auto jt = std::find(traced.begin(), traced.end(), b); jt != traced.end()) {
          x = tidx[static_cast<std::size_t>(jt - traced.begin())];
        }
        off += static_cast<std::size_t>(x) * stride[leg];
      }
      sum += f.data[off];
      std::size_t p = traced.size();
      while (p > 0 && ++tidx[p - 1] == n) tidx[--p] = 0;
      if (p == 0) break;
    }
    out.data[o] = sum;
    std::size_t p = oidx.size();
    while (p > 0 && ++oidx[p - 1] == n) oidx[--p] = 0;
  }
  return out;
}

// Reorders the legs of f to `target` (a permutation of f.bonds).
std::vector<complex> permute(const Factor& f, const std::vector<int>& target, int n) {
  const std::size_t rank = f.bonds.size();
  if (target == f.bonds) return f.data;
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::size_t> src_stride(rank, 1);
  for (std::size_t i = rank; i-- > 1;) src_stride[i - 1] = src_stride[i] * un;
  std::vector<std::size_t> stride(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    const auto pos = static_cast<std::size_t>(std::find(f.bonds.begin(), f.bonds.end(), target[i]) - f.bonds.begin());
    stride[i] = src_stride[pos];
  }
  std::vector<complex> out(f.data.size());
  std::vector<std::size_t> idx(rank, 0);
  std::size_t off = 0;
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o] = f.data[off];
    std::size_t p = rank;
    while (p > 0) {
      --p;
      off += stride[p];
      if (++idx[p] < un) break;
      off -= stride[p] * un;
      idx[p] = 0;
    }
  }
  return out;
}

Factor merge(const Factor& a, const Factor& b, int n) {
  std::vector<int> shared, aonly, bonly;
  for (int x : a.bonds) (contains(b.bonds, x) ? shared : aonly).push_back(x);
  for (int x : b.bonds)
    if (!contains(a.bonds, x)) bonly.push_back(x);
  std::vector<int> ta = aonly;
  ta.insert(ta.end(), shared.begin(), shared.end());
  std::vector<int> tb = shared;
  tb.insert(tb.end(), bonly.begin(), bonly.end());
  std::vector<complex> da = permute(a, ta, n);
  std::vector<complex> db = permute(b, tb, n);
  const auto un = static_cast<std::size_t>(n);
  const auto rows = static_cast<Eigen::Index>(ipow(un, aonly.size()));
  const auto inner = static_cast<Eigen::Index>(ipow(un, shared.size()));
  const auto cols = static_cast<Eigen::Index>(ipow(un, bonly.size()));
  using RowMat = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> ma(da.data(), rows, inner);
  Eigen::Map<const RowMat> mb(db.data(), inner, cols);
  Factor out;
  out.bonds = aonly;
  out.bonds.insert(out.bonds.end(), bonly.begin(), bonly.end());
  out.data.resize(static_cast<std::size_t>(rows * cols));
  Eigen::Map<RowMat> mr(out.data.data(), rows, cols);
  mr.noalias() = ma * mb;
  return out;
}

}  // namespace

TensorNetwork build_network(const ModularContext& ctx, const TangleDiagram& t,
                            const ChargeAssignment& a) {
  const int n = ctx.level();
  const auto un = static_cast<std::size_t>(n);
  TensorNetwork net;
  net.level = n;
  const auto& edges = t.edges();
  net.bond_count = static_cast<int>(edges.size());
  const auto labels = t.base().edge_labels();

  std::vector<EdgeEnd> canonical(edges.size(), EdgeEnd{});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].pinned) {
      net.pinned.push_back(static_cast<int>(e));
      continue;
    }
    if (edges[e].ends.empty()) {
      complex s = 0.0;
      for (int j = 0; j < n; ++j) s += ctx.omega_pow(j);
      net.scalar *= s;
      continue;
    }
    canonical[e] = std::min(edges[e].ends[0], edges[e].ends[1]);
  }

  for (const auto& x : t.base().crossings()) {
    const int v = x.id;
    const int s0 = x.r_start_slot(labels);
    Factor f;
    std::array<int, 4> charge{};
    std::array<bool, 4> weighted{};
    for (int leg = 0; leg < 4; ++leg) {
      const int slot = (s0 + leg) & 3;
      const int e = t.edge_at(v, slot);
      f.bonds.push_back(e);
      charge[static_cast<std::size_t>(leg)] = a(v, slot);
      weighted[static_cast<std::size_t>(leg)] =
          !edges[static_cast<std::size_t>(e)].pinned && canonical[static_cast<std::size_t>(e)] == EdgeEnd{v, slot};
    }
    f.data.resize(un * un * un * un);
    std::size_t o = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l, ++o) {
            const int idx[4] = {i, j, k, l};
            std::int64_t w = 0;
            for (int leg = 0; leg < 4; ++leg)
              if (weighted[static_cast<std::size_t>(leg)]) w += idx[leg];
            f.data[o] = r_symbol(ctx, {i, j, k, l, charge[0], charge[1], charge[2], charge[3]}) *
                        ctx.omega_pow(w);
          }
    net.nodes.push_back(std::move(f));
  }
  return net;
}

ContractionPlan plan_contraction(const TensorNetwork& net, const Limits& limits) {
  ContractionPlan plan;
  const double n = net.level;
  std::vector<std::vector<int>> factors;
  for (const auto& f : net.nodes) factors.push_back(open_bonds(f.bonds, net.pinned));
  std::vector<char> alive(factors.size(), 1);
  for (const auto& f : factors) {
    plan.max_rank = std::max(plan.max_rank, static_cast<int>(f.size()));
  }

  for (;;) {
    int best_a = -1, best_b = -1, best_rank = 0, best_bond = 0;
    double best_cost = 0.0;
    for (std::size_t a = 0; a < factors.size(); ++a) {
      if (!alive[a]) continue;
      for (std::size_t b = a + 1; b < factors.size(); ++b) {
        if (!alive[b]) continue;
        int shared = 0;
        int low = std::numeric_limits<int>::max();
        for (int x : factors[a])
          if (contains(factors[b], x)) ++shared, low = std::min(low, x);
        if (shared == 0) continue;
        const int total = static_cast<int>(factors[a].size() + factors[b].size());
        const int rank = total - 2 * shared;
        const double cost = std::pow(n, total - shared);
        const bool better = best_a < 0 || rank < best_rank ||
                            (rank == best_rank && (cost < best_cost ||
                                                   (cost == best_cost && low < best_bond)));
        if (better) {
          best_a = static_cast<int>(a), best_b = static_cast<int>(b);
          best_rank = rank, best_cost = cost, best_bond = low;
        }
      }
    }
    if (best_a < 0) break;
    if (std::pow(n, best_rank) > limits.tensor_cap) {
      throw Error(ErrorKind::RankCapExceeded,
                  "greedy contraction needs an intermediate of rank " + std::to_string(best_rank) +
                      " (" + short_num(std::pow(n, best_rank)) + " entries, cap " +
                      short_num(limits.tensor_cap) + ")");
    }
    ContractionStep step{best_a, best_b, {}, best_rank};
    std::vector<int> merged;
    for (int x : factors[static_cast<std::size_t>(best_a)]) {
      if (contains(factors[static_cast<std::size_t>(best_b)], x)) step.summed.push_back(x);
      else merged.push_back(x);
    }
    for (int x : factors[static_cast<std::size_t>(best_b)])
      if (!contains(factors[static_cast<std::size_t>(best_a)], x)) merged.push_back(x);
    std::vector<int> sorted = step.summed;
    std::sort(sorted.begin(), sorted.end());
    plan.order.insert(plan.order.end(), sorted.begin(), sorted.end());
    plan.cost += best_cost;
    plan.max_rank = std::max(plan.max_rank, best_rank);
    alive[static_cast<std::size_t>(best_a)] = alive[static_cast<std::size_t>(best_b)] = 0;
    factors.push_back(std::move(merged));
    alive.push_back(1);
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

complex contract(const TensorNetwork& net, const ContractionPlan& plan) {
  std::vector<Factor> factors;
  for (const auto& f : net.nodes) factors.push_back(prepare(f, net.pinned, net.level));
  std::vector<char> alive(factors.size(), 1);
  for (const auto& s : plan.steps) {
    const auto a = static_cast<std::size_t>(s.lhs);
    const auto b = static_cast<std::size_t>(s.rhs);
    if (a >= factors.size() || b >= factors.size() || !alive[a] || !alive[b]) {
      throw Error(ErrorKind::InvalidArgument, "contraction plan does not match the network");
    }
    Factor m = merge(factors[a], factors[b], net.level);
    alive[a] = alive[b] = 0;
    factors[a] = Factor{};
    factors[b] = Factor{};
    factors.push_back(std::move(m));
    alive.push_back(1);
  }
  complex value = net.scalar;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!alive[i]) continue;
    if (!factors[i].bonds.empty()) {
      throw Error(ErrorKind::InvalidArgument, "contraction plan leaves open bonds");
    }
    value *= factors[i].data.at(0);
  }
  return value;
}

Factor contract_factors(std::vector<Factor> factors, int level, const std::vector<int>& open,
                        double cap) {
  TensorNetwork shape;
  shape.level = level;
  for (const auto& f : factors) shape.nodes.push_back(Factor{f.bonds, {}});
  Limits limits;
  limits.tensor_cap = cap;
  const ContractionPlan plan = plan_contraction(shape, limits);
  std::vector<char> alive(factors.size(), 1);
  for (const auto& s : plan.steps) {
    const auto a = static_cast<std::size_t>(s.lhs);
    const auto b = static_cast<std::size_t>(s.rhs);
    Factor m = merge(factors[a], factors[b], level);
    alive[a] = alive[b] = 0;
    factors[a] = Factor{};
    factors[b] = Factor{};
    factors.push_back(std::move(m));
    alive.push_back(1);
  }
  // Remaining factors share no bonds: take their outer product.
  Factor out{{}, {complex(1.0)}};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!alive[i]) continue;
    if (std::pow(static_cast<double>(level), static_cast<double>(out.bonds.size() + factors[i].bonds.size())) > cap) {
      throw Error(ErrorKind::RankCapExceeded, "open legs exceed the entry cap");
    }
    out = merge(out, factors[i], level);
  }
  std::vector<int> want = open;
  std::vector<int> have = out.bonds;
  std::sort(want.begin(), want.end());
  std::sort(have.begin(), have.end());
  if (want != have) throw Error(ErrorKind::InvalidArgument, "open legs do not match the request");
  return Factor{open, permute(out, open, level)};
}

}  // namespace qdilog
