// Copyright 2026 The cplace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cplace/routing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "cplace/errors.hpp"

namespace cplace {

using nlohmann::json;

void Circuit::validate() const {
  if (num_qubits < 0) throw ValidationError("circuit num_qubits must be >= 0");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    std::vector<bool> used(num_qubits, false);
    for (const auto& g : layers[l]) {
      const std::string where = "layer " + std::to_string(l) + " gate (" +
                                std::to_string(g.a) + "," + std::to_string(g.b) + ")";
      if (g.a < 0 || g.b < 0 || g.a >= num_qubits || g.b >= num_qubits) {
        throw ValidationError(where + ": qubit index out of range");
      }
      if (g.a == g.b) throw ValidationError(where + ": operands must differ");
      if (used[g.a] || used[g.b]) throw ValidationError(where + ": qubit reused within layer");
      used[g.a] = used[g.b] = true;
    }
  }
}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.size();
  return n;
}

Circuit random_circuit(int num_qubits, int depth, std::uint64_t seed) {
  if (num_qubits < 2) throw ValidationError("random_circuit needs num_qubits >= 2");
  if (depth < 1) throw ValidationError("random_circuit needs depth >= 1");
  std::mt19937_64 rng(seed);
  std::vector<int> perm(num_qubits);
  Circuit c{num_qubits, {}};
  for (int d = 0; d < depth; ++d) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Gate> layer;
    for (int i = 0; i + 1 < num_qubits; i += 2) {
      layer.push_back({std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1])});
    }
    c.layers.push_back(std::move(layer));
  }
  return c;
}

json to_json(const Circuit& c) {
  json layers = json::array();
  for (const auto& layer : c.layers) {
    json jl = json::array();
    for (const auto& g : layer) jl.push_back({g.a, g.b});
    layers.push_back(std::move(jl));
  }
  return {{"num_qubits", c.num_qubits}, {"layers", layers}};
}

Circuit circuit_from_json(const json& j) {
  try {
    Circuit c;
    c.num_qubits = j.at("num_qubits").get<int>();
    for (const auto& jl : j.at("layers")) {
      std::vector<Gate> layer;
      for (const auto& g : jl) layer.push_back({g.at(0).get<int>(), g.at(1).get<int>()});
      c.layers.push_back(std::move(layer));
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("circuit document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

SystemGraph::SystemGraph(std::vector<SystemNode> nodes, std::vector<SystemEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::size_t n = nodes_.size();
  adjacency_.assign(n, {});
  incident_.assign(n, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    adjacency_.at(e.a).push_back(e.b);
    adjacency_.at(e.b).push_back(e.a);
    incident_[e.a].emplace_back(e.b, i);
    incident_[e.b].emplace_back(e.a, i);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  hops_ = HopMatrix(n, -1);
  std::vector<int> frontier, next;
  for (std::size_t src = 0; src < n; ++src) {
    hops_(src, src) = 0;
    frontier.assign(1, static_cast<int>(src));
    for (int d = 1; !frontier.empty(); ++d) {
      next.clear();
      for (int q : frontier) {
        for (int nb : adjacency_[q]) {
          if (hops_(src, nb) < 0) {
            hops_(src, nb) = d;
            next.push_back(nb);
          }
        }
      }
      frontier.swap(next);
    }
  }
  connected_ = true;
  for (std::size_t j = 0; j < n && connected_; ++j) connected_ = hops_(0, j) >= 0;
}

std::optional<std::size_t> SystemGraph::edge_index(int a, int b) const {
  if (a < 0 || static_cast<std::size_t>(a) >= incident_.size()) return std::nullopt;
  for (const auto& [nb, idx] : incident_[a]) {
    if (nb == b) return idx;
  }
  return std::nullopt;
}

std::size_t SystemGraph::count_edges(EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [kind](const auto& e) { return e.kind == kind; }));
}

SystemGraph merge_system(std::span<const ChipGraph> chips, std::span<const LinkSet> link_sets,
                         std::span<const CouplerSpec> couplers) {
  if (chips.empty()) throw ValidationError("merge_system needs at least one chip");
  if (link_sets.size() + 1 != chips.size() && !(chips.size() == 1 && link_sets.empty())) {
    throw ValidationError("merge_system needs one link set per adjacent chip pair");
  }
  if (couplers.size() != link_sets.size()) {
    throw ValidationError("merge_system needs one coupler spec per adjacent chip pair");
  }
  std::vector<SystemNode> nodes;
  std::vector<SystemEdge> edges;
  std::vector<int> offset;
  for (std::size_t c = 0; c < chips.size(); ++c) {
    offset.push_back(static_cast<int>(nodes.size()));
    for (const auto& q : chips[c].qubits()) nodes.push_back({static_cast<int>(c), q.id});
    for (const auto& e : chips[c].edges()) {
      edges.push_back({offset[c] + e.a, offset[c] + e.b, EdgeKind::on_chip, e.gate_time_ns,
                       e.gate_error});
    }
  }
  for (std::size_t p = 0; p < link_sets.size(); ++p) {
    couplers[p].validate();
    const auto& a = chips[p];
    const auto& b = chips[p + 1];
    for (const auto& l : link_sets[p].pairs) {
      if (l.u < 0 || static_cast<std::size_t>(l.u) >= a.num_qubits() || l.v < 0 ||
          static_cast<std::size_t>(l.v) >= b.num_qubits()) {
        throw ValidationError("dangling coupler endpoint (" + std::to_string(l.u) + "," +
                              std::to_string(l.v) + ") between chips " + std::to_string(p) +
                              " and " + std::to_string(p + 1));
      }
      edges.push_back({offset[p] + l.u, offset[p + 1] + l.v, EdgeKind::inter_chip,
                       couplers[p].latency_ns, couplers[p].error});
    }
  }
  return SystemGraph(std::move(nodes), std::move(edges));
}

// ---------------------------------------------------------------------------

RoutingResult route_circuit(const Circuit& circuit, const SystemGraph& system,
                            std::optional<std::vector<int>> layout) {
  circuit.validate();
  const int n_phys = static_cast<int>(system.num_nodes());
  if (circuit.num_qubits > n_phys) {
    throw ValidationError("circuit needs " + std::to_string(circuit.num_qubits) +
                          " qubits but the system has " + std::to_string(n_phys));
  }
  if (!system.connected()) throw DisconnectedError("system graph is not connected");

  std::vector<int> phys_of;
  if (layout) {
    phys_of = std::move(*layout);
    if (static_cast<int>(phys_of.size()) != circuit.num_qubits) {
      throw ValidationError("layout must map every logical qubit");
    }
  } else {
    phys_of.resize(circuit.num_qubits);
    std::iota(phys_of.begin(), phys_of.end(), 0);
  }
  std::vector<int> log_of(n_phys, -1);
  for (int l = 0; l < circuit.num_qubits; ++l) {
    const int p = phys_of[l];
    if (p < 0 || p >= n_phys) throw ValidationError("layout maps outside the system");
    if (log_of[p] >= 0) throw ValidationError("layout is not injective");
    log_of[p] = l;
  }

  RoutingResult out;
  out.initial_layout = phys_of;
  const auto& hops = system.hops();
  const auto edges = system.edges();
  std::vector<int> level(n_phys, 0);
  auto& m = out.metrics;

  const auto emit = [&](RoutedOp::Kind kind, int a, int b) {
    const std::size_t e = *system.edge_index(a, b);
    out.ops.push_back({kind, a, b, e});
    const int d = std::max(level[a], level[b]) + 1;
    level[a] = level[b] = d;
    m.routed_depth = std::max(m.routed_depth, d);
    const bool inter = edges[e].kind == EdgeKind::inter_chip;
    if (inter) ++m.inter_chip_ops;
    if (kind == RoutedOp::Kind::swap) {
      ++(inter ? m.inter_chip_swaps : m.on_chip_swaps);
    } else {
      ++m.executed_gates;
    }
  };

  for (const auto& layer : circuit.layers) {
    for (const auto& g : layer) {
      int pa = phys_of[g.a];
      const int pb = phys_of[g.b];
      while (hops(pa, pb) > 1) {
        const int want = hops(pa, pb) - 1;
        int step = -1;
        for (int nb : system.neighbors(pa)) {  // ascending labels
          if (hops(nb, pb) == want) {
            step = nb;
            break;
          }
        }
        emit(RoutedOp::Kind::swap, pa, step);
        const int moved = log_of[step];
        log_of[step] = g.a;
        log_of[pa] = moved;
        phys_of[g.a] = step;
        if (moved >= 0) phys_of[moved] = pa;
        pa = step;
      }
      emit(RoutedOp::Kind::gate, pa, pb);
    }
  }
  m.est_fidelity = estimate_fidelity(out.ops, system);
  out.final_layout = std::move(phys_of);
  return out;
}

double estimate_fidelity(std::span<const RoutedOp> ops, const SystemGraph& system) {
  const auto edges = system.edges();
  double f = 1.0;
  for (const auto& op : ops) {
    const double keep = 1.0 - edges[op.edge].error;
    f *= op.kind == RoutedOp::Kind::swap ? keep * keep * keep : keep;
  }
  return f;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto l, auto r) { return v[l] < v[r]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

std::vector<Circuit> CircuitSuite::generate() const {
  std::vector<Circuit> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(random_circuit(num_qubits, depth, splitmix64(seed + static_cast<std::uint64_t>(i))));
  }
  return out;
}

std::optional<double> spearman_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

ComparisonReport compare_placements(std::span<const PairProblem> chain,
                                    std::span<const ChainPlacement> placements,
                                    std::span<const Circuit> suite) {
  if (chain.empty()) throw ValidationError("compare_placements needs at least 2 chips");
  std::vector<ChipGraph> chips{chain.front().chip_a};
  std::vector<CouplerSpec> couplers;
  for (const auto& p : chain) {
    chips.push_back(p.chip_b);
    couplers.push_back(p.coupler);
  }

  ComparisonReport report;
  for (const auto& placement : placements) {
    PlacementMetrics row;
    row.name = placement.label;
    row.cost = chain_cost(chain, placement.links);
    const auto system = merge_system(chips, placement.links, couplers);
    if (!system.connected()) {
      throw DisconnectedError("placement '" + placement.label + "' leaves the system disconnected");
    }
    for (const auto& c : suite) row.per_circuit.push_back(route_circuit(c, system).metrics);
    if (!row.per_circuit.empty()) {
      const double n = static_cast<double>(row.per_circuit.size());
      double sum = 0.0, fid = 0.0;
      for (const auto& m : row.per_circuit) {
        sum += m.overhead();
        fid += m.est_fidelity;
      }
      row.mean_overhead = sum / n;
      row.mean_fidelity = fid / n;
      double var = 0.0;
      for (const auto& m : row.per_circuit) {
        var += (m.overhead() - row.mean_overhead) * (m.overhead() - row.mean_overhead);
      }
      row.std_overhead = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    }
    report.rows.push_back(std::move(row));
  }
  if (!suite.empty()) {
    std::vector<double> cost, overhead;
    for (const auto& r : report.rows) {
      cost.push_back(r.cost);
      overhead.push_back(r.mean_overhead);
    }
    report.spearman = spearman_correlation(cost, overhead);
  }
  return report;
}

std::string ComparisonReport::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "placement,cost,mean_overhead,std_overhead,mean_fidelity\n";
  for (const auto& r : rows) {
    if (r.per_circuit.empty()) continue;
    os << r.name << ',' << r.cost << ',' << r.mean_overhead << ',' << r.std_overhead << ','
       << r.mean_fidelity << '\n';
  }
  return os.str();
}

json ComparisonReport::to_json() const {
  json jrows = json::array();
  for (const auto& r : rows) {
    json circuits = json::array();
    for (const auto& m : r.per_circuit) {
      circuits.push_back({{"on_chip_swaps", m.on_chip_swaps},
                          {"inter_chip_swaps", m.inter_chip_swaps},
                          {"inter_chip_ops", m.inter_chip_ops},
                          {"executed_gates", m.executed_gates},
                          {"routed_depth", m.routed_depth},
                          {"est_fidelity", m.est_fidelity}});
    }
    jrows.push_back({{"placement", r.name},
                     {"cost", r.cost},
                     {"mean_overhead", r.mean_overhead},
                     {"std_overhead", r.std_overhead},
                     {"mean_fidelity", r.mean_fidelity},
                     {"circuits", circuits}});
  }
  return {{"placements", jrows}, {"spearman", spearman ? json(*spearman) : json(nullptr)}};
}

}  // namespace cplace
