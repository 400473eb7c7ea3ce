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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cplace/routing.hpp"
#include "support/oracles.hpp"

namespace cplace {
namespace {

constexpr int kCases = 1000;

struct Instance {
  ChipGraph a, b;
  std::vector<Link> links;
};

std::vector<Link> random_links(std::mt19937_64& rng, std::size_t na, std::size_t nb, int count) {
  std::vector<Link> all;
  for (std::size_t u = 0; u < na; ++u) {
    for (std::size_t v = 0; v < nb; ++v) all.push_back({int(u), int(v)});
  }
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min<std::size_t>(all.size(), count));
  return all;
}

Instance random_instance(std::mt19937_64& rng, int max_qubits = 7) {
  std::uniform_int_distribution<int> size(1, max_qubits), count(0, 5);
  auto a = testing::random_chip(rng, size(rng), "A");
  auto b = testing::random_chip(rng, size(rng), "B");
  auto links = random_links(rng, a.num_qubits(), b.num_qubits(), count(rng));
  return {std::move(a), std::move(b), std::move(links)};
}

CostWeights random_weights(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.0, 5.0);
  return {w(rng), w(rng), w(rng), w(rng), w(rng), 1.0};
}

double tol(double x) { return 1e-9 * std::max(1.0, std::abs(x)); }

TEST(Properties, TotalIsWeightedSumOfTerms) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < kCases; ++i) {
    auto inst = random_instance(rng);
    const auto w = random_weights(rng);
    const auto p = PairProblem::build(inst.a, inst.b, {}, {}, w, {});
    const auto b = total_cost(inst.links, p);
    const double sum = w.alpha * b.path + w.beta * b.effective + w.gamma * b.congestion +
                       w.delta * b.overload + w.epsilon * b.sparsity;
    ASSERT_NEAR(b.total, sum, tol(sum));
    ASSERT_NEAR(objective(inst.links, p), b.total, tol(b.total));

    // Doubling one weight raises the total by exactly that term's contribution.
    auto w2 = w;
    w2.gamma *= 2.0;
    const auto p2 = PairProblem::build(inst.a, inst.b, {}, {}, w2, {});
    ASSERT_NEAR(total_cost(inst.links, p2).total - b.total, w.gamma * b.congestion, tol(b.total));
  }
}

TEST(Properties, AgreesWithIndependentObjective) {
  std::mt19937_64 rng(102);
  for (int i = 0; i < kCases; ++i) {
    auto inst = random_instance(rng);
    const auto p = PairProblem::build(inst.a, inst.b, {}, {}, {}, {});
    const testing::ObjectiveOracle oracle(inst.a, inst.b, p.coupler, 1.0, {}, 2);
    const double expect = oracle(inst.links);
    ASSERT_NEAR(total_cost(inst.links, p).total, expect, tol(expect));
  }
}

TEST(Properties, ArgminInvariantUnderUniformScaling) {
  std::mt19937_64 rng(103);
  for (int i = 0; i < kCases; ++i) {
    auto a = testing::random_chip(rng, 1 + i % 4, "A");
    auto b = testing::random_chip(rng, 1 + (i / 4) % 4, "B");
    const auto w = random_weights(rng);
    const double s = std::uniform_real_distribution<double>(0.1, 20.0)(rng);
    const CostWeights ws{s * w.alpha, s * w.beta, s * w.gamma, s * w.delta, s * w.epsilon, 1.0};
    const int k = 1 + i % 2;
    const auto p1 = PairProblem::build(a, b, {}, {}, w, {});
    const auto p2 = PairProblem::build(a, b, {}, {}, ws, {});
    const auto r1 = exhaustive_select(p1, k);
    const auto r2 = exhaustive_select(p2, k);
    ASSERT_NEAR(r2.breakdown.total, s * r1.breakdown.total, tol(r2.breakdown.total));
    // Tied optima may swap order under rounding, so compare the cost of the other argmin.
    ASSERT_NEAR(total_cost(r1.links.pairs, p2).total, r2.breakdown.total, tol(r2.breakdown.total));
  }
}

TEST(Properties, PathTermCarriesOneHopPerLink) {
  std::mt19937_64 rng(104);
  for (int i = 0; i < kCases; ++i) {
    auto inst = random_instance(rng);
    const auto p = PairProblem::build(inst.a, inst.b, {}, {}, {}, {});
    const auto ha = testing::floyd_warshall(inst.a, true);
    const auto hb = testing::floyd_warshall(inst.b, true);
    const auto mean = [](const std::vector<double>& row) {
      return std::accumulate(row.begin(), row.end(), 0.0) / row.size();
    };
    double spread = 0.0;
    for (const auto& l : inst.links) spread += mean(ha[l.u]) + mean(hb[l.v]);
    const double n = static_cast<double>(inst.links.size());
    ASSERT_NEAR(path_term(inst.links, p.matrix) - spread, n, tol(n + spread));
  }
}

TEST(Properties, InvariantUnderLinkPermutation) {
  std::mt19937_64 rng(105);
  for (int i = 0; i < kCases; ++i) {
    auto inst = random_instance(rng);
    const auto p = PairProblem::build(inst.a, inst.b, {}, {}, random_weights(rng), {});
    const double before = total_cost(inst.links, p).total;
    std::shuffle(inst.links.begin(), inst.links.end(), rng);
    ASSERT_NEAR(total_cost(inst.links, p).total, before, tol(before));
  }
}

TEST(Properties, DisjointEndpointsHaveUnitLoads) {
  std::mt19937_64 rng(106);
  for (int i = 0; i < kCases; ++i) {
    const int na = 1 + i % 8, nb = 1 + (i / 8) % 8;
    std::vector<int> us(na), vs(nb);
    std::iota(us.begin(), us.end(), 0);
    std::iota(vs.begin(), vs.end(), 0);
    std::shuffle(us.begin(), us.end(), rng);
    std::shuffle(vs.begin(), vs.end(), rng);
    std::vector<Link> links;
    const int m = std::uniform_int_distribution<int>(0, std::min(na, nb))(rng);
    for (int j = 0; j < m; ++j) links.push_back({us[j], vs[j]});
    ASSERT_DOUBLE_EQ(congestion_approx(links), static_cast<double>(m));
    ASSERT_EQ(overload_penalty(links, 1), 0.0);
    ASSERT_TRUE(testing::oracle_feasible(links, 1, 64));
  }
}

TEST(Properties, FeasibilityMatchesOracle) {
  std::mt19937_64 rng(107);
  for (int i = 0; i < kCases; ++i) {
    auto inst = random_instance(rng, 4);
    const Constraints c{1 + i % 3, 0.0, 1 + i % 5};
    const bool lib = check_constraints(inst.links, c, inst.a, inst.b).feasible();
    ASSERT_EQ(lib, testing::oracle_feasible(inst.links, c.d_max, c.n_max));
  }
}

TEST(Properties, OptimizersReturnFeasibleSets) {
  std::mt19937_64 rng(108);
  for (int i = 0; i < kCases; ++i) {
    auto a = testing::random_chip(rng, 1 + i % 6, "A");
    auto b = testing::random_chip(rng, 1 + (i / 6) % 6, "B");
    const Constraints c{1 + i % 2, 0.0, 64};
    const auto p = PairProblem::build(a, b, {}, {}, {}, c);
    const int na = a.num_qubits(), nb = b.num_qubits();
    const int k = std::min({1 + i % 3, std::min(na, nb) * c.d_max, na * nb});
    const auto g = greedy_select(p, k);
    ASSERT_EQ(g.links.pairs.size(), static_cast<std::size_t>(k));
    ASSERT_TRUE(testing::oracle_feasible(g.links.pairs, c.d_max, c.n_max));
    AnnealSchedule s;
    s.seed = i;
    s.iterations = 40;
    const auto r = anneal_refine(p, g.links, s);
    ASSERT_TRUE(testing::oracle_feasible(r.links.pairs, c.d_max, c.n_max));
    ASSERT_LE(r.breakdown.total, g.breakdown.total + tol(g.breakdown.total));
  }
}

TEST(Properties, RoutingConservesGatesAndReplays) {
  std::mt19937_64 rng(109);
  for (int i = 0; i < kCases; ++i) {
    const auto a = testing::random_chip(rng, 2 + i % 6, "A");
    const auto b = testing::random_chip(rng, 2 + (i / 6) % 6, "B");
    const auto links = random_links(rng, a.num_qubits(), b.num_qubits(), 1 + i % 3);
    const std::vector<ChipGraph> chips{a, b};
    const std::vector<LinkSet> sets{{"A", "B", links}};
    const std::vector<CouplerSpec> couplers{CouplerSpec{}};
    const auto system = merge_system(chips, sets, couplers);
    const int nq = std::uniform_int_distribution<int>(2, static_cast<int>(system.num_nodes()))(rng);
    const auto circuit = random_circuit(nq, 1 + i % 4, i);
    const auto r = route_circuit(circuit, system);

    ASSERT_EQ(static_cast<std::size_t>(r.metrics.executed_gates), circuit.gate_count());
    int swaps = 0;
    int inter = 0;
    for (const auto& op : r.ops) {
      ASSERT_EQ(system.hops()(op.a, op.b), 1);
      swaps += op.kind == RoutedOp::Kind::swap;
      inter += system.edges()[op.edge].kind == EdgeKind::inter_chip;
    }
    ASSERT_EQ(swaps, r.metrics.on_chip_swaps + r.metrics.inter_chip_swaps);
    ASSERT_EQ(inter, r.metrics.inter_chip_ops);
    ASSERT_GT(r.metrics.est_fidelity, 0.0);
    ASSERT_LE(r.metrics.est_fidelity, 1.0);
    ASSERT_GE(r.metrics.routed_depth, static_cast<int>(circuit.layers.empty() ? 0 : 1));

    // Replaying the op stream from the initial layout reproduces the final one and
    // puts every gate's operands on an edge.
    std::vector<int> phys = r.initial_layout;
    std::vector<int> logical(system.num_nodes(), -1);
    for (int l = 0; l < nq; ++l) logical[phys[l]] = l;
    std::size_t gate = 0;
    std::vector<Gate> flat;
    for (const auto& layer : circuit.layers) flat.insert(flat.end(), layer.begin(), layer.end());
    for (const auto& op : r.ops) {
      if (op.kind == RoutedOp::Kind::swap) {
        std::swap(logical[op.a], logical[op.b]);
        if (logical[op.a] >= 0) phys[logical[op.a]] = op.a;
        if (logical[op.b] >= 0) phys[logical[op.b]] = op.b;
      } else {
        const auto& g = flat[gate++];
        const std::pair<int, int> at{std::min(phys[g.a], phys[g.b]), std::max(phys[g.a], phys[g.b])};
        ASSERT_EQ(at, std::make_pair(std::min(op.a, op.b), std::max(op.a, op.b)));
      }
    }
    ASSERT_EQ(phys, r.final_layout);
    ASSERT_EQ(route_circuit(circuit, system).ops.size(), r.ops.size());
  }
}

TEST(Properties, FidelityIsMonotoneInError) {
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> e(0.0, 0.2);
  for (int i = 0; i < kCases; ++i) {
    const double e1 = e(rng), e2 = e1 + e(rng) + 1e-6;
    TopologyOptions lo, hi;
    lo.gate_error = e1;
    hi.gate_error = e2;
    const int n = 3 + i % 4;
    const std::vector<ChipGraph> c1{generate_topology(TopologyKind::line, n, lo)};
    const std::vector<ChipGraph> c2{generate_topology(TopologyKind::line, n, hi)};
    const auto s1 = merge_system(c1, {}, {});
    const auto s2 = merge_system(c2, {}, {});
    const auto circuit = random_circuit(n, 1 + i % 3, i);
    const auto r1 = route_circuit(circuit, s1);
    const auto r2 = route_circuit(circuit, s2);
    ASSERT_EQ(r1.ops.size(), r2.ops.size());
    if (!r1.ops.empty()) {
      ASSERT_GT(r1.metrics.est_fidelity, r2.metrics.est_fidelity);
    }
  }
}

TEST(Properties, SeededRunsReplayExactly) {
  std::mt19937_64 rng(111);
  for (int i = 0; i < kCases; ++i) {
    auto a = testing::random_chip(rng, 2 + i % 4, "A");
    auto b = testing::random_chip(rng, 2 + (i / 4) % 4, "B");
    const auto p = PairProblem::build(a, b, {}, {}, {}, {});
    SolveOptions o;
    o.schedule.seed = rng();
    o.schedule.iterations = 30;
    ASSERT_EQ(to_json(solve(p, 2, o)).dump(), to_json(solve(p, 2, o)).dump());
  }
}

}  // namespace
}  // namespace cplace
