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

#include <cmath>
#include <random>

#include "cplace/errors.hpp"
#include "cplace/ttf.hpp"
#include "support/oracles.hpp"

namespace cplace {
namespace {

// ln(1/0.965) + 235 and 2 ln 2, evaluated at 40 digits with mpmath
// (tests/oracles/frozen_values.py).
constexpr double kCouplerTtf = 235.0356271776431511255982839774438462191;
constexpr double kTwoLn2 = 1.386294361119890618834464242916353136151;

ChipGraph uniform_line(int n, double t, double e) {
  TopologyOptions o;
  o.gate_time_ns = t;
  o.gate_error = e;
  return generate_topology(TopologyKind::line, n, o);
}

ChipGraph single_qubit() { return generate_topology(TopologyKind::line, 1); }

TEST(TtfEdgeWeight, Values) {
  EXPECT_DOUBLE_EQ(ttf_edge_weight(100.0, 0.0, 1.0), 100.0);
  EXPECT_NEAR(ttf_edge_weight(235.0, 0.035, 1.0), kCouplerTtf, 1e-12);
  EXPECT_NEAR(ttf_edge_weight(0.0, 0.5, 2.0), kTwoLn2, 1e-14);
}

TEST(TtfEdgeWeight, DomainErrorAtOne) {
  EXPECT_THROW(ttf_edge_weight(1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(ttf_edge_weight(1.0, 1.5, 1.0), DomainError);
}

TEST(TtfEdgeWeight, StrictlyIncreasing) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(0.0, 1000.0), e(0.0, 0.9), lam(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double tt = t(rng), ee = e(rng), ll = lam(rng);
    EXPECT_DOUBLE_EQ(ttf_edge_weight(tt, 0.0, ll), tt);
    EXPECT_LT(ttf_edge_weight(tt, ee, ll), ttf_edge_weight(tt + 1.0, ee, ll));
    EXPECT_LT(ttf_edge_weight(tt, ee, ll), ttf_edge_weight(tt, ee + 0.05, ll));
  }
}

TEST(TtfAllPairs, LineOfThree) {
  const auto m = ttf_all_pairs(uniform_line(3, 100.0, 0.0), {});
  EXPECT_DOUBLE_EQ(m(0, 2), 200.0);
  EXPECT_DOUBLE_EQ(m(1, 1), 0.0);
}

TEST(TtfAllPairs, TriangleDetourBeatsHeavyEdge) {
  const ChipGraph tri("tri",
                      {{0, {0, 0}, 1, 1, 0}, {1, {1, 0}, 1, 1, 0}, {2, {0, 1}, 1, 1, 0}},
                      {{0, 1, 50.0, 0.0}, {1, 2, 60.0, 0.0}, {0, 2, 200.0, 0.0}});
  const auto m = ttf_all_pairs(tri, {});
  const double oracle = testing::min_simple_path(tri, 0, 2, {50.0, 60.0, 200.0});
  EXPECT_DOUBLE_EQ(oracle, 110.0);
  EXPECT_DOUBLE_EQ(m(0, 2), oracle);
  EXPECT_DOUBLE_EQ(m(2, 0), oracle);
}

TEST(TtfAllPairs, MatchesFloydWarshallOnRandomChips) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto chip = testing::random_chip(rng, 1 + trial % 12);
    TtfConfig cfg;
    cfg.lambda = 0.5 + trial % 5;
    const auto m = ttf_all_pairs(chip, cfg);
    const auto ref = testing::floyd_warshall(chip, false, cfg.lambda);
    for (std::size_t i = 0; i < chip.num_qubits(); ++i) {
      for (std::size_t j = 0; j < chip.num_qubits(); ++j) {
        EXPECT_NEAR(m(i, j), ref[i][j], 1e-9 * (1.0 + ref[i][j]));
        EXPECT_EQ(m(i, j), m(j, i));
      }
    }
  }
}

TEST(TtfAllPairs, MonotoneInEdgeError) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto chip = testing::random_chip(rng, 2 + trial % 8);
    const auto before = ttf_all_pairs(chip, {});
    std::vector<EdgeProperties> edges(chip.edges().begin(), chip.edges().end());
    auto& e = edges[trial % edges.size()];
    e.gate_error = std::min(0.99, e.gate_error + 0.2);
    const ChipGraph worse(chip.name(), {chip.qubits().begin(), chip.qubits().end()}, edges);
    const auto after = ttf_all_pairs(worse, {});
    for (std::size_t i = 0; i < chip.num_qubits(); ++i) {
      for (std::size_t j = 0; j < chip.num_qubits(); ++j) EXPECT_GE(after(i, j), before(i, j));
    }
  }
}

TEST(AccessCost, Examples) {
  const auto one = single_qubit();
  EXPECT_DOUBLE_EQ(avg_access_cost(one, 0, ttf_all_pairs(one, {})), 0.0);
  const auto line = uniform_line(3, 100.0, 0.0);
  const auto m = ttf_all_pairs(line, {});
  EXPECT_NEAR(avg_access_cost(line, 1, m), 200.0 / 3.0, 1e-12);
  EXPECT_NEAR(avg_access_cost(line, 0, m), 100.0, 1e-12);
  EXPECT_NEAR(avg_egress_cost(line, 0, m), 100.0, 1e-12);
}

TEST(CouplerTtf, Examples) {
  EXPECT_NEAR(coupler_ttf({235.0, 0.035}, {}), kCouplerTtf, 1e-12);
  TtfConfig big;
  big.lambda = 123.0;
  EXPECT_DOUBLE_EQ(coupler_ttf({10.0, 0.0}, big), 10.0);
  // Zero latency is rejected by CouplerSpec::validate but the formula itself is defined.
  TtfConfig two;
  two.lambda = 2.0;
  EXPECT_NEAR(ttf_edge_weight(0.0, 0.5, two.lambda), kTwoLn2, 1e-14);
  EXPECT_THROW(coupler_ttf({10.0, 1.0}, {}), DomainError);
}

TEST(BuildCostMatrix, SingleQubitChips) {
  const auto m = build_cost_matrix(single_qubit(), single_qubit(), {}, {});
  EXPECT_DOUBLE_EQ(m.path({0, 0}), 1.0);
  EXPECT_NEAR(m.avg_ttf({0, 0}), kCouplerTtf, 1e-12);
}

TEST(BuildCostMatrix, LineComposition) {
  const auto line = uniform_line(3, 100.0, 0.0);
  const auto m = build_cost_matrix(line, line, {235.0, 0.035}, {});
  EXPECT_NEAR(m.path({1, 1}), 7.0 / 3.0, 1e-12);
  // 200/3 + coupler + 200/3, frozen from the mpmath oracle.
  EXPECT_NEAR(m.avg_ttf({1, 1}), 368.3689605109764844589316173107771795524, 1e-9);
  EXPECT_EQ(m.candidates().size(), 9U);
}

TEST(BuildCostMatrix, CandidateFilter) {
  const auto line = uniform_line(3, 100.0, 0.0);
  const auto m = build_cost_matrix(line, line, {}, {}, std::vector<Link>{{2, 0}});
  ASSERT_EQ(m.candidates().size(), 1U);
  EXPECT_TRUE(m.is_candidate({2, 0}));
  EXPECT_FALSE(m.is_candidate({0, 0}));
  EXPECT_THROW(m.path({0, 0}), ValidationError);
  EXPECT_THROW(build_cost_matrix(line, line, {}, {}, std::vector<Link>{}), ValidationError);
  EXPECT_THROW(build_cost_matrix(line, line, {}, {}, std::vector<Link>{{3, 0}}), ValidationError);
}

TEST(BuildCostMatrix, Normalization) {
  const auto line = uniform_line(3, 100.0, 0.0);
  TtfConfig cfg;
  cfg.normalization = 1000.0;
  const auto raw = build_cost_matrix(line, line, {}, {});
  const auto scaled = build_cost_matrix(line, line, {}, cfg);
  EXPECT_NEAR(scaled.avg_ttf({0, 2}), raw.avg_ttf({0, 2}) / 1000.0, 1e-15);
  EXPECT_DOUBLE_EQ(scaled.path({0, 2}), raw.path({0, 2}));
  cfg.normalization = 0.0;
  EXPECT_THROW(build_cost_matrix(line, line, {}, cfg), ValidationError);
}

TEST(BuildCostMatrix, InvariantsOnRandomChips) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = testing::random_chip(rng, 1 + trial % 7);
    const auto b = testing::random_chip(rng, 1 + (trial / 7) % 7);
    const CouplerSpec spec{100.0 + trial, 0.01 * (trial % 5)};
    const auto m = build_cost_matrix(a, b, spec, {});
    const double c = coupler_ttf(spec, {});
    const testing::ObjectiveOracle oracle(a, b, spec, 1.0, {}, 2);
    for (const auto& l : m.candidates()) {
      EXPECT_GE(m.avg_ttf(l), c);
      EXPECT_GE(m.path(l), 1.0);
      EXPECT_EQ(m.path(l) == 1.0, a.num_qubits() == 1 && b.num_qubits() == 1);
      EXPECT_NEAR(m.avg_ttf(l), oracle.avg_ttf(l.u, l.v), 1e-9 * m.avg_ttf(l));
      EXPECT_NEAR(m.path(l), oracle.path(l.u, l.v), 1e-12);
    }
  }
}

TEST(BuildCostMatrix, CsvExport) {
  const auto line = uniform_line(2, 100.0, 0.0);
  const auto csv = build_cost_matrix(line, line, {10.0, 0.0}, {}).to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "u,v,path_hops,avg_ttf_ns");
  EXPECT_NE(csv.find("\n0,0,2,110\n"), std::string::npos) << csv;
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

}  // namespace
}  // namespace cplace
