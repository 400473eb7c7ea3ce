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

#include "cplace/cost.hpp"
#include "cplace/errors.hpp"
#include "support/oracles.hpp"

namespace cplace {
namespace {

// Clustered and spread link sets: chip A has qubits 0..4, chip B is a 3-qubit line.
const std::vector<Link> kClustered{{1, 0}, {1, 1}, {1, 2}};
const std::vector<Link> kSpread{{0, 0}, {3, 1}, {2, 2}};

ChipGraph line(int n, double pitch = 100.0) {
  TopologyOptions o;
  o.pitch_um = pitch;
  return generate_topology(TopologyKind::line, n, o);
}

// d(0,3) = 2, d(0,4) = 3, d(3,4) = 3.
ChipGraph sparsity_chip_a() {
  std::vector<QubitProperties> q;
  for (int i = 0; i < 5; ++i) q.push_back({i, {100.0 * i, 0.0}, 1e5, 1e5, 0.01});
  return ChipGraph("A", q,
                   {{0, 1, 300, 0.01}, {1, 3, 300, 0.01}, {1, 2, 300, 0.01}, {2, 4, 300, 0.01}});
}

PairProblem problem(const ChipGraph& a, const ChipGraph& b, CostWeights w = {},
                    Constraints c = {}) {
  return PairProblem::build(a, b, {}, {}, w, c);
}

TEST(PathTerm, Examples) {
  const auto one = line(1);
  const auto p1 = problem(one, one);
  EXPECT_EQ(path_term({}, p1.matrix), 0.0);
  EXPECT_DOUBLE_EQ(path_term(std::vector<Link>{{0, 0}}, p1.matrix), 1.0);
  const auto p3 = problem(line(3), line(3));
  EXPECT_NEAR(path_term(std::vector<Link>{{1, 1}, {0, 0}}, p3.matrix), 16.0 / 3.0, 1e-12);
  EXPECT_THROW(path_term(std::vector<Link>{{5, 0}}, p3.matrix), ValidationError);
}

TEST(EffectivePathCost, Examples) {
  const auto p = problem(line(3), line(4));
  EXPECT_EQ(effective_path_cost({}, p.matrix), 0.0);
  EXPECT_DOUBLE_EQ(effective_path_cost(std::vector<Link>{{2, 3}}, p.matrix),
                   p.matrix.avg_ttf({2, 3}));
  const testing::ObjectiveOracle oracle(p.chip_a, p.chip_b, p.coupler, 1.0, {}, 2);
  const std::vector<Link> ls{{0, 0}, {1, 3}, {2, 1}};
  double expect = 0.0;
  for (const auto& l : ls) expect += oracle.avg_ttf(l.u, l.v);
  EXPECT_NEAR(effective_path_cost(ls, p.matrix), expect, 1e-9);
}

TEST(CongestionApprox, WorkedExamples) {
  EXPECT_NEAR(congestion_approx(kClustered), 9.0, 1e-9);
  EXPECT_NEAR(congestion_approx(kSpread), 3.0, 1e-9);
  EXPECT_EQ(congestion_approx({}), 0.0);
}

TEST(CongestionExact, Examples) {
  const auto a = line(2, 1.0);
  EXPECT_DOUBLE_EQ(congestion_exact(std::vector<Link>{{0, 0}}, a, 5.0).value, 2.0);
  EXPECT_DOUBLE_EQ(congestion_exact(std::vector<Link>{{0, 0}, {1, 1}}, a, 1.0).value, 6.0);
  EXPECT_DOUBLE_EQ(congestion_exact(std::vector<Link>{{0, 0}, {1, 1}}, a, 0.0).value, 4.0);
}

TEST(CongestionExact, CoincidentEndpointsReported) {
  const auto a = line(4);
  const auto r = congestion_exact(kClustered, a, 1.0);
  // Every link shares chip-A endpoint 1: loads 3 + 1 each, no cross-talk term.
  EXPECT_DOUBLE_EQ(r.value, 12.0);
  EXPECT_EQ(r.coincident.size(), 3U);
}

TEST(OverloadPenalty, WorkedExamples) {
  EXPECT_NEAR(overload_penalty(kClustered, 2), 3.0, 1e-9);
  EXPECT_NEAR(overload_penalty(kSpread, 2), 0.0, 1e-9);
  EXPECT_EQ(overload_penalty(std::vector<Link>{{0, 0}}, 1), 0.0);
  EXPECT_EQ(overload_penalty(std::vector<Link>{{0, 0}, {0, 1}}, 1), 2.0);
}

TEST(SparsityPenalty, WorkedExamples) {
  const auto h3 = hop_distances(line(3));
  EXPECT_NEAR(sparsity_penalty(std::vector<Link>{{0, 0}, {1, 1}, {2, 2}}, h3, h3), 13.0 / 15.0,
              1e-9);
  const auto ha = hop_distances(sparsity_chip_a());
  EXPECT_EQ(ha(0, 3), 2);
  EXPECT_EQ(ha(0, 4), 3);
  EXPECT_EQ(ha(3, 4), 3);
  EXPECT_NEAR(sparsity_penalty(std::vector<Link>{{0, 0}, {3, 1}, {4, 2}}, ha, h3), 37.0 / 60.0,
              1e-9);
  EXPECT_EQ(sparsity_penalty(std::vector<Link>{{0, 0}}, h3, h3), 0.0);
}

TEST(TotalCost, Examples) {
  const auto p = problem(line(4), line(3));
  const auto empty = total_cost({}, p);
  EXPECT_EQ(empty.total, 0.0);
  EXPECT_EQ(empty.path + empty.effective + empty.congestion + empty.overload + empty.sparsity, 0.0);

  const auto only_path = problem(line(4), line(3), {1, 0, 0, 0, 0, 1});
  const auto b = total_cost(kSpread, only_path);
  EXPECT_DOUBLE_EQ(b.total, path_term(kSpread, only_path.matrix));

  const auto only_cong = problem(line(4), line(3), {0, 0, 1, 0, 0, 1});
  EXPECT_NEAR(total_cost(kClustered, only_cong).total, 9.0, 1e-9);
}

TEST(TotalCost, BreakdownSumsTerms) {
  const auto p = problem(sparsity_chip_a(), line(3), {0.3, 2.0, 1.5, 4.0, 7.0, 1.0});
  const auto b = total_cost(kClustered, p);
  const double expect = 0.3 * b.path + 2.0 * b.effective + 1.5 * b.congestion + 4.0 * b.overload +
                        7.0 * b.sparsity;
  EXPECT_NEAR(b.total, expect, 1e-12 * std::abs(expect));
  EXPECT_FALSE(b.feasibility.feasible());
  EXPECT_THROW(total_cost(std::vector<Link>{{9, 0}}, p), ValidationError);
}

TEST(CheckConstraints, DegreeViolation) {
  const auto a = line(4);
  const auto b = line(3);
  const auto r = check_constraints(kClustered, {2, 0.0, 64}, a, b);
  ASSERT_EQ(r.violations.size(), 1U);
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::degree);
  EXPECT_EQ(r.violations[0].links.size(), 3U);
  EXPECT_TRUE(check_constraints(kSpread, {2, 0.0, 64}, a, b).feasible());
}

TEST(CheckConstraints, BudgetViolation) {
  const auto r = check_constraints(kSpread, {2, 0.0, 2}, line(4), line(3));
  ASSERT_EQ(r.violations.size(), 1U);
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::budget);
}

TEST(CheckConstraints, SpacingRule) {
  const auto a = line(4, 100.0);
  const auto b = line(3, 100.0);
  // Zero spacing disables the rule, even for shared endpoints.
  EXPECT_TRUE(check_constraints(std::vector<Link>{{0, 0}, {0, 1}}, {3, 0.0, 64}, a, b).feasible());
  // min(dist_A, dist_B) = min(100, 100) = 100, not > 150.
  const auto r = check_constraints(std::vector<Link>{{0, 0}, {1, 1}}, {3, 150.0, 64}, a, b);
  ASSERT_EQ(r.violations.size(), 1U);
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::spacing);
  EXPECT_TRUE(check_constraints(std::vector<Link>{{0, 0}, {2, 2}}, {3, 150.0, 64}, a, b).feasible());
}

TEST(CheckConstraints, DuplicatesAndEndpoints) {
  const auto r = check_constraints(std::vector<Link>{{0, 0}, {0, 0}, {7, 0}}, {}, line(2), line(2));
  ASSERT_EQ(r.violations.size(), 2U);
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::endpoint);
  EXPECT_EQ(r.violations[1].kind, Violation::Kind::duplicate);
}

TEST(CostBreakdownJson, Schema) {
  const auto p = problem(line(4), line(3));
  const auto j = to_json(total_cost(kClustered, p));
  for (const char* key : {"path", "effective", "congestion", "overload", "sparsity", "total",
                          "congestion_exact", "feasible", "violations"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_FALSE(j["feasible"].get<bool>());
  EXPECT_EQ(j["violations"][0]["kind"], "degree");
}

}  // namespace
}  // namespace cplace
