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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cplace/cost.hpp"
#include "json.hpp"

namespace cplace {

/// Simulated-annealing schedule. Unset fields resolve at run time:
/// initial_temperature to 0.1 x |start cost| and iterations to 300 x k.
struct AnnealSchedule {
  std::optional<double> initial_temperature;
  double cooling_factor = 0.97;
  std::optional<int> iterations;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Direction of the search. Maximisation is used to construct worst-case
/// reference placements.
enum class Sense { minimize, maximize };

enum class Method { greedy, anneal, exhaustive };

std::string_view method_name(Method m);

struct SolveOptions {
  Method method = Method::anneal;
  AnnealSchedule schedule;
  std::uint64_t enumeration_cap = 10'000'000;
  Sense sense = Sense::minimize;
};

struct SolveResult {
  LinkSet links;
  CostBreakdown breakdown;
  std::vector<std::pair<int, double>> trace;  // (iteration, accepted cost)
  std::string method;
  std::uint64_t seed = 0;
  Sense sense = Sense::minimize;
};

/// True when adding `candidate` to `links` keeps every hard constraint.
bool can_add(std::span<const Link> links, const Link& candidate, const PairProblem& problem);

/// Builds k links one at a time, each step adding the feasible candidate
/// that gives the best objective for the augmented set. Ties go to the
/// lexicographically smallest (u, v). Throws InfeasibleError when no feasible
/// candidate remains before k links are placed.
SolveResult greedy_select(const PairProblem& problem, int k, Sense sense = Sense::minimize);

/// Metropolis search over single-link swaps starting from a feasible set.
/// Returns the best set visited; deterministic for a given seed.
SolveResult anneal_refine(const PairProblem& problem, const LinkSet& start,
                          const AnnealSchedule& schedule, Sense sense = Sense::minimize);

/// Enumerates every feasible k-subset of the candidates. Throws
/// CapExceededError when C(|candidates|, k) exceeds `cap`.
SolveResult exhaustive_select(const PairProblem& problem, int k,
                              std::uint64_t cap = 10'000'000, Sense sense = Sense::minimize);

/// Dispatches on options.method (anneal means greedy followed by anneal).
SolveResult solve(const PairProblem& problem, int k, const SolveOptions& options);

/// Uniform sample over feasible k-link sets (rejection sampling).
LinkSet random_feasible_placement(const PairProblem& problem, int k, std::mt19937_64& rng);

/// Chips in a chain, with the coupler spec used between chips i and i+1.
struct ChipSystem {
  std::vector<ChipGraph> chips;
  std::vector<CouplerSpec> couplers;

  void validate() const;
};

std::vector<PairProblem> build_chain(const ChipSystem& system, const TtfConfig& ttf,
                                     const CostWeights& weights, const Constraints& constraints);

struct MultiChipResult {
  std::vector<SolveResult> pairs;
  double system_cost = 0.0;
};

/// Solves every adjacent pair independently; system cost is the sum.
MultiChipResult optimize_multichip(std::span<const PairProblem> chain,
                                   std::span<const int> budgets, const SolveOptions& options);

/// A link set per adjacent chip pair plus its summed objective.
struct ChainPlacement {
  std::string label;
  std::vector<LinkSet> links;
  double cost = 0.0;
};

/// Lowest-cost (optimised), median of `samples` uniform random feasible
/// placements, and highest-cost (optimised under maximisation), in that order.
std::array<ChainPlacement, 3> placement_spread(std::span<const PairProblem> chain,
                                               std::span<const int> budgets,
                                               const SolveOptions& options, int samples,
                                               std::uint64_t seed);

double chain_cost(std::span<const PairProblem> chain, std::span<const LinkSet> links);

nlohmann::json to_json(const SolveResult& r);
nlohmann::json to_json(const AnnealSchedule& s);

}  // namespace cplace
