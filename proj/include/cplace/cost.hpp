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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cplace/device.hpp"
#include "cplace/ttf.hpp"
#include "json.hpp"

namespace cplace {

/// Weights of the five-term objective plus the cross-talk strength used by
/// the exact congestion measure.
struct CostWeights {
  double alpha = 1.0;    // average path length
  double beta = 10.0;    // effective (TTF) path cost
  double gamma = 1.0;    // congestion
  double delta = 1.0;    // qubit overload
  double epsilon = 1.0;  // sparsity
  double eta = 1.0;      // cross-talk term of exact congestion (report only)

  void validate() const;
};

struct Constraints {
  int d_max = 2;               // couplers per qubit
  double delta_spacing = 0.0;  // um; 0 disables the spacing rule
  int n_max = 64;              // link budget

  void validate() const;
};

/// Selected couplers between chip A and chip B, in selection order.
struct LinkSet {
  std::string chip_a;
  std::string chip_b;
  std::vector<Link> pairs;

  std::size_t size() const { return pairs.size(); }
  bool operator==(const LinkSet&) const = default;
};

struct Violation {
  enum class Kind { degree, spacing, budget, duplicate, endpoint };
  Kind kind;
  std::string message;
  std::vector<Link> links;
};

std::string_view to_string(Violation::Kind kind);

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
};

struct CongestionExact {
  double value = 0.0;
  /// Distinct links whose chip-A endpoints coincide; left out of the
  /// inverse-square sum.
  std::vector<std::pair<Link, Link>> coincident;
};

struct CostBreakdown {
  double path = 0.0;
  double effective = 0.0;
  double congestion = 0.0;  // approximate form, the one that is optimised
  double overload = 0.0;
  double sparsity = 0.0;
  double total = 0.0;
  double congestion_exact = 0.0;
  FeasibilityReport feasibility;
};

/// Everything needed to score link sets between one pair of chips.
struct PairProblem {
  ChipGraph chip_a;
  ChipGraph chip_b;
  CouplerSpec coupler;
  TtfConfig ttf;
  CostWeights weights;
  Constraints constraints;
  PairCostMatrix matrix;
  HopMatrix hops_a;
  HopMatrix hops_b;

  static PairProblem build(ChipGraph chip_a, ChipGraph chip_b, const CouplerSpec& coupler,
                           const TtfConfig& ttf, const CostWeights& weights,
                           const Constraints& constraints,
                           std::optional<std::vector<Link>> candidates = std::nullopt);

  LinkSet make_links(std::vector<Link> pairs) const {
    return {chip_a.name(), chip_b.name(), std::move(pairs)};
  }
};

double path_term(std::span<const Link> links, const PairCostMatrix& matrix);
double effective_path_cost(std::span<const Link> links, const PairCostMatrix& matrix);
/// Sum over links of max(load(u), load(v)).
double congestion_approx(std::span<const Link> links);
CongestionExact congestion_exact(std::span<const Link> links, const ChipGraph& chip_a,
                                 double eta);
/// Number of links whose addition pushes an endpoint over d_max, where the
/// endpoint degree counts the other selected links.
double overload_penalty(std::span<const Link> links, int d_max);
/// Sum over unordered link pairs of 1 / (1 + d_A(u,u') + d_B(v,v')).
double sparsity_penalty(std::span<const Link> links, const HopMatrix& hops_a,
                        const HopMatrix& hops_b);

/// Weighted sum of the five terms only; the hot path of the optimisers.
double objective(std::span<const Link> links, const PairProblem& problem);

/// Full breakdown including the exact congestion and the feasibility report.
/// Throws ValidationError for links outside the candidate set.
CostBreakdown total_cost(std::span<const Link> links, const PairProblem& problem);

FeasibilityReport check_constraints(std::span<const Link> links, const Constraints& c,
                                    const ChipGraph& chip_a, const ChipGraph& chip_b);

nlohmann::json to_json(const CostBreakdown& b);
nlohmann::json to_json(const CostWeights& w);
nlohmann::json to_json(const Constraints& c);
nlohmann::json links_to_json(std::span<const Link> links);

}  // namespace cplace
