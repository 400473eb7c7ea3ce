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
#include "cplace/matrix.hpp"

namespace cplace {

/// Time-to-fidelity parameters.
struct TtfConfig {
  double lambda = 1.0;                  // ns per nat of infidelity
  std::optional<double> normalization;  // divisor applied to AvgTTF values

  void validate() const;
};

/// Latency plus a logarithmic infidelity penalty:
///   t + lambda * ln(1 / (1 - error)).
/// Throws DomainError when error >= 1 (the weight would be infinite).
double ttf_edge_weight(double gate_time_ns, double gate_error, double lambda);

/// Shortest TTF path between every pair of qubits on the chip.
TtfMatrix ttf_all_pairs(const ChipGraph& chip, const TtfConfig& cfg);

/// Mean TTF from every qubit of the chip to `node` (the self term is 0).
double avg_access_cost(const ChipGraph& chip, int node, const TtfMatrix& ttf);

/// Mean TTF from `node` to every qubit of the chip.
double avg_egress_cost(const ChipGraph& chip, int node, const TtfMatrix& ttf);

double coupler_ttf(const CouplerSpec& spec, const TtfConfig& cfg);

/// Candidate inter-chip coupler: qubit u on chip A, qubit v on chip B.
struct Link {
  int u = 0;
  int v = 0;
  auto operator<=>(const Link&) const = default;
};

/// Precomputed per-candidate hop and TTF costs for one chip pair.
class PairCostMatrix {
 public:
  PairCostMatrix() = default;
  PairCostMatrix(std::size_t size_a, std::size_t size_b, std::vector<Link> candidates,
                 std::vector<double> path, std::vector<double> avg_ttf);

  std::size_t size_a() const { return size_a_; }
  std::size_t size_b() const { return size_b_; }
  /// Admissible pairs, lexicographically sorted.
  std::span<const Link> candidates() const { return candidates_; }
  bool is_candidate(const Link& l) const;

  /// Mean hop distance of u over chip A, of v over chip B, plus the coupler hop.
  double path(const Link& l) const;
  double avg_ttf(const Link& l) const;

  /// CSV with header `u,v,path_hops,avg_ttf_ns`, one row per candidate.
  std::string to_csv() const;

 private:
  std::size_t index(const Link& l) const;

  std::size_t size_a_ = 0;
  std::size_t size_b_ = 0;
  std::vector<Link> candidates_;
  std::vector<char> mask_;
  std::vector<double> path_;
  std::vector<double> avg_ttf_;
};

/// Builds the per-pair cost matrix. `candidates` restricts the admissible
/// pairs (all of V_A x V_B when absent). Throws ValidationError when the
/// candidate set is empty or names a qubit outside its chip.
PairCostMatrix build_cost_matrix(const ChipGraph& chip_a, const ChipGraph& chip_b,
                                 const CouplerSpec& spec, const TtfConfig& cfg,
                                 std::optional<std::vector<Link>> candidates = std::nullopt);

}  // namespace cplace
