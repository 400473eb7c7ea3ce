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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cplace/cost.hpp"
#include "cplace/optimizer.hpp"
#include "json.hpp"

namespace cplace {

struct Gate {
  int a = 0;
  int b = 0;
  bool operator==(const Gate&) const = default;
};

/// Layers of disjoint two-qubit gates on logical qubits.
struct Circuit {
  int num_qubits = 0;
  std::vector<std::vector<Gate>> layers;

  void validate() const;
  std::size_t gate_count() const;
  bool operator==(const Circuit&) const = default;
};

/// `depth` layers, each a uniformly random maximal matching of the qubits.
Circuit random_circuit(int num_qubits, int depth, std::uint64_t seed);

nlohmann::json to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

enum class EdgeKind { on_chip, inter_chip };

struct SystemNode {
  int chip = 0;
  int qubit = 0;
};

struct SystemEdge {
  int a = 0;
  int b = 0;
  EdgeKind kind = EdgeKind::on_chip;
  double gate_time_ns = 0.0;
  double error = 0.0;
};

/// Disjoint union of the chips plus coupler edges. Node labels are global
/// indices assigned chip by chip in declaration order.
class SystemGraph {
 public:
  SystemGraph(std::vector<SystemNode> nodes, std::vector<SystemEdge> edges);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::span<const SystemNode> nodes() const { return nodes_; }
  std::span<const SystemEdge> edges() const { return edges_; }
  std::span<const int> neighbors(int node) const { return adjacency_.at(node); }
  std::optional<std::size_t> edge_index(int a, int b) const;
  std::size_t count_edges(EdgeKind kind) const;

  bool connected() const { return connected_; }
  /// Hop distances; -1 between components.
  const HopMatrix& hops() const { return hops_; }

 private:
  std::vector<SystemNode> nodes_;
  std::vector<SystemEdge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<std::pair<int, std::size_t>>> incident_;
  HopMatrix hops_;
  bool connected_ = false;
};

/// link_sets[i] joins chips i and i+1 using couplers[i]. Throws
/// ValidationError on a dangling endpoint.
SystemGraph merge_system(std::span<const ChipGraph> chips, std::span<const LinkSet> link_sets,
                         std::span<const CouplerSpec> couplers);

struct RoutedOp {
  enum class Kind { gate, swap };
  Kind kind = Kind::gate;
  int a = 0;  // physical nodes
  int b = 0;
  std::size_t edge = 0;
};

struct RoutingMetrics {
  int on_chip_swaps = 0;
  int inter_chip_swaps = 0;
  /// Executed operations (gates and SWAPs) on coupler edges.
  int inter_chip_ops = 0;
  int executed_gates = 0;
  int routed_depth = 0;
  double est_fidelity = 1.0;

  int overhead() const { return on_chip_swaps + inter_chip_ops; }
};

struct RoutingResult {
  RoutingMetrics metrics;
  std::vector<RoutedOp> ops;
  std::vector<int> initial_layout;  // logical -> physical
  std::vector<int> final_layout;
};

/// Routes the circuit gate by gate: the first operand walks along a shortest
/// hop path (smallest next label on ties) until adjacent to the second, one
/// SWAP per step, then the gate runs on the remaining edge. Default layout
/// maps logical i to node i. Throws DisconnectedError on a disconnected system.
RoutingResult route_circuit(const Circuit& circuit, const SystemGraph& system,
                            std::optional<std::vector<int>> layout = std::nullopt);

/// Product of (1 - error) over executed gates, with each SWAP counted as
/// three gates on its edge.
double estimate_fidelity(std::span<const RoutedOp> ops, const SystemGraph& system);

struct CircuitSuite {
  int count = 30;
  int num_qubits = 40;
  int depth = 10;
  std::uint64_t seed = 0;

  std::vector<Circuit> generate() const;
};

struct PlacementMetrics {
  std::string name;
  double cost = 0.0;
  std::vector<RoutingMetrics> per_circuit;
  double mean_overhead = 0.0;
  double std_overhead = 0.0;
  double mean_fidelity = 0.0;
};

struct ComparisonReport {
  std::vector<PlacementMetrics> rows;
  /// Spearman rank correlation between cost and mean overhead; empty when
  /// undefined (fewer than two placements, or constant ranks).
  std::optional<double> spearman;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Average-rank Spearman correlation; empty when either side is constant.
std::optional<double> spearman_correlation(std::span<const double> x, std::span<const double> y);

/// Routes every circuit of the suite on each placement of the chain.
ComparisonReport compare_placements(std::span<const PairProblem> chain,
                                    std::span<const ChainPlacement> placements,
                                    std::span<const Circuit> suite);

}  // namespace cplace
