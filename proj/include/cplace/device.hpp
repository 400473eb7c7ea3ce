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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cplace/matrix.hpp"

namespace cplace {

/// Planar position in micrometres.
struct Coord {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Coord&) const = default;
};

double euclidean_um(const Coord& a, const Coord& b);

struct QubitProperties {
  int id = 0;
  Coord pos;
  double t1_ns = 0.0;
  double t2_ns = 0.0;
  double readout_error = 0.0;
  bool operator==(const QubitProperties&) const = default;
};

/// Native two-qubit gate on an undirected on-chip edge.
struct EdgeProperties {
  int a = 0;
  int b = 0;
  double gate_time_ns = 0.0;
  double gate_error = 0.0;
  bool operator==(const EdgeProperties&) const = default;
};

/// Latency and error of one inter-chip coupler. A single spec is shared by all
/// couplers between a given chip pair.
struct CouplerSpec {
  double latency_ns = 235.0;
  double error = 0.035;

  void validate() const;
  bool operator==(const CouplerSpec&) const = default;
};

/// One chip: qubits with calibration data plus native coupling edges.
///
/// Qubit ids are dense (0..n-1) and stored sorted by id, so an id doubles as
/// an index. Construction validates every invariant and throws
/// ValidationError naming the offending field; a ChipGraph that exists is
/// connected, loop-free and free of duplicate edges.
class ChipGraph {
 public:
  ChipGraph(std::string name, std::vector<QubitProperties> qubits,
            std::vector<EdgeProperties> edges);

  const std::string& name() const { return name_; }
  std::size_t num_qubits() const { return qubits_.size(); }
  std::span<const QubitProperties> qubits() const { return qubits_; }
  std::span<const EdgeProperties> edges() const { return edges_; }
  const QubitProperties& qubit(int id) const { return qubits_.at(id); }

  /// Neighbouring qubit ids, ascending.
  std::span<const int> neighbors(int id) const { return adjacency_.at(id); }
  /// Index into edges() for the edge joining a and b, if any.
  std::optional<std::size_t> edge_index(int a, int b) const;

  bool operator==(const ChipGraph& other) const {
    return name_ == other.name_ && qubits_ == other.qubits_ &&
           edges_ == other.edges_;
  }

 private:
  std::string name_;
  std::vector<QubitProperties> qubits_;
  std::vector<EdgeProperties> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<std::pair<int, std::size_t>>> incident_;
};

enum class TopologyKind { line, ring, grid, star, complete, heavy_hex };

std::string_view to_string(TopologyKind kind);
TopologyKind parse_topology_kind(std::string_view name);

/// Uniform defaults applied by generate_topology.
struct TopologyOptions {
  std::string name;  // empty: "<kind>-<n>"
  std::optional<int> rows;
  std::optional<int> cols;
  double pitch_um = 100.0;
  double t1_ns = 100000.0;
  double t2_ns = 80000.0;
  double readout_error = 0.02;
  double gate_time_ns = 300.0;
  double gate_error = 0.01;
};

/// Builds one of the canonical connectivity families.
///
/// grid uses rows x cols (from opts, or the most square factorisation of n).
/// heavy_hex tiles rows of degree-2 qubits joined by bridge qubits every four
/// columns, alternating column offsets 0 and 2 between successive gaps; with
/// rows/cols unset the tiling with exactly n qubits whose row length is
/// closest to twice the row count is used (27 -> 2 x 12, 156 -> 8 x 16).
/// Throws ValidationError when n does not fit the family.
ChipGraph generate_topology(TopologyKind kind, int n,
                            const TopologyOptions& opts = {});

/// Qubit count of the heavy-hex tiling with the given shape.
int heavy_hex_size(int rows, int row_length);

struct ParseOptions {
  bool strict = true;
  std::function<void(const std::string&)> on_warning;
};

/// Parses a device JSON document. Qubits without x/y receive layout-derived
/// coordinates (breadth-first layers from qubit 0).
ChipGraph parse_device(std::string_view text, const ParseOptions& opts = {});
std::string serialize_device(const ChipGraph& chip);

/// All-pairs unweighted shortest-path lengths.
HopMatrix hop_distances(const ChipGraph& chip);

}  // namespace cplace
