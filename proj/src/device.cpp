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

#include "cplace/device.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

#include "cplace/errors.hpp"
#include "json.hpp"

namespace cplace {

using nlohmann::json;

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p < 1.0; }
bool is_positive(double x) { return std::isfinite(x) && x > 0.0; }

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

double euclidean_um(const Coord& a, const Coord& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void CouplerSpec::validate() const {
  if (!is_positive(latency_ns)) {
    throw ValidationError("coupler latency_ns must be > 0, got " +
                          fmt_double(latency_ns));
  }
  if (!is_probability(error)) {
    throw ValidationError("coupler error out of [0,1): " + fmt_double(error));
  }
}

ChipGraph::ChipGraph(std::string name, std::vector<QubitProperties> qubits,
                     std::vector<EdgeProperties> edges)
    : name_(std::move(name)), qubits_(std::move(qubits)), edges_(std::move(edges)) {
  if (qubits_.empty()) throw ValidationError("qubits: chip has no qubits");
  std::sort(qubits_.begin(), qubits_.end(),
            [](const auto& l, const auto& r) { return l.id < r.id; });
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    const auto& q = qubits_[i];
    const std::string where = "qubit " + std::to_string(q.id) + ": ";
    if (i > 0 && qubits_[i - 1].id == q.id) {
      throw ValidationError(where + "id duplicated");
    }
    if (q.id != static_cast<int>(i)) {
      throw ValidationError(where + "id must be in 0.." +
                            std::to_string(qubits_.size() - 1) +
                            " (ids are dense)");
    }
    if (!is_positive(q.t1_ns)) throw ValidationError(where + "t1_ns must be > 0");
    if (!is_positive(q.t2_ns)) throw ValidationError(where + "t2_ns must be > 0");
    if (!is_probability(q.readout_error)) {
      throw ValidationError(where + "readout_error out of [0,1)");
    }
    if (!std::isfinite(q.pos.x) || !std::isfinite(q.pos.y)) {
      throw ValidationError(where + "x/y must be finite");
    }
  }

  const int n = static_cast<int>(qubits_.size());
  adjacency_.assign(n, {});
  incident_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const std::string where =
        "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) + ": ";
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) {
      throw ValidationError(where + "endpoint is not a qubit of the chip");
    }
    if (e.a == e.b) throw ValidationError(where + "self-loop");
    if (!seen.emplace(std::min(e.a, e.b), std::max(e.a, e.b)).second) {
      throw ValidationError(where + "duplicate edge");
    }
    if (!is_positive(e.gate_time_ns)) {
      throw ValidationError(where + "gate_time_ns must be > 0");
    }
    if (!is_probability(e.gate_error)) {
      throw ValidationError(where + "gate_error out of [0,1)");
    }
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
    incident_[e.a].emplace_back(e.b, i);
    incident_[e.b].emplace_back(e.a, i);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  std::vector<bool> reached(n, false);
  std::vector<int> stack{0};
  reached[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    for (int nb : adjacency_[q]) {
      if (!reached[nb]) {
        reached[nb] = true;
        ++count;
        stack.push_back(nb);
      }
    }
  }
  if (count != n) {
    const auto it = std::find(reached.begin(), reached.end(), false);
    throw ValidationError("edges: graph is disconnected (qubit " +
                          std::to_string(it - reached.begin()) +
                          " unreachable from qubit 0)");
  }
}

std::optional<std::size_t> ChipGraph::edge_index(int a, int b) const {
  if (a < 0 || a >= static_cast<int>(incident_.size())) return std::nullopt;
  for (const auto& [nb, idx] : incident_[a]) {
    if (nb == b) return idx;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Topology generators

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::line: return "line";
    case TopologyKind::ring: return "ring";
    case TopologyKind::grid: return "grid";
    case TopologyKind::star: return "star";
    case TopologyKind::complete: return "complete";
    case TopologyKind::heavy_hex: return "heavy_hex";
  }
  return "?";
}

TopologyKind parse_topology_kind(std::string_view name) {
  for (auto k : {TopologyKind::line, TopologyKind::ring, TopologyKind::grid,
                 TopologyKind::star, TopologyKind::complete,
                 TopologyKind::heavy_hex}) {
    if (to_string(k) == name) return k;
  }
  if (name == "heavy-hex" || name == "heavyhex") return TopologyKind::heavy_hex;
  throw ValidationError("unknown topology kind '" + std::string(name) + "'");
}

namespace {

int bridge_count(int row_length, int offset) {
  return row_length > offset ? (row_length - offset + 3) / 4 : 0;
}

struct Builder {
  const TopologyOptions& opts;
  std::vector<QubitProperties> qubits;
  std::vector<EdgeProperties> edges;

  int add_qubit(double x, double y) {
    const int id = static_cast<int>(qubits.size());
    qubits.push_back({id, {x, y}, opts.t1_ns, opts.t2_ns, opts.readout_error});
    return id;
  }
  void add_edge(int a, int b) {
    edges.push_back({a, b, opts.gate_time_ns, opts.gate_error});
  }
  void on_circle(int count, double radius, double cx = 0.0, double cy = 0.0) {
    for (int i = 0; i < count; ++i) {
      const double t = 2.0 * std::numbers::pi * i / count;
      add_qubit(cx + radius * std::cos(t), cy + radius * std::sin(t));
    }
  }
};

double circle_radius(int count, double pitch) {
  if (count <= 1) return 0.0;
  return pitch / (2.0 * std::sin(std::numbers::pi / count));
}

std::pair<int, int> heavy_hex_shape(int n, const TopologyOptions& opts) {
  if (opts.rows && opts.cols) return {*opts.rows, *opts.cols};
  std::optional<std::pair<int, int>> best;
  int best_score = std::numeric_limits<int>::max();
  for (int rows = 2; rows * 5 <= n; ++rows) {
    if (opts.rows && rows != *opts.rows) continue;
    for (int len = 5; heavy_hex_size(rows, len) <= n; ++len) {
      if (opts.cols && len != *opts.cols) continue;
      if (heavy_hex_size(rows, len) != n) continue;
      const int score = std::abs(len - 2 * rows);
      if (score < best_score) {
        best_score = score;
        best = {rows, len};
      }
    }
  }
  if (!best) {
    throw ValidationError("heavy_hex: no tiling with exactly " +
                          std::to_string(n) +
                          " qubits (valid sizes include 27, 63, 156)");
  }
  return *best;
}

}  // namespace

int heavy_hex_size(int rows, int row_length) {
  int n = rows * row_length;
  for (int g = 0; g + 1 < rows; ++g) n += bridge_count(row_length, g % 2 == 0 ? 0 : 2);
  return n;
}

ChipGraph generate_topology(TopologyKind kind, int n, const TopologyOptions& opts) {
  if (n < 1) throw ValidationError("qubit count must be >= 1");
  const double pitch = opts.pitch_um;
  if (!is_positive(pitch)) throw ValidationError("pitch_um must be > 0");
  Builder b{opts, {}, {}};

  switch (kind) {
    case TopologyKind::line:
      for (int i = 0; i < n; ++i) b.add_qubit(i * pitch, 0.0);
      for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
      break;
    case TopologyKind::ring:
      if (n < 3) throw ValidationError("ring requires n >= 3");
      b.on_circle(n, circle_radius(n, pitch));
      for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
      break;
    case TopologyKind::grid: {
      int rows = 0;
      int cols = 0;
      if (opts.rows && opts.cols) {
        rows = *opts.rows;
        cols = *opts.cols;
      } else if (opts.rows) {
        rows = *opts.rows;
        cols = rows > 0 ? n / rows : 0;
      } else if (opts.cols) {
        cols = *opts.cols;
        rows = cols > 0 ? n / cols : 0;
      } else {
        rows = static_cast<int>(std::sqrt(static_cast<double>(n)));
        while (n % rows != 0) --rows;
        cols = n / rows;
      }
      if (rows < 1 || cols < 1 || rows * cols != n) {
        throw ValidationError("grid requires rows x cols = n (" +
                              std::to_string(rows) + " x " +
                              std::to_string(cols) + " != " + std::to_string(n) + ")");
      }
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) b.add_qubit(c * pitch, r * pitch);
      }
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          const int id = r * cols + c;
          if (c + 1 < cols) b.add_edge(id, id + 1);
          if (r + 1 < rows) b.add_edge(id, id + cols);
        }
      }
      break;
    }
    case TopologyKind::star:
      b.add_qubit(0.0, 0.0);
      if (n > 1) {
        const double radius = std::max(pitch, circle_radius(n - 1, pitch));
        b.on_circle(n - 1, radius);
      }
      for (int i = 1; i < n; ++i) b.add_edge(0, i);
      break;
    case TopologyKind::complete:
      b.on_circle(n, circle_radius(n, pitch));
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
      }
      break;
    case TopologyKind::heavy_hex: {
      const auto [rows, len] = heavy_hex_shape(n, opts);
      if (rows < 2 || len < 5 || heavy_hex_size(rows, len) != n) {
        throw ValidationError("heavy_hex: " + std::to_string(rows) + " x " +
                              std::to_string(len) + " tiling does not have " +
                              std::to_string(n) + " qubits");
      }
      std::vector<int> prev_row;
      for (int r = 0; r < rows; ++r) {
        std::vector<int> row;
        for (int c = 0; c < len; ++c) row.push_back(b.add_qubit(c * pitch, 2 * r * pitch));
        for (int c = 0; c + 1 < len; ++c) b.add_edge(row[c], row[c + 1]);
        if (r > 0) {
          // Bridges below row r-1.
          const int offset = (r - 1) % 2 == 0 ? 0 : 2;
          for (int c = offset; c < len; c += 4) {
            const int bridge = b.add_qubit(c * pitch, (2 * r - 1) * pitch);
            b.add_edge(prev_row[c], bridge);
            b.add_edge(bridge, row[c]);
          }
        }
        prev_row = std::move(row);
      }
      // Renumber so that bridges sit between the rows they join, in reading
      // order (row 0, bridges 0, row 1, bridges 1, ...).
      std::vector<int> order(b.qubits.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
        const auto& ql = b.qubits[l].pos;
        const auto& qr = b.qubits[r].pos;
        return ql.y != qr.y ? ql.y < qr.y : ql.x < qr.x;
      });
      std::vector<int> relabel(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i]] = static_cast<int>(i);
      std::vector<QubitProperties> sorted(b.qubits.size());
      for (auto q : b.qubits) {
        q.id = relabel[q.id];
        sorted[q.id] = q;
      }
      b.qubits = std::move(sorted);
      for (auto& e : b.edges) {
        e.a = relabel[e.a];
        e.b = relabel[e.b];
        if (e.a > e.b) std::swap(e.a, e.b);
      }
      std::sort(b.edges.begin(), b.edges.end(), [](const auto& l, const auto& r) {
        return std::pair(l.a, l.b) < std::pair(r.a, r.b);
      });
      break;
    }
  }

  std::string name = opts.name;
  if (name.empty()) name = std::string(to_string(kind)) + "-" + std::to_string(n);
  return ChipGraph(std::move(name), std::move(b.qubits), std::move(b.edges));
}

// ---------------------------------------------------------------------------
// Device documents

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

double number_field(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

int int_field(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where, const ParseOptions& opts) {
  for (const auto& [key, _] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return key == k; });
    if (known) continue;
    const std::string msg = where + ": unknown key '" + key + "'";
    if (opts.strict) throw ParseError(msg);
    if (opts.on_warning) opts.on_warning(msg);
  }
}

// Breadth-first layer layout from qubit 0: x = position within layer,
// y = layer depth. Unreachable qubits go one layer past the deepest.
std::vector<Coord> layered_layout(int n, const std::vector<EdgeProperties>& edges,
                                  double pitch) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    if (e.a >= 0 && e.a < n && e.b >= 0 && e.b < n && e.a != e.b) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> depth(n, -1);
  std::queue<int> frontier;
  depth[0] = 0;
  frontier.push(0);
  int max_depth = 0;
  while (!frontier.empty()) {
    const int q = frontier.front();
    frontier.pop();
    for (int nb : adj[q]) {
      if (depth[nb] < 0) {
        depth[nb] = depth[q] + 1;
        max_depth = std::max(max_depth, depth[nb]);
        frontier.push(nb);
      }
    }
  }
  std::vector<int> slot(max_depth + 2, 0);
  std::vector<Coord> pos(n);
  for (int q = 0; q < n; ++q) {
    const int d = depth[q] < 0 ? max_depth + 1 : depth[q];
    pos[q] = {slot[d]++ * pitch, d * pitch};
  }
  return pos;
}

}  // namespace

ChipGraph parse_device(std::string_view text, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("device document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("device document: expected a JSON object");
  check_keys(doc, {"name", "qubits", "edges"}, "device", opts);

  const auto& name = require(doc, "name", "device");
  if (!name.is_string()) throw ParseError("device.name: expected a string");
  const auto& jqubits = require(doc, "qubits", "device");
  const auto& jedges = require(doc, "edges", "device");
  if (!jqubits.is_array()) throw ParseError("device.qubits: expected an array");
  if (!jedges.is_array()) throw ParseError("device.edges: expected an array");

  std::vector<EdgeProperties> edges;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const auto& je = jedges[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!je.is_object()) throw ParseError(where + ": expected an object");
    check_keys(je, {"a", "b", "gate_time_ns", "gate_error"}, where, opts);
    edges.push_back({int_field(je, "a", where), int_field(je, "b", where),
                     number_field(je, "gate_time_ns", where),
                     number_field(je, "gate_error", where)});
  }

  std::vector<QubitProperties> qubits;
  std::vector<bool> has_pos;
  for (std::size_t i = 0; i < jqubits.size(); ++i) {
    const auto& jq = jqubits[i];
    const std::string where = "qubits[" + std::to_string(i) + "]";
    if (!jq.is_object()) throw ParseError(where + ": expected an object");
    check_keys(jq, {"id", "x", "y", "t1_ns", "t2_ns", "readout_error"}, where, opts);
    QubitProperties q;
    q.id = int_field(jq, "id", where);
    const bool hx = jq.contains("x");
    const bool hy = jq.contains("y");
    if (hx != hy) throw ParseError(where + ": x and y must be given together");
    if (hx) q.pos = {number_field(jq, "x", where), number_field(jq, "y", where)};
    q.t1_ns = number_field(jq, "t1_ns", where);
    q.t2_ns = number_field(jq, "t2_ns", where);
    q.readout_error = number_field(jq, "readout_error", where);
    qubits.push_back(q);
    has_pos.push_back(hx);
  }

  if (std::find(has_pos.begin(), has_pos.end(), false) != has_pos.end()) {
    const int n = static_cast<int>(qubits.size());
    const bool dense = std::all_of(qubits.begin(), qubits.end(),
                                   [n](const auto& q) { return q.id >= 0 && q.id < n; });
    if (dense) {
      const auto layout = layered_layout(n, edges, TopologyOptions{}.pitch_um);
      for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (!has_pos[i]) qubits[i].pos = layout[qubits[i].id];
      }
    }
  }

  return ChipGraph(name.get<std::string>(), std::move(qubits), std::move(edges));
}

std::string serialize_device(const ChipGraph& chip) {
  json doc;
  doc["name"] = chip.name();
  doc["qubits"] = json::array();
  for (const auto& q : chip.qubits()) {
    doc["qubits"].push_back({{"id", q.id},
                             {"x", q.pos.x},
                             {"y", q.pos.y},
                             {"t1_ns", q.t1_ns},
                             {"t2_ns", q.t2_ns},
                             {"readout_error", q.readout_error}});
  }
  doc["edges"] = json::array();
  for (const auto& e : chip.edges()) {
    doc["edges"].push_back({{"a", e.a},
                            {"b", e.b},
                            {"gate_time_ns", e.gate_time_ns},
                            {"gate_error", e.gate_error}});
  }
  return doc.dump(2) + "\n";
}

HopMatrix hop_distances(const ChipGraph& chip) {
  const std::size_t n = chip.num_qubits();
  HopMatrix dist(n, -1);
  std::vector<int> frontier;
  std::vector<int> next;
  for (std::size_t src = 0; src < n; ++src) {
    dist(src, src) = 0;
    frontier.assign(1, static_cast<int>(src));
    int d = 0;
    while (!frontier.empty()) {
      ++d;
      next.clear();
      for (int q : frontier) {
        for (int nb : chip.neighbors(q)) {
          if (dist(src, nb) < 0) {
            dist(src, nb) = d;
            next.push_back(nb);
          }
        }
      }
      frontier.swap(next);
    }
  }
  return dist;
}

}  // namespace cplace
