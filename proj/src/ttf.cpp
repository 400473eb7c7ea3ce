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

#include "cplace/ttf.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

#include "cplace/errors.hpp"

namespace cplace {

void TtfConfig::validate() const {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw ValidationError("ttf.lambda must be > 0");
  }
  if (normalization && !(std::isfinite(*normalization) && *normalization > 0.0)) {
    throw ValidationError("ttf.normalization must be > 0 when set");
  }
}

double ttf_edge_weight(double gate_time_ns, double gate_error, double lambda) {
  if (!(gate_error < 1.0)) {
    throw DomainError("TTF weight is infinite for error >= 1");
  }
  if (gate_error < 0.0 || gate_time_ns < 0.0 || !(lambda > 0.0)) {
    throw DomainError("TTF weight requires time >= 0, error >= 0, lambda > 0");
  }
  // ln(1/(1-e)) == -log1p(-e), accurate for small e.
  return gate_time_ns - lambda * std::log1p(-gate_error);
}

TtfMatrix ttf_all_pairs(const ChipGraph& chip, const TtfConfig& cfg) {
  cfg.validate();
  const std::size_t n = chip.num_qubits();
  std::vector<double> weight;
  weight.reserve(chip.edges().size());
  for (const auto& e : chip.edges()) {
    weight.push_back(ttf_edge_weight(e.gate_time_ns, e.gate_error, cfg.lambda));
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  TtfMatrix out(n, inf);
  using Entry = std::pair<double, int>;
  for (std::size_t src = 0; src < n; ++src) {
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    out(src, src) = 0.0;
    heap.emplace(0.0, static_cast<int>(src));
    while (!heap.empty()) {
      const auto [d, q] = heap.top();
      heap.pop();
      if (d > out(src, q)) continue;
      for (int nb : chip.neighbors(q)) {
        const double nd = d + weight[*chip.edge_index(q, nb)];
        if (nd < out(src, nb)) {
          out(src, nb) = nd;
          heap.emplace(nd, nb);
        }
      }
    }
  }
  // Dijkstra from each end may differ in the last ulp; pin exact symmetry.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = std::min(out(i, j), out(j, i));
      out(i, j) = m;
      out(j, i) = m;
    }
  }
  return out;
}

double avg_access_cost(const ChipGraph& chip, int node, const TtfMatrix& ttf) {
  const std::size_t n = chip.num_qubits();
  double sum = 0.0;
  for (std::size_t a = 0; a < n; ++a) sum += ttf(a, node);
  return sum / static_cast<double>(n);
}

double avg_egress_cost(const ChipGraph& chip, int node, const TtfMatrix& ttf) {
  const std::size_t n = chip.num_qubits();
  double sum = 0.0;
  for (std::size_t b = 0; b < n; ++b) sum += ttf(node, b);
  return sum / static_cast<double>(n);
}

double coupler_ttf(const CouplerSpec& spec, const TtfConfig& cfg) {
  if (!(spec.error < 1.0)) throw DomainError("coupler TTF is infinite for error >= 1");
  return ttf_edge_weight(spec.latency_ns, spec.error, cfg.lambda);
}

PairCostMatrix::PairCostMatrix(std::size_t size_a, std::size_t size_b,
                               std::vector<Link> candidates, std::vector<double> path,
                               std::vector<double> avg_ttf)
    : size_a_(size_a),
      size_b_(size_b),
      candidates_(std::move(candidates)),
      mask_(size_a * size_b, 0),
      path_(std::move(path)),
      avg_ttf_(std::move(avg_ttf)) {
  std::sort(candidates_.begin(), candidates_.end());
  candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());
  for (const auto& l : candidates_) mask_[index(l)] = 1;
}

std::size_t PairCostMatrix::index(const Link& l) const {
  return static_cast<std::size_t>(l.u) * size_b_ + static_cast<std::size_t>(l.v);
}

bool PairCostMatrix::is_candidate(const Link& l) const {
  if (l.u < 0 || l.v < 0 || static_cast<std::size_t>(l.u) >= size_a_ ||
      static_cast<std::size_t>(l.v) >= size_b_) {
    return false;
  }
  return mask_[index(l)] != 0;
}

double PairCostMatrix::path(const Link& l) const {
  if (!is_candidate(l)) throw ValidationError("link outside candidate set");
  return path_[index(l)];
}

double PairCostMatrix::avg_ttf(const Link& l) const {
  if (!is_candidate(l)) throw ValidationError("link outside candidate set");
  return avg_ttf_[index(l)];
}

std::string PairCostMatrix::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "u,v,path_hops,avg_ttf_ns\n";
  for (const auto& l : candidates_) {
    os << l.u << ',' << l.v << ',' << path_[index(l)] << ',' << avg_ttf_[index(l)] << '\n';
  }
  return os.str();
}

PairCostMatrix build_cost_matrix(const ChipGraph& chip_a, const ChipGraph& chip_b,
                                 const CouplerSpec& spec, const TtfConfig& cfg,
                                 std::optional<std::vector<Link>> candidates) {
  spec.validate();
  cfg.validate();
  const std::size_t na = chip_a.num_qubits();
  const std::size_t nb = chip_b.num_qubits();

  std::vector<Link> cand;
  if (candidates) {
    cand = std::move(*candidates);
    for (const auto& l : cand) {
      if (l.u < 0 || static_cast<std::size_t>(l.u) >= na || l.v < 0 ||
          static_cast<std::size_t>(l.v) >= nb) {
        throw ValidationError("candidate (" + std::to_string(l.u) + "," +
                              std::to_string(l.v) + ") names a qubit outside its chip");
      }
    }
  } else {
    cand.reserve(na * nb);
    for (std::size_t u = 0; u < na; ++u) {
      for (std::size_t v = 0; v < nb; ++v) cand.push_back({int(u), int(v)});
    }
  }
  if (cand.empty()) throw ValidationError("candidate set is empty");

  const auto hops_a = hop_distances(chip_a);
  const auto hops_b = hop_distances(chip_b);
  const auto ttf_a = ttf_all_pairs(chip_a, cfg);
  const auto ttf_b = ttf_all_pairs(chip_b, cfg);

  std::vector<double> mean_hop_a(na), access_a(na);
  for (std::size_t u = 0; u < na; ++u) {
    double s = 0.0;
    for (std::size_t x = 0; x < na; ++x) s += hops_a(u, x);
    mean_hop_a[u] = s / static_cast<double>(na);
    access_a[u] = avg_access_cost(chip_a, int(u), ttf_a);
  }
  std::vector<double> mean_hop_b(nb), egress_b(nb);
  for (std::size_t v = 0; v < nb; ++v) {
    double s = 0.0;
    for (std::size_t y = 0; y < nb; ++y) s += hops_b(v, y);
    mean_hop_b[v] = s / static_cast<double>(nb);
    egress_b[v] = avg_egress_cost(chip_b, int(v), ttf_b);
  }

  const double coupler = coupler_ttf(spec, cfg);
  const double scale = cfg.normalization ? 1.0 / *cfg.normalization : 1.0;
  std::vector<double> path(na * nb, 0.0);
  std::vector<double> avg(na * nb, 0.0);
  for (const auto& l : cand) {
    const std::size_t i = std::size_t(l.u) * nb + std::size_t(l.v);
    path[i] = mean_hop_a[l.u] + mean_hop_b[l.v] + 1.0;
    avg[i] = (access_a[l.u] + coupler + egress_b[l.v]) * scale;
  }
  return PairCostMatrix(na, nb, std::move(cand), std::move(path), std::move(avg));
}

}  // namespace cplace
