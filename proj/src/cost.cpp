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

#include "cplace/cost.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cplace/errors.hpp"

namespace cplace {

using nlohmann::json;

void CostWeights::validate() const {
  for (double w : {alpha, beta, gamma, delta, epsilon, eta}) {
    if (!(std::isfinite(w) && w >= 0.0)) {
      throw ValidationError("cost weights must be finite and >= 0");
    }
  }
}

void Constraints::validate() const {
  if (d_max < 1) throw ValidationError("constraints.d_max must be >= 1");
  if (n_max < 1) throw ValidationError("constraints.n_max must be >= 1");
  if (!(std::isfinite(delta_spacing) && delta_spacing >= 0.0)) {
    throw ValidationError("constraints.delta_spacing must be >= 0");
  }
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::degree: return "degree";
    case Violation::Kind::spacing: return "spacing";
    case Violation::Kind::budget: return "budget";
    case Violation::Kind::duplicate: return "duplicate";
    case Violation::Kind::endpoint: return "endpoint";
  }
  return "?";
}

PairProblem PairProblem::build(ChipGraph chip_a, ChipGraph chip_b, const CouplerSpec& coupler,
                               const TtfConfig& ttf, const CostWeights& weights,
                               const Constraints& constraints,
                               std::optional<std::vector<Link>> candidates) {
  weights.validate();
  constraints.validate();
  auto matrix = build_cost_matrix(chip_a, chip_b, coupler, ttf, std::move(candidates));
  auto hops_a = hop_distances(chip_a);
  auto hops_b = hop_distances(chip_b);
  return PairProblem{std::move(chip_a), std::move(chip_b), coupler,         ttf,
                     weights,           constraints,       std::move(matrix),
                     std::move(hops_a), std::move(hops_b)};
}

namespace {

int load_a(std::span<const Link> links, int u) {
  return static_cast<int>(std::count_if(links.begin(), links.end(),
                                        [u](const Link& l) { return l.u == u; }));
}

int load_b(std::span<const Link> links, int v) {
  return static_cast<int>(std::count_if(links.begin(), links.end(),
                                        [v](const Link& l) { return l.v == v; }));
}

}  // namespace

double path_term(std::span<const Link> links, const PairCostMatrix& matrix) {
  double s = 0.0;
  for (const auto& l : links) s += matrix.path(l);
  return s;
}

double effective_path_cost(std::span<const Link> links, const PairCostMatrix& matrix) {
  double s = 0.0;
  for (const auto& l : links) s += matrix.avg_ttf(l);
  return s;
}

double congestion_approx(std::span<const Link> links) {
  double s = 0.0;
  for (const auto& l : links) s += std::max(load_a(links, l.u), load_b(links, l.v));
  return s;
}

CongestionExact congestion_exact(std::span<const Link> links, const ChipGraph& chip_a,
                                 double eta) {
  CongestionExact out;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    out.value += load_a(links, l.u) + load_b(links, l.v);
    double crosstalk = 0.0;
    for (std::size_t j = 0; j < links.size(); ++j) {
      if (j == i) continue;
      const double d = euclidean_um(chip_a.qubit(l.u).pos, chip_a.qubit(links[j].u).pos);
      if (d == 0.0) {
        if (i < j) out.coincident.emplace_back(l, links[j]);
        continue;
      }
      crosstalk += 1.0 / (d * d);
    }
    out.value += eta * crosstalk;
  }
  return out;
}

double overload_penalty(std::span<const Link> links, int d_max) {
  double s = 0.0;
  for (const auto& l : links) {
    const int deg_u = load_a(links, l.u) - 1;
    const int deg_v = load_b(links, l.v) - 1;
    if (deg_u + 1 > d_max || deg_v + 1 > d_max) s += 1.0;
  }
  return s;
}

double sparsity_penalty(std::span<const Link> links, const HopMatrix& hops_a,
                        const HopMatrix& hops_b) {
  double s = 0.0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    for (std::size_t j = i + 1; j < links.size(); ++j) {
      const int dist = hops_a(links[i].u, links[j].u) + hops_b(links[i].v, links[j].v);
      s += 1.0 / (1.0 + dist);
    }
  }
  return s;
}

namespace {

void fill_terms(std::span<const Link> links, const PairProblem& p, CostBreakdown& b) {
  b.path = path_term(links, p.matrix);
  b.effective = effective_path_cost(links, p.matrix);
  b.congestion = congestion_approx(links);
  b.overload = overload_penalty(links, p.constraints.d_max);
  b.sparsity = sparsity_penalty(links, p.hops_a, p.hops_b);
  const auto& w = p.weights;
  b.total = w.alpha * b.path + w.beta * b.effective + w.gamma * b.congestion +
            w.delta * b.overload + w.epsilon * b.sparsity;
}

}  // namespace

double objective(std::span<const Link> links, const PairProblem& problem) {
  CostBreakdown b;
  fill_terms(links, problem, b);
  return b.total;
}

CostBreakdown total_cost(std::span<const Link> links, const PairProblem& problem) {
  for (const auto& l : links) {
    if (!problem.matrix.is_candidate(l)) {
      throw ValidationError("link (" + std::to_string(l.u) + "," + std::to_string(l.v) +
                            ") is outside the candidate set");
    }
  }
  CostBreakdown b;
  fill_terms(links, problem, b);
  b.congestion_exact = congestion_exact(links, problem.chip_a, problem.weights.eta).value;
  b.feasibility = check_constraints(links, problem.constraints, problem.chip_a, problem.chip_b);
  return b;
}

FeasibilityReport check_constraints(std::span<const Link> links, const Constraints& c,
                                    const ChipGraph& chip_a, const ChipGraph& chip_b) {
  FeasibilityReport report;
  const auto link_str = [](const Link& l) {
    return "(" + std::to_string(l.u) + "," + std::to_string(l.v) + ")";
  };

  const int na = static_cast<int>(chip_a.num_qubits());
  const int nb = static_cast<int>(chip_b.num_qubits());
  std::vector<Link> valid;
  for (const auto& l : links) {
    if (l.u < 0 || l.u >= na || l.v < 0 || l.v >= nb) {
      report.violations.push_back({Violation::Kind::endpoint,
                                   "link " + link_str(l) + " names a qubit outside its chip",
                                   {l}});
    } else {
      valid.push_back(l);
    }
  }

  {
    auto sorted = valid;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] == sorted[i - 1] && (i == 1 || sorted[i - 2] != sorted[i])) {
        report.violations.push_back(
            {Violation::Kind::duplicate, "link " + link_str(sorted[i]) + " selected twice",
             {sorted[i]}});
      }
    }
  }

  std::map<int, std::vector<Link>> by_a;
  std::map<int, std::vector<Link>> by_b;
  for (const auto& l : valid) {
    by_a[l.u].push_back(l);
    by_b[l.v].push_back(l);
  }
  const auto degree_check = [&](const std::map<int, std::vector<Link>>& groups,
                                const std::string& chip) {
    for (const auto& [q, ls] : groups) {
      if (static_cast<int>(ls.size()) > c.d_max) {
        report.violations.push_back(
            {Violation::Kind::degree,
             chip + " qubit " + std::to_string(q) + " hosts " + std::to_string(ls.size()) +
                 " couplers (d_max " + std::to_string(c.d_max) + ")",
             ls});
      }
    }
  };
  degree_check(by_a, chip_a.name().empty() ? "A" : chip_a.name());
  degree_check(by_b, chip_b.name().empty() ? "B" : chip_b.name());

  // A spacing of 0 disables the rule.
  if (c.delta_spacing > 0.0) {
    for (std::size_t i = 0; i < valid.size(); ++i) {
      for (std::size_t j = i + 1; j < valid.size(); ++j) {
        const double da =
            euclidean_um(chip_a.qubit(valid[i].u).pos, chip_a.qubit(valid[j].u).pos);
        const double db =
            euclidean_um(chip_b.qubit(valid[i].v).pos, chip_b.qubit(valid[j].v).pos);
        const double d = std::min(da, db);
        if (!(d > c.delta_spacing)) {
          report.violations.push_back(
              {Violation::Kind::spacing,
               "links " + link_str(valid[i]) + " and " + link_str(valid[j]) + " are " +
                   std::to_string(d) + " um apart (delta " + std::to_string(c.delta_spacing) +
                   ")",
               {valid[i], valid[j]}});
        }
      }
    }
  }

  if (static_cast<int>(links.size()) > c.n_max) {
    report.violations.push_back({Violation::Kind::budget,
                                 std::to_string(links.size()) + " links exceed n_max " +
                                     std::to_string(c.n_max),
                                 {links.begin(), links.end()}});
  }
  return report;
}

json links_to_json(std::span<const Link> links) {
  json arr = json::array();
  for (const auto& l : links) arr.push_back({l.u, l.v});
  return arr;
}

json to_json(const CostBreakdown& b) {
  json violations = json::array();
  for (const auto& v : b.feasibility.violations) {
    violations.push_back({{"kind", std::string(to_string(v.kind))},
                          {"message", v.message},
                          {"links", links_to_json(v.links)}});
  }
  return {{"path", b.path},
          {"effective", b.effective},
          {"congestion", b.congestion},
          {"overload", b.overload},
          {"sparsity", b.sparsity},
          {"total", b.total},
          {"congestion_exact", b.congestion_exact},
          {"feasible", b.feasibility.feasible()},
          {"violations", violations}};
}

json to_json(const CostWeights& w) {
  return {{"alpha", w.alpha}, {"beta", w.beta},       {"gamma", w.gamma},
          {"delta", w.delta}, {"epsilon", w.epsilon}, {"eta", w.eta}};
}

json to_json(const Constraints& c) {
  return {{"d_max", c.d_max}, {"delta_spacing", c.delta_spacing}, {"n_max", c.n_max}};
}

}  // namespace cplace
