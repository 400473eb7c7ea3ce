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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "cplace/config.hpp"
#include "cplace/errors.hpp"
#include "cplace/routing.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace cplace {
namespace {

using Pairs = std::vector<std::pair<int, int>>;

std::vector<ChipGraph> parse_all(const std::vector<std::string>& devices, bool strict) {
  if (devices.size() < 2) throw ValidationError("at least two devices are required");
  ParseOptions po;
  po.strict = strict;
  std::vector<ChipGraph> chips;
  for (const auto& d : devices) chips.push_back(parse_device(d, po));
  return chips;
}

RunConfig config_of(const std::string& config, std::optional<std::uint64_t> seed) {
  RunConfig c = config.empty() ? RunConfig{} : RunConfig::parse(config);
  if (seed) {
    c.seed = seed;
    c.schedule.seed = *seed;
  }
  return c;
}

std::vector<PairProblem> chain_of(const std::vector<ChipGraph>& chips, const RunConfig& c) {
  ChipSystem sys{chips, std::vector<CouplerSpec>(chips.size() - 1, c.coupler)};
  return build_chain(sys, c.ttf, c.weights, c.constraints);
}

std::vector<LinkSet> link_sets(const std::vector<PairProblem>& chain,
                               const std::vector<Pairs>& placement) {
  if (placement.size() != chain.size()) {
    throw ValidationError("need one link list per adjacent chip pair");
  }
  std::vector<LinkSet> out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    std::vector<Link> ls;
    for (const auto& [u, v] : placement[i]) ls.push_back({u, v});
    out.push_back(chain[i].make_links(std::move(ls)));
  }
  return out;
}

std::string generate(const std::string& kind, int n, std::optional<int> rows,
                     std::optional<int> cols, const std::string& name, double pitch_um,
                     double gate_time_ns, double gate_error) {
  TopologyOptions o;
  o.name = name;
  o.rows = rows;
  o.cols = cols;
  o.pitch_um = pitch_um;
  o.gate_time_ns = gate_time_ns;
  o.gate_error = gate_error;
  return serialize_device(generate_topology(parse_topology_kind(kind), n, o));
}

std::vector<std::vector<int>> hops(const std::string& device) {
  const auto chip = parse_device(device);
  const auto h = hop_distances(chip);
  std::vector<std::vector<int>> out(h.size(), std::vector<int>(h.size()));
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = 0; j < h.size(); ++j) out[i][j] = h(i, j);
  }
  return out;
}

std::string evaluate(const std::vector<std::string>& devices, const std::vector<Pairs>& placement,
                     const std::string& config, bool strict) {
  const auto cfg = config_of(config, std::nullopt);
  const auto chain = chain_of(parse_all(devices, strict), cfg);
  const auto sets = link_sets(chain, placement);
  json doc;
  doc["pairs"] = json::array();
  double sum = 0.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto b = total_cost(sets[i].pairs, chain[i]);
    sum += b.total;
    doc["pairs"].push_back(to_json(b));
  }
  doc["system_cost"] = sum;
  doc["config"] = cfg.to_json();
  return doc.dump();
}

std::string optimize(const std::vector<std::string>& devices, const std::vector<int>& k,
                     const std::string& method, std::optional<std::uint64_t> seed,
                     const std::string& config, std::uint64_t cap, bool strict) {
  const auto cfg = config_of(config, seed);
  SolveOptions so;
  if (method == "greedy") {
    so.method = Method::greedy;
  } else if (method == "anneal") {
    so.method = Method::anneal;
    if (!cfg.seed) throw ValidationError("seed is required for the anneal method");
  } else if (method == "exhaustive") {
    so.method = Method::exhaustive;
  } else {
    throw ValidationError("method must be greedy, anneal or exhaustive");
  }
  so.schedule = cfg.schedule;
  so.enumeration_cap = cap;
  const auto chain = chain_of(parse_all(devices, strict), cfg);
  std::vector<int> budgets = k.size() == 1 ? std::vector<int>(chain.size(), k.front()) : k;
  const auto r = optimize_multichip(chain, budgets, so);
  json doc;
  doc["pairs"] = json::array();
  for (const auto& p : r.pairs) doc["pairs"].push_back(to_json(p));
  doc["system_cost"] = r.system_cost;
  doc["config"] = cfg.to_json();
  return doc.dump();
}

std::string validate(const std::vector<std::string>& devices,
                     const std::vector<std::vector<Pairs>>& placements, int circuits, int qubits,
                     int depth, std::uint64_t seed, const std::string& config, bool strict) {
  const auto cfg = config_of(config, seed);
  const auto chain = chain_of(parse_all(devices, strict), cfg);
  std::vector<ChainPlacement> ps;
  for (std::size_t i = 0; i < placements.size(); ++i) {
    auto sets = link_sets(chain, placements[i]);
    double cost = 0.0;
    for (std::size_t p = 0; p < sets.size(); ++p) cost += total_cost(sets[p].pairs, chain[p]).total;
    ps.push_back({"placement" + std::to_string(i), std::move(sets), cost});
  }
  const CircuitSuite suite{circuits, qubits, depth, seed};
  auto j = compare_placements(chain, ps, circuits > 0 ? suite.generate() : std::vector<Circuit>{})
               .to_json();
  j["config"] = cfg.to_json();
  return j.dump();
}

}  // namespace
}  // namespace cplace

PYBIND11_MODULE(_core, m) {
  using namespace cplace;
  m.doc() = "Coupler placement for multi-chip quantum systems";

  // Translators run most-recent first, so the base class goes in first.
  const auto base = py::register_exception<Error>(m, "CplaceError");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base);
  py::register_exception<DisconnectedError>(m, "DisconnectedError", base);
  py::register_exception<CapExceededError>(m, "CapExceededError", base);

  m.def("generate_topology", &generate, py::arg("kind"), py::arg("n"), py::arg("rows") = py::none(),
        py::arg("cols") = py::none(), py::arg("name") = "", py::arg("pitch_um") = 100.0,
        py::arg("gate_time_ns") = 300.0, py::arg("gate_error") = 0.01);
  m.def(
      "normalize_device",
      [](const std::string& text, bool strict) {
        ParseOptions po;
        po.strict = strict;
        return serialize_device(parse_device(text, po));
      },
      py::arg("text"), py::arg("strict") = true);
  m.def("hop_distances", &hops, py::arg("device"));
  m.def("ttf_edge_weight", &ttf_edge_weight, py::arg("gate_time_ns"), py::arg("gate_error"),
        py::arg("lam") = 1.0);
  m.def(
      "coupler_ttf",
      [](double latency_ns, double error, double lam) {
        TtfConfig c;
        c.lambda = lam;
        return coupler_ttf({latency_ns, error}, c);
      },
      py::arg("latency_ns") = 235.0, py::arg("error") = 0.035, py::arg("lam") = 1.0);
  m.def("evaluate", &evaluate, py::arg("devices"), py::arg("placement"), py::arg("config") = "",
        py::arg("strict") = true);
  m.def("optimize", &optimize, py::arg("devices"), py::arg("k"), py::arg("method") = "anneal",
        py::arg("seed") = py::none(), py::arg("config") = "",
        py::arg("enumeration_cap") = 10'000'000ULL, py::arg("strict") = true);
  m.def(
      "random_circuit",
      [](int n, int depth, std::uint64_t seed) { return to_json(random_circuit(n, depth, seed)).dump(); },
      py::arg("num_qubits"), py::arg("depth"), py::arg("seed"));
  m.def("validate", &validate, py::arg("devices"), py::arg("placements"), py::arg("circuits"),
        py::arg("qubits"), py::arg("depth"), py::arg("seed"), py::arg("config") = "",
        py::arg("strict") = true);
}
