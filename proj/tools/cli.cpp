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

#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "cplace/config.hpp"
#include "cplace/device.hpp"
#include "cplace/errors.hpp"
#include "cplace/optimizer.hpp"
#include "cplace/routing.hpp"
#include "json.hpp"

namespace cplace::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

// "u:v,u:v|u:v": commas separate links, '|' separates adjacent chip pairs.
std::vector<std::vector<Link>> parse_inline_links(const std::string& text) {
  std::vector<std::vector<Link>> pairs(1);
  std::string token;
  const auto flush = [&] {
    if (token.empty()) return;
    const auto colon = token.find(':');
    if (colon == std::string::npos) throw ParseError("link '" + token + "' is not u:v");
    try {
      std::size_t used_u = 0, used_v = 0;
      const int u = std::stoi(token.substr(0, colon), &used_u);
      const int v = std::stoi(token.substr(colon + 1), &used_v);
      if (used_u != colon || used_v != token.size() - colon - 1) throw std::invalid_argument("");
      pairs.back().push_back({u, v});
    } catch (const std::logic_error&) {
      throw ParseError("link '" + token + "' is not u:v");
    }
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      flush();
    } else if (ch == '|') {
      flush();
      pairs.emplace_back();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      token += ch;
    }
  }
  flush();
  return pairs;
}

std::vector<Link> links_from_json(const json& arr) {
  std::vector<Link> out;
  for (const auto& l : arr) out.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
  return out;
}

// Accepts a single SolveResult document or a chain document with "pairs".
std::vector<std::vector<Link>> parse_placement_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
    if (j.contains("pairs")) {
      std::vector<std::vector<Link>> out;
      for (const auto& p : j.at("pairs")) out.push_back(links_from_json(p.at("links")));
      return out;
    }
    return {links_from_json(j.at("links"))};
  } catch (const json::exception& e) {
    throw ParseError("placement '" + path + "': " + e.what());
  }
}

struct DeviceArgs {
  std::vector<std::string> devices;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool lenient = false;
};

struct Loaded {
  std::vector<ChipGraph> chips;
  RunConfig config;
};

Loaded load(const DeviceArgs& a, std::ostream& err) {
  if (a.devices.size() < 2) throw ValidationError("at least two --device files are required");
  Loaded l;
  ParseOptions po;
  po.strict = !a.lenient;
  po.on_warning = [&err](const std::string& msg) { err << "warning: " << msg << "\n"; };
  for (const auto& path : a.devices) l.chips.push_back(parse_device(read_file(path), po));
  if (!a.config_path.empty()) l.config = RunConfig::parse(read_file(a.config_path));
  if (a.seed) {
    l.config.seed = a.seed;
    l.config.schedule.seed = *a.seed;
  }
  return l;
}

std::vector<PairProblem> chain_of(const Loaded& l) {
  ChipSystem sys{l.chips, std::vector<CouplerSpec>(l.chips.size() - 1, l.config.coupler)};
  return build_chain(sys, l.config.ttf, l.config.weights, l.config.constraints);
}

std::vector<LinkSet> to_link_sets(const std::vector<PairProblem>& chain,
                                  std::vector<std::vector<Link>> pairs) {
  if (pairs.size() != chain.size()) {
    throw ValidationError("placement has " + std::to_string(pairs.size()) +
                          " link groups but the system has " + std::to_string(chain.size()) +
                          " adjacent chip pairs");
  }
  std::vector<LinkSet> out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (const auto& l : pairs[i]) {
      if (l.u < 0 || static_cast<std::size_t>(l.u) >= chain[i].chip_a.num_qubits() || l.v < 0 ||
          static_cast<std::size_t>(l.v) >= chain[i].chip_b.num_qubits()) {
        throw ValidationError("invalid link endpoint (" + std::to_string(l.u) + "," +
                              std::to_string(l.v) + ")");
      }
    }
    out.push_back(chain[i].make_links(std::move(pairs[i])));
  }
  return out;
}

void print_breakdown(const CostBreakdown& b, const CostWeights& w, std::ostream& os) {
  const auto row = [&](const char* name, double raw, double weight) {
    os << std::left << std::setw(12) << name << std::right << std::setw(16) << raw
       << std::setw(16) << raw * weight << "\n";
  };
  os << std::left << std::setw(12) << "term" << std::right << std::setw(16) << "raw"
     << std::setw(16) << "weighted" << "\n";
  os << std::setprecision(8);
  row("path", b.path, w.alpha);
  row("effective", b.effective, w.beta);
  row("congestion", b.congestion, w.gamma);
  row("overload", b.overload, w.delta);
  row("sparsity", b.sparsity, w.epsilon);
  os << std::left << std::setw(12) << "total" << std::right << std::setw(32) << b.total << "\n";
  os << (b.feasibility.feasible() ? "feasible" : "INFEASIBLE") << "\n";
}

std::string render_report(const ComparisonReport& report, const RunConfig& cfg,
                          const std::string& format) {
  if (format == "csv") return "# config: " + cfg.to_json().dump() + "\n" + report.to_csv();
  json j = report.to_json();
  j["config"] = cfg.to_json();
  return j.dump(2) + "\n";
}

void add_device_flags(CLI::App* cmd, DeviceArgs& a) {
  cmd->add_option("--device", a.devices, "Device JSON files, in chain order")->required();
  cmd->add_option("--config", a.config_path, "Run configuration JSON");
  cmd->add_option("--seed", a.seed, "Random seed");
  cmd->add_flag("--lenient", a.lenient, "Warn instead of failing on unknown device keys");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inter-chip coupler placement toolkit", "cplace"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a canonical topology as a device file");
  std::string kind;
  int n = 0;
  TopologyOptions topo;
  int rows = 0, cols = 0;
  std::string out_path;
  gen->add_option("--kind", kind, "line|ring|grid|star|complete|heavy_hex")->required();
  gen->add_option("--n", n, "Qubit count")->required();
  gen->add_option("--rows", rows, "Grid/heavy-hex rows");
  gen->add_option("--cols", cols, "Grid columns / heavy-hex row length");
  gen->add_option("--name", topo.name, "Chip name");
  gen->add_option("--pitch", topo.pitch_um, "Lattice pitch (um)");
  gen->add_option("--gate-time", topo.gate_time_ns, "Two-qubit gate time (ns)");
  gen->add_option("--gate-error", topo.gate_error, "Two-qubit gate error");
  gen->add_option("--t1", topo.t1_ns, "T1 (ns)");
  gen->add_option("--t2", topo.t2_ns, "T2 (ns)");
  gen->add_option("--readout-error", topo.readout_error, "Readout error");
  gen->add_option("--out", out_path, "Output path (default stdout)");

  // optimize
  auto* opt = app.add_subcommand("optimize", "Select coupler links minimising the total cost");
  DeviceArgs opt_dev;
  std::vector<int> ks;
  bool exact = false;
  std::string method = "anneal";
  std::string matrix_out;
  std::uint64_t enumeration_cap = 10'000'000;
  add_device_flags(opt, opt_dev);
  opt->add_option("--k", ks, "Links per adjacent pair (one value, or one per pair)")->required();
  opt->add_flag("--exact", exact, "Exhaustive search instead of greedy/anneal");
  opt->add_option("--method", method, "greedy|anneal")
      ->check(CLI::IsMember({"greedy", "anneal"}));
  opt->add_option("--cap", enumeration_cap, "Enumeration cap for --exact");
  opt->add_option("--matrix-out", matrix_out, "Write the first pair's cost matrix as CSV");
  opt->add_option("--out", out_path, "Output path (default stdout)");
  std::string opt_format = "json";
  opt->add_option("--format", opt_format, "json")->check(CLI::IsMember({"json"}));

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Score an explicit link set");
  DeviceArgs eval_dev;
  std::string eval_links;
  std::string eval_links_file;
  add_device_flags(eval, eval_dev);
  eval->add_option("--links", eval_links, "Links as u:v,u:v (pairs separated by '|')");
  eval->add_option("--links-file", eval_links_file, "SolveResult JSON to take links from");
  eval->add_option("--out", out_path, "Output path (default stdout)");

  // validate
  auto* val = app.add_subcommand("validate", "Route random circuits over placements");
  DeviceArgs val_dev;
  std::vector<std::string> placements_files;
  std::vector<std::string> placements_inline;
  CircuitSuite suite;
  std::string format = "csv";
  add_device_flags(val, val_dev);
  val->add_option("--placement", placements_files, "SolveResult JSON files");
  val->add_option("--links", placements_inline, "Inline placement(s) as u:v,u:v|u:v");
  val->add_option("--circuits", suite.count, "Number of random circuits");
  val->add_option("--qubits", suite.num_qubits, "Logical qubits per circuit");
  val->add_option("--depth", suite.depth, "Layers per circuit");
  val->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  val->add_option("--out", out_path, "Output path (default stdout)");

  // report
  auto* rep = app.add_subcommand(
      "report", "Compare lowest, median-random and highest cost placements by routing");
  DeviceArgs rep_dev;
  std::vector<int> rep_ks;
  int samples = 200;
  add_device_flags(rep, rep_dev);
  rep->add_option("--k", rep_ks, "Links per adjacent pair")->required();
  rep->add_option("--samples", samples, "Random placements sampled for the median");
  rep->add_option("--circuits", suite.count, "Number of random circuits");
  rep->add_option("--qubits", suite.num_qubits, "Logical qubits per circuit");
  rep->add_option("--depth", suite.depth, "Layers per circuit");
  rep->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  rep->add_option("--out", out_path, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const auto budgets_for = [](const std::vector<int>& given, std::size_t pairs) {
    if (given.size() == 1) return std::vector<int>(pairs, given.front());
    if (given.size() != pairs) {
      throw ValidationError("--k needs one value or one per adjacent chip pair");
    }
    return given;
  };

  try {
    if (*gen) {
      if (rows > 0) topo.rows = rows;
      if (cols > 0) topo.cols = cols;
      const auto chip = generate_topology(parse_topology_kind(kind), n, topo);
      write_output(out_path, serialize_device(chip), out);
      return kOk;
    }

    if (*opt) {
      const auto loaded = load(opt_dev, err);
      const bool uses_rng = !exact && method == "anneal";
      if (uses_rng && !loaded.config.seed) {
        err << "error: --seed is required for the anneal method\n";
        return kUsage;
      }
      const auto chain = chain_of(loaded);
      if (!matrix_out.empty()) write_output(matrix_out, chain.front().matrix.to_csv(), out);
      SolveOptions so;
      so.method = exact ? Method::exhaustive : (method == "greedy" ? Method::greedy : Method::anneal);
      so.schedule = loaded.config.schedule;
      so.enumeration_cap = enumeration_cap;
      const auto budgets = budgets_for(ks, chain.size());
      const auto result = optimize_multichip(chain, budgets, so);

      json doc;
      if (result.pairs.size() == 1) {
        doc = to_json(result.pairs.front());
      } else {
        doc["pairs"] = json::array();
        for (const auto& r : result.pairs) doc["pairs"].push_back(to_json(r));
        doc["system_cost"] = result.system_cost;
      }
      doc["config"] = loaded.config.to_json();
      std::ostream& table = (out_path.empty() || out_path == "-") ? err : out;
      for (const auto& r : result.pairs) {
        table << r.links.chip_a << " <-> " << r.links.chip_b << " (" << r.method << ")\n";
        print_breakdown(r.breakdown, loaded.config.weights, table);
      }
      write_output(out_path, doc.dump(2) + "\n", out);
      return kOk;
    }

    if (*eval) {
      const auto loaded = load(eval_dev, err);
      const auto chain = chain_of(loaded);
      std::vector<std::vector<Link>> pairs;
      if (!eval_links_file.empty()) {
        pairs = parse_placement_file(eval_links_file);
      } else if (!eval_links.empty()) {
        pairs = parse_inline_links(eval_links);
      } else {
        err << "error: one of --links or --links-file is required\n";
        return kUsage;
      }
      const auto sets = to_link_sets(chain, std::move(pairs));
      json doc;
      if (sets.size() == 1) {
        doc = to_json(total_cost(sets.front().pairs, chain.front()));
      } else {
        doc["pairs"] = json::array();
        double sum = 0.0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
          const auto b = total_cost(sets[i].pairs, chain[i]);
          sum += b.total;
          doc["pairs"].push_back(to_json(b));
        }
        doc["system_cost"] = sum;
      }
      doc["config"] = loaded.config.to_json();
      write_output(out_path, doc.dump(2) + "\n", out);
      return kOk;
    }

    if (*val || *rep) {
      const auto& dev = *val ? val_dev : rep_dev;
      const auto loaded = load(dev, err);
      if (suite.count < 0) throw ValidationError("--circuits must be >= 0");
      if (suite.count > 0 && !loaded.config.seed) {
        err << "error: --seed is required to generate random circuits\n";
        return kUsage;
      }
      if (*rep && !loaded.config.seed) {
        err << "error: --seed is required for report\n";
        return kUsage;
      }
      suite.seed = loaded.config.seed.value_or(0);
      const auto chain = chain_of(loaded);

      std::vector<ChainPlacement> placements;
      if (*val) {
        int idx = 0;
        for (const auto& path : placements_files) {
          placements.push_back({path, to_link_sets(chain, parse_placement_file(path)), 0.0});
        }
        for (const auto& text : placements_inline) {
          placements.push_back({"links" + std::to_string(idx++),
                                to_link_sets(chain, parse_inline_links(text)), 0.0});
        }
        if (placements.empty()) {
          err << "error: at least one --placement or --links is required\n";
          return kUsage;
        }
      } else {
        SolveOptions so;
        so.schedule = loaded.config.schedule;
        const auto budgets = budgets_for(rep_ks, chain.size());
        auto spread = placement_spread(chain, budgets, so, samples, suite.seed);
        placements.assign(std::make_move_iterator(spread.begin()),
                          std::make_move_iterator(spread.end()));
      }
      const auto circuits = suite.count > 0 ? suite.generate() : std::vector<Circuit>{};
      const auto report = compare_placements(chain, placements, circuits);
      write_output(out_path, render_report(report, loaded.config, format), out);
      return kOk;
    }
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const DisconnectedError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace cplace::cli
