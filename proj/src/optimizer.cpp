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

#include "cplace/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cplace/errors.hpp"

namespace cplace {

using nlohmann::json;

void AnnealSchedule::validate() const {
  if (initial_temperature && !(std::isfinite(*initial_temperature) && *initial_temperature > 0.0)) {
    throw ValidationError("schedule.initial_temperature must be > 0");
  }
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) {
    throw ValidationError("schedule.cooling_factor must be in (0,1)");
  }
  if (iterations && *iterations < 0) throw ValidationError("schedule.iterations must be >= 0");
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::greedy: return "greedy";
    case Method::anneal: return "greedy+anneal";
    case Method::exhaustive: return "exhaustive";
  }
  return "?";
}

namespace {

// Signed so that lower is always better.
double signed_cost(double cost, Sense sense) { return sense == Sense::minimize ? cost : -cost; }

SolveResult finish(const PairProblem& problem, std::vector<Link> links, std::string method,
                   std::vector<std::pair<int, double>> trace, std::uint64_t seed, Sense sense) {
  SolveResult r;
  r.links = problem.make_links(std::move(links));
  r.breakdown = total_cost(r.links.pairs, problem);
  r.trace = std::move(trace);
  r.method = std::move(method);
  r.seed = seed;
  r.sense = sense;
  return r;
}

void check_k(const PairProblem& problem, int k) {
  if (k < 0) throw ValidationError("link count k must be >= 0");
  if (k > problem.constraints.n_max) {
    throw InfeasibleError("k = " + std::to_string(k) + " exceeds n_max = " +
                          std::to_string(problem.constraints.n_max));
  }
}

}  // namespace

bool can_add(std::span<const Link> links, const Link& candidate, const PairProblem& problem) {
  const auto& c = problem.constraints;
  if (static_cast<int>(links.size()) + 1 > c.n_max) return false;
  int deg_u = 0;
  int deg_v = 0;
  for (const auto& l : links) {
    if (l == candidate) return false;
    deg_u += l.u == candidate.u;
    deg_v += l.v == candidate.v;
  }
  if (deg_u + 1 > c.d_max || deg_v + 1 > c.d_max) return false;
  if (c.delta_spacing > 0.0) {
    const auto& pa = problem.chip_a.qubit(candidate.u).pos;
    const auto& pb = problem.chip_b.qubit(candidate.v).pos;
    for (const auto& l : links) {
      const double d = std::min(euclidean_um(pa, problem.chip_a.qubit(l.u).pos),
                                euclidean_um(pb, problem.chip_b.qubit(l.v).pos));
      if (!(d > c.delta_spacing)) return false;
    }
  }
  return true;
}

SolveResult greedy_select(const PairProblem& problem, int k, Sense sense) {
  check_k(problem, k);
  const auto candidates = problem.matrix.candidates();
  std::vector<Link> chosen;
  std::vector<std::pair<int, double>> trace;
  std::vector<Link> trial;
  for (int step = 0; step < k; ++step) {
    std::optional<Link> best;
    double best_cost = std::numeric_limits<double>::infinity();
    trial = chosen;
    trial.emplace_back();
    for (const auto& cand : candidates) {
      if (!can_add(chosen, cand, problem)) continue;
      trial.back() = cand;
      const double cost = signed_cost(objective(trial, problem), sense);
      // Candidates are sorted, so strict improvement keeps the smallest pair on ties.
      if (!best || cost < best_cost) {
        best = cand;
        best_cost = cost;
      }
    }
    if (!best) {
      throw InfeasibleError("no feasible candidate for link " + std::to_string(step + 1) +
                            " of " + std::to_string(k));
    }
    chosen.push_back(*best);
    trace.emplace_back(step + 1, signed_cost(best_cost, sense));
  }
  return finish(problem, std::move(chosen), std::string(method_name(Method::greedy)),
                std::move(trace), 0, sense);
}

SolveResult anneal_refine(const PairProblem& problem, const LinkSet& start,
                          const AnnealSchedule& schedule, Sense sense) {
  schedule.validate();
  const auto& start_links = start.pairs;
  if (!check_constraints(start_links, problem.constraints, problem.chip_a, problem.chip_b)
           .feasible()) {
    throw ValidationError("anneal_refine requires a feasible start set");
  }
  const int k = static_cast<int>(start_links.size());
  const auto candidates = problem.matrix.candidates();
  const int iterations = schedule.iterations.value_or(300 * k);

  std::vector<Link> current(start_links.begin(), start_links.end());
  double current_cost = signed_cost(objective(current, problem), sense);
  std::vector<Link> best = current;
  double best_cost = current_cost;
  std::vector<std::pair<int, double>> trace{{0, signed_cost(current_cost, sense)}};

  const std::string method(method_name(Method::anneal));
  if (k == 0 || candidates.size() <= static_cast<std::size_t>(k) || iterations == 0) {
    return finish(problem, std::move(best), method, std::move(trace), schedule.seed, sense);
  }

  double temperature = schedule.initial_temperature.value_or(0.1 * std::abs(current_cost));
  if (!(temperature > 0.0)) temperature = 1.0;

  std::mt19937_64 rng(schedule.seed);
  std::uniform_int_distribution<int> pick_slot(0, k - 1);
  std::uniform_int_distribution<std::size_t> pick_cand(0, candidates.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Link> others;
  others.reserve(k);

  for (int it = 1; it <= iterations; ++it) {
    const int slot = pick_slot(rng);
    Link cand;
    do {
      cand = candidates[pick_cand(rng)];
    } while (std::find(current.begin(), current.end(), cand) != current.end());

    others.clear();
    for (int i = 0; i < k; ++i) {
      if (i != slot) others.push_back(current[i]);
    }
    if (can_add(others, cand, problem)) {
      const Link previous = current[slot];
      current[slot] = cand;
      const double cost = signed_cost(objective(current, problem), sense);
      const double delta = cost - current_cost;
      if (delta <= 0.0 || unit(rng) < std::exp(-delta / temperature)) {
        current_cost = cost;
        trace.emplace_back(it, signed_cost(cost, sense));
        if (cost < best_cost) {
          best_cost = cost;
          best = current;
        }
      } else {
        current[slot] = previous;
      }
    }
    temperature *= schedule.cooling_factor;
  }
  return finish(problem, std::move(best), method, std::move(trace), schedule.seed, sense);
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

struct Enumerator {
  const PairProblem& problem;
  std::span<const Link> candidates;
  int k;
  Sense sense;
  std::vector<Link> current;
  std::optional<std::vector<Link>> best;
  double best_cost = std::numeric_limits<double>::infinity();

  // Lexicographic order over sorted candidates, so a strict comparison keeps
  // the lexicographically smallest optimum.
  void run(std::size_t from) {
    if (static_cast<int>(current.size()) == k) {
      const double cost = signed_cost(objective(current, problem), sense);
      if (!best || cost < best_cost) {
        best = current;
        best_cost = cost;
      }
      return;
    }
    const std::size_t needed = static_cast<std::size_t>(k) - current.size();
    for (std::size_t i = from; i + needed <= candidates.size(); ++i) {
      if (!can_add(current, candidates[i], problem)) continue;
      current.push_back(candidates[i]);
      run(i + 1);
      current.pop_back();
    }
  }
};

}  // namespace

SolveResult exhaustive_select(const PairProblem& problem, int k, std::uint64_t cap, Sense sense) {
  check_k(problem, k);
  const auto candidates = problem.matrix.candidates();
  const double subsets = binomial(candidates.size(), static_cast<std::size_t>(k));
  if (subsets > static_cast<double>(cap)) {
    throw CapExceededError("C(" + std::to_string(candidates.size()) + ", " +
                           std::to_string(k) + ") subsets exceed the enumeration cap of " +
                           std::to_string(cap));
  }
  Enumerator e{problem, candidates, k, sense, {}, std::nullopt,
               std::numeric_limits<double>::infinity()};
  e.run(0);
  if (!e.best) {
    throw InfeasibleError("no feasible set of " + std::to_string(k) + " links exists");
  }
  return finish(problem, std::move(*e.best), std::string(method_name(Method::exhaustive)),
                {{0, signed_cost(e.best_cost, sense)}}, 0, sense);
}

SolveResult solve(const PairProblem& problem, int k, const SolveOptions& options) {
  switch (options.method) {
    case Method::greedy: return greedy_select(problem, k, options.sense);
    case Method::exhaustive:
      return exhaustive_select(problem, k, options.enumeration_cap, options.sense);
    case Method::anneal: {
      const auto greedy = greedy_select(problem, k, options.sense);
      AnnealSchedule schedule = options.schedule;
      if (!schedule.initial_temperature && greedy.breakdown.total > 0.0) {
        schedule.initial_temperature = 0.1 * greedy.breakdown.total;
      }
      return anneal_refine(problem, greedy.links, schedule, options.sense);
    }
  }
  throw Error("unknown method");
}

LinkSet random_feasible_placement(const PairProblem& problem, int k, std::mt19937_64& rng) {
  check_k(problem, k);
  const auto candidates = problem.matrix.candidates();
  if (static_cast<std::size_t>(k) > candidates.size()) {
    throw InfeasibleError("k exceeds the number of candidates");
  }
  std::vector<std::size_t> idx(candidates.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<Link> links;
  constexpr int kAttempts = 100000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    // Partial Fisher-Yates: the first k entries are a uniform k-subset.
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> d(i, idx.size() - 1);
      std::swap(idx[i], idx[d(rng)]);
    }
    links.clear();
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      ok = can_add(links, candidates[idx[i]], problem);
      if (ok) links.push_back(candidates[idx[i]]);
    }
    if (ok) {
      std::sort(links.begin(), links.end());
      return problem.make_links(std::move(links));
    }
  }
  throw InfeasibleError("no feasible random placement found after " +
                        std::to_string(kAttempts) + " draws");
}

void ChipSystem::validate() const {
  if (chips.size() < 2) throw ValidationError("a system needs at least 2 chips");
  if (couplers.size() != chips.size() - 1) {
    throw ValidationError("a chain of " + std::to_string(chips.size()) + " chips needs " +
                          std::to_string(chips.size() - 1) + " coupler specs");
  }
  for (const auto& c : couplers) c.validate();
}

std::vector<PairProblem> build_chain(const ChipSystem& system, const TtfConfig& ttf,
                                     const CostWeights& weights, const Constraints& constraints) {
  system.validate();
  std::vector<PairProblem> chain;
  for (std::size_t i = 0; i + 1 < system.chips.size(); ++i) {
    chain.push_back(PairProblem::build(system.chips[i], system.chips[i + 1], system.couplers[i],
                                       ttf, weights, constraints));
  }
  return chain;
}

MultiChipResult optimize_multichip(std::span<const PairProblem> chain,
                                   std::span<const int> budgets, const SolveOptions& options) {
  if (chain.empty()) throw ValidationError("a system needs at least 2 chips");
  if (budgets.size() != chain.size()) {
    throw ValidationError("one link budget is required per adjacent chip pair");
  }
  MultiChipResult out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    out.pairs.push_back(solve(chain[i], budgets[i], options));
    out.system_cost += out.pairs.back().breakdown.total;
  }
  return out;
}

double chain_cost(std::span<const PairProblem> chain, std::span<const LinkSet> links) {
  if (links.size() != chain.size()) {
    throw ValidationError("one link set is required per adjacent chip pair");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < chain.size(); ++i) total += total_cost(links[i].pairs, chain[i]).total;
  return total;
}

std::array<ChainPlacement, 3> placement_spread(std::span<const PairProblem> chain,
                                               std::span<const int> budgets,
                                               const SolveOptions& options, int samples,
                                               std::uint64_t seed) {
  if (samples < 1) throw ValidationError("placement_spread needs at least one sample");
  SolveOptions low_opts = options;
  low_opts.sense = Sense::minimize;
  SolveOptions high_opts = options;
  high_opts.sense = Sense::maximize;
  const auto low = optimize_multichip(chain, budgets, low_opts);
  const auto high = optimize_multichip(chain, budgets, high_opts);

  ChainPlacement lowest{"lowest", {}, low.system_cost};
  for (const auto& r : low.pairs) lowest.links.push_back(r.links);
  ChainPlacement highest{"highest", {}, high.system_cost};
  for (const auto& r : high.pairs) highest.links.push_back(r.links);

  std::mt19937_64 rng(seed);
  std::vector<ChainPlacement> sampled;
  sampled.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    ChainPlacement p{"median", {}, 0.0};
    for (std::size_t i = 0; i < chain.size(); ++i) {
      p.links.push_back(random_feasible_placement(chain[i], budgets[i], rng));
    }
    p.cost = chain_cost(chain, p.links);
    sampled.push_back(std::move(p));
  }
  std::stable_sort(sampled.begin(), sampled.end(),
                   [](const auto& l, const auto& r) { return l.cost < r.cost; });
  return {std::move(lowest), std::move(sampled[sampled.size() / 2]), std::move(highest)};
}

json to_json(const SolveResult& r) {
  json trace = json::array();
  for (const auto& [it, cost] : r.trace) trace.push_back({it, cost});
  return {{"method", r.method},
          {"objective", r.sense == Sense::minimize ? "min" : "max"},
          {"chip_a", r.links.chip_a},
          {"chip_b", r.links.chip_b},
          {"links", links_to_json(r.links.pairs)},
          {"cost", to_json(r.breakdown)},
          {"trace", trace},
          {"seed", r.seed}};
}

json to_json(const AnnealSchedule& s) {
  json j{{"cooling_factor", s.cooling_factor}, {"seed", s.seed}};
  j["initial_temperature"] = s.initial_temperature ? json(*s.initial_temperature) : json(nullptr);
  j["iterations"] = s.iterations ? json(*s.iterations) : json(nullptr);
  return j;
}

}  // namespace cplace
