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

#include "cplace/config.hpp"

#include <set>
#include <string>

#include "cplace/errors.hpp"

namespace cplace {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + "." + key + ": wrong type");
  }
}

template <typename T>
void read_opt(const json& obj, const char* key, std::optional<T>& out, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (it->is_null()) {
    out.reset();
    return;
  }
  T v{};
  read(obj, key, v, where);
  out = v;
}

}  // namespace

void RunConfig::validate() const {
  weights.validate();
  ttf.validate();
  constraints.validate();
  coupler.validate();
  schedule.validate();
}

json RunConfig::to_json() const {
  json schedule_json = cplace::to_json(schedule);
  schedule_json.erase("seed");
  return {{"weights", cplace::to_json(weights)},
          {"ttf",
           {{"lambda", ttf.lambda},
            {"normalization", ttf.normalization ? json(*ttf.normalization) : json(nullptr)}}},
          {"constraints", cplace::to_json(constraints)},
          {"coupler", {{"latency_ns", coupler.latency_ns}, {"error", coupler.error}}},
          {"schedule", schedule_json},
          {"seed", seed ? json(*seed) : json(nullptr)}};
}

RunConfig RunConfig::from_json(const json& j, RunConfig base) {
  reject_unknown(j, {"weights", "ttf", "constraints", "coupler", "schedule", "seed"}, "config");
  RunConfig c = std::move(base);
  if (const auto it = j.find("weights"); it != j.end()) {
    reject_unknown(*it, {"alpha", "beta", "gamma", "delta", "epsilon", "eta"}, "config.weights");
    read(*it, "alpha", c.weights.alpha, "config.weights");
    read(*it, "beta", c.weights.beta, "config.weights");
    read(*it, "gamma", c.weights.gamma, "config.weights");
    read(*it, "delta", c.weights.delta, "config.weights");
    read(*it, "epsilon", c.weights.epsilon, "config.weights");
    read(*it, "eta", c.weights.eta, "config.weights");
  }
  if (const auto it = j.find("ttf"); it != j.end()) {
    reject_unknown(*it, {"lambda", "normalization"}, "config.ttf");
    read(*it, "lambda", c.ttf.lambda, "config.ttf");
    read_opt(*it, "normalization", c.ttf.normalization, "config.ttf");
  }
  if (const auto it = j.find("constraints"); it != j.end()) {
    reject_unknown(*it, {"d_max", "delta_spacing", "n_max"}, "config.constraints");
    read(*it, "d_max", c.constraints.d_max, "config.constraints");
    read(*it, "delta_spacing", c.constraints.delta_spacing, "config.constraints");
    read(*it, "n_max", c.constraints.n_max, "config.constraints");
  }
  if (const auto it = j.find("coupler"); it != j.end()) {
    reject_unknown(*it, {"latency_ns", "error"}, "config.coupler");
    read(*it, "latency_ns", c.coupler.latency_ns, "config.coupler");
    read(*it, "error", c.coupler.error, "config.coupler");
  }
  if (const auto it = j.find("schedule"); it != j.end()) {
    reject_unknown(*it, {"initial_temperature", "cooling_factor", "iterations"},
                   "config.schedule");
    read_opt(*it, "initial_temperature", c.schedule.initial_temperature, "config.schedule");
    read(*it, "cooling_factor", c.schedule.cooling_factor, "config.schedule");
    read_opt(*it, "iterations", c.schedule.iterations, "config.schedule");
  }
  read_opt(j, "seed", c.seed, "config");
  if (c.seed) c.schedule.seed = *c.seed;
  c.validate();
  return c;
}

RunConfig RunConfig::parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config document: ") + e.what());
  }
  return from_json(j);
}

}  // namespace cplace
