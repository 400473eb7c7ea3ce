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
#include <string_view>

#include "cplace/cost.hpp"
#include "cplace/optimizer.hpp"
#include "cplace/ttf.hpp"
#include "json.hpp"

namespace cplace {

/// Every tunable of a run. All fields are optional in the JSON form and
/// default to the operating point below: alpha = gamma = delta = epsilon = 1,
/// beta = 10, coupler CNOT 235 ns at 3.5 % error, lambda = 1 ns/nat.
struct RunConfig {
  CostWeights weights;
  TtfConfig ttf;
  Constraints constraints;
  CouplerSpec coupler;
  AnnealSchedule schedule;
  std::optional<std::uint64_t> seed;

  void validate() const;
  nlohmann::json to_json() const;
  /// Overlays the keys present in `j` onto `base`. Unknown keys throw ParseError.
  static RunConfig from_json(const nlohmann::json& j, RunConfig base = {});
  static RunConfig parse(std::string_view text);
};

}  // namespace cplace
