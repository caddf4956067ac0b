// Copyright 2026 The rmtsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rmtsim/traffic.h"

#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "rmtsim/status_macros.h"

namespace rmtsim {

int64_t Rng::UniformInt(int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
  if (span == std::numeric_limits<uint64_t>::max()) {
    return static_cast<int64_t>(Next());
  }
  const uint64_t range = span + 1;
  // Reject the tail so every residue is equally likely.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % range;
  uint64_t x = Next();
  while (x >= limit) x = Next();
  return static_cast<int64_t>(static_cast<uint64_t>(lo) + x % range);
}

absl::StatusOr<Traffic> GenerateTraffic(
    const TrafficConfig& cfg, int phv_length,
    std::shared_ptr<const StateLayout> layout) {
  if (cfg.num_phvs < 1) {
    return absl::InvalidArgumentError("no PHVs requested (num_phvs < 1)");
  }
  if (phv_length < 1) {
    return absl::InvalidArgumentError("phv_length must be positive");
  }
  if (cfg.container_min > cfg.container_max) {
    return absl::InvalidArgumentError(
        absl::StrCat("container range [", cfg.container_min, ", ",
                     cfg.container_max, "] is empty"));
  }
  Rng rng(cfg.seed);
  Traffic t;
  if (const auto* random = std::get_if<RandomStateInit>(&cfg.state_init)) {
    if (random->min > random->max) {
      return absl::InvalidArgumentError(absl::StrCat(
          "state range [", random->min, ", ", random->max, "] is empty"));
    }
    std::vector<Value> values(layout->total_size());
    for (Value& v : values) {
      v = static_cast<Value>(rng.UniformInt(random->min, random->max));
    }
    t.initial_state = StateSnapshot(layout, std::move(values));
  } else {
    RMTSIM_ASSIGN_OR_RETURN(
        t.initial_state,
        StateSnapshot::FromAssignment(
            layout, std::get<StateAssignment>(cfg.state_init)));
  }
  t.phvs.resize(static_cast<size_t>(cfg.num_phvs));
  for (Phv& phv : t.phvs) {
    phv.containers.resize(static_cast<size_t>(phv_length));
    for (Value& c : phv.containers) {
      c = static_cast<Value>(
          rng.UniformInt(cfg.container_min, cfg.container_max));
    }
  }
  return t;
}

MachineCode RandomMachineCode(const SlotCatalog& catalog, uint64_t seed) {
  Rng rng(seed);
  MachineCode mc;
  for (const CatalogEntry& e : catalog.entries()) {
    CodeValue v = 0;
    if (e.upper_bound == kCodeValueLimit) {
      switch (rng.UniformInt(0, 3)) {
        case 0:
          v = static_cast<CodeValue>(rng.UniformInt(0, 15));
          break;
        case 1:
        case 2:
          v = static_cast<CodeValue>(
              rng.UniformInt(kDefaultContainerMin, kDefaultContainerMax));
          break;
        default:
          v = static_cast<CodeValue>(
              rng.UniformInt(0, static_cast<int64_t>(kCodeValueLimit - 1)));
          break;
      }
    } else {
      v = static_cast<CodeValue>(
          rng.UniformInt(0, static_cast<int64_t>(e.upper_bound) - 1));
    }
    (void)mc.Add(e.name, v);
  }
  return mc;
}

}  // namespace rmtsim
