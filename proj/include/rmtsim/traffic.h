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

#ifndef RMTSIM_TRAFFIC_H_
#define RMTSIM_TRAFFIC_H_

#include <cstdint>
#include <memory>
#include <random>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "rmtsim/machine_code.h"
#include "rmtsim/simulator.h"

namespace rmtsim {

// Seeded generator with a portable bounded draw; the same seed gives the
// same stream with any standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform in [lo, hi].
  int64_t UniformInt(int64_t lo, int64_t hi);

 private:
  std::mt19937_64 engine_;
};

inline constexpr Value kDefaultContainerMin = 0;
inline constexpr Value kDefaultContainerMax = 10000;

struct RandomStateInit {
  Value min = kDefaultContainerMin;
  Value max = kDefaultContainerMax;
};

struct TrafficConfig {
  int64_t num_phvs = 1;
  Value container_min = kDefaultContainerMin;
  Value container_max = kDefaultContainerMax;
  uint64_t seed = 0;
  std::variant<RandomStateInit, StateAssignment> state_init = RandomStateInit{};
};

struct Traffic {
  std::vector<Phv> phvs;
  StateSnapshot initial_state;
};

// Deterministic in cfg.seed. Random initial state is drawn first, in layout
// order, then the PHVs. Fails with kInvalidArgument when num_phvs < 1 or a
// bound pair is inverted, or when an explicit state does not match `layout`.
absl::StatusOr<Traffic> GenerateTraffic(
    const TrafficConfig& cfg, int phv_length,
    std::shared_ptr<const StateLayout> layout);

// Random in-range value for every catalog entry. Immediates mix small
// values, values in the default container range and full 32-bit values.
MachineCode RandomMachineCode(const SlotCatalog& catalog, uint64_t seed);

}  // namespace rmtsim

#endif  // RMTSIM_TRAFFIC_H_
