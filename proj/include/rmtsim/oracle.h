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

// Specification oracles: native reference implementations of the packet
// program a compiler was asked to map onto the pipeline.

#ifndef RMTSIM_ORACLE_H_
#define RMTSIM_ORACLE_H_

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "rmtsim/pipeline.h"
#include "rmtsim/simulator.h"

namespace rmtsim {

// Places one oracle state variable in the pipeline: state variable `index`
// of the ALU at `coord`.
struct StateBinding {
  std::string var;
  AluCoord coord;
  int index = 0;
};

class SpecOracle {
 public:
  virtual ~SpecOracle() = default;

  virtual absl::string_view name() const = 0;

  // Oracle state variables, in the order Transfer sees them. The compiler
  // under test decides where state lives, so this mapping is part of its
  // output contract. Pipeline state not listed here is not compared.
  virtual std::vector<StateBinding> state_schema() const = 0;

  // Required PHV length, or 0 for any.
  virtual int phv_length() const { return 0; }

  // Processes one PHV. `state` is indexed like state_schema() and updated
  // in place. Must be deterministic.
  virtual Phv Transfer(const Phv& in, std::span<Value> state) const = 0;
};

// Checks the oracle against a pipeline: PHV length, and that the schema
// maps distinct variables onto existing stateful ALU state. Fails with
// kInvalidArgument ("schema mismatch").
absl::Status ValidateOracle(const SpecOracle& oracle, const Pipeline& pipeline);

class OracleRegistry {
 public:
  using Factory = std::function<std::unique_ptr<SpecOracle>()>;

  // Registry preloaded with the builtin oracles.
  static OracleRegistry& Default();

  // Fails with kAlreadyExists for a taken name.
  absl::Status Register(std::string name, Factory factory);

  // Fails with kNotFound; the message lists the registered names.
  absl::StatusOr<std::unique_ptr<SpecOracle>> Create(
      absl::string_view name) const;

  std::vector<std::string> Names() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, Factory, std::less<>> factories_;
};

// Builtin oracles, matching the fixture programs under fixtures/:
//
//   counter       s += 1; out[0] = s.                    s at stage_0_alu_0[0]
//   identity      out = in.                              no state
//   sampling      count = count > 8 ? 0 : count + 1;
//                 flag = count == 0; out = [flag, flag]. count at
//                 stage_0_alu_0[0], flag at stage_1_alu_0[0]
//   heavy_hitter  if in[0] > 5000 { hits += 1; bytes += in[0] };
//                 out = [hits, hits].                    hits, bytes at
//                 stage_0_alu_0[0], stage_0_alu_0[1]
void RegisterBuiltinOracles(OracleRegistry& registry);

// Oracle that replays a bound pipeline one stage at a time, with every
// state variable in its schema. Fuzzing a pipeline against an oracle made
// from itself, or from its optimized form, must pass.
std::unique_ptr<SpecOracle> MakePipelineOracle(const Pipeline& pipeline);

}  // namespace rmtsim

#endif  // RMTSIM_ORACLE_H_
