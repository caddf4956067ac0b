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

#ifndef RMTSIM_TRACE_IO_H_
#define RMTSIM_TRACE_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "rmtsim/simulator.h"

namespace rmtsim {

// "[c0,c1,...]"
std::string FormatPhv(const Phv& phv);

// "{stage_0_alu_0:[v0,...],...}" in (stage, alu) order.
std::string FormatState(const StateSnapshot& state);

// "tick=<t> phv=[...] state={...}"
std::string FormatTraceEntry(const TraceEntry& entry);

// One entry per line.
std::string FormatTrace(const Trace& trace);

// Structured dump of both traces and the final state as JSON.
std::string SimulationResultToJson(const SimulationResult& result);

// Explicit initial state, one stateful ALU per line:
//
//   stage_0_alu_1 = 5, 7
//
// '#' starts a comment. Values are signed 32-bit decimals.
absl::StatusOr<StateAssignment> ParseStateAssignment(absl::string_view source);
std::string FormatStateAssignment(const StateAssignment& assignment);

}  // namespace rmtsim

#endif  // RMTSIM_TRACE_IO_H_
