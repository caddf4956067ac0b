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

#include "rmtsim/trace_io.h"

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "json.hpp"

namespace rmtsim {
namespace {

nlohmann::json StateToJson(const StateSnapshot& state) {
  nlohmann::json j = nlohmann::json::object();
  for (const StateLayout::Entry& e : state.layout().entries()) {
    std::span<const Value> v = state.Get(e.coord);
    j[AluPath(e.coord)] = std::vector<Value>(v.begin(), v.end());
  }
  return j;
}

nlohmann::json TraceToJson(const Trace& trace) {
  nlohmann::json entries = nlohmann::json::array();
  for (const TraceEntry& e : trace.entries) {
    entries.push_back({{"tick", e.tick},
                       {"phv", e.phv.containers},
                       {"state", StateToJson(e.state)}});
  }
  return entries;
}

}  // namespace

std::string FormatPhv(const Phv& phv) {
  return absl::StrCat("[", absl::StrJoin(phv.containers, ","), "]");
}

std::string FormatState(const StateSnapshot& state) {
  std::vector<std::string> parts;
  for (const StateLayout::Entry& e : state.layout().entries()) {
    parts.push_back(absl::StrCat(AluPath(e.coord), ":[",
                                 absl::StrJoin(state.Get(e.coord), ","), "]"));
  }
  return absl::StrCat("{", absl::StrJoin(parts, ","), "}");
}

std::string FormatTraceEntry(const TraceEntry& entry) {
  return absl::StrCat("tick=", entry.tick, " phv=", FormatPhv(entry.phv),
                      " state=", FormatState(entry.state));
}

std::string FormatTrace(const Trace& trace) {
  std::string out;
  for (const TraceEntry& e : trace.entries) {
    absl::StrAppend(&out, FormatTraceEntry(e), "\n");
  }
  return out;
}

std::string SimulationResultToJson(const SimulationResult& result) {
  nlohmann::json j = {{"input", TraceToJson(result.input)},
                      {"output", TraceToJson(result.output)},
                      {"final_state", StateToJson(result.final_state)}};
  return j.dump();
}

absl::StatusOr<StateAssignment> ParseStateAssignment(absl::string_view source) {
  StateAssignment out;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(source, '\n')) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    auto error = [line_no](absl::string_view msg) {
      return absl::InvalidArgumentError(
          absl::StrCat("state file line ", line_no, ": ", msg));
    };
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) return error("expected 'alu = values'");
    absl::string_view key = absl::StripAsciiWhitespace(line.substr(0, eq));
    AluCoord coord;
    std::vector<absl::string_view> parts = absl::StrSplit(key, '_');
    if (parts.size() != 4 || parts[0] != "stage" || parts[2] != "alu" ||
        !absl::SimpleAtoi(parts[1], &coord.stage) ||
        !absl::SimpleAtoi(parts[3], &coord.alu) || coord.stage < 0 ||
        coord.alu < 0) {
      return error(
          absl::StrCat("expected stage_<s>_alu_<a>, found '", key, "'"));
    }
    std::vector<Value> values;
    for (absl::string_view v : absl::StrSplit(line.substr(eq + 1), ',')) {
      v = absl::StripAsciiWhitespace(v);
      Value x = 0;
      if (!absl::SimpleAtoi(v, &x)) {
        return error(absl::StrCat("invalid value '", v, "'"));
      }
      values.push_back(x);
    }
    if (!out.emplace(coord, std::move(values)).second) {
      return error(absl::StrCat("duplicate entry for ", key));
    }
  }
  return out;
}

std::string FormatStateAssignment(const StateAssignment& assignment) {
  std::string out;
  for (const auto& [coord, values] : assignment) {
    absl::StrAppend(&out, AluPath(coord), " = ", absl::StrJoin(values, ", "),
                    "\n");
  }
  return out;
}

}  // namespace rmtsim
