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

#include "rmtsim/hardware_spec.h"

#include <set>
#include <system_error>

#include "absl/status/status.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "rmtsim/alu_parser.h"
#include "rmtsim/status_macros.h"
#include "src/file_util.h"

namespace rmtsim {
namespace {

absl::Status LineError(int line, absl::string_view msg) {
  return absl::InvalidArgumentError(
      absl::StrCat("hardware spec line ", line, ": ", msg));
}

}  // namespace

absl::Status ValidateHardwareSpec(const HardwareSpec& spec) {
  if (spec.depth < 1 || spec.width < 1 || spec.phv_length < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("depth, width and phv_length must be positive (got ",
                     spec.depth, ", ", spec.width, ", ", spec.phv_length, ")"));
  }
  if (static_cast<int>(spec.stage_assignments.size()) != spec.depth) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", spec.depth, " stage lists, got ",
                     spec.stage_assignments.size()));
  }
  for (size_t s = 0; s < spec.stage_assignments.size(); ++s) {
    if (static_cast<int>(spec.stage_assignments[s].size()) != spec.width) {
      return absl::InvalidArgumentError(
          absl::StrCat("stage ", s, " lists ", spec.stage_assignments[s].size(),
                       " ALUs, expected width ", spec.width));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<HardwareSpec> ParseHardwareSpec(absl::string_view source) {
  HardwareSpec spec;
  std::map<int, std::vector<std::string>> stages;
  std::set<std::string> seen;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(source, '\n')) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    std::pair<absl::string_view, absl::string_view> kv =
        absl::StrSplit(line, absl::MaxSplits('=', 1));
    const std::string key(absl::StripAsciiWhitespace(kv.first));
    const absl::string_view value = absl::StripAsciiWhitespace(kv.second);
    if (!absl::StrContains(line, '=') || key.empty()) {
      return LineError(line_no, "expected 'key = value'");
    }
    if (!seen.insert(key).second) {
      return LineError(line_no, absl::StrCat("duplicate key '", key, "'"));
    }
    if (key == "depth" || key == "width" || key == "phv_length") {
      int n = 0;
      if (!absl::SimpleAtoi(value, &n) || n < 1) {
        return LineError(
            line_no, absl::StrCat("'", key, "' must be a positive integer"));
      }
      (key == "depth"   ? spec.depth
       : key == "width" ? spec.width
                        : spec.phv_length) = n;
      continue;
    }
    int stage = -1;
    if (absl::StartsWith(key, "stage_") &&
        absl::SimpleAtoi(absl::string_view(key).substr(6), &stage) &&
        stage >= 0) {
      std::vector<std::string> names;
      for (absl::string_view n : absl::StrSplit(value, ',')) {
        n = absl::StripAsciiWhitespace(n);
        if (n.empty()) {
          return LineError(line_no, "empty ALU name in stage list");
        }
        names.emplace_back(n);
      }
      stages[stage] = std::move(names);
      continue;
    }
    return LineError(line_no, absl::StrCat("unknown key '", key, "'"));
  }
  for (const char* required : {"depth", "width", "phv_length"}) {
    if (seen.count(required) == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("hardware spec is missing '", required, "'"));
    }
  }
  for (int s = 0; s < spec.depth; ++s) {
    auto it = stages.find(s);
    if (it == stages.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("hardware spec is missing 'stage_", s, "'"));
    }
    spec.stage_assignments.push_back(it->second);
  }
  if (!stages.empty() && stages.rbegin()->first >= spec.depth) {
    return absl::InvalidArgumentError(absl::StrCat(
        "stage_", stages.rbegin()->first, " is beyond depth ", spec.depth));
  }
  RMTSIM_RETURN_IF_ERROR(ValidateHardwareSpec(spec));
  return spec;
}

absl::StatusOr<HardwareSpec> ParseHardwareSpecFile(
    const std::filesystem::path& path) {
  RMTSIM_ASSIGN_OR_RETURN(std::string source, internal::ReadFile(path));
  absl::StatusOr<HardwareSpec> spec = ParseHardwareSpec(source);
  if (!spec.ok()) {
    return absl::Status(
        spec.status().code(),
        absl::StrCat(path.string(), ": ", spec.status().message()));
  }
  return spec;
}

std::string SerializeHardwareSpec(const HardwareSpec& spec) {
  std::string out =
      absl::StrCat("depth = ", spec.depth, "\nwidth = ", spec.width,
                   "\nphv_length = ", spec.phv_length, "\n");
  for (size_t s = 0; s < spec.stage_assignments.size(); ++s) {
    absl::StrAppend(&out, "stage_", s, " = ",
                    absl::StrJoin(spec.stage_assignments[s], ", "), "\n");
  }
  return out;
}

absl::StatusOr<AluLibrary> LoadAlus(
    const HardwareSpec& spec,
    const std::vector<std::filesystem::path>& search_path,
    const std::vector<std::filesystem::path>& explicit_files) {
  AluLibrary lib;
  for (const std::filesystem::path& file : explicit_files) {
    RMTSIM_ASSIGN_OR_RETURN(AluProgram alu, ParseAluFile(file));
    std::string name = alu.name;
    lib[name] = std::make_shared<const AluProgram>(std::move(alu));
  }
  for (const auto& row : spec.stage_assignments) {
    for (const std::string& name : row) {
      if (lib.count(name) > 0) continue;
      bool found = false;
      for (const std::filesystem::path& dir : search_path) {
        const std::filesystem::path candidate = dir / (name + ".alu");
        std::error_code ec;
        if (!std::filesystem::is_regular_file(candidate, ec)) continue;
        RMTSIM_ASSIGN_OR_RETURN(AluProgram alu, ParseAluFile(candidate));
        lib[name] = std::make_shared<const AluProgram>(std::move(alu));
        found = true;
        break;
      }
      if (!found) {
        std::vector<std::string> dirs;
        for (const auto& d : search_path) dirs.push_back(d.string());
        return absl::NotFoundError(absl::StrCat(
            "unknown ALU '", name, "' (searched: ",
            dirs.empty() ? "<none>" : absl::StrJoin(dirs, ", "), ")"));
      }
    }
  }
  return lib;
}

}  // namespace rmtsim
