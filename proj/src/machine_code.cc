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

#include "rmtsim/machine_code.h"

#include <algorithm>
#include <unordered_map>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace rmtsim {

absl::Status MachineCode::Add(std::string name, CodeValue value) {
  if (index_.count(name) > 0) {
    return absl::AlreadyExistsError(
        absl::StrCat("duplicate name '", name, "'"));
  }
  index_.emplace(name, pairs_.size());
  pairs_.emplace_back(std::move(name), value);
  return absl::OkStatus();
}

absl::Status MachineCode::Set(absl::string_view name, CodeValue value) {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    return absl::NotFoundError(
        absl::StrCat("no machine-code entry '", name, "'"));
  }
  pairs_[it->second].second = value;
  return absl::OkStatus();
}

void MachineCode::Remove(absl::string_view name) {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return;
  pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(it->second));
  index_.clear();
  for (size_t i = 0; i < pairs_.size(); ++i) index_[pairs_[i].first] = i;
}

std::optional<CodeValue> MachineCode::Get(absl::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return pairs_[it->second].second;
}

namespace {

bool ValidName(absl::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return absl::ascii_islower(static_cast<unsigned char>(c)) ||
           absl::ascii_isdigit(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

absl::StatusOr<MachineCode> ParseMachineCode(absl::string_view source) {
  MachineCode mc;
  std::unordered_map<std::string, int> first_line;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(source, '\n')) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_no, ": syntax error: expected 'name = value'"));
    }
    const absl::string_view name =
        absl::StripAsciiWhitespace(line.substr(0, eq));
    const absl::string_view digits =
        absl::StripAsciiWhitespace(line.substr(eq + 1));
    if (!ValidName(name)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": syntax error: invalid name '", name,
                       "' (expected [a-z0-9_]+)"));
    }
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) {
          return absl::ascii_isdigit(static_cast<unsigned char>(c));
        })) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": syntax error: value '", digits,
                       "' is not a decimal unsigned integer"));
    }
    uint64_t value = 0;
    if (!absl::SimpleAtoi(digits, &value) || value >= kCodeValueLimit) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": value overflow for '", name,
                       "': ", digits, " does not fit in 32 bits"));
    }
    auto [it, inserted] = first_line.emplace(std::string(name), line_no);
    if (!inserted) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": duplicate name '", name,
                       "' (first defined on line ", it->second, ")"));
    }
    // Cannot fail: uniqueness checked above.
    (void)mc.Add(std::string(name), static_cast<CodeValue>(value));
  }
  return mc;
}

std::string SerializeMachineCode(const MachineCode& mc) {
  std::string out;
  for (const auto& [name, value] : mc.pairs()) {
    absl::StrAppend(&out, name, " = ", value, "\n");
  }
  return out;
}

absl::Status SlotCatalog::Add(CatalogEntry entry) {
  if (index_.count(entry.name) > 0) {
    return absl::AlreadyExistsError(
        absl::StrCat("catalog already has '", entry.name, "'"));
  }
  index_.emplace(entry.name, entries_.size());
  entries_.push_back(std::move(entry));
  return absl::OkStatus();
}

const CatalogEntry* SlotCatalog::Find(absl::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::string Diagnostic::ToString() const {
  switch (kind) {
    case Kind::kMissingSlot:
      return absl::StrCat("MissingSlot: ", name, " (range [0, ", upper_bound,
                          "))");
    case Kind::kUnknownName:
      return absl::StrCat("UnknownName: ", name, " = ", value);
    case Kind::kOutOfRange:
      return absl::StrCat("OutOfRange: ", name, " = ", value, " outside [0, ",
                          upper_bound, ")");
  }
  return "?";
}

std::vector<Diagnostic> CheckAgainstCatalog(const MachineCode& mc,
                                            const SlotCatalog& catalog) {
  std::vector<Diagnostic> out;
  for (const CatalogEntry& e : catalog.entries()) {
    std::optional<CodeValue> v = mc.Get(e.name);
    if (!v.has_value()) {
      out.push_back({Diagnostic::Kind::kMissingSlot, e.name, 0, e.upper_bound});
    } else if (*v >= e.upper_bound) {
      out.push_back({Diagnostic::Kind::kOutOfRange, e.name, *v, e.upper_bound});
    }
  }
  for (const auto& [name, value] : mc.pairs()) {
    if (catalog.Find(name) == nullptr) {
      out.push_back({Diagnostic::Kind::kUnknownName, name, value, 0});
    }
  }
  return out;
}

}  // namespace rmtsim
