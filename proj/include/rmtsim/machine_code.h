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

// Machine code is an ordered list of (name, value) pairs. The text form is
// one "name = value" pair per line; '#' starts a comment.

#ifndef RMTSIM_MACHINE_CODE_H_
#define RMTSIM_MACHINE_CODE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "rmtsim/value.h"

namespace rmtsim {

class MachineCode {
 public:
  MachineCode() = default;

  // Fails with kAlreadyExists if `name` is already present.
  absl::Status Add(std::string name, CodeValue value);

  // Replaces an existing value; fails with kNotFound otherwise.
  absl::Status Set(absl::string_view name, CodeValue value);

  // Drops `name` if present.
  void Remove(absl::string_view name);

  std::optional<CodeValue> Get(absl::string_view name) const;
  bool Contains(absl::string_view name) const {
    return index_.find(std::string(name)) != index_.end();
  }

  const std::vector<std::pair<std::string, CodeValue>>& pairs() const {
    return pairs_;
  }
  size_t size() const { return pairs_.size(); }

  friend bool operator==(const MachineCode& a, const MachineCode& b) {
    return a.pairs_ == b.pairs_;
  }

 private:
  std::vector<std::pair<std::string, CodeValue>> pairs_;
  std::unordered_map<std::string, size_t> index_;
};

// Errors (all kInvalidArgument) start with "line N:" and then one of
// "syntax error", "duplicate name" or "value overflow".
absl::StatusOr<MachineCode> ParseMachineCode(absl::string_view source);

std::string SerializeMachineCode(const MachineCode& mc);

enum class SlotKind { kAluHole, kInputMuxCtrl, kOutputMuxCtrl };

struct CatalogEntry {
  std::string name;
  // Valid values are [0, upper_bound).
  uint64_t upper_bound = 0;
  SlotKind kind = SlotKind::kAluHole;
};

// Every configurable point of one pipeline shape.
class SlotCatalog {
 public:
  // Fails with kAlreadyExists on a repeated name.
  absl::Status Add(CatalogEntry entry);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* Find(absl::string_view name) const;
  size_t size() const { return entries_.size(); }

 private:
  std::vector<CatalogEntry> entries_;
  std::unordered_map<std::string, size_t> index_;
};

struct Diagnostic {
  enum class Kind { kMissingSlot, kUnknownName, kOutOfRange };
  Kind kind;
  std::string name;
  // Set for kUnknownName and kOutOfRange.
  CodeValue value = 0;
  // Set for kMissingSlot and kOutOfRange.
  uint64_t upper_bound = 0;

  std::string ToString() const;
};

// Empty iff `mc` configures every catalog entry with an in-range value and
// names nothing else. Catalog-order diagnostics come first, then unknown
// names in machine-code order.
std::vector<Diagnostic> CheckAgainstCatalog(const MachineCode& mc,
                                            const SlotCatalog& catalog);

}  // namespace rmtsim

#endif  // RMTSIM_MACHINE_CODE_H_
