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

#ifndef RMTSIM_ALU_PARSER_H_
#define RMTSIM_ALU_PARSER_H_

#include <filesystem>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "rmtsim/alu_program.h"

namespace rmtsim {

// Parses and validates one ALU description (grammar in docs/alu_dsl.md).
//
// Both failure kinds return kInvalidArgument. Syntax errors start with
// "syntax error at offset N" and name the expected token. Semantic errors
// start with "validation error:".
//
// `name` is the file-derived ALU name. When non-empty it must match the
// name in the header.
absl::StatusOr<AluProgram> ParseAlu(absl::string_view source,
                                    absl::string_view name);

// Reads `path` and parses it with the file stem as the name.
absl::StatusOr<AluProgram> ParseAluFile(const std::filesystem::path& path);

}  // namespace rmtsim

#endif  // RMTSIM_ALU_PARSER_H_
