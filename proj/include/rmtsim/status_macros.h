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

#ifndef RMTSIM_STATUS_MACROS_H_
#define RMTSIM_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define RMTSIM_RETURN_IF_ERROR(expr)      \
  do {                                    \
    absl::Status _rmtsim_status = (expr); \
    if (!_rmtsim_status.ok()) {           \
      return _rmtsim_status;              \
    }                                     \
  } while (0)

#define RMTSIM_CONCAT_INNER(a, b) a##b
#define RMTSIM_CONCAT(a, b) RMTSIM_CONCAT_INNER(a, b)

#define RMTSIM_ASSIGN_OR_RETURN_IMPL(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                 \
  if (!statusor.ok()) {                                    \
    return std::move(statusor).status();                   \
  }                                                        \
  lhs = *std::move(statusor)

#define RMTSIM_ASSIGN_OR_RETURN(lhs, rexpr)                                \
  RMTSIM_ASSIGN_OR_RETURN_IMPL(RMTSIM_CONCAT(_rmtsim_statusor_, __LINE__), \
                               lhs, rexpr)

#endif  // RMTSIM_STATUS_MACROS_H_
