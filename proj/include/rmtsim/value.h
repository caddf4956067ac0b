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

#ifndef RMTSIM_VALUE_H_
#define RMTSIM_VALUE_H_

#include <cstdint>

namespace rmtsim {

// Every container, state variable, immediate and ALU result is a 32-bit
// two's-complement integer. Add and subtract wrap.
using Value = int32_t;

// Machine-code values are stored unsigned and reinterpreted as Value.
using CodeValue = uint32_t;

inline constexpr uint64_t kCodeValueLimit = uint64_t{1} << 32;

constexpr Value FromCode(CodeValue v) { return static_cast<Value>(v); }
constexpr CodeValue ToCode(Value v) { return static_cast<CodeValue>(v); }

constexpr Value WrapAdd(Value a, Value b) {
  return static_cast<Value>(static_cast<uint32_t>(a) +
                            static_cast<uint32_t>(b));
}

constexpr Value WrapSub(Value a, Value b) {
  return static_cast<Value>(static_cast<uint32_t>(a) -
                            static_cast<uint32_t>(b));
}

}  // namespace rmtsim

#endif  // RMTSIM_VALUE_H_
