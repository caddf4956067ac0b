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

#include "rmtsim/oracle.h"

#include <atomic>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tests/test_util.h"

namespace rmtsim {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::IsSupersetOf;

std::unique_ptr<SpecOracle> Builtin(absl::string_view name) {
  absl::StatusOr<std::unique_ptr<SpecOracle>> o =
      OracleRegistry::Default().Create(name);
  EXPECT_TRUE(o.ok()) << o.status();
  return o.ok() ? *std::move(o) : nullptr;
}

TEST(OracleRegistryTest, DefaultHasBuiltins) {
  EXPECT_THAT(
      OracleRegistry::Default().Names(),
      IsSupersetOf({"counter", "heavy_hitter", "identity", "sampling"}));
}

TEST(OracleRegistryTest, UnknownNameListsChoices) {
  OracleRegistry r;
  RegisterBuiltinOracles(r);
  absl::StatusOr<std::unique_ptr<SpecOracle>> o = r.Create("nope");
  ASSERT_FALSE(o.ok());
  EXPECT_EQ(o.status().code(), absl::StatusCode::kNotFound);
  EXPECT_EQ(std::string(o.status().message()),
            "unknown oracle 'nope'; registered oracles: counter, heavy_hitter, "
            "identity, sampling");
}

TEST(OracleRegistryTest, RegisterRejectsDuplicates) {
  OracleRegistry r;
  RegisterBuiltinOracles(r);
  EXPECT_EQ(r.Register("counter", [] { return std::unique_ptr<SpecOracle>(); })
                .code(),
            absl::StatusCode::kAlreadyExists);
}

TEST(OracleRegistryTest, ConcurrentCreate) {
  std::vector<std::thread> threads;
  std::atomic<int> created{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&created] {
      for (int i = 0; i < 100; ++i) {
        if (OracleRegistry::Default().Create("sampling").ok()) ++created;
      }
    });
  }
  for (std::thread& t : threads) t.join();
  EXPECT_EQ(created.load(), 400);
}

TEST(BuiltinOracleTest, Counter) {
  auto o = Builtin("counter");
  std::vector<Value> s = {0};
  for (Value want = 1; want <= 5; ++want) {
    EXPECT_EQ(o->Transfer(Phv{{99}}, s), (Phv{{want}}));
  }
  EXPECT_THAT(s, ElementsAre(5));
}

TEST(BuiltinOracleTest, Sampling) {
  auto o = Builtin("sampling");
  std::vector<Value> s = {7, 0};
  EXPECT_EQ(o->Transfer(Phv{{0, 0}}, s), (Phv{{0, 0}}));
  EXPECT_THAT(s, ElementsAre(8, 0));
  EXPECT_EQ(o->Transfer(Phv{{0, 0}}, s), (Phv{{0, 0}}));
  EXPECT_THAT(s, ElementsAre(9, 0));
  EXPECT_EQ(o->Transfer(Phv{{0, 0}}, s), (Phv{{1, 1}}));
  EXPECT_THAT(s, ElementsAre(0, 1));
}

TEST(BuiltinOracleTest, HeavyHitter) {
  auto o = Builtin("heavy_hitter");
  std::vector<Value> s = {0, 0};
  EXPECT_EQ(o->Transfer(Phv{{5000, 1}}, s), (Phv{{0, 0}}));
  EXPECT_EQ(o->Transfer(Phv{{5001, 1}}, s), (Phv{{1, 1}}));
  EXPECT_EQ(o->Transfer(Phv{{9000, 1}}, s), (Phv{{2, 2}}));
  EXPECT_THAT(s, ElementsAre(2, 14001));
}

TEST(ValidateOracleTest, BuiltinsMatchTheirFixtures) {
  for (const auto& [hw, oracle] :
       std::vector<std::pair<std::string, std::string>>{
           {"counter_1x1", "counter"},
           {"identity_2x2", "identity"},
           {"sampling_2x1", "sampling"},
           {"heavy_hitter_1x1", "heavy_hitter"}}) {
    ASSERT_OK_AND_ASSIGN(Pipeline p, testing::LoadFixture(hw));
    EXPECT_OK(ValidateOracle(*Builtin(oracle), p));
  }
}

TEST(ValidateOracleTest, Mismatches) {
  ASSERT_OK_AND_ASSIGN(Pipeline identity, testing::LoadFixture("identity_2x2"));
  ASSERT_OK_AND_ASSIGN(Pipeline sampling, testing::LoadFixture("sampling_2x1"));
  ASSERT_OK_AND_ASSIGN(Pipeline counter, testing::LoadFixture("counter_1x1"));
  // State on a stateless ALU.
  absl::Status st = ValidateOracle(*Builtin("counter"), identity);
  EXPECT_EQ(st.code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(std::string(st.message()), HasSubstr("schema mismatch"));
  // PHV length.
  st = ValidateOracle(*Builtin("sampling"), counter);
  EXPECT_THAT(std::string(st.message()), HasSubstr("schema mismatch"));
  // State index past the ALU's width.
  st = ValidateOracle(*Builtin("heavy_hitter"), sampling);
  EXPECT_THAT(std::string(st.message()), HasSubstr("schema mismatch"));
}

class DuplicateBindingOracle : public SpecOracle {
 public:
  absl::string_view name() const override { return "dup"; }
  std::vector<StateBinding> state_schema() const override {
    return {{"a", {0, 0}, 0}, {"b", {0, 0}, 0}};
  }
  Phv Transfer(const Phv& in, std::span<Value>) const override { return in; }
};

TEST(ValidateOracleTest, DuplicateBinding) {
  ASSERT_OK_AND_ASSIGN(Pipeline counter, testing::LoadFixture("counter_1x1"));
  absl::Status st = ValidateOracle(DuplicateBindingOracle(), counter);
  EXPECT_EQ(st.code(), absl::StatusCode::kInvalidArgument);
}

TEST(PipelineOracleTest, ReplaysCounter) {
  ASSERT_OK_AND_ASSIGN(Pipeline p,
                       testing::LoadFixture("counter_1x1", "counter"));
  std::unique_ptr<SpecOracle> o = MakePipelineOracle(p);
  ASSERT_EQ(o->state_schema().size(), 1u);
  EXPECT_EQ(o->state_schema()[0].var, "stage_0_alu_0.s0");
  EXPECT_OK(ValidateOracle(*o, p));
  std::vector<Value> s = {10};
  EXPECT_EQ(o->Transfer(Phv{{0}}, s), (Phv{{11}}));
  EXPECT_THAT(s, ElementsAre(11));
}

}  // namespace
}  // namespace rmtsim
