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

#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "rmtsim/traffic.h"
#include "tests/test_util.h"

namespace rmtsim {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::Optional;
using ::testing::Pair;
using ::testing::StartsWith;

TEST(MachineCodeTest, ParsesPairsInOrder) {
  ASSERT_OK_AND_ASSIGN(MachineCode mc, ParseMachineCode(R"(
# leading comment
b_1 = 7
a_0=0   # trailing comment

c = 4294967295
)"));
  EXPECT_THAT(mc.pairs(), ElementsAre(Pair("b_1", 7u), Pair("a_0", 0u),
                                      Pair("c", 4294967295u)));
  EXPECT_THAT(mc.Get("a_0"), Optional(0u));
  EXPECT_EQ(mc.Get("zzz"), std::nullopt);
}

TEST(MachineCodeTest, EmptySourceIsEmptyCode) {
  ASSERT_OK_AND_ASSIGN(MachineCode mc, ParseMachineCode("\n# nothing\n"));
  EXPECT_EQ(mc.size(), 0u);
}

TEST(MachineCodeTest, DuplicateNameReportsBothLines) {
  absl::StatusOr<MachineCode> mc = ParseMachineCode("a = 1\nb = 2\na = 3\n");
  ASSERT_FALSE(mc.ok());
  EXPECT_EQ(mc.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(std::string(mc.status().message()),
              StartsWith("line 3: duplicate name 'a'"));
  EXPECT_THAT(std::string(mc.status().message()), HasSubstr("line 1"));
}

TEST(MachineCodeTest, ValueOverflow) {
  absl::StatusOr<MachineCode> mc = ParseMachineCode("x = 4294967296\n");
  ASSERT_FALSE(mc.ok());
  EXPECT_THAT(std::string(mc.status().message()),
              StartsWith("line 1: value overflow"));
  mc = ParseMachineCode("x = 99999999999999999999999\n");
  ASSERT_FALSE(mc.ok());
  EXPECT_THAT(std::string(mc.status().message()), HasSubstr("value overflow"));
}

TEST(MachineCodeTest, SyntaxErrors) {
  for (const char* bad : {"x 1", "x = -1", "x = 0x10", "X = 1", "= 3",
                          "x = ", "x = 1 2", "a-b = 1"}) {
    absl::StatusOr<MachineCode> mc = ParseMachineCode(bad);
    ASSERT_FALSE(mc.ok()) << bad;
    EXPECT_THAT(std::string(mc.status().message()),
                StartsWith("line 1: syntax error"))
        << bad;
  }
}

TEST(MachineCodeTest, SerializeRoundTrip) {
  MachineCode mc;
  ASSERT_OK(mc.Add("z", 3));
  ASSERT_OK(mc.Add("a", 4000000000u));
  EXPECT_EQ(SerializeMachineCode(mc), "z = 3\na = 4000000000\n");
  ASSERT_OK_AND_ASSIGN(MachineCode again,
                       ParseMachineCode(SerializeMachineCode(mc)));
  EXPECT_EQ(again, mc);
}

TEST(MachineCodeTest, AddSetRemove) {
  MachineCode mc;
  ASSERT_OK(mc.Add("a", 1));
  EXPECT_EQ(mc.Add("a", 2).code(), absl::StatusCode::kAlreadyExists);
  ASSERT_OK(mc.Set("a", 5));
  EXPECT_THAT(mc.Get("a"), Optional(5u));
  EXPECT_EQ(mc.Set("b", 1).code(), absl::StatusCode::kNotFound);
  ASSERT_OK(mc.Add("b", 2));
  mc.Remove("a");
  EXPECT_FALSE(mc.Contains("a"));
  EXPECT_THAT(mc.pairs(), ElementsAre(Pair("b", 2u)));
  ASSERT_OK(mc.Add("a", 9));
  EXPECT_THAT(mc.pairs(), ElementsAre(Pair("b", 2u), Pair("a", 9u)));
}

SlotCatalog SmallCatalog() {
  SlotCatalog c;
  EXPECT_OK(c.Add({"op", 2, SlotKind::kAluHole}));
  EXPECT_OK(c.Add({"imm", kCodeValueLimit, SlotKind::kAluHole}));
  EXPECT_OK(c.Add({"mux", 3, SlotKind::kInputMuxCtrl}));
  return c;
}

TEST(CatalogCheckTest, CleanCodeHasNoDiagnostics) {
  ASSERT_OK_AND_ASSIGN(MachineCode mc,
                       ParseMachineCode("mux = 2\nop = 1\nimm = 4294967295\n"));
  EXPECT_TRUE(CheckAgainstCatalog(mc, SmallCatalog()).empty());
}

TEST(CatalogCheckTest, ReportsEveryProblem) {
  ASSERT_OK_AND_ASSIGN(MachineCode mc,
                       ParseMachineCode("extra = 1\nop = 2\nbogus = 7\n"));
  std::vector<std::string> got;
  for (const Diagnostic& d : CheckAgainstCatalog(mc, SmallCatalog())) {
    got.push_back(d.ToString());
  }
  EXPECT_THAT(got,
              ElementsAre("OutOfRange: op = 2 outside [0, 2)",
                          "MissingSlot: imm (range [0, 4294967296))",
                          "MissingSlot: mux (range [0, 3))",
                          "UnknownName: extra = 1", "UnknownName: bogus = 7"));
}

TEST(CatalogCheckTest, CatalogRejectsDuplicates) {
  SlotCatalog c = SmallCatalog();
  EXPECT_EQ(c.Add({"op", 2, SlotKind::kAluHole}).code(),
            absl::StatusCode::kAlreadyExists);
  ASSERT_NE(c.Find("mux"), nullptr);
  EXPECT_EQ(c.Find("mux")->upper_bound, 3u);
  EXPECT_EQ(c.Find("nope"), nullptr);
}

TEST(CatalogCheckTest, RandomMachineCodeIsAlwaysClean) {
  for (const std::string& shape : testing::ShapeFixtures()) {
    ASSERT_OK_AND_ASSIGN(Pipeline p, testing::LoadFixture(shape));
    for (uint64_t seed = 0; seed < 20; ++seed) {
      MachineCode mc = RandomMachineCode(p.catalog(), seed);
      EXPECT_TRUE(CheckAgainstCatalog(mc, p.catalog()).empty()) << shape;
      EXPECT_EQ(mc.size(), p.catalog().size());
      EXPECT_EQ(mc, RandomMachineCode(p.catalog(), seed));
    }
  }
}

}  // namespace
}  // namespace rmtsim
