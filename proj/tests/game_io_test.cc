// Copyright 2026 The ce_sampler Authors
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

#include <string>

#include "ce_sampler/game_io.h"
#include "ce_sampler/rational.h"
#include "doctest.h"
#include "test_util.h"

namespace ce_sampler {
namespace {

using Kind = GameFileError::Kind;

Kind KindOf(const std::string& text) {
  try {
    ParseGameText(text, "inline.json");
  } catch (const GameFileError& e) {
    return e.kind();
  }
  FAIL("expected a GameFileError");
  return Kind::kMissingFile;
}

TEST_CASE("rational parsing") {
  CHECK(*ParseRational("3") == 3);
  CHECK(*ParseRational("-2/6") == Rational(-1, 3));
  CHECK(*ParseRational("0.25") == Rational(1, 4));
  CHECK(*ParseRational("+1.5") == Rational(3, 2));
  CHECK(*ParseRational("-.5") == Rational(-1, 2));
  CHECK_FALSE(ParseRational("1/0"));
  CHECK_FALSE(ParseRational("abc"));
  CHECK_FALSE(ParseRational(""));
  CHECK_FALSE(ParseRational("1.2.3"));
  CHECK(ToString(Rational(6, 4)) == "3/2");
}

TEST_CASE("bundled games") {
  const Game bos = testing::Bos();
  CHECK(bos.rows() == 2);
  CHECK(bos.Utility(Player::kOne, 0, 0) == 4);
  CHECK(bos.Utility(Player::kTwo, 0, 0) == 2);
  CHECK(bos.Utility(Player::kOne, 1, 1) == 2);
  CHECK(bos.Utility(Player::kTwo, 1, 1) == 4);
  CHECK(bos.Utility(Player::kOne, 0, 1) == 0);
  const Game coin = testing::CoinFlip();
  CHECK(coin.Utility(Player::kOne, 0, 0) == 1);
  CHECK(coin.Utility(Player::kTwo, 0, 0) == 0);
  CHECK(coin.Utility(Player::kTwo, 1, 1) == 1);
  CHECK(ParseGame(GameToJson(bos)) == bos);
}

TEST_CASE("game file errors") {
  try {
    ParseGameFile(testing::DataPath("no_such_file.json"));
    FAIL("expected an error");
  } catch (const GameFileError& e) {
    CHECK(e.kind() == Kind::kMissingFile);
  }
  try {
    ParseGameText("{\n  \"u1\": [[1, 2]\n", "broken.json");
    FAIL("expected an error");
  } catch (const GameFileError& e) {
    CHECK(e.kind() == Kind::kMalformedJson);
    CHECK(std::string(e.what()).find("broken.json:") != std::string::npos);
  }
  CHECK(KindOf(R"({"u1": [["1","2"],["3"]], "u2": [["1","2"],["3","4"]]})") ==
        Kind::kDimensionMismatch);
  CHECK(KindOf(R"({"u1": [["1","2"]], "u2": [["1","2"],["3","4"]]})") ==
        Kind::kDimensionMismatch);
  CHECK(KindOf(R"({"u1": [["x","2"]], "u2": [["1","2"]]})") == Kind::kNonRationalEntry);
  CHECK(KindOf(R"({"u1": [[1.5, 2]], "u2": [["1","2"]]})") == Kind::kNonRationalEntry);
  CHECK(KindOf(R"({"strategies": [["a"],["b"]], "u1": [["1","2"]], "u2": [["1","2"]]})") ==
        Kind::kDimensionMismatch);
  CHECK(KindOf(R"({"u1": [["1"]]})") == Kind::kMalformedJson);
  try {
    ParseGameText(R"({"u1": [["1","2"],["3"]], "u2": [["1","2"],["3","4"]]})", "g.json");
  } catch (const GameFileError& e) {
    CHECK(std::string(e.what()).find("u1[1]") != std::string::npos);
  }
}

TEST_CASE("distributions") {
  const Game bos = testing::Bos();
  const JointDistribution p =
      ParseDistribution(nlohmann::json::parse(R"({"probs": {"0,0": "1/2", "1,1": "0.5"}})"),
                        bos);
  CHECK(p == testing::BosFair());
  CHECK(ParseDistribution(DistributionToJson(p), bos) == p);
  CHECK(DistributionToJson(p)["probs"].size() == 2);
  CHECK_THROWS_AS(ParseDistribution(nlohmann::json::parse(R"({"probs": {"2,0": "1"}})"), bos),
                  GameFileError);
  CHECK_THROWS_AS(ParseDistribution(nlohmann::json::parse(R"({"probs": {"0,0": "1/2"}})"), bos),
                  GameFileError);
  CHECK(ParseDistributionFile(testing::DataPath("bos_fair.json"), bos) == p);
}

}  // namespace
}  // namespace ce_sampler
