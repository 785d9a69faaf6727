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

// JSON formats for games and joint distributions.
//
//   game:          {"strategies": [["A","B"],["A","B"]],
//                   "u1": [["4","0"],["0","2"]], "u2": [["2","0"],["0","4"]]}
//   distribution:  {"probs": {"0,0": "1/2", "1,1": "1/2"}}
//
// Utilities and probabilities are fraction or decimal strings; plain JSON
// integers are also accepted. Missing distribution keys are zero.

#ifndef CE_SAMPLER_GAME_IO_H_
#define CE_SAMPLER_GAME_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "ce_sampler/game.h"
#include "json.hpp"

namespace ce_sampler {

class GameFileError : public std::runtime_error {
 public:
  enum class Kind { kMissingFile, kMalformedJson, kDimensionMismatch, kNonRationalEntry };

  GameFileError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

Game ParseGame(const nlohmann::json& doc);
Game ParseGameText(const std::string& text, const std::string& source = "<string>");
Game ParseGameFile(const std::filesystem::path& path);

nlohmann::json GameToJson(const Game& game);

JointDistribution ParseDistribution(const nlohmann::json& doc, const Game& game);
JointDistribution ParseDistributionFile(const std::filesystem::path& path,
                                        const Game& game);

// Nonzero entries only, keyed "row,col", values as exact fraction strings.
nlohmann::json DistributionToJson(const JointDistribution& dist);

// Reads a whole file; throws GameFileError(kMissingFile) if it cannot.
std::string ReadFile(const std::filesystem::path& path);

// Parses JSON text, mapping syntax errors to kMalformedJson with the
// 1-based line and column of the failure.
nlohmann::json ParseJsonText(const std::string& text, const std::string& source);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_GAME_IO_H_
