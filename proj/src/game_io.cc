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

#include "ce_sampler/game_io.h"

#include <fstream>
#include <sstream>

namespace ce_sampler {
namespace {

using Kind = GameFileError::Kind;
using nlohmann::json;

Rational ParseEntry(const json& value, const std::string& field) {
  if (value.is_string()) {
    if (auto r = ParseRational(value.get<std::string>())) return *r;
    throw GameFileError(Kind::kNonRationalEntry,
                        field + ": \"" + value.get<std::string>() +
                            "\" is not a fraction or decimal");
  }
  if (value.is_number_integer()) return Rational(value.dump());
  throw GameFileError(Kind::kNonRationalEntry,
                      field + ": expected a fraction string, got " + value.dump());
}

std::vector<std::vector<Rational>> ParseMatrix(const json& doc,
                                               const std::string& field) {
  if (!doc.contains(field)) {
    throw GameFileError(Kind::kMalformedJson, "missing field \"" + field + "\"");
  }
  const json& m = doc.at(field);
  if (!m.is_array() || m.empty()) {
    throw GameFileError(Kind::kDimensionMismatch,
                        field + ": expected a non-empty array of rows");
  }
  std::vector<std::vector<Rational>> out;
  std::size_t width = 0;
  for (std::size_t r = 0; r < m.size(); ++r) {
    const std::string where = field + "[" + std::to_string(r) + "]";
    if (!m[r].is_array() || m[r].empty()) {
      throw GameFileError(Kind::kDimensionMismatch,
                          where + ": expected a non-empty array");
    }
    if (r == 0) width = m[r].size();
    if (m[r].size() != width) {
      throw GameFileError(Kind::kDimensionMismatch,
                          where + ": has " + std::to_string(m[r].size()) +
                              " entries, row 0 has " + std::to_string(width));
    }
    std::vector<Rational> row;
    for (std::size_t c = 0; c < m[r].size(); ++c) {
      row.push_back(ParseEntry(m[r][c], where + "[" + std::to_string(c) + "]"));
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::string> DefaultLabels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw GameFileError(Kind::kMissingFile,
                        path.string() + ": cannot open file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json ParseJsonText(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw GameFileError(Kind::kMalformedJson,
                        source + ":" + std::to_string(line) + ":" +
                            std::to_string(col) + ": " + e.what());
  }
}

Game ParseGame(const json& doc) {
  if (!doc.is_object()) {
    throw GameFileError(Kind::kMalformedJson, "game: expected a JSON object");
  }
  auto u1 = ParseMatrix(doc, "u1");
  auto u2 = ParseMatrix(doc, "u2");
  if (u1.size() != u2.size() || u1[0].size() != u2[0].size()) {
    throw GameFileError(Kind::kDimensionMismatch,
                        "u2: shape " + std::to_string(u2.size()) + "x" +
                            std::to_string(u2[0].size()) + " differs from u1 " +
                            std::to_string(u1.size()) + "x" +
                            std::to_string(u1[0].size()));
  }
  std::vector<std::string> labels_one = DefaultLabels(u1.size());
  std::vector<std::string> labels_two = DefaultLabels(u1[0].size());
  if (doc.contains("strategies")) {
    const json& s = doc.at("strategies");
    if (!s.is_array() || s.size() != 2 || !s[0].is_array() || !s[1].is_array()) {
      throw GameFileError(Kind::kMalformedJson,
                          "strategies: expected two arrays of labels");
    }
    try {
      labels_one = s[0].get<std::vector<std::string>>();
      labels_two = s[1].get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw GameFileError(Kind::kMalformedJson, "strategies: labels must be strings");
    }
    if (labels_one.size() != u1.size()) {
      throw GameFileError(Kind::kDimensionMismatch,
                          "strategies[0]: " + std::to_string(labels_one.size()) +
                              " labels for " + std::to_string(u1.size()) + " rows");
    }
    if (labels_two.size() != u1[0].size()) {
      throw GameFileError(Kind::kDimensionMismatch,
                          "strategies[1]: " + std::to_string(labels_two.size()) +
                              " labels for " + std::to_string(u1[0].size()) +
                              " columns");
    }
  }
  return Game(std::move(labels_one), std::move(labels_two), std::move(u1),
              std::move(u2));
}

Game ParseGameText(const std::string& text, const std::string& source) {
  json doc = ParseJsonText(text, source);
  try {
    return ParseGame(doc);
  } catch (const GameFileError& e) {
    throw GameFileError(e.kind(), source + ": " + e.what());
  }
}

Game ParseGameFile(const std::filesystem::path& path) {
  return ParseGameText(ReadFile(path), path.string());
}

json GameToJson(const Game& game) {
  json doc;
  doc["strategies"] = json::array({json(game.labels(Player::kOne)), json(game.labels(Player::kTwo))});
  for (Player p : {Player::kOne, Player::kTwo}) {
    json m = json::array();
    for (int r = 0; r < game.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < game.cols(); ++c)
        row.push_back(ToString(game.Utility(p, r, c)));
      m.push_back(row);
    }
    doc[p == Player::kOne ? "u1" : "u2"] = m;
  }
  return doc;
}

JointDistribution ParseDistribution(const json& doc, const Game& game) {
  if (!doc.is_object() || !doc.contains("probs") || !doc.at("probs").is_object()) {
    throw GameFileError(Kind::kMalformedJson,
                        "distribution: expected {\"probs\": {...}}");
  }
  std::vector<Rational> probs(game.NumJoint(), Rational(0));
  for (const auto& [key, value] : doc.at("probs").items()) {
    int row = -1, col = -1;
    char comma = 0;
    std::istringstream in(key);
    if (!(in >> row >> comma >> col) || comma != ',' || !in.eof() ||
        row < 0 || col < 0 || row >= game.rows() || col >= game.cols()) {
      throw GameFileError(Kind::kDimensionMismatch,
                          "probs: key \"" + key + "\" is not a valid row,col");
    }
    probs[row * game.cols() + col] = ParseEntry(value, "probs[\"" + key + "\"]");
  }
  try {
    return JointDistribution(game.rows(), game.cols(), std::move(probs));
  } catch (const std::invalid_argument& e) {
    throw GameFileError(Kind::kNonRationalEntry, std::string("probs: ") + e.what());
  }
}

JointDistribution ParseDistributionFile(const std::filesystem::path& path,
                                        const Game& game) {
  try {
    return ParseDistribution(ParseJsonText(ReadFile(path), path.string()), game);
  } catch (const GameFileError& e) {
    if (e.kind() == Kind::kMissingFile) throw;
    throw GameFileError(e.kind(), path.string() + ": " + e.what());
  }
}

json DistributionToJson(const JointDistribution& dist) {
  json probs = json::object();
  for (int r = 0; r < dist.rows(); ++r) {
    for (int c = 0; c < dist.cols(); ++c) {
      const Rational& p = dist({r, c});
      if (p != 0) probs[std::to_string(r) + "," + std::to_string(c)] = ToString(p);
    }
  }
  return json{{"probs", probs}};
}

}  // namespace ce_sampler
