// Copyright 2026 The symdp Authors
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

#include "symdp/core.h"

#include <cctype>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"

namespace symdp {

Alphabet::Alphabet(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  for (Symbol i = 0; i < tokens_.size(); ++i) index_.emplace(tokens_[i], i);
}

absl::StatusOr<Alphabet> Alphabet::Create(std::vector<std::string> tokens) {
  if (tokens.empty()) {
    return absl::InvalidArgumentError("alphabet must contain at least one token");
  }
  std::map<std::string_view, std::size_t> seen;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto [it, inserted] = seen.emplace(tokens[i], i);
    if (!inserted) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate token '", tokens[i], "' at positions ",
                       it->second, " and ", i));
    }
  }
  return Alphabet(std::move(tokens));
}

absl::StatusOr<Alphabet> Alphabet::FromJson(std::string_view json) {
  nlohmann::json parsed = nlohmann::json::parse(json, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_array()) {
    return absl::InvalidArgumentError(
        "alphabet JSON must be an array of strings");
  }
  std::vector<std::string> tokens;
  for (const auto& item : parsed) {
    if (!item.is_string()) {
      return absl::InvalidArgumentError(
          "alphabet JSON must be an array of strings");
    }
    tokens.push_back(item.get<std::string>());
  }
  return Create(std::move(tokens));
}

std::string Alphabet::ToJson() const { return nlohmann::json(tokens_).dump(); }

std::optional<Symbol> Alphabet::index(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<Word> Word::Create(std::vector<Symbol> symbols,
                                  std::size_t alphabet_size) {
  if (symbols.empty()) {
    return absl::InvalidArgumentError("words must have length >= 1");
  }
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= alphabet_size) {
      return absl::InvalidArgumentError(
          absl::StrCat("symbol index ", symbols[i], " at position ", i,
                       " is outside an alphabet of size ", alphabet_size));
    }
  }
  return Word(std::move(symbols), alphabet_size);
}

absl::Status MechanismConfig::Validate() const {
  if (!(epsilon >= 0.0) || std::isnan(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be >= 0, got ", epsilon));
  }
  if (k < 1) {
    return absl::InvalidArgumentError(absl::StrCat("k must be >= 1, got ", k));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::size_t> HammingDistance(const Word& a, const Word& b) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Hamming distance needs equal lengths, got ", a.size(), " and ",
        b.size()));
  }
  if (a.alphabet_size() != b.alphabet_size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Hamming distance needs words over the same alphabet, got sizes ",
        a.alphabet_size(), " and ", b.alphabet_size()));
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

absl::StatusOr<bool> IsAdjacent(const Word& a, const Word& b, int k) {
  if (k < 0) return absl::InvalidArgumentError("k must be >= 0");
  absl::StatusOr<std::size_t> d = HammingDistance(a, b);
  if (!d.ok()) return d.status();
  return *d <= static_cast<std::size_t>(k);
}

absl::StatusOr<Word> EncodeWord(std::span<const std::string> tokens,
                                const Alphabet& alphabet) {
  if (tokens.empty()) {
    return absl::InvalidArgumentError("words must have length >= 1");
  }
  std::vector<Symbol> symbols;
  symbols.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::optional<Symbol> s = alphabet.index(tokens[i]);
    if (!s) {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown token '", tokens[i], "' at position ", i));
    }
    symbols.push_back(*s);
  }
  return Word::Create(std::move(symbols), alphabet.size());
}

std::vector<std::string> DecodeWord(const Word& word,
                                    const Alphabet& alphabet) {
  std::vector<std::string> out;
  out.reserve(word.size());
  for (Symbol s : word.symbols()) out.push_back(alphabet.token(s));
  return out;
}

std::vector<std::string> SplitTokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string JoinTokens(std::span<const std::string> tokens) {
  return absl::StrJoin(tokens, " ");
}

}  // namespace symdp
