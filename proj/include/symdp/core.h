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

#ifndef SYMDP_CORE_H_
#define SYMDP_CORE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace symdp {

// Dense index of a symbol within its alphabet (or of a state within a state
// space). Token strings only exist at I/O boundaries.
using Symbol = std::uint32_t;

// An ordered set of distinct tokens. Index i maps to the i-th token given at
// construction.
class Alphabet {
 public:
  static absl::StatusOr<Alphabet> Create(std::vector<std::string> tokens);

  // Parses a JSON array of token strings. Order is significant.
  static absl::StatusOr<Alphabet> FromJson(std::string_view json);
  std::string ToJson() const;

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(Symbol s) const { return tokens_.at(s); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<Symbol> index(std::string_view token) const;

  bool operator==(const Alphabet& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  explicit Alphabet(std::vector<std::string> tokens);

  std::vector<std::string> tokens_;
  std::map<std::string, Symbol, std::less<>> index_;
};

// A nonempty, fixed-length sequence of symbol indices over an alphabet of
// `alphabet_size` symbols.
class Word {
 public:
  static absl::StatusOr<Word> Create(std::vector<Symbol> symbols,
                                     std::size_t alphabet_size);

  std::size_t size() const { return symbols_.size(); }
  std::size_t alphabet_size() const { return alphabet_size_; }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  Word(std::vector<Symbol> symbols, std::size_t alphabet_size)
      : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {}

  std::vector<Symbol> symbols_;
  std::size_t alphabet_size_ = 0;
};

// Privacy level, adjacency parameter and the seed every sampling call derives
// its randomness from.
struct MechanismConfig {
  double epsilon = 1.0;
  int k = 1;
  std::uint64_t seed = 0;

  absl::Status Validate() const;
};

// Number of positions where `a` and `b` differ. Fails on length or alphabet
// mismatch.
absl::StatusOr<std::size_t> HammingDistance(const Word& a, const Word& b);

// True iff HammingDistance(a, b) <= k.
absl::StatusOr<bool> IsAdjacent(const Word& a, const Word& b, int k);

absl::StatusOr<Word> EncodeWord(std::span<const std::string> tokens,
                                const Alphabet& alphabet);
std::vector<std::string> DecodeWord(const Word& word, const Alphabet& alphabet);

// Splits on ASCII whitespace; empty fields are dropped.
std::vector<std::string> SplitTokens(std::string_view text);
std::string JoinTokens(std::span<const std::string> tokens);

}  // namespace symdp

#endif  // SYMDP_CORE_H_
