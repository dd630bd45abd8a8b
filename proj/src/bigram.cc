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

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "symdp/markov.h"

namespace symdp {
namespace {

struct RawToken {
  std::string text;
  bool sentence_initial = false;
};

// Decodes the code point starting at text[i] and sets `length`. Malformed
// bytes are returned as-is with length 1.
char32_t DecodeUtf8(std::string_view text, std::size_t i, std::size_t& length) {
  const auto byte = [&](std::size_t j) {
    return static_cast<unsigned char>(text[j]);
  };
  const unsigned char lead = byte(i);
  std::size_t extra = 0;
  char32_t cp = lead;
  if (lead >= 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else if (lead >= 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if (lead >= 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  }
  if (i + extra >= text.size()) {
    length = 1;
    return lead;
  }
  for (std::size_t j = 1; j <= extra; ++j) {
    if ((byte(i + j) & 0xC0) != 0x80) {
      length = 1;
      return lead;
    }
    cp = (cp << 6) | (byte(i + j) & 0x3F);
  }
  length = extra + 1;
  return cp;
}

bool IsSpace(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0x00A0;
}
bool IsDash(char32_t cp) { return cp == '-' || cp == 0x2013 || cp == 0x2014; }
bool IsApostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }
bool IsSentenceEnd(char32_t cp) {
  return cp == '.' || cp == '!' || cp == '?' || cp == 0x2026;
}
bool IsWordChar(char32_t cp) {
  if (cp < 0x80) return std::isalnum(static_cast<int>(cp)) != 0;
  // Typographic quotes and ellipsis are punctuation; other non-ASCII code
  // points are treated as letters.
  return cp != 0x2018 && cp != 0x201C && cp != 0x201D && cp != 0x2026 &&
         cp != 0x00AB && cp != 0x00BB;
}

std::string Trim(std::string piece) {
  std::size_t begin = 0;
  std::size_t end = piece.size();
  while (begin < end && piece[begin] == '\'') ++begin;
  while (end > begin && piece[end - 1] == '\'') --end;
  return piece.substr(begin, end - begin);
}

std::vector<RawToken> Scan(std::string_view corpus) {
  std::vector<RawToken> out;
  bool next_initial = true;
  bool terminal = false;
  std::string piece;
  const auto flush_piece = [&] {
    std::string trimmed = Trim(std::move(piece));
    piece.clear();
    if (trimmed.empty()) return;
    out.push_back({std::move(trimmed), next_initial});
    next_initial = false;
  };
  const auto end_chunk = [&] {
    flush_piece();
    if (terminal) next_initial = true;
    terminal = false;
  };
  std::size_t i = 0;
  while (i < corpus.size()) {
    std::size_t length = 1;
    const char32_t cp = DecodeUtf8(corpus, i, length);
    if (IsSpace(cp)) {
      end_chunk();
    } else if (IsDash(cp)) {
      flush_piece();
    } else if (IsApostrophe(cp)) {
      piece.push_back('\'');
    } else if (IsWordChar(cp)) {
      piece.append(corpus.substr(i, length));
      terminal = false;
    } else if (IsSentenceEnd(cp)) {
      terminal = true;
    }
    i += length;
  }
  end_chunk();
  return out;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> Truecase(const std::vector<RawToken>& raw) {
  // Per lowercase key: whether the all-lowercase form occurs, and how often
  // each other form occurs away from a sentence start.
  struct Forms {
    bool has_lower = false;
    std::map<std::string, std::size_t> mid_sentence;
  };
  std::map<std::string, Forms> forms;
  for (const RawToken& t : raw) {
    const std::string key = AsciiLower(t.text);
    Forms& f = forms[key];
    if (t.text == key) {
      f.has_lower = true;
    } else if (!t.sentence_initial) {
      ++f.mid_sentence[t.text];
    }
  }
  std::map<std::string, std::string> canonical;
  for (auto& [key, f] : forms) {
    if (f.has_lower || f.mid_sentence.empty()) {
      canonical[key] = key;
      continue;
    }
    // Most frequent mid-sentence form; ties go to the lexicographically
    // smallest for determinism.
    auto best = f.mid_sentence.begin();
    for (auto it = f.mid_sentence.begin(); it != f.mid_sentence.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    canonical[key] = best->first;
  }
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (const RawToken& t : raw) out.push_back(canonical[AsciiLower(t.text)]);
  return out;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view corpus,
                                  const TokenizerOptions& options) {
  std::vector<RawToken> raw = Scan(corpus);
  switch (options.case_mode) {
    case CaseMode::kTruecase:
      return Truecase(raw);
    case CaseMode::kLower: {
      std::vector<std::string> out;
      for (const RawToken& t : raw) out.push_back(AsciiLower(t.text));
      return out;
    }
    case CaseMode::kPreserve:
      break;
  }
  std::vector<std::string> out;
  for (RawToken& t : raw) out.push_back(std::move(t.text));
  return out;
}

absl::StatusOr<MarkovChain> BuildBigram(std::string_view corpus,
                                        const TokenizerOptions& options) {
  const std::vector<std::string> tokens = Tokenize(corpus, options);
  if (tokens.empty()) {
    return absl::InvalidArgumentError("corpus contains no tokens");
  }
  std::vector<std::string> names;
  std::map<std::string, Symbol, std::less<>> index;
  std::vector<Symbol> sequence;
  sequence.reserve(tokens.size());
  for (const std::string& t : tokens) {
    auto [it, inserted] = index.emplace(t, static_cast<Symbol>(names.size()));
    if (inserted) names.push_back(t);
    sequence.push_back(it->second);
  }
  const std::size_t n = names.size();
  std::vector<std::vector<std::size_t>> counts(n,
                                               std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    ++counts[sequence[i]][sequence[i + 1]];
  }
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t total = 0;
    for (std::size_t c : counts[u]) total += c;
    if (total == 0) {
      const std::size_t target =
          options.sink == SinkPolicy::kSelfLoop ? u : sequence.front();
      matrix[u][target] = 1.0;
      continue;
    }
    for (std::size_t v = 0; v < n; ++v) {
      matrix[u][v] =
          static_cast<double>(counts[u][v]) / static_cast<double>(total);
    }
  }
  absl::StatusOr<Alphabet> states = Alphabet::Create(std::move(names));
  if (!states.ok()) return states.status();
  return MarkovChain::Create(*std::move(states), std::move(matrix),
                             sequence.front());
}

}  // namespace symdp
