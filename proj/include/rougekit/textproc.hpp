#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace rougekit {

// Extraction scans n-grams from kMaxNgram down to unigrams; nothing in the
// toolkit handles longer spans.
inline constexpr int kMaxNgram = 10;

using Token = std::string;
using NGram = std::vector<Token>;

// Normalization knobs shared by every extractor and metric. Two equal
// configs produce identical token streams for any input.
struct TokenizerConfig {
  bool lowercase = true;
  bool split_hyphens = true;
  bool strip_punctuation = true;
  // Empty selects the builtin English list. Otherwise a UTF-8 file with one
  // token per line; '#' starts a comment.
  std::string stopword_path;

  bool operator==(const TokenizerConfig&) const = default;
};

// Splits on whitespace and punctuation boundaries (UTF-8 aware for the
// common space/punctuation codepoints). Hyphenated compounds split into
// their parts when split_hyphens is set; punctuation runs are dropped or
// kept as single tokens depending on strip_punctuation. Lowercasing covers
// ASCII and the Latin-1 supplement. Total function: never throws.
std::vector<Token> tokenize(std::string_view text, const TokenizerConfig& config);

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

class Stopwords {
 public:
  // The frozen builtin English list (~180 entries, committed verbatim in
  // stopwords.cpp). Treated as part of the metric definition.
  static const Stopwords& builtin();
  static Stopwords from_file(const std::string& path);

  bool contains(std::string_view token) const { return words_.contains(token); }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string, StringHash, std::equal_to<>> words_;
};

// Resolves the list named by config.stopword_path. Custom files are loaded
// once per path and cached for the lifetime of the process.
const Stopwords& stopwords_for(const TokenizerConfig& config);

bool is_stopword(std::string_view token, const TokenizerConfig& config);

// All contiguous windows of length n, multiplicity preserved:
// result size == max(0, tokens.size() - n + 1). n must lie in [1, kMaxNgram].
std::vector<NGram> extract_ngrams(const std::vector<Token>& tokens, int n);

// True when needle occurs as a contiguous sub-sequence of haystack.
bool contains_ngram(const std::vector<Token>& haystack, const NGram& needle);

std::string join_tokens(const NGram& tokens);

}  // namespace rougekit
