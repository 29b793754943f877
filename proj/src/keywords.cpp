#include "rougekit/keywords.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "json.hpp"
#include "rougekit/error.hpp"

namespace rougekit {

namespace {

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

// Keyword stopword rule: a unigram must be a content word; a longer span may
// contain stopwords but not at either end (which also guarantees it contains
// at least one content word).
bool passes_stopword_rule(const NGram& gram, const Stopwords& stopwords) {
  if (gram.size() == 1) return !stopwords.contains(gram.front());
  return !stopwords.contains(gram.front()) && !stopwords.contains(gram.back());
}

bool is_subspan(const NGram& needle, const NGram& hay) {
  if (needle.size() >= hay.size()) return false;
  return contains_ngram(hay, needle);
}

class MaskedReferences {
 public:
  explicit MaskedReferences(std::vector<std::vector<Token>> refs) : refs_(std::move(refs)) {
    masked_.reserve(refs_.size());
    for (const auto& ref : refs_) masked_.emplace_back(ref.size(), false);
  }

  std::size_t count() const { return refs_.size(); }
  const std::vector<Token>& tokens(std::size_t r) const { return refs_[r]; }

  bool window_unmasked(std::size_t r, std::size_t pos, std::size_t n) const {
    for (std::size_t k = 0; k < n; ++k) {
      if (masked_[r][pos + k]) return false;
    }
    return true;
  }

  bool window_equals(std::size_t r, std::size_t pos, const NGram& gram) const {
    for (std::size_t k = 0; k < gram.size(); ++k) {
      if (refs_[r][pos + k] != gram[k]) return false;
    }
    return true;
  }

  bool has_unmasked_occurrence(std::size_t r, const NGram& gram) const {
    if (refs_[r].size() < gram.size()) return false;
    for (std::size_t pos = 0; pos + gram.size() <= refs_[r].size(); ++pos) {
      if (window_unmasked(r, pos, gram.size()) && window_equals(r, pos, gram)) return true;
    }
    return false;
  }

  // Consumes every still-unmasked occurrence of the gram, in every reference.
  void mask_occurrences(const NGram& gram) {
    for (std::size_t r = 0; r < refs_.size(); ++r) {
      if (refs_[r].size() < gram.size()) continue;
      for (std::size_t pos = 0; pos + gram.size() <= refs_[r].size(); ++pos) {
        if (window_unmasked(r, pos, gram.size()) && window_equals(r, pos, gram)) {
          for (std::size_t k = 0; k < gram.size(); ++k) masked_[r][pos + k] = true;
        }
      }
    }
  }

 private:
  std::vector<std::vector<Token>> refs_;
  std::vector<std::vector<bool>> masked_;
};

// Shared tie rule: higher score first, then earlier first occurrence, then
// lexicographic.
struct RankedToken {
  Token token;
  double score = 0.0;
  std::size_t first_pos = 0;
};

void sort_ranked(std::vector<RankedToken>& ranked) {
  std::sort(ranked.begin(), ranked.end(), [](const RankedToken& a, const RankedToken& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.first_pos != b.first_pos) return a.first_pos < b.first_pos;
    return a.token < b.token;
  });
}

KeywordSet take_top_k(std::vector<RankedToken> ranked, const Document& doc, int k,
                      Extractor extractor) {
  sort_ranked(ranked);
  KeywordSet set;
  set.doc_id = doc.id;
  set.extractor = extractor;
  set.num_references_used = static_cast<int>(doc.references.size());
  const std::size_t take = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < take; ++i) {
    set.keywords.push_back({ranked[i].token});
  }
  return set;
}

std::vector<Token> concatenated_reference_tokens(const Document& doc,
                                                 const TokenizerConfig& config) {
  std::vector<Token> tokens;
  for (const std::string& ref : doc.references) {
    for (Token& tok : tokenize(ref, config)) tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace

bool overlap_extraction_possible(const Document& doc) {
  if (doc.references.size() >= 2) return true;
  return doc.references.size() == 1 && doc.title && !blank(*doc.title);
}

KeywordSet extract_reference_overlap(const Document& doc, const TokenizerConfig& config,
                                     int max_ngram) {
  if (max_ngram < 1 || max_ngram > kMaxNgram) {
    throw Error("max_ngram out of range [1, " + std::to_string(kMaxNgram) +
                "]: " + std::to_string(max_ngram));
  }
  std::vector<std::vector<Token>> refs;
  refs.reserve(doc.references.size() + 1);
  for (const std::string& ref : doc.references) refs.push_back(tokenize(ref, config));
  if (refs.size() < 2) {
    // Single reference: the title stands in as a proxy reference.
    if (doc.title && !blank(*doc.title)) refs.push_back(tokenize(*doc.title, config));
  }
  if (refs.size() < 2) {
    throw Error("keyword extraction impossible for document \"" + doc.id +
                "\": needs at least two references, or one reference and a title");
  }

  const Stopwords& stopwords = stopwords_for(config);
  MaskedReferences masked(std::move(refs));

  std::size_t longest = 0;
  for (std::size_t r = 0; r < masked.count(); ++r) {
    longest = std::max(longest, masked.tokens(r).size());
  }

  std::vector<NGram> selected;
  const int start = static_cast<int>(std::min<std::size_t>(longest, static_cast<std::size_t>(max_ngram)));
  for (int n = start; n >= 1; --n) {
    const auto width = static_cast<std::size_t>(n);
    for (std::size_t r = 0; r < masked.count(); ++r) {
      const auto& tokens = masked.tokens(r);
      if (tokens.size() < width) continue;
      for (std::size_t pos = 0; pos + width <= tokens.size(); ++pos) {
        if (!masked.window_unmasked(r, pos, width)) continue;
        NGram gram(tokens.begin() + pos, tokens.begin() + pos + width);
        // Sub-spans of an already selected keyword are suppressed even when
        // they recur at positions the longer keyword never covered; the
        // output must stay free of nested keywords.
        bool blocked = false;
        for (const NGram& prior : selected) {
          if (gram == prior || is_subspan(gram, prior)) {
            blocked = true;
            break;
          }
        }
        if (blocked) continue;
        if (!passes_stopword_rule(gram, stopwords)) continue;
        std::size_t support = 0;
        for (std::size_t r2 = 0; r2 < masked.count(); ++r2) {
          if (masked.has_unmasked_occurrence(r2, gram)) ++support;
        }
        if (support < 2) continue;
        masked.mask_occurrences(gram);
        selected.push_back(std::move(gram));
      }
    }
  }

  KeywordSet set;
  set.doc_id = doc.id;
  set.keywords = std::move(selected);
  set.extractor = Extractor::reference_overlap;
  set.num_references_used = static_cast<int>(masked.count());
  return set;
}

KeywordSet extract_tfidf(const Document& doc, const IdfTable& corpus_idf, int k,
                         const TokenizerConfig& config) {
  if (k < 1) throw Error("extract_tfidf: k must be >= 1");
  const Stopwords& stopwords = stopwords_for(config);
  const std::vector<Token> tokens = concatenated_reference_tokens(doc, config);

  std::unordered_map<std::string, RankedToken, StringHash, std::equal_to<>> by_token;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    const Token& tok = tokens[pos];
    if (stopwords.contains(tok)) continue;
    auto [it, inserted] = by_token.try_emplace(tok, RankedToken{tok, 0.0, pos});
    it->second.score += 1.0;  // raw term frequency for now
  }
  std::vector<RankedToken> ranked;
  ranked.reserve(by_token.size());
  for (auto& [tok, entry] : by_token) {
    entry.score *= corpus_idf.idf(tok);
    ranked.push_back(std::move(entry));
  }
  return take_top_k(std::move(ranked), doc, k, Extractor::tfidf);
}

std::vector<std::pair<Token, double>> textrank_scores(const Document& doc,
                                                      const TokenizerConfig& config) {
  const Stopwords& stopwords = stopwords_for(config);

  std::vector<Token> filtered;
  for (const Token& tok : concatenated_reference_tokens(doc, config)) {
    if (!stopwords.contains(tok)) filtered.push_back(tok);
  }

  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index;
  std::vector<RankedToken> nodes;
  for (std::size_t pos = 0; pos < filtered.size(); ++pos) {
    if (index.try_emplace(filtered[pos], nodes.size()).second) {
      nodes.push_back(RankedToken{filtered[pos], 0.0, pos});
    }
  }
  const std::size_t n = nodes.size();

  // Unweighted co-occurrence edges between adjacent surviving tokens.
  std::vector<std::vector<std::size_t>> adjacency(n);
  {
    std::vector<std::vector<bool>> has_edge(n, std::vector<bool>(n, false));
    for (std::size_t pos = 0; pos + 1 < filtered.size(); ++pos) {
      const std::size_t a = index.at(filtered[pos]);
      const std::size_t b = index.at(filtered[pos + 1]);
      if (a == b || has_edge[a][b]) continue;
      has_edge[a][b] = has_edge[b][a] = true;
      adjacency[a].push_back(b);
      adjacency[b].push_back(a);
    }
  }

  constexpr double kDamping = 0.85;
  constexpr double kTolerance = 1e-6;
  constexpr int kMaxIterations = 100;

  std::vector<double> score(n, 1.0);
  std::vector<double> next(n, 0.0);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double max_delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      double incoming = 0.0;
      for (std::size_t u : adjacency[v]) {
        incoming += score[u] / static_cast<double>(adjacency[u].size());
      }
      next[v] = (1.0 - kDamping) + kDamping * incoming;
      max_delta = std::max(max_delta, std::abs(next[v] - score[v]));
    }
    score.swap(next);
    if (max_delta < kTolerance) break;
  }

  // Isolated nodes leak rank mass; rescale so scores sum to the node count.
  double total = 0.0;
  for (double s : score) total += s;
  if (total > 0.0) {
    const double scale = static_cast<double>(n) / total;
    for (double& s : score) s *= scale;
  }

  for (std::size_t v = 0; v < n; ++v) nodes[v].score = score[v];
  std::vector<RankedToken> ranked = std::move(nodes);
  sort_ranked(ranked);

  std::vector<std::pair<Token, double>> out;
  out.reserve(ranked.size());
  for (RankedToken& node : ranked) out.emplace_back(std::move(node.token), node.score);
  return out;
}

KeywordSet extract_textrank(const Document& doc, int k, const TokenizerConfig& config) {
  if (k < 1) throw Error("extract_textrank: k must be >= 1");
  KeywordSet set;
  set.doc_id = doc.id;
  set.extractor = Extractor::textrank;
  set.num_references_used = static_cast<int>(doc.references.size());
  const auto ranked = textrank_scores(doc, config);
  const std::size_t take = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < take; ++i) {
    set.keywords.push_back({ranked[i].first});
  }
  return set;
}

ExtractionQuality evaluate_extraction(const KeywordMap& extracted, const JudgmentMap& judgments) {
  ExtractionQuality quality;
  for (const auto& [id, set] : extracted) {
    auto it = judgments.find(id);
    if (it == judgments.end()) {
      throw Error("evaluate_extraction: missing judgment for document \"" + id + "\"");
    }
    for (const NGram& keyword : set.keywords) {
      ++quality.total_extracted;
      if (std::find(it->second.begin(), it->second.end(), keyword) != it->second.end()) {
        ++quality.total_wrong;
      }
    }
  }
  const std::size_t summaries = extracted.size();
  quality.avg_wrong_per_summary =
      summaries == 0 ? 0.0 : static_cast<double>(quality.total_wrong) / static_cast<double>(summaries);
  quality.false_discovery_rate =
      quality.total_extracted == 0
          ? 0.0
          : static_cast<double>(quality.total_wrong) / static_cast<double>(quality.total_extracted);
  return quality;
}

JudgmentMap load_judgments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  JudgmentMap out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw Error(path + ":" + std::to_string(line_no) + ": malformed JSON record");
    }
    if (!record.contains("id") || !record["id"].is_string()) {
      throw Error(path + ":" + std::to_string(line_no) + ": missing required field \"id\"");
    }
    std::vector<NGram> wrong;
    if (auto it = record.find("wrong"); it != record.end() && it->is_array()) {
      for (const auto& kw : *it) {
        NGram tokens;
        for (const auto& tok : kw) tokens.push_back(tok.get<std::string>());
        wrong.push_back(std::move(tokens));
      }
    }
    out[record["id"].get<std::string>()] = std::move(wrong);
  }
  return out;
}

}  // namespace rougekit
