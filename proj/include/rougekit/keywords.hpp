#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rougekit/corpus.hpp"
#include "rougekit/idf.hpp"
#include "rougekit/keyword_set.hpp"

namespace rougekit {

// True when the document satisfies the overlap-extraction precondition:
// at least two references, or one reference plus a non-empty title.
bool overlap_extraction_possible(const Document& doc);

// Keywords are the n-grams shared by at least two reference summaries.
// With a single reference the title serves as a proxy reference. Scanning
// runs from max_ngram down to unigrams; a selected keyword masks its token
// positions in every reference so its sub-spans are never re-extracted.
// Output order: descending n, then first occurrence in the earliest
// reference containing the keyword. Throws when extraction is impossible.
KeywordSet extract_reference_overlap(const Document& doc, const TokenizerConfig& config,
                                     int max_ngram = kMaxNgram);

// Top-k unigrams of the concatenated references by tf*idf, stopwords
// excluded. Ties break toward the earlier first occurrence, then
// lexicographically.
KeywordSet extract_tfidf(const Document& doc, const IdfTable& corpus_idf, int k,
                         const TokenizerConfig& config);

// TextRank over the stopword-filtered unigrams of the concatenated
// references: co-occurrence edges between adjacent surviving tokens
// (window 2), damped PageRank (0.85) to max-abs-delta < 1e-6 or 100
// iterations, scores normalized to sum to the node count. Same tie rule
// as extract_tfidf.
KeywordSet extract_textrank(const Document& doc, int k, const TokenizerConfig& config);

// Node scores backing extract_textrank, ordered by rank. Exposed so the
// ranking can be checked against an independent power iteration.
std::vector<std::pair<Token, double>> textrank_scores(const Document& doc,
                                                      const TokenizerConfig& config);

struct ExtractionQuality {
  double avg_wrong_per_summary = 0.0;
  double false_discovery_rate = 0.0;  // in [0, 1]
  std::size_t total_extracted = 0;
  std::size_t total_wrong = 0;
};

// Judgments map a document id to the keyword token-sequences judged wrong.
using JudgmentMap = std::map<std::string, std::vector<NGram>>;

// A keyword counts as wrong when it matches a judged-wrong sequence exactly.
// Every extracted id must have a judgment entry.
ExtractionQuality evaluate_extraction(const KeywordMap& extracted, const JudgmentMap& judgments);

// JSONL: {"id": str, "wrong": [[token, ...], ...]}
JudgmentMap load_judgments(const std::string& path);

}  // namespace rougekit
