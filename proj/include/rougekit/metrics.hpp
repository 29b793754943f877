#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rougekit/corpus.hpp"
#include "rougekit/keyword_set.hpp"

namespace rougekit {

enum class RougeVariant { rouge1, rouge2, rougeL };

std::string_view to_string(RougeVariant variant);

// All scores live on the 0..100 scale.
struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  RougeVariant variant = RougeVariant::rouge1;
};

// Clipped n-gram overlap: recall against the reference n-grams, precision
// against the hypothesis n-grams, each 0 when its denominator is 0.
RougeScore rouge_n(std::string_view hypothesis, std::string_view reference, int n,
                   const TokenizerConfig& config);

// Summary-level longest common subsequence over token sequences.
RougeScore rouge_l(std::string_view hypothesis, std::string_view reference,
                   const TokenizerConfig& config);

struct RougeKScore {
  int matched = 0;
  int total = 0;
  double value = 0.0;  // 100 * matched / total
};

// Fraction of keywords present verbatim in the hypothesis. Set semantics:
// each keyword counts at most once however often it repeats. Returns
// nullopt for an empty keyword set -- "no keywords extractable" is a
// distinct signal, never a zero.
std::optional<RougeKScore> rouge_k(std::string_view hypothesis, const KeywordSet& keywords,
                                   const TokenizerConfig& config);

enum class Aggregation { avg, max };

std::string_view to_string(Aggregation aggregation);
Aggregation aggregation_from_string(std::string_view name);

struct ScoreReport {
  std::string doc_id;
  std::string system;
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
  std::optional<RougeKScore> rougek;
  Aggregation aggregation = Aggregation::avg;
};

// ROUGE-1/2/L computed against each reference then aggregated componentwise
// (avg: mean of each of precision/recall/f1; max: the largest of each).
// ROUGE-K is computed once against the keyword set. Throws when the system
// has no hypothesis in the document.
ScoreReport score_document(const Document& doc, const KeywordSet& keywords,
                           const std::string& system, Aggregation aggregation,
                           const TokenizerConfig& config);

struct SystemAggregate {
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
  std::optional<double> rougek;  // mean over defined entries only
  std::size_t rougek_excluded = 0;
  std::size_t num_documents = 0;
};

// Arithmetic means per system per metric. The ROUGE-K mean skips undefined
// entries and reports how many were skipped. Throws on empty input.
std::map<std::string, SystemAggregate> aggregate_corpus(const std::vector<ScoreReport>& reports);

// Per-document value of a named metric: "rouge1"/"rouge2"/"rougeL" map to
// f1, "rougek" to its value (nullopt when undefined).
std::optional<double> metric_value(const ScoreReport& report, std::string_view metric);

inline constexpr std::string_view kMetricNames[] = {"rouge1", "rouge2", "rougeL", "rougek"};

}  // namespace rougekit
