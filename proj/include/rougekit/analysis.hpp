#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rougekit/corpus.hpp"
#include "rougekit/keyword_set.hpp"
#include "rougekit/metrics.hpp"

namespace rougekit {

// Sample Pearson correlation. Throws on length mismatch or fewer than two
// points; returns nullopt when either input is constant (zero variance).
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct AgreementInput {
  std::string doc_id;
  std::string system_a;
  std::string system_b;
  char human_choice = 'a';  // 'a' or 'b'
  std::map<std::string, std::pair<double, double>> metric_scores;  // (score_a, score_b)
};

struct AgreementResult {
  double ratio = 0.0;  // percent
  std::size_t n = 0;
  std::size_t agreements = 0;
  std::size_t ties = 0;  // exact ties count as disagreement
};

// Share of pairs where the metric's argmax matches the human choice.
AgreementResult agreement_ratio(const std::vector<AgreementInput>& inputs,
                                const std::string& metric);

// The sampling rule used when collecting judgments: keep only pairs where
// the named metric assigns the two systems different scores.
std::vector<AgreementInput> filter_differing_pairs(const std::vector<AgreementInput>& inputs,
                                                   const std::string& metric);

// Partition: a keyword goes in_src iff it occurs contiguously in the
// normalized source tokens; everything else goes out_src.
std::pair<KeywordSet, KeywordSet> inout_split(const Document& doc, const KeywordSet& keywords,
                                              const TokenizerConfig& config);

// ROUGE-K match counts restricted to keywords of one length. Groups with no
// keywords stay empty rather than reading as zero.
struct LengthBreakdown {
  struct Group {
    int matched = 0;
    int total = 0;
  };
  std::array<std::optional<Group>, kMaxNgram> groups;  // index 0 holds length 1

  const std::optional<Group>& for_length(int n) const { return groups.at(n - 1); }
};

LengthBreakdown length_breakdown(std::string_view hypothesis, const KeywordSet& keywords,
                                 const TokenizerConfig& config);

void accumulate(LengthBreakdown& into, const LengthBreakdown& part);

// Population standard deviation of the model-level scores; needs >= 2 models.
double distinguishability(const std::map<std::string, double>& per_model_scores);

// Corpus-level report shared by every analysis kind. Undefined entries
// (e.g. zero-variance correlations) are nullopt and serialize as null.
struct AnalysisReport {
  std::string kind;
  std::map<std::string, std::optional<double>> values;
  std::size_t n = 0;
  std::size_t excluded = 0;
};

// Pearson r between hypothesis token counts and each metric's per-document
// values. Documents with undefined ROUGE-K are excluded from its column.
AnalysisReport length_correlation(const std::vector<ScoreReport>& reports,
                                  const std::vector<double>& hypothesis_token_counts);

// Pearson r between two metric columns; documents where either side is
// undefined are excluded and counted.
AnalysisReport metric_correlation(const std::vector<ScoreReport>& reports,
                                  const std::string& metric_a, const std::string& metric_b);

}  // namespace rougekit
