#include "rougekit/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "rougekit/error.hpp"

namespace rougekit {

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("pearson: input lengths differ");
  if (x.size() < 2) throw Error("pearson: need at least two points");

  const double n = static_cast<double>(x.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

AgreementResult agreement_ratio(const std::vector<AgreementInput>& inputs,
                                const std::string& metric) {
  if (inputs.empty()) throw Error("agreement_ratio: no inputs");
  AgreementResult result;
  result.n = inputs.size();
  for (const AgreementInput& input : inputs) {
    auto it = input.metric_scores.find(metric);
    if (it == input.metric_scores.end()) {
      throw Error("agreement_ratio: metric \"" + metric + "\" missing for document \"" +
                  input.doc_id + "\"");
    }
    const auto [score_a, score_b] = it->second;
    if (score_a == score_b) {
      ++result.ties;  // a tie never agrees with a strict human choice
      continue;
    }
    const char metric_choice = score_a > score_b ? 'a' : 'b';
    if (metric_choice == input.human_choice) ++result.agreements;
  }
  result.ratio = 100.0 * static_cast<double>(result.agreements) / static_cast<double>(result.n);
  return result;
}

std::vector<AgreementInput> filter_differing_pairs(const std::vector<AgreementInput>& inputs,
                                                   const std::string& metric) {
  std::vector<AgreementInput> out;
  for (const AgreementInput& input : inputs) {
    auto it = input.metric_scores.find(metric);
    if (it == input.metric_scores.end()) continue;
    if (it->second.first != it->second.second) out.push_back(input);
  }
  return out;
}

std::pair<KeywordSet, KeywordSet> inout_split(const Document& doc, const KeywordSet& keywords,
                                              const TokenizerConfig& config) {
  const std::vector<Token> source = tokenize(doc.source, config);
  KeywordSet in_src;
  KeywordSet out_src;
  in_src.doc_id = out_src.doc_id = keywords.doc_id;
  in_src.extractor = out_src.extractor = keywords.extractor;
  in_src.num_references_used = out_src.num_references_used = keywords.num_references_used;
  for (const NGram& keyword : keywords.keywords) {
    (contains_ngram(source, keyword) ? in_src : out_src).keywords.push_back(keyword);
  }
  return {std::move(in_src), std::move(out_src)};
}

LengthBreakdown length_breakdown(std::string_view hypothesis, const KeywordSet& keywords,
                                 const TokenizerConfig& config) {
  const std::vector<Token> hyp = tokenize(hypothesis, config);
  LengthBreakdown breakdown;
  for (const NGram& keyword : keywords.keywords) {
    if (keyword.empty() || keyword.size() > static_cast<std::size_t>(kMaxNgram)) {
      throw Error("length_breakdown: keyword length out of range");
    }
    auto& group = breakdown.groups[keyword.size() - 1];
    if (!group) group = LengthBreakdown::Group{};
    ++group->total;
    if (contains_ngram(hyp, keyword)) ++group->matched;
  }
  return breakdown;
}

void accumulate(LengthBreakdown& into, const LengthBreakdown& part) {
  for (std::size_t i = 0; i < part.groups.size(); ++i) {
    if (!part.groups[i]) continue;
    auto& group = into.groups[i];
    if (!group) group = LengthBreakdown::Group{};
    group->matched += part.groups[i]->matched;
    group->total += part.groups[i]->total;
  }
}

double distinguishability(const std::map<std::string, double>& per_model_scores) {
  if (per_model_scores.size() < 2) {
    throw Error("distinguishability: need at least two models");
  }
  double mean = 0.0;
  for (const auto& [model, score] : per_model_scores) mean += score;
  mean /= static_cast<double>(per_model_scores.size());
  double variance = 0.0;
  for (const auto& [model, score] : per_model_scores) {
    variance += (score - mean) * (score - mean);
  }
  variance /= static_cast<double>(per_model_scores.size());
  return std::sqrt(variance);
}

AnalysisReport length_correlation(const std::vector<ScoreReport>& reports,
                                  const std::vector<double>& hypothesis_token_counts) {
  if (reports.size() != hypothesis_token_counts.size()) {
    throw Error("length_correlation: reports and token counts are misaligned");
  }
  if (reports.size() < 2) throw Error("length_correlation: need at least two documents");

  AnalysisReport out;
  out.kind = "length_correlation";
  out.n = reports.size();
  for (std::string_view metric : kMetricNames) {
    std::vector<double> lengths;
    std::vector<double> values;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto value = metric_value(reports[i], metric);
      if (!value) {
        ++skipped;
        continue;
      }
      lengths.push_back(hypothesis_token_counts[i]);
      values.push_back(*value);
    }
    const std::string name(metric);
    if (lengths.size() < 2) {
      out.values[name] = std::nullopt;
    } else {
      out.values[name] = pearson(lengths, values);
    }
    if (metric == "rougek") out.excluded = skipped;
  }
  return out;
}

AnalysisReport metric_correlation(const std::vector<ScoreReport>& reports,
                                  const std::string& metric_a, const std::string& metric_b) {
  if (reports.size() < 2) throw Error("metric_correlation: need at least two documents");
  std::vector<double> a;
  std::vector<double> b;
  std::size_t skipped = 0;
  for (const ScoreReport& report : reports) {
    const auto va = metric_value(report, metric_a);
    const auto vb = metric_value(report, metric_b);
    if (!va || !vb) {
      ++skipped;
      continue;
    }
    a.push_back(*va);
    b.push_back(*vb);
  }
  AnalysisReport out;
  out.kind = "metric_correlation";
  out.n = a.size();
  out.excluded = skipped;
  out.values["r"] = a.size() < 2 ? std::nullopt : pearson(a, b);
  return out;
}

}  // namespace rougekit
