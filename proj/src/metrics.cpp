#include "rougekit/metrics.hpp"

#include <algorithm>
#include <unordered_map>

#include "rougekit/error.hpp"

namespace rougekit {

namespace {

double f1_of(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

// n-gram multiset as joined keys; '\x1f' cannot appear in normalized tokens.
std::unordered_map<std::string, std::size_t> ngram_counts(const std::vector<Token>& tokens,
                                                          std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t pos = 0; pos + n <= tokens.size(); ++pos) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) key.push_back('\x1f');
      key += tokens[pos + k];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t lcs_length(const std::vector<Token>& a, const std::vector<Token>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    prev.swap(cur);
  }
  return prev[b.size()];
}

RougeScore from_counts(std::size_t overlap, std::size_t hyp_total, std::size_t ref_total,
                       RougeVariant variant) {
  RougeScore score;
  score.variant = variant;
  score.precision = hyp_total == 0 ? 0.0 : 100.0 * static_cast<double>(overlap) / static_cast<double>(hyp_total);
  score.recall = ref_total == 0 ? 0.0 : 100.0 * static_cast<double>(overlap) / static_cast<double>(ref_total);
  score.f1 = f1_of(score.precision, score.recall);
  return score;
}

RougeScore aggregate(const std::vector<RougeScore>& per_reference, Aggregation mode,
                     RougeVariant variant) {
  RougeScore out;
  out.variant = variant;
  if (per_reference.empty()) return out;
  if (mode == Aggregation::avg) {
    for (const RougeScore& s : per_reference) {
      out.precision += s.precision;
      out.recall += s.recall;
      out.f1 += s.f1;
    }
    const double n = static_cast<double>(per_reference.size());
    out.precision /= n;
    out.recall /= n;
    out.f1 /= n;
  } else {
    for (const RougeScore& s : per_reference) {
      out.precision = std::max(out.precision, s.precision);
      out.recall = std::max(out.recall, s.recall);
      out.f1 = std::max(out.f1, s.f1);
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(RougeVariant variant) {
  switch (variant) {
    case RougeVariant::rouge1: return "rouge1";
    case RougeVariant::rouge2: return "rouge2";
    case RougeVariant::rougeL: return "rougeL";
  }
  return "rouge1";
}

std::string_view to_string(Aggregation aggregation) {
  return aggregation == Aggregation::avg ? "avg" : "max";
}

Aggregation aggregation_from_string(std::string_view name) {
  if (name == "avg") return Aggregation::avg;
  if (name == "max") return Aggregation::max;
  throw Error("unknown aggregation mode: " + std::string(name));
}

RougeScore rouge_n(std::string_view hypothesis, std::string_view reference, int n,
                   const TokenizerConfig& config) {
  if (n < 1 || n > kMaxNgram) {
    throw Error("rouge_n: order out of range [1, " + std::to_string(kMaxNgram) +
                "]: " + std::to_string(n));
  }
  const auto width = static_cast<std::size_t>(n);
  const std::vector<Token> hyp = tokenize(hypothesis, config);
  const std::vector<Token> ref = tokenize(reference, config);
  const auto hyp_counts = ngram_counts(hyp, width);
  const auto ref_counts = ngram_counts(ref, width);

  std::size_t overlap = 0;
  for (const auto& [gram, count] : ref_counts) {
    auto it = hyp_counts.find(gram);
    if (it != hyp_counts.end()) overlap += std::min(count, it->second);
  }
  const std::size_t hyp_total = hyp.size() >= width ? hyp.size() - width + 1 : 0;
  const std::size_t ref_total = ref.size() >= width ? ref.size() - width + 1 : 0;
  return from_counts(overlap, hyp_total, ref_total,
                     n == 1 ? RougeVariant::rouge1 : RougeVariant::rouge2);
}

RougeScore rouge_l(std::string_view hypothesis, std::string_view reference,
                   const TokenizerConfig& config) {
  const std::vector<Token> hyp = tokenize(hypothesis, config);
  const std::vector<Token> ref = tokenize(reference, config);
  const std::size_t lcs = lcs_length(hyp, ref);
  return from_counts(lcs, hyp.size(), ref.size(), RougeVariant::rougeL);
}

std::optional<RougeKScore> rouge_k(std::string_view hypothesis, const KeywordSet& keywords,
                                   const TokenizerConfig& config) {
  if (keywords.keywords.empty()) return std::nullopt;
  const std::vector<Token> hyp = tokenize(hypothesis, config);
  RougeKScore score;
  score.total = static_cast<int>(keywords.keywords.size());
  for (const NGram& keyword : keywords.keywords) {
    if (contains_ngram(hyp, keyword)) ++score.matched;
  }
  score.value = 100.0 * static_cast<double>(score.matched) / static_cast<double>(score.total);
  return score;
}

ScoreReport score_document(const Document& doc, const KeywordSet& keywords,
                           const std::string& system, Aggregation aggregation,
                           const TokenizerConfig& config) {
  auto it = doc.hypotheses.find(system);
  if (it == doc.hypotheses.end()) {
    throw Error("document \"" + doc.id + "\" has no hypothesis for system \"" + system + "\"");
  }
  const std::string& hyp = it->second;

  std::vector<RougeScore> r1, r2, rl;
  r1.reserve(doc.references.size());
  r2.reserve(doc.references.size());
  rl.reserve(doc.references.size());
  for (const std::string& ref : doc.references) {
    r1.push_back(rouge_n(hyp, ref, 1, config));
    r2.push_back(rouge_n(hyp, ref, 2, config));
    rl.push_back(rouge_l(hyp, ref, config));
  }

  ScoreReport report;
  report.doc_id = doc.id;
  report.system = system;
  report.aggregation = aggregation;
  report.rouge1 = aggregate(r1, aggregation, RougeVariant::rouge1);
  report.rouge2 = aggregate(r2, aggregation, RougeVariant::rouge2);
  report.rougeL = aggregate(rl, aggregation, RougeVariant::rougeL);
  report.rougek = rouge_k(hyp, keywords, config);
  return report;
}

std::map<std::string, SystemAggregate> aggregate_corpus(const std::vector<ScoreReport>& reports) {
  if (reports.empty()) throw Error("aggregate_corpus: no reports");

  struct Accumulator {
    RougeScore rouge1, rouge2, rougeL;
    double rougek_sum = 0.0;
    std::size_t rougek_defined = 0;
    std::size_t rougek_excluded = 0;
    std::size_t count = 0;
  };
  std::map<std::string, Accumulator> acc;
  for (const ScoreReport& report : reports) {
    Accumulator& a = acc[report.system];
    auto add = [](RougeScore& into, const RougeScore& from) {
      into.precision += from.precision;
      into.recall += from.recall;
      into.f1 += from.f1;
      into.variant = from.variant;
    };
    add(a.rouge1, report.rouge1);
    add(a.rouge2, report.rouge2);
    add(a.rougeL, report.rougeL);
    if (report.rougek) {
      a.rougek_sum += report.rougek->value;
      ++a.rougek_defined;
    } else {
      ++a.rougek_excluded;
    }
    ++a.count;
  }

  std::map<std::string, SystemAggregate> out;
  for (auto& [system, a] : acc) {
    SystemAggregate agg;
    const double n = static_cast<double>(a.count);
    auto mean = [n](RougeScore s) {
      s.precision /= n;
      s.recall /= n;
      s.f1 /= n;
      return s;
    };
    agg.rouge1 = mean(a.rouge1);
    agg.rouge2 = mean(a.rouge2);
    agg.rougeL = mean(a.rougeL);
    if (a.rougek_defined > 0) {
      agg.rougek = a.rougek_sum / static_cast<double>(a.rougek_defined);
    }
    agg.rougek_excluded = a.rougek_excluded;
    agg.num_documents = a.count;
    out.emplace(system, agg);
  }
  return out;
}

std::optional<double> metric_value(const ScoreReport& report, std::string_view metric) {
  if (metric == "rouge1") return report.rouge1.f1;
  if (metric == "rouge2") return report.rouge2.f1;
  if (metric == "rougeL") return report.rougeL.f1;
  if (metric == "rougek") {
    if (!report.rougek) return std::nullopt;
    return report.rougek->value;
  }
  throw Error("unknown metric name: " + std::string(metric));
}

}  // namespace rougekit
