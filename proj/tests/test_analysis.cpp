#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rougekit/analysis.hpp"
#include "rougekit/error.hpp"

using namespace rougekit;

namespace {

AgreementInput make_input(double a, double b, char choice) {
  AgreementInput input;
  input.doc_id = "d";
  input.system_a = "A";
  input.system_b = "B";
  input.human_choice = choice;
  input.metric_scores["m"] = {a, b};
  return input;
}

ScoreReport make_report(const std::string& id, double r1, double r2, double rl,
                        std::optional<double> rk) {
  ScoreReport report;
  report.doc_id = id;
  report.system = "sys";
  report.rouge1.f1 = r1;
  report.rouge2.f1 = r2;
  report.rougeL.f1 = rl;
  if (rk) report.rougek = RougeKScore{0, 1, *rk};
  return report;
}

KeywordSet make_keywords(std::vector<NGram> kws) {
  KeywordSet set;
  set.doc_id = "doc";
  set.keywords = std::move(kws);
  return set;
}

}  // namespace

TEST_CASE("pearson endpoints and hand-computed fixture") {
  const std::vector<double> x = {1, 2, 3};
  CHECK(*pearson(x, x) == doctest::Approx(1.0));
  const std::vector<double> anti = {3, 2, 1};
  CHECK(*pearson(x, anti) == doctest::Approx(-1.0));

  // closed form: r = 3 / sqrt(2 * 14/3)
  const std::vector<double> y = {1, 2, 4};
  const double expected = 3.0 / std::sqrt(2.0 * 14.0 / 3.0);
  CHECK(*pearson(x, y) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(*pearson(x, y) == doctest::Approx(0.9820).epsilon(1e-4));

  const std::vector<double> constant = {5, 5, 5};
  CHECK_FALSE(pearson(x, constant).has_value());
  CHECK_FALSE(pearson(constant, x).has_value());

  CHECK_THROWS_AS(pearson(x, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(pearson(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
}

TEST_CASE("pearson is exactly +/-1 on affine relations") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(5);
    for (double& v : x) v = value(rng);
    const double a = value(rng);
    if (std::abs(a) < 0.1) continue;
    const double b = value(rng);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i] + b;
    const auto r = pearson(x, y);
    if (!r) continue;  // x may collide to a constant; vanishingly unlikely
    CHECK(*r == doctest::Approx(a > 0 ? 1.0 : -1.0).epsilon(1e-9));
  }
}

TEST_CASE("agreement ratio counts argmax matches; ties disagree") {
  std::vector<AgreementInput> inputs = {
      make_input(2.0, 1.0, 'a'),
      make_input(0.5, 1.5, 'b'),
      make_input(3.0, 4.0, 'a'),  // metric disagrees
  };
  const AgreementResult result = agreement_ratio(inputs, "m");
  CHECK(result.n == 3);
  CHECK(result.agreements == 2);
  CHECK(result.ties == 0);
  CHECK(result.ratio == doctest::Approx(200.0 / 3.0));

  // perfect agreement
  const AgreementResult perfect =
      agreement_ratio({make_input(2, 1, 'a'), make_input(1, 2, 'b')}, "m");
  CHECK(perfect.ratio == doctest::Approx(100.0));

  // every pair tied: ratio 0, ties reported
  const AgreementResult tied =
      agreement_ratio({make_input(1, 1, 'a'), make_input(2, 2, 'b'), make_input(0, 0, 'a')}, "m");
  CHECK(tied.ratio == 0.0);
  CHECK(tied.ties == 3);

  CHECK_THROWS_AS(agreement_ratio({}, "m"), Error);
  CHECK_THROWS_WITH_AS(agreement_ratio(inputs, "missing"), doctest::Contains("missing"), Error);
}

TEST_CASE("agreement ratio is invariant under monotone transforms") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> score(0.0, 100.0);
  std::vector<AgreementInput> inputs;
  for (int i = 0; i < 50; ++i) {
    inputs.push_back(make_input(score(rng), score(rng), rng() % 2 ? 'a' : 'b'));
  }
  const double base = agreement_ratio(inputs, "m").ratio;

  auto transformed = inputs;
  for (AgreementInput& input : transformed) {
    auto& [a, b] = input.metric_scores["m"];
    a = 2.0 * a + 1.0;
    b = 2.0 * b + 1.0;
  }
  CHECK(agreement_ratio(transformed, "m").ratio == base);

  for (AgreementInput& input : transformed) {
    auto& [a, b] = input.metric_scores["m"];
    a = a * a * a;
    b = b * b * b;
  }
  CHECK(agreement_ratio(transformed, "m").ratio == base);
}

TEST_CASE("filter_differing_pairs implements the sampling rule") {
  std::vector<AgreementInput> inputs = {
      make_input(1.0, 1.0, 'a'),
      make_input(2.0, 1.0, 'a'),
      make_input(3.0, 3.0, 'b'),
  };
  const auto kept = filter_differing_pairs(inputs, "m");
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].metric_scores.at("m").first == 2.0);
}

TEST_CASE("inout_split partitions keywords by source containment") {
  TokenizerConfig cfg;
  Document doc;
  doc.id = "d";
  doc.source = "the hawaiian language needs conservation work";

  const KeywordSet keywords = make_keywords(
      {{"hawaiian", "language"}, {"conservation"}, {"transliteration"}, {"finite", "state"}});
  const auto [in_src, out_src] = inout_split(doc, keywords, cfg);

  CHECK(in_src.keywords == std::vector<NGram>{{"hawaiian", "language"}, {"conservation"}});
  CHECK(out_src.keywords == std::vector<NGram>{{"transliteration"}, {"finite", "state"}});
  CHECK(in_src.keywords.size() + out_src.keywords.size() == keywords.keywords.size());

  // fully copied keywords leave out_src empty
  const auto [all_in, none_out] =
      inout_split(doc, make_keywords({{"language"}, {"work"}}), cfg);
  CHECK(none_out.keywords.empty());
  CHECK(all_in.keywords.size() == 2);
}

TEST_CASE("inout_split matches a brute-force containment scan on random fixtures") {
  TokenizerConfig cfg;
  std::mt19937 rng(29);
  const std::vector<std::string> vocab = {"ax", "bx", "cx", "dx", "ex"};
  for (int trial = 0; trial < 100; ++trial) {
    Document doc;
    doc.id = "d";
    const int len = 3 + static_cast<int>(rng() % 10);
    for (int i = 0; i < len; ++i) {
      if (i) doc.source += ' ';
      doc.source += vocab[rng() % vocab.size()];
    }
    std::vector<NGram> kws;
    for (int k = 0; k < 4; ++k) {
      NGram kw;
      const int klen = 1 + static_cast<int>(rng() % 2);
      for (int i = 0; i < klen; ++i) kw.push_back(vocab[rng() % vocab.size()]);
      if (std::find(kws.begin(), kws.end(), kw) == kws.end()) kws.push_back(kw);
    }
    const KeywordSet set = make_keywords(kws);
    const auto [in_src, out_src] = inout_split(doc, set, cfg);
    CHECK(in_src.keywords.size() + out_src.keywords.size() == set.keywords.size());
    const auto source_tokens = tokenize(doc.source, cfg);
    for (const NGram& kw : in_src.keywords) CHECK(contains_ngram(source_tokens, kw));
    for (const NGram& kw : out_src.keywords) CHECK_FALSE(contains_ngram(source_tokens, kw));
  }
}

TEST_CASE("length_breakdown groups by keyword length") {
  TokenizerConfig cfg;
  const KeywordSet keywords = make_keywords({
      {"alpha"},                      // unigram, present
      {"beta", "gamma"},              // bigram, present
      {"delta", "epsilon"},           // bigram, absent
      {"x", "y", "z"},                // trigram, absent
  });
  const LengthBreakdown breakdown =
      length_breakdown("alpha then beta gamma follows", keywords, cfg);
  REQUIRE(breakdown.for_length(1));
  CHECK(breakdown.for_length(1)->matched == 1);
  CHECK(breakdown.for_length(1)->total == 1);
  REQUIRE(breakdown.for_length(2));
  CHECK(breakdown.for_length(2)->matched == 1);
  CHECK(breakdown.for_length(2)->total == 2);
  REQUIRE(breakdown.for_length(3));
  CHECK(breakdown.for_length(3)->matched == 0);
  // groups without keywords stay empty rather than reading as zero
  CHECK_FALSE(breakdown.for_length(4).has_value());
  CHECK_FALSE(breakdown.for_length(10).has_value());
}

TEST_CASE("length_breakdown recombines to the overall rouge-k counts") {
  TokenizerConfig cfg;
  std::mt19937 rng(31);
  const std::vector<std::string> vocab = {"one", "two", "three", "four", "five", "six"};
  for (int trial = 0; trial < 100; ++trial) {
    std::string hyp;
    const int hl = static_cast<int>(rng() % 15);
    for (int i = 0; i < hl; ++i) {
      if (i) hyp += ' ';
      hyp += vocab[rng() % vocab.size()];
    }
    std::vector<NGram> kws;
    const int kc = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < kc; ++k) {
      NGram kw;
      const int klen = 1 + static_cast<int>(rng() % 10);
      for (int i = 0; i < klen; ++i) kw.push_back(vocab[rng() % vocab.size()]);
      if (std::find(kws.begin(), kws.end(), kw) == kws.end()) kws.push_back(kw);
    }
    const KeywordSet set = make_keywords(kws);
    const LengthBreakdown breakdown = length_breakdown(hyp, set, cfg);
    int matched = 0, total = 0;
    for (int n = 1; n <= kMaxNgram; ++n) {
      if (const auto& group = breakdown.for_length(n)) {
        matched += group->matched;
        total += group->total;
      }
    }
    const auto overall = rouge_k(hyp, set, cfg);
    REQUIRE(overall);
    CHECK(matched == overall->matched);
    CHECK(total == overall->total);
  }
}

TEST_CASE("distinguishability is the population standard deviation") {
  CHECK(distinguishability({{"a", 7.0}, {"b", 7.0}}) == 0.0);
  CHECK(distinguishability({{"a", 0.0}, {"b", 10.0}}) == doctest::Approx(5.0));

  // four-model fixture, closed form: mean 5, variance (16+4+4+16)/4 = 10
  const std::map<std::string, double> four = {{"m1", 1.0}, {"m2", 3.0}, {"m3", 7.0}, {"m4", 9.0}};
  CHECK(distinguishability(four) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-9));

  CHECK_THROWS_AS(distinguishability({{"only", 1.0}}), Error);
}

TEST_CASE("distinguishability is translation invariant and scales linearly") {
  std::map<std::string, double> scores = {{"a", 12.0}, {"b", 40.0}, {"c", 7.5}};
  const double base = distinguishability(scores);
  std::map<std::string, double> shifted, scaled;
  for (const auto& [k, v] : scores) {
    shifted[k] = v + 100.0;
    scaled[k] = v * 3.0;
  }
  CHECK(distinguishability(shifted) == doctest::Approx(base).epsilon(1e-12));
  CHECK(distinguishability(scaled) == doctest::Approx(3.0 * base).epsilon(1e-12));
}

TEST_CASE("length_correlation runs pearson per metric with exclusions") {
  std::vector<ScoreReport> reports;
  std::vector<double> lengths;
  // scores proportional to length: perfect correlation
  for (int i = 1; i <= 5; ++i) {
    reports.push_back(make_report("d" + std::to_string(i), 10.0 * i, 5.0 * i, 2.0 * i,
                                  i == 3 ? std::nullopt : std::optional<double>(1.0 * i)));
    lengths.push_back(static_cast<double>(i));
  }
  const AnalysisReport report = length_correlation(reports, lengths);
  CHECK(report.kind == "length_correlation");
  CHECK(report.n == 5);
  CHECK(report.excluded == 1);
  CHECK(*report.values.at("rouge1") == doctest::Approx(1.0));
  CHECK(*report.values.at("rouge2") == doctest::Approx(1.0));
  CHECK(*report.values.at("rougeL") == doctest::Approx(1.0));
  CHECK(*report.values.at("rougek") == doctest::Approx(1.0));

  // constant hypothesis lengths: undefined correlation, reported in-band
  const std::vector<double> constant(5, 4.0);
  const AnalysisReport undefined = length_correlation(reports, constant);
  CHECK_FALSE(undefined.values.at("rouge1").has_value());

  CHECK_THROWS_AS(length_correlation(reports, std::vector<double>{1.0}), Error);
}

TEST_CASE("length_correlation matches a spreadsheet-style oracle") {
  // five hand-built reports; expected r computed against the closed-form
  // pearson over the same columns
  std::vector<ScoreReport> reports;
  const std::vector<double> lengths = {4, 9, 6, 13, 7};
  const std::vector<double> r1 = {22.0, 35.5, 28.0, 41.0, 30.0};
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    reports.push_back(make_report("d" + std::to_string(i), r1[i], 0.0, 0.0, std::nullopt));
  }
  const AnalysisReport report = length_correlation(reports, lengths);
  const auto expected = pearson(lengths, r1);
  REQUIRE(expected);
  CHECK(*report.values.at("rouge1") == doctest::Approx(*expected).epsilon(1e-6));
  CHECK_FALSE(report.values.at("rouge2").has_value());  // constant zero column
}

TEST_CASE("metric_correlation handles self, anti, and undefined pairs") {
  std::vector<ScoreReport> reports;
  for (int i = 1; i <= 6; ++i) {
    const double v = 10.0 * i;
    reports.push_back(make_report("d" + std::to_string(i), v, 100.0 - v, v / 2.0,
                                  i == 6 ? std::nullopt : std::optional<double>(v)));
  }
  const AnalysisReport self = metric_correlation(reports, "rouge1", "rouge1");
  CHECK(*self.values.at("r") == doctest::Approx(1.0));
  const AnalysisReport anti = metric_correlation(reports, "rouge1", "rouge2");
  CHECK(*anti.values.at("r") == doctest::Approx(-1.0));

  const AnalysisReport with_k = metric_correlation(reports, "rouge1", "rougek");
  CHECK(with_k.n == 5);
  CHECK(with_k.excluded == 1);
  CHECK(*with_k.values.at("r") == doctest::Approx(1.0));
}
