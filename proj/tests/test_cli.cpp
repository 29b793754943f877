#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cli_support.hpp"
#include "rougekit/corpus.hpp"
#include "rougekit/metrics.hpp"

using namespace rougekit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string bin() {
  const std::string path = cli_support::binary_path();
  REQUIRE_MESSAGE(!path.empty(), "set ROUGEKIT_BIN to the CLI binary");
  return path;
}

std::string q(const fs::path& path) { return "\"" + path.string() + "\""; }

json parse_file(const fs::path& path) { return json::parse(cli_support::read_file(path)); }

std::vector<json> parse_jsonl(const fs::path& path) {
  std::istringstream in(cli_support::read_file(path));
  std::vector<json> records;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) records.push_back(json::parse(line));
  }
  return records;
}

const char* kTable1Corpus = R"json({"id": "tldr", "source": "src", "title": null, "references": ["A novel, hybrid deep learning approach provides the best solution to a limited-data problem (which is important to the conservation of the Hawaiian language)"], "hypotheses": {"hyp1": "We propose two methods to solve the transliteration problem automatically, given that there were not enough data to train an end-to-end deep learning model.", "hyp2": "We propose two methods to solve the Hawaiian orthography transliteration problem automatically using finite state transducers and a hybrid neural network."}})json";

}  // namespace

TEST_CASE("extract writes one keyword line per document") {
  const fs::path dir = cli_support::fresh_dir("cli_extract");
  cli_support::write_file(dir / "corpus.jsonl",
                          R"({"id": "d1", "source": "s", "references": ["neural machine translation works", "we like neural machine translation"]})"
                          "\n"
                          R"({"id": "d2", "source": "s", "references": ["graph parsing is fast", "graph parsing is robust"]})"
                          "\n");
  const int rc = cli_support::run_quiet(bin() + " extract --corpus " + q(dir / "corpus.jsonl") +
                                        " --extractor overlap --out " + q(dir / "kw.jsonl"));
  CHECK(rc == 0);
  const auto lines = parse_jsonl(dir / "kw.jsonl");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0]["id"] == "d1");
  CHECK(lines[0]["extractor"] == "reference_overlap");
  CHECK(lines[0]["version"] == "1");
  CHECK(fs::exists(dir / "kw.jsonl.skipped.json"));
  CHECK(fs::exists(dir / "kw.jsonl.manifest.json"));

  // keyword file loads back through the library
  const KeywordMap loaded = load_keywords((dir / "kw.jsonl").string());
  CHECK(loaded.size() == 2);
}

TEST_CASE("extract exits 3 when no document is extractable") {
  const fs::path dir = cli_support::fresh_dir("cli_extract_empty");
  cli_support::write_file(dir / "corpus.jsonl",
                          R"({"id": "d1", "source": "s", "references": ["only one"]})"
                          "\n"
                          R"({"id": "d2", "source": "s", "references": ["alone again"]})"
                          "\n");
  const int rc = cli_support::run_quiet(bin() + " extract --corpus " + q(dir / "corpus.jsonl") +
                                        " --extractor overlap --out " + q(dir / "kw.jsonl"));
  CHECK(rc == 3);
  CHECK(parse_jsonl(dir / "kw.jsonl").empty());
  const json skips = parse_file(dir / "kw.jsonl.skipped.json");
  CHECK(skips["skipped"].size() == 2);
}

TEST_CASE("extract exits 2 on unreadable input") {
  const fs::path dir = cli_support::fresh_dir("cli_extract_bad");
  const int rc = cli_support::run_quiet(bin() + " extract --corpus " + q(dir / "missing.jsonl") +
                                        " --extractor overlap --out " + q(dir / "kw.jsonl"));
  CHECK(rc == 2);
}

TEST_CASE("tfidf with k=auto matches the overlap yield per document") {
  const fs::path dir = cli_support::fresh_dir("cli_auto_k");
  cli_support::write_file(
      dir / "corpus.jsonl",
      R"({"id": "d1", "source": "s", "references": ["neural machine translation with attention", "attention helps neural machine translation"]})"
      "\n"
      R"({"id": "d2", "source": "s", "references": ["television ratings fall quickly", "television ratings rise quickly overnight"]})"
      "\n");
  REQUIRE(cli_support::run_quiet(bin() + " extract --corpus " + q(dir / "corpus.jsonl") +
                                 " --extractor overlap --out " + q(dir / "overlap.jsonl")) == 0);
  REQUIRE(cli_support::run_quiet(bin() + " extract --corpus " + q(dir / "corpus.jsonl") +
                                 " --extractor tfidf --k auto --out " + q(dir / "tfidf.jsonl")) == 0);
  std::map<std::string, std::size_t> overlap_counts, tfidf_counts;
  for (const json& line : parse_jsonl(dir / "overlap.jsonl")) {
    overlap_counts[line["id"]] = line["keywords"].size();
  }
  for (const json& line : parse_jsonl(dir / "tfidf.jsonl")) {
    tfidf_counts[line["id"]] = line["keywords"].size();
    CHECK(line["extractor"] == "tfidf");
  }
  CHECK(overlap_counts == tfidf_counts);
}

TEST_CASE("score reproduces the motivating fixture end to end") {
  const fs::path dir = cli_support::fresh_dir("cli_score_table1");
  cli_support::write_file(dir / "corpus.jsonl", std::string(kTable1Corpus) + "\n");
  cli_support::write_file(
      dir / "kw.jsonl",
      R"({"id": "tldr", "keywords": [["hawaiian"]], "extractor": "reference_overlap", "version": "1", "num_references": 2})"
      "\n");
  REQUIRE(cli_support::run_quiet(bin() + " score --corpus " + q(dir / "corpus.jsonl") +
                                 " --keywords " + q(dir / "kw.jsonl") + " --out " +
                                 q(dir / "scores.jsonl")) == 0);
  const auto lines = parse_jsonl(dir / "scores.jsonl");
  REQUIRE(lines.size() == 2);
  std::map<std::string, json> by_system;
  for (const json& line : lines) by_system[line["system"]] = line;

  auto round2 = [](double x) { return std::round(x * 100.0) / 100.0; };
  CHECK(round2(by_system["hyp1"]["rouge1"]["f1"].get<double>()) == 27.45);
  CHECK(round2(by_system["hyp2"]["rouge1"]["f1"].get<double>()) == 26.09);
  CHECK(by_system["hyp1"]["rougek"]["value"] == 0.0);
  CHECK(by_system["hyp2"]["rougek"]["value"] == 100.0);

  CHECK(fs::exists(dir / "scores.summary.json"));
  const json summary = parse_file(dir / "scores.summary.json");
  CHECK(summary["systems"].contains("hyp1"));
  CHECK(summary["manifest"] == (dir / "scores.jsonl.manifest.json").string());
}

TEST_CASE("scoring a hypothesis equal to the reference yields 100 everywhere") {
  const fs::path dir = cli_support::fresh_dir("cli_score_identity");
  cli_support::write_file(
      dir / "corpus.jsonl",
      R"({"id": "d", "source": "s", "references": ["exactly this sentence"], "hypotheses": {"echo": "exactly this sentence"}})"
      "\n");
  cli_support::write_file(
      dir / "kw.jsonl",
      R"({"id": "d", "keywords": [["exactly"], ["sentence"]], "extractor": "reference_overlap", "version": "1", "num_references": 1})"
      "\n");
  REQUIRE(cli_support::run_quiet(bin() + " score --corpus " + q(dir / "corpus.jsonl") +
                                 " --keywords " + q(dir / "kw.jsonl") + " --out " +
                                 q(dir / "scores.jsonl")) == 0);
  const json line = parse_jsonl(dir / "scores.jsonl").at(0);
  for (const char* metric : {"rouge1", "rouge2", "rougeL"}) {
    CHECK(line[metric]["precision"] == 100.0);
    CHECK(line[metric]["recall"] == 100.0);
    CHECK(line[metric]["f1"] == 100.0);
  }
  CHECK(line["rougek"]["value"] == 100.0);
}

TEST_CASE("summary means match hand aggregation across three systems") {
  const fs::path dir = cli_support::fresh_dir("cli_score_means");
  cli_support::write_file(
      dir / "corpus.jsonl",
      R"({"id": "d1", "source": "s", "references": ["alpha beta gamma"], "hypotheses": {"s1": "alpha beta gamma", "s2": "alpha", "s3": "nothing shared"}})"
      "\n"
      R"({"id": "d2", "source": "s", "references": ["delta epsilon"], "hypotheses": {"s1": "delta epsilon", "s2": "delta", "s3": "still nothing"}})"
      "\n");
  cli_support::write_file(
      dir / "kw.jsonl",
      R"({"id": "d1", "keywords": [["alpha"]], "extractor": "reference_overlap", "version": "1", "num_references": 1})"
      "\n"
      R"({"id": "d2", "keywords": [["delta"]], "extractor": "reference_overlap", "version": "1", "num_references": 1})"
      "\n");
  REQUIRE(cli_support::run_quiet(bin() + " score --corpus " + q(dir / "corpus.jsonl") +
                                 " --keywords " + q(dir / "kw.jsonl") + " --out " +
                                 q(dir / "scores.jsonl")) == 0);
  const auto lines = parse_jsonl(dir / "scores.jsonl");
  REQUIRE(lines.size() == 6);
  std::map<std::string, std::vector<double>> f1s;
  for (const json& line : lines) {
    f1s[line["system"].get<std::string>()].push_back(line["rouge1"]["f1"].get<double>());
  }
  const json summary = parse_file(dir / "scores.summary.json");
  for (const auto& [system, values] : f1s) {
    const double mean = (values[0] + values[1]) / 2.0;
    CHECK(summary["systems"][system]["rouge1"]["f1"].get<double>() ==
          doctest::Approx(mean).epsilon(1e-12));
  }
  CHECK(summary["systems"]["s1"]["rougek"]["mean"] == 100.0);
  CHECK(summary["systems"]["s3"]["rougek"]["mean"] == 0.0);
}

TEST_CASE("stats subcommand reports corpus statistics") {
  const fs::path dir = cli_support::fresh_dir("cli_stats");
  cli_support::write_file(dir / "corpus.jsonl",
                          R"({"id": "d1", "source": "one two three four five six", "references": ["one two"]})"
                          "\n"
                          R"({"id": "d2", "source": "one two three four", "references": ["one two three"]})"
                          "\n");
  REQUIRE(cli_support::run_quiet(bin() + " stats --corpus " + q(dir / "corpus.jsonl") + " --out " +
                                 q(dir / "stats.json")) == 0);
  const json stats = parse_file(dir / "stats.json");
  CHECK(stats["num_documents"] == 2);
  CHECK(stats["avg_words_per_doc"].get<double>() == doctest::Approx(5.0));
  CHECK(stats["avg_words_per_summary"].get<double>() == doctest::Approx(2.5));
  CHECK(stats["compression_ratio"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("analyze agreement prints 100 when the metric always agrees") {
  const fs::path dir = cli_support::fresh_dir("cli_agreement");
  cli_support::write_file(
      dir / "corpus.jsonl",
      R"({"id": "d1", "source": "s", "references": ["alpha beta"], "hypotheses": {"good": "alpha beta", "bad": "nothing"}})"
      "\n"
      R"({"id": "d2", "source": "s", "references": ["gamma delta"], "hypotheses": {"good": "gamma delta", "bad": "nope"}})"
      "\n");
  cli_support::write_file(
      dir / "kw.jsonl",
      R"({"id": "d1", "keywords": [["alpha"]], "extractor": "reference_overlap", "version": "1", "num_references": 1})"
      "\n"
      R"({"id": "d2", "keywords": [["gamma"]], "extractor": "reference_overlap", "version": "1", "num_references": 1})"
      "\n");
  cli_support::write_file(dir / "judgments.jsonl",
                          R"({"id": "d1", "system_a": "good", "system_b": "bad", "choice": "a"})"
                          "\n"
                          R"({"id": "d2", "system_a": "bad", "system_b": "good", "choice": "b"})"
                          "\n");
  REQUIRE(cli_support::run_quiet(bin() + " score --corpus " + q(dir / "corpus.jsonl") +
                                 " --keywords " + q(dir / "kw.jsonl") + " --out " +
                                 q(dir / "scores.jsonl")) == 0);
  REQUIRE(cli_support::run_quiet(bin() + " analyze agreement --scores " + q(dir / "scores.jsonl") +
                                 " --judgments " + q(dir / "judgments.jsonl") + " --out " +
                                 q(dir / "agreement.json")) == 0);
  const json report = parse_file(dir / "agreement.json");
  CHECK(report["kind"] == "agreement");
  CHECK(report["values"]["rouge1"] == 100.0);
  CHECK(report["values"]["rougek"] == 100.0);
  CHECK(report["n"] == 2);
}

TEST_CASE("analyze inout leaves out_src empty for fully copied keywords") {
  const fs::path dir = cli_support::fresh_dir("cli_inout");
  cli_support::write_file(
      dir / "corpus.jsonl",
      R"({"id": "d1", "source": "the keyword lives here", "references": ["r1", "r2"], "hypotheses": {"sys": "keyword lives"}})"
      "\n");
  cli_support::write_file(
      dir / "kw.jsonl",
      R"({"id": "d1", "keywords": [["keyword"], ["lives"]], "extractor": "reference_overlap", "version": "1", "num_references": 2})"
      "\n");
  REQUIRE(cli_support::run_quiet(bin() + " analyze inout --corpus " + q(dir / "corpus.jsonl") +
                                 " --keywords " + q(dir / "kw.jsonl") +
                                 " --system sys --out " + q(dir / "inout.json")) == 0);
  const json report = parse_file(dir / "inout.json");
  CHECK(report["values"]["in_src_keywords"] == 2.0);
  CHECK(report["values"]["out_src_keywords"] == 0.0);
  CHECK(report["values"]["in_src"] == 100.0);
  CHECK(report["values"]["out_src"].is_null());
}

TEST_CASE("analyze breakdown matches the library computation") {
  const fs::path dir = cli_support::fresh_dir("cli_breakdown");
  cli_support::write_file(
      dir / "corpus.jsonl",
      R"({"id": "d1", "source": "s", "references": ["r1", "r2"], "hypotheses": {"sys": "alpha beta gamma"}})"
      "\n");
  cli_support::write_file(
      dir / "kw.jsonl",
      R"({"id": "d1", "keywords": [["alpha"], ["beta", "gamma"], ["missing", "pair"]], "extractor": "reference_overlap", "version": "1", "num_references": 2})"
      "\n");
  REQUIRE(cli_support::run_quiet(bin() + " analyze breakdown --corpus " + q(dir / "corpus.jsonl") +
                                 " --keywords " + q(dir / "kw.jsonl") +
                                 " --system sys --out " + q(dir / "breakdown.json")) == 0);
  const json report = parse_file(dir / "breakdown.json");
  CHECK(report["values"]["len01"] == 100.0);
  CHECK(report["values"]["len02"] == 50.0);
  CHECK(report["values"]["len02_total"] == 2.0);
  CHECK(report["values"]["len03"].is_null());
}

TEST_CASE("demo guidance exits cleanly") {
  CHECK(cli_support::run_quiet(bin() + " demo guidance") == 0);
}

TEST_CASE("score reports missing keyword ids and unknown systems") {
  const fs::path dir = cli_support::fresh_dir("cli_score_missing");
  cli_support::write_file(
      dir / "corpus.jsonl",
      R"({"id": "d1", "source": "s", "references": ["alpha beta"], "hypotheses": {"sys": "alpha"}})"
      "\n"
      R"({"id": "d2", "source": "s", "references": ["gamma delta"], "hypotheses": {"sys": "gamma"}})"
      "\n");
  cli_support::write_file(
      dir / "kw.jsonl",
      R"({"id": "d1", "keywords": [["alpha"]], "extractor": "reference_overlap", "version": "1", "num_references": 1})"
      "\n");
  REQUIRE(cli_support::run_quiet(bin() + " score --corpus " + q(dir / "corpus.jsonl") +
                                 " --keywords " + q(dir / "kw.jsonl") +
                                 " --systems sys,ghost --out " + q(dir / "scores.jsonl")) == 0);
  const json summary = parse_file(dir / "scores.summary.json");
  CHECK(summary["missing_keyword_ids"] == json::array({"d2"}));
  CHECK(summary["unknown_systems"] == json::array({"ghost"}));

  // the document without keywords is scored, with rouge-k undefined
  std::map<std::string, json> by_doc;
  for (const json& line : parse_jsonl(dir / "scores.jsonl")) by_doc[line["doc_id"]] = line;
  REQUIRE(by_doc.size() == 2);
  CHECK_FALSE(by_doc["d1"]["rougek"].is_null());
  CHECK(by_doc["d2"]["rougek"].is_null());
  CHECK(summary["systems"]["sys"]["rougek"]["excluded"] == 1);
}

TEST_CASE("global --max-ngram and --stopwords flags reach the extractor") {
  const fs::path dir = cli_support::fresh_dir("cli_globals");
  cli_support::write_file(dir / "corpus.jsonl",
                          R"({"id": "d1", "source": "s", "references": ["alpha beta gamma", "alpha beta gamma"]})"
                          "\n");
  REQUIRE(cli_support::run_quiet(bin() + " --max-ngram 1 extract --corpus " +
                                 q(dir / "corpus.jsonl") + " --extractor overlap --out " +
                                 q(dir / "kw.jsonl")) == 0);
  const auto lines = parse_jsonl(dir / "kw.jsonl");
  REQUIRE(lines.size() == 1);
  for (const json& kw : lines[0]["keywords"]) CHECK(kw.size() == 1);

  // a custom stopword list that swallows "alpha"
  cli_support::write_file(dir / "stop.txt", "alpha\nbeta\ngamma\n");
  REQUIRE(cli_support::run_quiet(bin() + " --stopwords " + q(dir / "stop.txt") +
                                 " extract --corpus " + q(dir / "corpus.jsonl") +
                                 " --extractor overlap --out " + q(dir / "kw2.jsonl")) == 0);
  CHECK(parse_jsonl(dir / "kw2.jsonl").at(0)["keywords"].empty());

  CHECK(cli_support::run_quiet(bin() + " --max-ngram 99 extract --corpus " +
                               q(dir / "corpus.jsonl") + " --extractor overlap --out " +
                               q(dir / "kw3.jsonl")) == 2);
}

TEST_CASE("config file switches the tokenizer") {
  const fs::path dir = cli_support::fresh_dir("cli_config");
  cli_support::write_file(dir / "corpus.jsonl",
                          R"({"id": "d1", "source": "limited-data limited-data", "references": ["limited-data problem", "limited-data solution"]})"
                          "\n");
  cli_support::write_file(dir / "rougekit.conf",
                          "# keep compounds intact\nsplit_hyphens = false\n");
  REQUIRE(cli_support::run_quiet(bin() + " --config " + q(dir / "rougekit.conf") +
                                 " extract --corpus " + q(dir / "corpus.jsonl") +
                                 " --extractor overlap --out " + q(dir / "kw.jsonl")) == 0);
  const auto lines = parse_jsonl(dir / "kw.jsonl");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0]["keywords"][0][0] == "limited-data");
}
