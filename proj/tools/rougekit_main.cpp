// rougekit: keyword-aware summarization evaluation.
// Pipeline: extract keywords -> score systems -> analyze -> report.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rougekit/analysis.hpp"
#include "rougekit/corpus.hpp"
#include "rougekit/error.hpp"
#include "rougekit/guidance.hpp"
#include "rougekit/idf.hpp"
#include "rougekit/keywords.hpp"
#include "rougekit/metrics.hpp"
#include "rougekit/version.hpp"

namespace {

using nlohmann::json;
using namespace rougekit;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitEmptyResult = 3;

std::vector<std::string> g_argv;  // echoed into manifests

struct GlobalOptions {
  TokenizerConfig tokenizer;
  int jobs = 1;
  int max_ngram = kMaxNgram;
  std::string config_path;
};

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw Error("config: key \"" + key + "\" needs a boolean, got \"" + value + "\"");
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Plain key = value file; '#' starts a comment. Recognized keys:
// lowercase, split_hyphens, strip_punctuation, stopwords, jobs, max_ngram.
void apply_config_file(GlobalOptions& options, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trimmed(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw Error(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trimmed(text.substr(0, eq));
    const std::string value = trimmed(text.substr(eq + 1));
    if (key == "lowercase") {
      options.tokenizer.lowercase = parse_bool(value, key);
    } else if (key == "split_hyphens") {
      options.tokenizer.split_hyphens = parse_bool(value, key);
    } else if (key == "strip_punctuation") {
      options.tokenizer.strip_punctuation = parse_bool(value, key);
    } else if (key == "stopwords") {
      options.tokenizer.stopword_path = value;
    } else if (key == "jobs") {
      options.jobs = std::stoi(value);
    } else if (key == "max_ngram") {
      options.max_ngram = std::stoi(value);
    } else {
      throw Error(path + ":" + std::to_string(line_no) + ": unknown config key \"" + key + "\"");
    }
  }
}

std::string config_hash(const GlobalOptions& options) {
  std::string canonical = "lowercase=" + std::to_string(options.tokenizer.lowercase) +
                          ";split_hyphens=" + std::to_string(options.tokenizer.split_hyphens) +
                          ";strip_punctuation=" + std::to_string(options.tokenizer.strip_punctuation) +
                          ";stopwords=" + options.tokenizer.stopword_path +
                          ";max_ngram=" + std::to_string(options.max_ngram);
  std::uint64_t hash = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << hash;
  return out.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string manifest_path_for(const std::string& primary_output) {
  return primary_output + ".manifest.json";
}

// One manifest per run, named after the primary output. Report files embed
// this name; the timestamp lives only here so reports stay byte-stable.
std::string write_manifest(const std::string& command, const GlobalOptions& options,
                           const std::vector<std::string>& inputs,
                           const std::vector<std::string>& outputs) {
  const std::string path = manifest_path_for(outputs.at(0));
  json manifest;
  manifest["command"] = command;
  manifest["argv"] = g_argv;
  manifest["config_hash"] = config_hash(options);
  manifest["inputs"] = inputs;
  manifest["outputs"] = outputs;
  manifest["version"] = std::string(kToolkitVersion);
  manifest["timestamp"] = utc_timestamp();
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest: " + path);
  out << manifest.dump(2) << '\n';
  return path;
}

void write_json_file(const json& value, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << value.dump(2) << '\n';
}

// Index-sharded worker pool; rethrows the first worker failure.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

json to_json(const RougeScore& score) {
  return json{{"precision", score.precision}, {"recall", score.recall}, {"f1", score.f1}};
}

json to_json(const ScoreReport& report) {
  json out;
  out["doc_id"] = report.doc_id;
  out["system"] = report.system;
  out["aggregation"] = std::string(to_string(report.aggregation));
  out["rouge1"] = to_json(report.rouge1);
  out["rouge2"] = to_json(report.rouge2);
  out["rougeL"] = to_json(report.rougeL);
  if (report.rougek) {
    out["rougek"] = json{{"matched", report.rougek->matched},
                         {"total", report.rougek->total},
                         {"value", report.rougek->value}};
  } else {
    out["rougek"] = nullptr;
  }
  return out;
}

RougeScore rouge_score_from_json(const json& value, RougeVariant variant) {
  RougeScore score;
  score.variant = variant;
  score.precision = value.at("precision").get<double>();
  score.recall = value.at("recall").get<double>();
  score.f1 = value.at("f1").get<double>();
  return score;
}

ScoreReport report_from_json(const json& value) {
  ScoreReport report;
  report.doc_id = value.at("doc_id").get<std::string>();
  report.system = value.at("system").get<std::string>();
  report.aggregation = aggregation_from_string(value.at("aggregation").get<std::string>());
  report.rouge1 = rouge_score_from_json(value.at("rouge1"), RougeVariant::rouge1);
  report.rouge2 = rouge_score_from_json(value.at("rouge2"), RougeVariant::rouge2);
  report.rougeL = rouge_score_from_json(value.at("rougeL"), RougeVariant::rougeL);
  if (value.contains("rougek") && !value.at("rougek").is_null()) {
    const json& k = value.at("rougek");
    report.rougek = RougeKScore{k.at("matched").get<int>(), k.at("total").get<int>(),
                                k.at("value").get<double>()};
  }
  return report;
}

std::vector<ScoreReport> load_score_reports(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scores file: " + path);
  std::vector<ScoreReport> reports;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) {
      throw Error(path + ":" + std::to_string(line_no) + ": malformed JSON record");
    }
    try {
      reports.push_back(report_from_json(record));
    } catch (const json::exception& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return reports;
}

json to_json(const AnalysisReport& report, const std::string& manifest) {
  json values = json::object();
  for (const auto& [name, value] : report.values) {
    values[name] = value ? json(*value) : json(nullptr);
  }
  return json{{"kind", report.kind},
              {"values", values},
              {"n", report.n},
              {"excluded", report.excluded},
              {"manifest", manifest}};
}

void print_analysis_table(const AnalysisReport& report) {
  std::cout << report.kind << " (n=" << report.n << ", excluded=" << report.excluded << ")\n";
  for (const auto& [name, value] : report.values) {
    std::cout << "  " << std::left << std::setw(24) << name;
    if (value) {
      std::cout << std::right << std::fixed << std::setprecision(2) << *value;
      std::cout.unsetf(std::ios::fixed);
    } else {
      std::cout << "undefined";
    }
    std::cout << '\n';
  }
}

struct ExtractOptions {
  std::string corpus_path;
  std::string extractor = "overlap";
  std::string out_path;
  std::string k_spec = "auto";
};

int cmd_extract(const GlobalOptions& global, const ExtractOptions& options) {
  const Corpus corpus = load_corpus(options.corpus_path);
  const Extractor extractor = extractor_from_string(options.extractor);

  int fixed_k = 0;
  const bool auto_k = options.k_spec == "auto";
  if (!auto_k && extractor != Extractor::reference_overlap) {
    fixed_k = std::stoi(options.k_spec);
    if (fixed_k < 1) throw Error("--k must be >= 1");
  }

  // The comparison protocol keeps recall fixed: baseline extractors default
  // to the overlap heuristic's per-document yield.
  std::optional<IdfTable> idf;
  if (extractor == Extractor::tfidf) idf = IdfTable::from_references(corpus, global.tokenizer);

  struct Row {
    std::optional<KeywordSet> set;
    std::string skip_reason;
  };
  std::vector<Row> rows(corpus.documents.size());
  parallel_for(corpus.documents.size(), global.jobs, [&](std::size_t i) {
    const Document& doc = corpus.documents[i];
    Row& row = rows[i];
    const bool need_overlap = extractor == Extractor::reference_overlap || auto_k;
    if (need_overlap && !overlap_extraction_possible(doc)) {
      row.skip_reason = "needs at least two references, or one reference and a title";
      return;
    }
    if (extractor == Extractor::reference_overlap) {
      row.set = extract_reference_overlap(doc, global.tokenizer, global.max_ngram);
      return;
    }
    int k = fixed_k;
    if (auto_k) {
      const KeywordSet overlap = extract_reference_overlap(doc, global.tokenizer, global.max_ngram);
      k = static_cast<int>(overlap.keywords.size());
    }
    if (k == 0) {
      // overlap found nothing; an empty set keeps the yield matched
      KeywordSet empty;
      empty.doc_id = doc.id;
      empty.extractor = extractor;
      empty.num_references_used = static_cast<int>(doc.references.size());
      row.set = std::move(empty);
      return;
    }
    row.set = extractor == Extractor::tfidf
                  ? extract_tfidf(doc, *idf, k, global.tokenizer)
                  : extract_textrank(doc, k, global.tokenizer);
  });

  KeywordMap keywords;
  std::vector<std::pair<std::string, std::string>> skipped_docs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].set) {
      keywords.emplace(rows[i].set->doc_id, std::move(*rows[i].set));
    } else {
      skipped_docs.emplace_back(corpus.documents[i].id, rows[i].skip_reason);
    }
  }
  std::sort(skipped_docs.begin(), skipped_docs.end());
  json skipped = json::array();
  for (const auto& [id, reason] : skipped_docs) {
    skipped.push_back(json{{"id", id}, {"reason", reason}});
  }

  save_keywords(keywords, options.out_path);
  const std::string sidecar = options.out_path + ".skipped.json";
  write_json_file(json{{"kind", "extraction_skips"},
                       {"skipped", skipped},
                       {"manifest", manifest_path_for(options.out_path)}},
                  sidecar);
  write_manifest("extract", global, {options.corpus_path}, {options.out_path, sidecar});

  std::cout << "extracted keywords for " << keywords.size() << "/" << corpus.documents.size()
            << " documents -> " << options.out_path << '\n';
  if (keywords.empty()) {
    std::cerr << "no document was extractable\n";
    return kExitEmptyResult;
  }
  return kExitOk;
}

struct ScoreOptions {
  std::string corpus_path;
  std::string keywords_path;
  std::string out_path;
  std::string summary_path;  // default derived from out_path
  std::vector<std::string> systems;
  std::string aggregation = "avg";
};

std::string default_summary_path(const std::string& out_path) {
  const std::size_t dot = out_path.find_last_of('.');
  const std::size_t slash = out_path.find_last_of("/\\");
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? out_path.substr(0, dot) : out_path) + ".summary.json";
}

int cmd_score(const GlobalOptions& global, const ScoreOptions& options) {
  const Corpus corpus = load_corpus(options.corpus_path);
  const KeywordMap keywords = load_keywords(options.keywords_path);
  const Aggregation aggregation = aggregation_from_string(options.aggregation);
  const std::string summary_path = options.summary_path.empty()
                                       ? default_summary_path(options.out_path)
                                       : options.summary_path;

  std::set<std::string> known_systems;
  for (const Document& doc : corpus.documents) {
    for (const auto& [system, hyp] : doc.hypotheses) known_systems.insert(system);
  }
  std::vector<std::string> systems;
  std::vector<std::string> unknown_systems;
  if (options.systems.empty()) {
    systems.assign(known_systems.begin(), known_systems.end());
  } else {
    for (const std::string& system : options.systems) {
      if (known_systems.contains(system)) {
        systems.push_back(system);
      } else {
        unknown_systems.push_back(system);
      }
    }
    std::sort(systems.begin(), systems.end());
  }
  for (const std::string& system : unknown_systems) {
    std::cerr << "warning: unknown system \"" << system << "\" (no hypotheses in corpus)\n";
  }

  // deterministic work list ordered by (doc id, system)
  std::vector<const Document*> docs;
  docs.reserve(corpus.documents.size());
  for (const Document& doc : corpus.documents) docs.push_back(&doc);
  std::sort(docs.begin(), docs.end(),
            [](const Document* a, const Document* b) { return a->id < b->id; });

  std::vector<std::string> missing_keyword_ids;
  struct Pair {
    const Document* doc;
    const KeywordSet* keywords;
    const std::string* system;
  };
  static const KeywordSet kNoKeywords;
  std::vector<Pair> pairs;
  for (const Document* doc : docs) {
    const KeywordSet* set = &kNoKeywords;
    if (auto it = keywords.find(doc->id); it != keywords.end()) {
      set = &it->second;
    } else {
      missing_keyword_ids.push_back(doc->id);
    }
    for (const std::string& system : systems) {
      if (doc->hypotheses.contains(system)) pairs.push_back(Pair{doc, set, &system});
    }
  }

  std::vector<ScoreReport> reports(pairs.size());
  parallel_for(pairs.size(), global.jobs, [&](std::size_t i) {
    reports[i] = score_document(*pairs[i].doc, *pairs[i].keywords, *pairs[i].system, aggregation,
                                global.tokenizer);
  });

  {
    std::ofstream out(options.out_path);
    if (!out) throw Error("cannot write file: " + options.out_path);
    for (const ScoreReport& report : reports) out << to_json(report).dump() << '\n';
  }

  json summary;
  summary["kind"] = "score_summary";
  summary["aggregation"] = std::string(to_string(aggregation));
  summary["manifest"] = manifest_path_for(options.out_path);
  summary["num_reports"] = reports.size();
  summary["unknown_systems"] = unknown_systems;
  summary["missing_keyword_ids"] = missing_keyword_ids;
  summary["systems"] = json::object();
  if (!reports.empty()) {
    for (const auto& [system, agg] : aggregate_corpus(reports)) {
      json entry;
      entry["num_documents"] = agg.num_documents;
      entry["rouge1"] = to_json(agg.rouge1);
      entry["rouge2"] = to_json(agg.rouge2);
      entry["rougeL"] = to_json(agg.rougeL);
      entry["rougek"] = json{{"mean", agg.rougek ? json(*agg.rougek) : json(nullptr)},
                             {"excluded", agg.rougek_excluded}};
      summary["systems"][system] = entry;
    }
  }
  write_json_file(summary, summary_path);
  write_manifest("score", global, {options.corpus_path, options.keywords_path},
                 {options.out_path, summary_path});

  std::cout << "scored " << reports.size() << " (document, system) pairs -> " << options.out_path
            << '\n';
  for (const auto& [system, entry] : summary["systems"].items()) {
    std::cout << "  " << std::left << std::setw(16) << system << std::right << std::fixed
              << std::setprecision(2) << "R-1 " << entry["rouge1"]["f1"].get<double>() << "  R-2 "
              << entry["rouge2"]["f1"].get<double>() << "  R-L "
              << entry["rougeL"]["f1"].get<double>() << "  R-K ";
    if (entry["rougek"]["mean"].is_null()) {
      std::cout << "undefined";
    } else {
      std::cout << entry["rougek"]["mean"].get<double>();
    }
    std::cout.unsetf(std::ios::fixed);
    std::cout << '\n';
  }
  if (reports.empty()) {
    std::cerr << "no (document, system) pair could be scored\n";
    return kExitEmptyResult;
  }
  return kExitOk;
}

struct StatsOptions {
  std::string corpus_path;
  std::string keywords_path;
  std::string out_path;
};

int cmd_stats(const GlobalOptions& global, const StatsOptions& options) {
  const Corpus corpus = load_corpus(options.corpus_path);
  std::optional<KeywordMap> keywords;
  if (!options.keywords_path.empty()) keywords = load_keywords(options.keywords_path);
  const CorpusStats stats =
      compute_stats(corpus, keywords ? &*keywords : nullptr, global.tokenizer);

  std::cout << std::fixed << std::setprecision(2);
  std::cout << "documents            " << stats.num_documents << '\n';
  std::cout << "words/doc (avg)      " << stats.avg_words_per_doc << '\n';
  std::cout << "words/summary (avg)  " << stats.avg_words_per_summary << '\n';
  std::cout << "compression ratio    " << stats.compression_ratio << '\n';
  std::cout << "references (avg)     " << stats.avg_references << '\n';
  if (stats.avg_keywords) {
    std::cout << "keywords (avg)       " << *stats.avg_keywords << '\n';
    std::cout << "keyword length (avg) " << *stats.avg_keyword_length << '\n';
  }
  std::cout.unsetf(std::ios::fixed);

  if (!options.out_path.empty()) {
    json out;
    out["kind"] = "corpus_stats";
    out["num_documents"] = stats.num_documents;
    out["avg_words_per_doc"] = stats.avg_words_per_doc;
    out["avg_words_per_summary"] = stats.avg_words_per_summary;
    out["compression_ratio"] = stats.compression_ratio;
    out["avg_references"] = stats.avg_references;
    out["avg_keywords"] = stats.avg_keywords ? json(*stats.avg_keywords) : json(nullptr);
    out["avg_keyword_length"] =
        stats.avg_keyword_length ? json(*stats.avg_keyword_length) : json(nullptr);
    out["manifest"] = manifest_path_for(options.out_path);
    write_json_file(out, options.out_path);
    std::vector<std::string> inputs = {options.corpus_path};
    if (!options.keywords_path.empty()) inputs.push_back(options.keywords_path);
    write_manifest("stats", global, inputs, {options.out_path});
  }
  return kExitOk;
}

struct AnalyzeOptions {
  std::string scores_path;
  std::string judgments_path;
  std::string corpus_path;
  std::string keywords_path;
  std::string summary_path;
  std::string system;
  std::string metric_a;
  std::string metric_b;
  std::vector<std::string> metrics = {"rouge1", "rouge2", "rougeL", "rougek"};
  bool require_rougek_diff = false;
  std::string out_path;
};

int finish_analysis(const GlobalOptions& global, const AnalysisReport& report,
                    const std::vector<std::string>& inputs, const std::string& out_path) {
  print_analysis_table(report);
  write_json_file(to_json(report, manifest_path_for(out_path)), out_path);
  write_manifest("analyze " + report.kind, global, inputs, {out_path});
  return kExitOk;
}

int cmd_analyze_agreement(const GlobalOptions& global, const AnalyzeOptions& options) {
  const std::vector<ScoreReport> reports = load_score_reports(options.scores_path);
  std::map<std::pair<std::string, std::string>, const ScoreReport*> by_key;
  for (const ScoreReport& report : reports) by_key[{report.doc_id, report.system}] = &report;

  std::ifstream in(options.judgments_path);
  if (!in) throw Error("cannot open judgments file: " + options.judgments_path);

  std::vector<AgreementInput> inputs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) {
      throw Error(options.judgments_path + ":" + std::to_string(line_no) +
                  ": malformed JSON record");
    }
    AgreementInput input;
    input.doc_id = record.at("id").get<std::string>();
    input.system_a = record.at("system_a").get<std::string>();
    input.system_b = record.at("system_b").get<std::string>();
    const std::string choice = record.at("choice").get<std::string>();
    if (choice != "a" && choice != "b") {
      throw Error(options.judgments_path + ":" + std::to_string(line_no) +
                  ": choice must be \"a\" or \"b\"");
    }
    input.human_choice = choice[0];

    auto a = by_key.find({input.doc_id, input.system_a});
    auto b = by_key.find({input.doc_id, input.system_b});
    if (a == by_key.end() || b == by_key.end()) {
      throw Error(options.judgments_path + ":" + std::to_string(line_no) +
                  ": no scores for document \"" + input.doc_id + "\" and both systems");
    }
    for (std::string_view metric : kMetricNames) {
      const auto va = metric_value(*a->second, metric);
      const auto vb = metric_value(*b->second, metric);
      if (va && vb) input.metric_scores[std::string(metric)] = {*va, *vb};
    }
    inputs.push_back(std::move(input));
  }

  AnalysisReport report;
  report.kind = "agreement";
  const std::size_t total = inputs.size();
  if (options.require_rougek_diff) {
    inputs = filter_differing_pairs(inputs, "rougek");
  }
  report.n = inputs.size();
  report.excluded = total - inputs.size();

  for (const std::string& metric : options.metrics) {
    std::vector<AgreementInput> usable;
    for (const AgreementInput& input : inputs) {
      if (input.metric_scores.contains(metric)) usable.push_back(input);
    }
    if (usable.empty()) {
      report.values[metric] = std::nullopt;
      continue;
    }
    const AgreementResult result = agreement_ratio(usable, metric);
    report.values[metric] = result.ratio;
    report.values[metric + "_ties"] = static_cast<double>(result.ties);
    if (usable.size() != inputs.size()) {
      report.values[metric + "_excluded"] = static_cast<double>(inputs.size() - usable.size());
    }
  }

  const int rc =
      finish_analysis(global, report, {options.scores_path, options.judgments_path}, options.out_path);
  return inputs.empty() ? kExitEmptyResult : rc;
}

std::vector<ScoreReport> reports_for_system(const std::vector<ScoreReport>& reports,
                                            const std::string& system) {
  std::vector<ScoreReport> out;
  for (const ScoreReport& report : reports) {
    if (report.system == system) out.push_back(report);
  }
  std::sort(out.begin(), out.end(),
            [](const ScoreReport& a, const ScoreReport& b) { return a.doc_id < b.doc_id; });
  return out;
}

int cmd_analyze_length(const GlobalOptions& global, const AnalyzeOptions& options) {
  const Corpus corpus = load_corpus(options.corpus_path);
  std::vector<ScoreReport> reports =
      reports_for_system(load_score_reports(options.scores_path), options.system);

  std::vector<ScoreReport> aligned;
  std::vector<double> lengths;
  for (const ScoreReport& report : reports) {
    const Document* doc = corpus.find(report.doc_id);
    if (doc == nullptr) continue;
    auto it = doc->hypotheses.find(options.system);
    if (it == doc->hypotheses.end()) continue;
    aligned.push_back(report);
    lengths.push_back(static_cast<double>(tokenize(it->second, global.tokenizer).size()));
  }
  if (aligned.size() < 2) {
    throw Error("analyze length: need at least two scored documents for system \"" +
                options.system + "\"");
  }
  const AnalysisReport report = length_correlation(aligned, lengths);
  return finish_analysis(global, report, {options.corpus_path, options.scores_path},
                         options.out_path);
}

int cmd_analyze_correlation(const GlobalOptions& global, const AnalyzeOptions& options) {
  const std::vector<ScoreReport> reports =
      reports_for_system(load_score_reports(options.scores_path), options.system);
  if (reports.size() < 2) {
    throw Error("analyze correlation: need at least two scored documents for system \"" +
                options.system + "\"");
  }
  const AnalysisReport report = metric_correlation(reports, options.metric_a, options.metric_b);
  AnalysisReport named = report;
  named.values[options.metric_a + ":" + options.metric_b] = report.values.at("r");
  return finish_analysis(global, named, {options.scores_path}, options.out_path);
}

int cmd_analyze_inout(const GlobalOptions& global, const AnalyzeOptions& options) {
  const Corpus corpus = load_corpus(options.corpus_path);
  const KeywordMap keywords = load_keywords(options.keywords_path);

  double in_sum = 0.0, out_sum = 0.0;
  std::size_t in_defined = 0, out_defined = 0;
  std::size_t in_total = 0, out_total = 0;
  std::size_t used = 0, skipped = 0;

  std::vector<const Document*> docs;
  for (const Document& doc : corpus.documents) docs.push_back(&doc);
  std::sort(docs.begin(), docs.end(),
            [](const Document* a, const Document* b) { return a->id < b->id; });
  for (const Document* doc : docs) {
    auto kw = keywords.find(doc->id);
    auto hyp = doc->hypotheses.find(options.system);
    if (kw == keywords.end() || hyp == doc->hypotheses.end()) {
      ++skipped;
      continue;
    }
    ++used;
    const auto [in_src, out_src] = inout_split(*doc, kw->second, global.tokenizer);
    in_total += in_src.keywords.size();
    out_total += out_src.keywords.size();
    if (const auto score = rouge_k(hyp->second, in_src, global.tokenizer)) {
      in_sum += score->value;
      ++in_defined;
    }
    if (const auto score = rouge_k(hyp->second, out_src, global.tokenizer)) {
      out_sum += score->value;
      ++out_defined;
    }
  }

  AnalysisReport report;
  report.kind = "inout_split";
  report.n = used;
  report.excluded = skipped;
  report.values["in_src"] =
      in_defined ? std::optional<double>(in_sum / static_cast<double>(in_defined)) : std::nullopt;
  report.values["out_src"] =
      out_defined ? std::optional<double>(out_sum / static_cast<double>(out_defined)) : std::nullopt;
  report.values["in_src_keywords"] = static_cast<double>(in_total);
  report.values["out_src_keywords"] = static_cast<double>(out_total);
  return finish_analysis(global, report, {options.corpus_path, options.keywords_path},
                         options.out_path);
}

int cmd_analyze_breakdown(const GlobalOptions& global, const AnalyzeOptions& options) {
  const Corpus corpus = load_corpus(options.corpus_path);
  const KeywordMap keywords = load_keywords(options.keywords_path);

  LengthBreakdown pooled;
  std::size_t used = 0, skipped = 0;
  std::vector<const Document*> docs;
  for (const Document& doc : corpus.documents) docs.push_back(&doc);
  std::sort(docs.begin(), docs.end(),
            [](const Document* a, const Document* b) { return a->id < b->id; });
  for (const Document* doc : docs) {
    auto kw = keywords.find(doc->id);
    auto hyp = doc->hypotheses.find(options.system);
    if (kw == keywords.end() || hyp == doc->hypotheses.end()) {
      ++skipped;
      continue;
    }
    ++used;
    accumulate(pooled, length_breakdown(hyp->second, kw->second, global.tokenizer));
  }

  AnalysisReport report;
  report.kind = "length_breakdown";
  report.n = used;
  report.excluded = skipped;
  for (int n = 1; n <= kMaxNgram; ++n) {
    const std::string name = n < 10 ? "len0" + std::to_string(n) : "len" + std::to_string(n);
    if (const auto& group = pooled.for_length(n)) {
      report.values[name] =
          100.0 * static_cast<double>(group->matched) / static_cast<double>(group->total);
      report.values[name + "_total"] = static_cast<double>(group->total);
    } else {
      report.values[name] = std::nullopt;
    }
  }
  return finish_analysis(global, report, {options.corpus_path, options.keywords_path},
                         options.out_path);
}

int cmd_analyze_distinguishability(const GlobalOptions& global, const AnalyzeOptions& options) {
  std::ifstream in(options.summary_path);
  if (!in) throw Error("cannot open summary file: " + options.summary_path);
  json summary = json::parse(in, nullptr, false);
  if (summary.is_discarded() || !summary.contains("systems")) {
    throw Error("not a score summary: " + options.summary_path);
  }

  AnalysisReport report;
  report.kind = "distinguishability";
  report.n = summary["systems"].size();
  for (const std::string& metric : options.metrics) {
    std::map<std::string, double> per_model;
    for (const auto& [system, entry] : summary["systems"].items()) {
      if (metric == "rougek") {
        if (!entry["rougek"]["mean"].is_null()) {
          per_model[system] = entry["rougek"]["mean"].get<double>();
        }
      } else {
        per_model[system] = entry[metric]["f1"].get<double>();
      }
    }
    report.values[metric] = per_model.size() >= 2
                                ? std::optional<double>(distinguishability(per_model))
                                : std::nullopt;
  }
  return finish_analysis(global, report, {options.summary_path}, options.out_path);
}

int cmd_demo_guidance() {
  const std::vector<double> scores = {1.0, 2.0};
  const std::vector<double> tfidf = {4.0, 0.0};
  std::cout << "generation re-weighting: (1 - lambda) * score + lambda * tfidf\n\n";
  std::cout << "  model scores   [1, 2]   (argmax: index 1)\n";
  std::cout << "  tfidf vector   [4, 0]\n\n";
  for (const double lambda : {0.0, 0.5, 1.0}) {
    const auto shifted = reweighted_generation(scores, tfidf, lambda);
    const std::size_t argmax = shifted[0] >= shifted[1] ? 0 : 1;
    std::cout << "  lambda = " << std::fixed << std::setprecision(1) << lambda << "  ->  ["
              << std::setprecision(2) << shifted[0] << ", " << shifted[1]
              << "]  argmax: index " << argmax << '\n';
    std::cout.unsetf(std::ios::fixed);
  }
  std::cout << "\nthe tfidf-boosted token overtakes the model's first choice at lambda = 0.5\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  g_argv.assign(argv, argv + argc);

  CLI::App app{"keyword-aware summarization evaluation toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  std::string stopword_override;
  auto* config_opt = app.add_option("--config", global.config_path, "key = value config file");
  auto* stopwords_opt =
      app.add_option("--stopwords", stopword_override, "custom stopword list (one token per line)");
  auto* jobs_opt = app.add_option("--jobs", global.jobs, "worker threads for per-document work");
  auto* max_ngram_opt = app.add_option("--max-ngram", global.max_ngram,
                                       "longest n-gram the overlap extractor scans (default 10)");

  ExtractOptions extract;
  auto* extract_cmd = app.add_subcommand("extract", "extract keywords from reference summaries");
  extract_cmd->add_option("--corpus", extract.corpus_path, "corpus JSONL")->required();
  extract_cmd->add_option("--extractor", extract.extractor, "overlap | tfidf | textrank");
  extract_cmd->add_option("--out", extract.out_path, "keyword JSONL output")->required();
  extract_cmd->add_option("--k", extract.k_spec,
                          "keywords per document for tfidf/textrank; 'auto' matches the overlap yield");

  ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "score system hypotheses");
  score_cmd->add_option("--corpus", score.corpus_path, "corpus JSONL")->required();
  score_cmd->add_option("--keywords", score.keywords_path, "keyword JSONL")->required();
  score_cmd->add_option("--out", score.out_path, "score JSONL output")->required();
  score_cmd->add_option("--summary-out", score.summary_path, "summary JSON (default <out>.summary.json)");
  score_cmd->add_option("--systems", score.systems, "systems to score (default: all)")
      ->delimiter(',');
  score_cmd->add_option("--aggregation", score.aggregation, "avg | max");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "corpus statistics");
  stats_cmd->add_option("--corpus", stats.corpus_path, "corpus JSONL")->required();
  stats_cmd->add_option("--keywords", stats.keywords_path, "keyword JSONL (optional)");
  stats_cmd->add_option("--out", stats.out_path, "stats JSON output (optional)");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "corpus-level analyses");
  analyze_cmd->require_subcommand(1);

  auto* agreement_cmd =
      analyze_cmd->add_subcommand("agreement", "metric agreement with human pair judgments");
  agreement_cmd->add_option("--scores", analyze.scores_path, "score JSONL")->required();
  agreement_cmd->add_option("--judgments", analyze.judgments_path, "judgment JSONL")->required();
  agreement_cmd->add_option("--metrics", analyze.metrics, "metrics to evaluate")->delimiter(',');
  agreement_cmd->add_flag("--require-rougek-diff", analyze.require_rougek_diff,
                          "keep only pairs with differing ROUGE-K scores");
  agreement_cmd->add_option("--out", analyze.out_path, "report JSON")->required();

  auto* length_cmd = analyze_cmd->add_subcommand("length", "correlation with summary length");
  length_cmd->add_option("--corpus", analyze.corpus_path, "corpus JSONL")->required();
  length_cmd->add_option("--scores", analyze.scores_path, "score JSONL")->required();
  length_cmd->add_option("--system", analyze.system, "system name")->required();
  length_cmd->add_option("--out", analyze.out_path, "report JSON")->required();

  auto* correlation_cmd = analyze_cmd->add_subcommand("correlation", "correlation between metrics");
  correlation_cmd->add_option("--scores", analyze.scores_path, "score JSONL")->required();
  correlation_cmd->add_option("--system", analyze.system, "system name")->required();
  correlation_cmd->add_option("--a", analyze.metric_a, "first metric")->required();
  correlation_cmd->add_option("--b", analyze.metric_b, "second metric")->required();
  correlation_cmd->add_option("--out", analyze.out_path, "report JSON")->required();

  auto* inout_cmd = analyze_cmd->add_subcommand("inout", "keywords seen vs unseen in the source");
  inout_cmd->add_option("--corpus", analyze.corpus_path, "corpus JSONL")->required();
  inout_cmd->add_option("--keywords", analyze.keywords_path, "keyword JSONL")->required();
  inout_cmd->add_option("--system", analyze.system, "system name")->required();
  inout_cmd->add_option("--out", analyze.out_path, "report JSON")->required();

  auto* breakdown_cmd = analyze_cmd->add_subcommand("breakdown", "score by keyword length");
  breakdown_cmd->add_option("--corpus", analyze.corpus_path, "corpus JSONL")->required();
  breakdown_cmd->add_option("--keywords", analyze.keywords_path, "keyword JSONL")->required();
  breakdown_cmd->add_option("--system", analyze.system, "system name")->required();
  breakdown_cmd->add_option("--out", analyze.out_path, "report JSON")->required();

  auto* disting_cmd =
      analyze_cmd->add_subcommand("distinguishability", "model separation per metric");
  disting_cmd->add_option("--summary", analyze.summary_path, "score summary JSON")->required();
  disting_cmd->add_option("--metrics", analyze.metrics, "metrics to evaluate")->delimiter(',');
  disting_cmd->add_option("--out", analyze.out_path, "report JSON")->required();

  auto* demo_cmd = app.add_subcommand("demo", "worked examples");
  auto* demo_guidance_cmd = demo_cmd->add_subcommand("guidance", "generation re-weighting demo");
  demo_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*config_opt) apply_config_file(global, global.config_path);
    if (*stopwords_opt) global.tokenizer.stopword_path = stopword_override;
    if (global.jobs < 1) throw Error("--jobs must be >= 1");
    if (global.max_ngram < 1 || global.max_ngram > kMaxNgram) {
      throw Error("--max-ngram must lie in [1, " + std::to_string(kMaxNgram) + "]");
    }
    (void)jobs_opt;
    (void)max_ngram_opt;

    if (*extract_cmd) return cmd_extract(global, extract);
    if (*score_cmd) return cmd_score(global, score);
    if (*stats_cmd) return cmd_stats(global, stats);
    if (*agreement_cmd) return cmd_analyze_agreement(global, analyze);
    if (*length_cmd) return cmd_analyze_length(global, analyze);
    if (*correlation_cmd) return cmd_analyze_correlation(global, analyze);
    if (*inout_cmd) return cmd_analyze_inout(global, analyze);
    if (*breakdown_cmd) return cmd_analyze_breakdown(global, analyze);
    if (*disting_cmd) return cmd_analyze_distinguishability(global, analyze);
    if (*demo_guidance_cmd) return cmd_demo_guidance();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}
