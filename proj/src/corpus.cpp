#include "rougekit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include "json.hpp"
#include "rougekit/error.hpp"
#include "rougekit/version.hpp"

namespace rougekit {

namespace {

using nlohmann::json;

std::string trim_copy(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

[[noreturn]] void fail_line(const std::string& path, std::size_t line, const std::string& what) {
  throw Error(path + ":" + std::to_string(line) + ": " + what);
}

json parse_line(const std::string& path, std::size_t line, const std::string& text) {
  json record = json::parse(text, nullptr, false);
  if (record.is_discarded()) fail_line(path, line, "malformed JSON record");
  if (!record.is_object()) fail_line(path, line, "record is not a JSON object");
  return record;
}

std::string require_string(const json& record, const char* field, const std::string& path,
                           std::size_t line) {
  auto it = record.find(field);
  if (it == record.end()) fail_line(path, line, std::string("missing required field \"") + field + "\"");
  if (!it->is_string()) fail_line(path, line, std::string("field \"") + field + "\" must be a string");
  return it->get<std::string>();
}

std::string stem_of(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

// Iterates non-empty lines of a JSONL file, reporting 1-based line numbers.
template <typename Fn>
void for_each_record(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_copy(line).empty()) continue;
    fn(line_no, line);
  }
}

}  // namespace

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
    case Split::unsplit: return "unsplit";
  }
  return "unsplit";
}

Split split_from_string(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "dev") return Split::dev;
  if (name == "test") return Split::test;
  if (name == "unsplit") return Split::unsplit;
  throw Error("unknown split name: " + std::string(name));
}

const Document* Corpus::find(std::string_view id) const {
  for (const Document& doc : documents) {
    if (doc.id == id) return &doc;
  }
  return nullptr;
}

Corpus load_corpus(const std::string& path) {
  Corpus corpus;
  corpus.name = stem_of(path);
  std::unordered_set<std::string> seen_ids;
  for_each_record(path, [&](std::size_t line_no, const std::string& line) {
    json record = parse_line(path, line_no, line);

    Document doc;
    doc.id = require_string(record, "id", path, line_no);
    if (doc.id.empty()) fail_line(path, line_no, "field \"id\" must be non-empty");
    if (!seen_ids.insert(doc.id).second) {
      fail_line(path, line_no, "duplicate document id \"" + doc.id + "\"");
    }
    doc.source = require_string(record, "source", path, line_no);

    if (auto it = record.find("title"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) fail_line(path, line_no, "field \"title\" must be a string or null");
      doc.title = it->get<std::string>();
    }

    auto refs = record.find("references");
    if (refs == record.end()) fail_line(path, line_no, "missing required field \"references\"");
    if (!refs->is_array() || refs->empty()) {
      fail_line(path, line_no, "field \"references\" must be a non-empty array");
    }
    for (const auto& ref : *refs) {
      if (!ref.is_string()) fail_line(path, line_no, "field \"references\" must contain strings");
      std::string text = ref.get<std::string>();
      if (trim_copy(text).empty()) {
        fail_line(path, line_no, "field \"references\" contains an empty reference");
      }
      doc.references.push_back(std::move(text));
    }

    if (auto it = record.find("hypotheses"); it != record.end() && !it->is_null()) {
      if (!it->is_object()) fail_line(path, line_no, "field \"hypotheses\" must be an object");
      for (auto& [system, summary] : it->items()) {
        if (!summary.is_string()) {
          fail_line(path, line_no, "hypothesis for system \"" + system + "\" must be a string");
        }
        doc.hypotheses.emplace(system, summary.get<std::string>());
      }
    }

    corpus.documents.push_back(std::move(doc));
  });
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  for (const Document& doc : corpus.documents) {
    json record;
    record["id"] = doc.id;
    record["source"] = doc.source;
    record["title"] = doc.title ? json(*doc.title) : json(nullptr);
    record["references"] = doc.references;
    record["hypotheses"] = json::object();
    for (const auto& [system, summary] : doc.hypotheses) {
      record["hypotheses"][system] = summary;
    }
    out << record.dump() << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

CorpusStats compute_stats(const Corpus& corpus, const KeywordMap* keywords,
                          const TokenizerConfig& config) {
  if (corpus.documents.empty()) throw Error("compute_stats: empty corpus");

  CorpusStats stats;
  stats.num_documents = corpus.documents.size();
  std::size_t doc_words = 0;
  std::size_t summary_words = 0;
  std::size_t num_summaries = 0;
  std::size_t num_keywords = 0;
  std::size_t keyword_tokens = 0;

  for (const Document& doc : corpus.documents) {
    doc_words += tokenize(doc.source, config).size();
    for (const std::string& ref : doc.references) {
      summary_words += tokenize(ref, config).size();
      ++num_summaries;
    }
    stats.avg_references += static_cast<double>(doc.references.size());
    if (keywords != nullptr) {
      auto it = keywords->find(doc.id);
      if (it == keywords->end()) {
        throw Error("compute_stats: keyword mapping has no entry for document \"" + doc.id + "\"");
      }
      num_keywords += it->second.keywords.size();
      for (const NGram& kw : it->second.keywords) keyword_tokens += kw.size();
    }
  }

  const double n_docs = static_cast<double>(stats.num_documents);
  stats.avg_words_per_doc = static_cast<double>(doc_words) / n_docs;
  stats.avg_words_per_summary =
      num_summaries == 0 ? 0.0 : static_cast<double>(summary_words) / static_cast<double>(num_summaries);
  stats.compression_ratio =
      stats.avg_words_per_summary > 0.0 ? stats.avg_words_per_doc / stats.avg_words_per_summary : 0.0;
  stats.avg_references /= n_docs;
  if (keywords != nullptr) {
    stats.avg_keywords = static_cast<double>(num_keywords) / n_docs;
    stats.avg_keyword_length =
        num_keywords == 0 ? 0.0 : static_cast<double>(keyword_tokens) / static_cast<double>(num_keywords);
  }
  return stats;
}

std::string_view to_string(Extractor extractor) {
  switch (extractor) {
    case Extractor::reference_overlap: return "reference_overlap";
    case Extractor::tfidf: return "tfidf";
    case Extractor::textrank: return "textrank";
  }
  return "reference_overlap";
}

Extractor extractor_from_string(std::string_view name) {
  if (name == "reference_overlap" || name == "overlap") return Extractor::reference_overlap;
  if (name == "tfidf") return Extractor::tfidf;
  if (name == "textrank") return Extractor::textrank;
  throw Error("unknown extractor name: " + std::string(name));
}

void save_keywords(const KeywordMap& keywords, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  for (const auto& [id, set] : keywords) {
    json record;
    record["id"] = id;
    record["keywords"] = set.keywords;
    record["extractor"] = to_string(set.extractor);
    record["version"] = kKeywordFileVersion;
    record["num_references"] = set.num_references_used;
    out << record.dump() << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

KeywordMap load_keywords(const std::string& path) {
  KeywordMap out;
  for_each_record(path, [&](std::size_t line_no, const std::string& line) {
    json record = parse_line(path, line_no, line);
    std::string version = require_string(record, "version", path, line_no);
    if (version != kKeywordFileVersion) {
      fail_line(path, line_no,
                "unsupported keyword file version \"" + version + "\" (expected \"" +
                    std::string(kKeywordFileVersion) + "\")");
    }
    KeywordSet set;
    set.doc_id = require_string(record, "id", path, line_no);
    set.extractor = extractor_from_string(require_string(record, "extractor", path, line_no));
    auto kws = record.find("keywords");
    if (kws == record.end() || !kws->is_array()) {
      fail_line(path, line_no, "field \"keywords\" must be an array of token arrays");
    }
    for (const auto& kw : *kws) {
      if (!kw.is_array() || kw.empty()) {
        fail_line(path, line_no, "each keyword must be a non-empty token array");
      }
      NGram tokens;
      for (const auto& tok : kw) {
        if (!tok.is_string()) fail_line(path, line_no, "keyword tokens must be strings");
        tokens.push_back(tok.get<std::string>());
      }
      set.keywords.push_back(std::move(tokens));
    }
    if (auto it = record.find("num_references"); it != record.end() && it->is_number_integer()) {
      set.num_references_used = it->get<int>();
    }
    if (out.contains(set.doc_id)) {
      fail_line(path, line_no, "duplicate document id \"" + set.doc_id + "\"");
    }
    out.emplace(set.doc_id, std::move(set));
  });
  return out;
}

}  // namespace rougekit
