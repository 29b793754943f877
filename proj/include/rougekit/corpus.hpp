#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rougekit/keyword_set.hpp"
#include "rougekit/textproc.hpp"

namespace rougekit {

// One evaluation unit: a source text, its human reference summaries, and
// any number of system outputs keyed by system name. Hypotheses may be
// empty strings (a model can emit nothing); references may not.
struct Document {
  std::string id;
  std::string source;
  std::optional<std::string> title;
  std::vector<std::string> references;
  std::map<std::string, std::string> hypotheses;

  bool operator==(const Document&) const = default;
};

enum class Split { train, dev, test, unsplit };

std::string_view to_string(Split split);
Split split_from_string(std::string_view name);

struct Corpus {
  std::string name;
  std::vector<Document> documents;
  Split split = Split::unsplit;

  const Document* find(std::string_view id) const;

  bool operator==(const Corpus&) const = default;
};

// JSONL, one object per line:
//   {"id": str, "source": str, "title": str|null,
//    "references": [str, ...], "hypotheses": {"system": str, ...}}
// Any invalid record fails the whole load with its line number.
Corpus load_corpus(const std::string& path);
void save_corpus(const Corpus& corpus, const std::string& path);

struct CorpusStats {
  std::size_t num_documents = 0;
  double avg_words_per_doc = 0.0;
  double avg_words_per_summary = 0.0;
  double compression_ratio = 0.0;
  double avg_references = 0.0;
  // Set only when a keyword mapping was supplied.
  std::optional<double> avg_keywords;
  std::optional<double> avg_keyword_length;
};

using KeywordMap = std::map<std::string, KeywordSet>;

// Word counts use the toolkit tokenizer, so stats and scores stay mutually
// consistent. Document averages run over documents, the summary average over
// all references of all documents. Throws on an empty corpus or when a
// keyword mapping misses a document id.
CorpusStats compute_stats(const Corpus& corpus, const KeywordMap* keywords,
                          const TokenizerConfig& config);

// Keyword files are JSONL:
//   {"id": str, "keywords": [[token, ...], ...], "extractor": str,
//    "version": str, "num_references": int}
// Loading rejects records whose version differs from kKeywordFileVersion.
void save_keywords(const KeywordMap& keywords, const std::string& path);
KeywordMap load_keywords(const std::string& path);

}  // namespace rougekit
