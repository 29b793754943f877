#include "rougekit/idf.hpp"

#include <cmath>
#include <unordered_set>

namespace rougekit {

namespace {

void count_document(const std::vector<const std::string*>& texts, const TokenizerConfig& config,
                    std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>>& df) {
  std::unordered_set<std::string, StringHash, std::equal_to<>> seen;
  for (const std::string* text : texts) {
    for (Token& token : tokenize(*text, config)) {
      seen.insert(std::move(token));
    }
  }
  for (const std::string& token : seen) ++df[token];
}

}  // namespace

IdfTable IdfTable::from_references(const Corpus& corpus, const TokenizerConfig& config) {
  IdfTable table;
  table.num_documents_ = corpus.documents.size();
  for (const Document& doc : corpus.documents) {
    std::vector<const std::string*> texts;
    texts.reserve(doc.references.size());
    for (const std::string& ref : doc.references) texts.push_back(&ref);
    count_document(texts, config, table.df_);
  }
  return table;
}

IdfTable IdfTable::from_sources(const Corpus& corpus, const TokenizerConfig& config) {
  IdfTable table;
  table.num_documents_ = corpus.documents.size();
  for (const Document& doc : corpus.documents) {
    count_document({&doc.source}, config, table.df_);
  }
  return table;
}

double IdfTable::idf(std::string_view token) const {
  const double n = static_cast<double>(num_documents_ == 0 ? 1 : num_documents_);
  return std::log(n / static_cast<double>(document_frequency(token)));
}

std::size_t IdfTable::document_frequency(std::string_view token) const {
  auto it = df_.find(token);
  return it == df_.end() ? 1 : it->second;
}

}  // namespace rougekit
