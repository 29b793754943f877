#pragma once

#include <cstddef>
#include <string_view>
#include <unordered_map>

#include "rougekit/corpus.hpp"

namespace rougekit {

// Document-frequency table; idf(t) = ln(N / df(t)) where N is the number of
// documents the table was built over.
class IdfTable {
 public:
  // df counts documents in which the token appears in at least one reference.
  static IdfTable from_references(const Corpus& corpus, const TokenizerConfig& config);
  // df counts documents whose source contains the token.
  static IdfTable from_sources(const Corpus& corpus, const TokenizerConfig& config);

  // Tokens never seen at build time are treated as maximally rare (df = 1).
  double idf(std::string_view token) const;
  std::size_t document_frequency(std::string_view token) const;
  std::size_t num_documents() const { return num_documents_; }

 private:
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> df_;
  std::size_t num_documents_ = 0;
};

}  // namespace rougekit
