#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rougekit/textproc.hpp"

namespace rougekit {

enum class Extractor { reference_overlap, tfidf, textrank };

std::string_view to_string(Extractor extractor);
Extractor extractor_from_string(std::string_view name);

// Ordered keyword list for one document. Invariants: keywords are pairwise
// distinct token sequences, none is a contiguous sub-span of another, a
// unigram keyword is never a stopword and longer keywords never start or
// end with one.
struct KeywordSet {
  std::string doc_id;
  std::vector<NGram> keywords;
  Extractor extractor = Extractor::reference_overlap;
  int num_references_used = 0;

  bool operator==(const KeywordSet&) const = default;
};

}  // namespace rougekit
