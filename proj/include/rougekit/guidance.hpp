#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rougekit/corpus.hpp"
#include "rougekit/idf.hpp"

namespace rougekit {

// Row-major dense matrix, just enough surface for the attention kernels.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct GuidanceConfig {
  double lambda = 0.1;      // loss/score interpolation weight, in [0, 1]
  double lambda_gen = 30.0; // generation shift weight, any real >= 0
};

void validate(const GuidanceConfig& config);

// Per-position tf*idf over the source tokens; stopwords score 0. The vector
// length equals the source token count.
struct TfidfVector {
  std::string doc_id;
  std::vector<double> scores;
};

TfidfVector tfidf_vector(const Document& doc, const IdfTable& corpus_idf,
                         const TokenizerConfig& config);

// Key-position bias matrix for reweighted attention: every query row gets
// the same per-key scores.
Matrix broadcast_bias(const TfidfVector& vector, std::size_t query_rows);

// Row-wise softmax with max subtraction; stable for biases as large as the
// lambda_gen search range implies.
Matrix softmax_rows(const Matrix& logits);

// Plain scaled dot-product attention, kept as an independent implementation
// so the reweighted kernel can be checked against it.
Matrix attention(const Matrix& q, const Matrix& k, const Matrix& v);

// softmax(Q K^T / sqrt(d_k) + T) with d_k = q.cols; each row sums to 1.
Matrix reweighted_attention_weights(const Matrix& q, const Matrix& k, const Matrix& t);

// softmax(Q K^T / sqrt(d_k) + T) V.
Matrix reweighted_attention(const Matrix& q, const Matrix& k, const Matrix& v, const Matrix& t);

// Elementwise (1 - lambda) * scores + lambda * tfidf. lambda may exceed 1
// (the useful shift range does); it only has to be >= 0.
std::vector<double> reweighted_generation(std::span<const double> scores,
                                          std::span<const double> tfidf, double lambda);

// (1 - lambda) * l_sum + lambda * l_tfidf with lambda in [0, 1] and both
// losses >= 0.
double mtl_loss(double l_sum, double l_tfidf, double lambda);

// Mean squared error; gradient is 2 (predicted - target) / n.
double mse(std::span<const double> predicted, std::span<const double> target);

}  // namespace rougekit
