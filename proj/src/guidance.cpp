#include "rougekit/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "rougekit/error.hpp"

namespace rougekit {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw Error(message);
}

}  // namespace

void validate(const GuidanceConfig& config) {
  require(config.lambda >= 0.0 && config.lambda <= 1.0, "guidance: lambda must lie in [0, 1]");
  require(config.lambda_gen >= 0.0, "guidance: lambda_gen must be >= 0");
}

TfidfVector tfidf_vector(const Document& doc, const IdfTable& corpus_idf,
                         const TokenizerConfig& config) {
  const Stopwords& stopwords = stopwords_for(config);
  const std::vector<Token> tokens = tokenize(doc.source, config);

  std::unordered_map<std::string, double, StringHash, std::equal_to<>> tf;
  for (const Token& tok : tokens) tf[tok] += 1.0;

  TfidfVector out;
  out.doc_id = doc.id;
  out.scores.reserve(tokens.size());
  for (const Token& tok : tokens) {
    out.scores.push_back(stopwords.contains(tok) ? 0.0 : tf[tok] * corpus_idf.idf(tok));
  }
  return out;
}

Matrix broadcast_bias(const TfidfVector& vector, std::size_t query_rows) {
  Matrix t(query_rows, vector.scores.size());
  for (std::size_t r = 0; r < query_rows; ++r) {
    for (std::size_t c = 0; c < vector.scores.size(); ++c) {
      t.at(r, c) = vector.scores[c];
    }
  }
  return t;
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows, logits.cols);
  for (std::size_t r = 0; r < logits.rows; ++r) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < logits.cols; ++c) {
      row_max = std::max(row_max, logits.at(r, c));
    }
    double sum = 0.0;
    for (std::size_t c = 0; c < logits.cols; ++c) {
      const double e = std::exp(logits.at(r, c) - row_max);
      out.at(r, c) = e;
      sum += e;
    }
    for (std::size_t c = 0; c < logits.cols; ++c) {
      out.at(r, c) /= sum;
    }
  }
  return out;
}

Matrix attention(const Matrix& q, const Matrix& k, const Matrix& v) {
  require(q.cols == k.cols, "attention: Q and K widths differ");
  require(k.rows == v.rows, "attention: K and V heights differ");
  require(q.cols > 0, "attention: zero-width queries");

  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols));
  Matrix out(q.rows, v.cols);
  std::vector<double> scores(k.rows);
  for (std::size_t i = 0; i < q.rows; ++i) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k.rows; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < q.cols; ++d) {
        dot += q.at(i, d) * k.at(j, d);
      }
      scores[j] = dot * scale;
      row_max = std::max(row_max, scores[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k.rows; ++j) {
      scores[j] = std::exp(scores[j] - row_max);
      sum += scores[j];
    }
    for (std::size_t j = 0; j < k.rows; ++j) {
      scores[j] /= sum;
    }
    for (std::size_t c = 0; c < v.cols; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < k.rows; ++j) {
        acc += scores[j] * v.at(j, c);
      }
      out.at(i, c) = acc;
    }
  }
  return out;
}

Matrix reweighted_attention_weights(const Matrix& q, const Matrix& k, const Matrix& t) {
  require(q.cols == k.cols, "reweighted_attention: Q and K widths differ");
  require(q.cols > 0, "reweighted_attention: zero-width queries");
  require(t.rows == q.rows && t.cols == k.rows, "reweighted_attention: T shape mismatch");

  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols));
  Matrix logits(q.rows, k.rows);
  for (std::size_t i = 0; i < q.rows; ++i) {
    for (std::size_t j = 0; j < k.rows; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < q.cols; ++d) {
        dot += q.at(i, d) * k.at(j, d);
      }
      logits.at(i, j) = dot * scale + t.at(i, j);
    }
  }
  return softmax_rows(logits);
}

Matrix reweighted_attention(const Matrix& q, const Matrix& k, const Matrix& v, const Matrix& t) {
  require(k.rows == v.rows, "reweighted_attention: K and V heights differ");
  const Matrix weights = reweighted_attention_weights(q, k, t);
  Matrix out(q.rows, v.cols);
  for (std::size_t i = 0; i < weights.rows; ++i) {
    for (std::size_t c = 0; c < v.cols; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < weights.cols; ++j) {
        acc += weights.at(i, j) * v.at(j, c);
      }
      out.at(i, c) = acc;
    }
  }
  return out;
}

std::vector<double> reweighted_generation(std::span<const double> scores,
                                          std::span<const double> tfidf, double lambda) {
  require(scores.size() == tfidf.size(), "reweighted_generation: vector lengths differ");
  require(lambda >= 0.0, "reweighted_generation: lambda must be >= 0");
  std::vector<double> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = (1.0 - lambda) * scores[i] + lambda * tfidf[i];
  }
  return out;
}

double mtl_loss(double l_sum, double l_tfidf, double lambda) {
  require(l_sum >= 0.0, "mtl_loss: summarization loss must be >= 0");
  require(l_tfidf >= 0.0, "mtl_loss: tfidf loss must be >= 0");
  require(lambda >= 0.0 && lambda <= 1.0, "mtl_loss: lambda must lie in [0, 1]");
  return (1.0 - lambda) * l_sum + lambda * l_tfidf;
}

double mse(std::span<const double> predicted, std::span<const double> target) {
  require(predicted.size() == target.size(), "mse: vector lengths differ");
  require(!predicted.empty(), "mse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double diff = predicted[i] - target[i];
    sum += diff * diff;
  }
  return sum / static_cast<double>(predicted.size());
}

}  // namespace rougekit
