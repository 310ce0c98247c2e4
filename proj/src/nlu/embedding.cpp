#include "vchild/nlu/embedding.hpp"

#include <cctype>
#include <cmath>
#include <exception>

#include "vchild/error.hpp"
#include "vchild/text.hpp"

namespace vchild::nlu {

double l2_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) throw Error(Errc::InvalidInput, "dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = static_cast<double>(a.values[i]) - static_cast<double>(b.values[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) throw Error(Errc::InvalidInput, "dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += static_cast<double>(a.values[i]) * b.values[i];
    na += static_cast<double>(a.values[i]) * a.values[i];
    nb += static_cast<double>(b.values[i]) * b.values[i];
  }
  return dot / std::sqrt(na * nb);
}

void normalise(std::vector<float>& values) {
  double sum = 0.0;
  for (float v : values) sum += static_cast<double>(v) * v;
  if (!(sum > 0.0) || !std::isfinite(sum)) throw Error(Errc::InvalidInput, "cannot normalise a zero vector");
  const double inv = 1.0 / std::sqrt(sum);
  for (float& v : values) v = static_cast<float>(v * inv);
}

std::string fold_for_trigrams(std::string_view text) {
  std::string folded;
  folded.reserve(text.size());
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u)) {
      folded.push_back(static_cast<char>(std::tolower(u)));
    } else {
      folded.push_back(' ');
    }
  }
  std::string collapsed = text::collapse_whitespace(folded);
  if (collapsed.empty()) collapsed = text::collapse_whitespace(text::to_lower_ascii(text));
  return collapsed;
}

TrigramEmbedder::TrigramEmbedder(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw Error(Errc::InvalidInput, "embedding dimension must be positive");
}

std::size_t TrigramEmbedder::bucket(std::string_view trigram) const {
  // 32-bit FNV-1a.
  std::uint32_t h = 2166136261u;
  for (char c : trigram) {
    h ^= static_cast<unsigned char>(c);
    h *= 16777619u;
  }
  return h % dim_;
}

EmbeddingVector TrigramEmbedder::embed(std::string_view text) const {
  if (text::trim(text).empty()) throw Error(Errc::EmptyInput, "cannot embed empty text");
  const std::string padded = " " + fold_for_trigrams(text) + " ";
  EmbeddingVector out;
  out.values.assign(dim_, 0.0f);
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    out.values[bucket(std::string_view(padded).substr(i, 3))] += 1.0f;
  }
  normalise(out.values);
  return out;
}

std::vector<EmbeddingVector> embed_batch(const Embedder& embedder, const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out(texts.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(texts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = embedder.embed(texts[i]);
    } catch (...) {
#pragma omp critical(vchild_embed_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace vchild::nlu
