#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vchild::nlu {

/// Unit-length embedding. Provider output is always L2-normalised.
struct EmbeddingVector {
  std::vector<float> values;

  std::size_t dim() const noexcept { return values.size(); }
  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

double l2_distance(const EmbeddingVector& a, const EmbeddingVector& b);
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// Scales `values` to unit L2 norm in place. Throws InvalidInput on a zero vector.
void normalise(std::vector<float>& values);

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::size_t dim() const = 0;
  /// Throws EmptyInput for blank text; remote providers may throw
  /// ProviderUnavailable.
  virtual EmbeddingVector embed(std::string_view text) const = 0;
};

/// Text as the trigram hasher sees it: ASCII case-folded, non-alphanumeric
/// ASCII replaced by spaces, whitespace collapsed. Falls back to the folded
/// raw text when nothing alphanumeric remains.
std::string fold_for_trigrams(std::string_view text);

/// Offline embedder: hashed character-trigram frequencies of the folded
/// text padded with one space on each side.
class TrigramEmbedder final : public Embedder {
 public:
  static constexpr std::size_t kDefaultDim = 512;

  explicit TrigramEmbedder(std::size_t dim = kDefaultDim);

  std::size_t dim() const override { return dim_; }
  EmbeddingVector embed(std::string_view text) const override;

  /// Bucket a trigram hashes into.
  std::size_t bucket(std::string_view trigram) const;

 private:
  std::size_t dim_;
};

/// Embeds many texts; OpenMP-parallel across texts. Output order matches input.
std::vector<EmbeddingVector> embed_batch(const Embedder& embedder, const std::vector<std::string>& texts);

}  // namespace vchild::nlu
