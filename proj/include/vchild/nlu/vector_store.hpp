#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vchild/nlu/embedding.hpp"

namespace vchild::nlu {

struct ExampleRecord {
  std::string text;
  std::string intent_id;
  EmbeddingVector vector;
};

struct Neighbour {
  std::size_t index = 0;  // position in load order
  double distance = 0.0;

  friend bool operator==(const Neighbour&, const Neighbour&) = default;
};

/// Immutable set of annotated examples with a contiguous row-major copy of
/// their vectors for scanning.
class VectorStore {
 public:
  /// Throws InvalidInput when vectors disagree on dimension.
  explicit VectorStore(std::vector<ExampleRecord> records);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  std::size_t dim() const noexcept { return dim_; }
  const ExampleRecord& record(std::size_t i) const { return records_.at(i); }
  std::span<const ExampleRecord> records() const noexcept { return records_; }
  std::span<const float> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  /// Exact k nearest records by L2 distance, ascending, ties by load order.
  /// OpenMP-parallel scan with per-thread bounded heaps.
  /// Throws EmptyStore, BadK, or InvalidInput on a dimension mismatch.
  std::vector<Neighbour> knn(std::span<const float> query, std::size_t k) const;

  /// Serial reference for knn: full distance table, full sort.
  std::vector<Neighbour> knn_serial(std::span<const float> query, std::size_t k) const;

 private:
  void check_query(std::span<const float> query, std::size_t k) const;
  double distance_to(std::size_t i, std::span<const float> query) const;

  std::vector<ExampleRecord> records_;
  std::vector<float> data_;
  std::size_t dim_ = 0;
};

/// L2 distance accumulated in double, element order fixed.
double l2_distance(std::span<const float> a, std::span<const float> b);

}  // namespace vchild::nlu
