#include "vchild/nlu/vector_store.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <omp.h>

#include "vchild/error.hpp"

namespace vchild::nlu {

namespace {

bool closer(const Neighbour& a, const Neighbour& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
}

struct Farther {
  bool operator()(const Neighbour& a, const Neighbour& b) const { return closer(a, b); }
};

// Max-heap on (distance, index): top is the worst of the kept candidates.
using BoundedHeap = std::priority_queue<Neighbour, std::vector<Neighbour>, Farther>;

void offer(BoundedHeap& heap, std::size_t k, Neighbour candidate) {
  if (heap.size() < k) {
    heap.push(candidate);
  } else if (closer(candidate, heap.top())) {
    heap.pop();
    heap.push(candidate);
  }
}

}  // namespace

double l2_distance(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = static_cast<double>(a[j]) - static_cast<double>(b[j]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

VectorStore::VectorStore(std::vector<ExampleRecord> records) : records_(std::move(records)) {
  if (records_.empty()) return;
  dim_ = records_.front().vector.dim();
  data_.reserve(records_.size() * dim_);
  for (const auto& r : records_) {
    if (r.vector.dim() != dim_) throw Error(Errc::InvalidInput, "records disagree on embedding dimension");
    data_.insert(data_.end(), r.vector.values.begin(), r.vector.values.end());
  }
}

void VectorStore::check_query(std::span<const float> query, std::size_t k) const {
  if (records_.empty()) throw Error(Errc::EmptyStore, "vector store is empty");
  if (k < 1 || k > records_.size()) {
    throw Error(Errc::BadK, "k must be in [1, " + std::to_string(records_.size()) + "], got " + std::to_string(k));
  }
  if (query.size() != dim_) throw Error(Errc::InvalidInput, "query dimension mismatch");
}

double VectorStore::distance_to(std::size_t i, std::span<const float> query) const {
  return l2_distance(row(i), query);
}

std::vector<Neighbour> VectorStore::knn(std::span<const float> query, std::size_t k) const {
  check_query(query, k);
  const auto n = static_cast<std::ptrdiff_t>(records_.size());
  std::vector<Neighbour> merged;

#pragma omp parallel
  {
    BoundedHeap local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      offer(local, k, {static_cast<std::size_t>(i), distance_to(static_cast<std::size_t>(i), query)});
    }
    std::vector<Neighbour> mine;
    mine.reserve(local.size());
    while (!local.empty()) {
      mine.push_back(local.top());
      local.pop();
    }
#pragma omp critical(vchild_knn_merge)
    merged.insert(merged.end(), mine.begin(), mine.end());
  }

  std::sort(merged.begin(), merged.end(), closer);
  merged.resize(k);
  return merged;
}

std::vector<Neighbour> VectorStore::knn_serial(std::span<const float> query, std::size_t k) const {
  check_query(query, k);
  std::vector<Neighbour> all(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) all[i] = {i, distance_to(i, query)};
  std::stable_sort(all.begin(), all.end(),
                   [](const Neighbour& a, const Neighbour& b) { return a.distance < b.distance; });
  all.resize(k);
  return all;
}

}  // namespace vchild::nlu
