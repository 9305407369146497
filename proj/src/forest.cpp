#include "graphseg/forest.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "graphseg/error.hpp"

namespace graphseg {

ComponentForest::ComponentForest(std::size_t vertex_count, double k)
    : parent_(vertex_count), rank_(vertex_count, 0), size_(vertex_count, 1), threshold_(vertex_count, k), k_(k) {
  if (vertex_count == 0) throw ParameterError("forest needs at least one vertex");
  if (vertex_count > std::numeric_limits<VertexId>::max()) throw ParameterError("too many vertices");
  if (!(k >= 0.0)) throw ParameterError("k must be >= 0");
  std::iota(parent_.begin(), parent_.end(), VertexId{0});
}

VertexId ComponentForest::find(VertexId v) {
  VertexId root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) {
    const VertexId next = parent_[v];
    parent_[v] = root;
    v = next;
  }
  return root;
}

VertexId ComponentForest::join(VertexId ra, VertexId rb, double new_threshold) {
  if (ra == rb) throw ContractViolation("join of a component with itself (" + std::to_string(ra) + ")");
  if (ra >= parent_.size() || rb >= parent_.size()) throw ContractViolation("join argument out of range");
  if (!is_root(ra) || !is_root(rb)) throw ContractViolation("join arguments must be roots");

  if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
  parent_[rb] = ra;
  if (rank_[ra] == rank_[rb]) ++rank_[ra];
  size_[ra] += size_[rb];
  threshold_[ra] = new_threshold;
  return ra;
}

std::size_t ComponentForest::component_count() const noexcept {
  std::size_t roots = 0;
  for (VertexId v = 0; v < parent_.size(); ++v) roots += parent_[v] == v ? 1 : 0;
  return roots;
}

}  // namespace graphseg
