#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "fvsk/graph.hpp"
#include "fvsk/matching.hpp"

namespace fvsk {

/// Rooted postorder layout of the forest g - excluded.
///
/// Trees are rooted at their smallest id and listed by root. Within a tree,
/// local positions are a postorder, so every child precedes its parent.
class ForestIndex {
 public:
  ForestIndex() = default;
  /// Throws ValidationError when g - excluded has a cycle.
  ForestIndex(const Graph& g, const VertexMask& excluded);

  std::size_t size() const noexcept { return order_.size(); }
  std::size_t num_trees() const noexcept { return tree_begin_.size() - 1; }

  Vertex vertex(std::uint32_t pos) const { return order_[pos]; }
  std::uint32_t position(Vertex v) const { return pos_[v]; }
  bool contains(Vertex v) const { return v < pos_.size() && pos_[v] != kNone; }
  /// Parent position, kNone for roots.
  std::uint32_t parent(std::uint32_t pos) const { return parent_[pos]; }
  std::uint32_t tree_of(Vertex v) const { return tree_[pos_[v]]; }
  std::uint32_t tree_of_pos(std::uint32_t pos) const { return tree_[pos]; }
  std::uint32_t tree_begin(std::uint32_t t) const { return tree_begin_[t]; }
  std::uint32_t tree_end(std::uint32_t t) const { return tree_begin_[t + 1]; }
  std::uint32_t tree_size(std::uint32_t t) const { return tree_end(t) - tree_begin(t); }
  /// Root vertex of tree t (its smallest id).
  Vertex root(std::uint32_t t) const { return order_[tree_end(t) - 1]; }
  /// Sorted vertex set of tree t.
  VertexSet tree_vertices(std::uint32_t t) const;

  static constexpr std::uint32_t kNone = 0xffffffffu;

 private:
  std::vector<Vertex> order_;
  std::vector<std::uint32_t> pos_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> tree_;
  std::vector<std::uint32_t> tree_begin_{0};
};

/// Tree DP for the independence number over a ForestIndex with blocked
/// (forced-excluded) vertices. Buffers are reused between calls.
class ForestDp {
 public:
  explicit ForestDp(const ForestIndex& index);

  /// alpha of tree t minus the blocked positions.
  std::int64_t alpha_tree(std::uint32_t t, const std::vector<std::uint8_t>& blocked_pos);
  std::int64_t alpha(const std::vector<std::uint8_t>& blocked_pos);
  /// Appends a maximum independent set of tree t minus blocked to `out`.
  /// A vertex is taken whenever taking it is optimal.
  void mis_tree(std::uint32_t t, const std::vector<std::uint8_t>& blocked_pos, std::vector<Vertex>& out);

 private:
  void run(std::uint32_t begin, std::uint32_t end, const std::vector<std::uint8_t>& blocked_pos);

  const ForestIndex* index_;
  std::vector<std::int64_t> take_;
  std::vector<std::int64_t> skip_;
};

/// Conflict counts of vertex sets against the forest g - excluded (usually
/// F = G - X), touching only the trees that contain blocked vertices.
class ConflictEngine {
 public:
  ConflictEngine(const Graph& g, const VertexMask& excluded);
  ConflictEngine(const ConflictEngine&) = delete;
  ConflictEngine& operator=(const ConflictEngine&) = delete;

  const ForestIndex& index() const { return index_; }
  std::int64_t alpha_forest() const { return alpha_total_; }
  std::int64_t alpha_tree(std::uint32_t t) const { return tree_alpha_[t]; }

  /// CONF of the vertex set `y` (members of X): alpha(F) - alpha(F - N(y)).
  std::int64_t conf(std::span<const Vertex> y);
  /// Per-tree conflicts: calls fn(tree, delta) for each tree with delta > 0.
  template <typename Fn>
  void conf_per_tree(std::span<const Vertex> y, Fn&& fn) {
    mark(y);
    for (std::uint32_t t : touched_) {
      const std::int64_t d = tree_alpha_[t] - dp_.alpha_tree(t, blocked_);
      if (d > 0) {
        fn(t, d);
      }
    }
    unmark();
  }

 private:
  void mark(std::span<const Vertex> y);
  void unmark();

  const Graph* g_;
  ForestIndex index_;
  ForestDp dp_;
  std::vector<std::int64_t> tree_alpha_;
  std::int64_t alpha_total_ = 0;
  std::vector<std::uint8_t> blocked_;
  std::vector<std::uint32_t> blocked_list_;
  std::vector<std::uint8_t> tree_touched_;
  std::vector<std::uint32_t> touched_;
};

/// Maximum matching of the forest g - excluded by postorder greedy.
Matching max_matching_forest(const Graph& g, const VertexMask& excluded);
Matching max_matching_forest(const Graph& f);

/// Perfect matching of a forest, or nullopt. Throws ValidationError when
/// `f` is not a forest.
std::optional<Matching> perfect_matching_forest(const Graph& f);
std::optional<Matching> perfect_matching_forest(const Graph& g, const VertexMask& excluded);

std::int64_t alpha_forest(const Graph& f);
std::int64_t alpha_forest_avoiding(const Graph& f, const VertexSet& avoid);
/// Maximum independent set of f - avoid.
VertexSet mis_forest_avoiding(const Graph& f, const VertexSet& avoid);

/// CONF_{F'}(Y) where F' = g[f_vertices] must be a forest.
std::int64_t conf(const Graph& g, const VertexSet& f_vertices, const VertexSet& y);

/// A chunk: one vertex of X, or two non-adjacent ones with a < b.
struct ChunkKey {
  std::array<Vertex, 2> v{kNoVertex, kNoVertex};

  static ChunkKey single(Vertex a) { return {{a, kNoVertex}}; }
  static ChunkKey pair(Vertex a, Vertex b) { return a < b ? ChunkKey{{a, b}} : ChunkKey{{b, a}}; }

  Vertex a() const noexcept { return v[0]; }
  Vertex b() const noexcept { return v[1]; }
  bool is_pair() const noexcept { return v[1] != kNoVertex; }
  std::size_t size() const noexcept { return is_pair() ? 2 : 1; }
  std::span<const Vertex> members() const noexcept { return {v.data(), size()}; }
  auto operator<=>(const ChunkKey&) const = default;
};

/// Singletons in X order, then non-adjacent pairs lexicographically.
std::vector<ChunkKey> enumerate_chunks(const Graph& g, const VertexSet& x);

/// Sum of CONF over all chunks of X against the forest F = g[f_vertices].
std::int64_t active_conflicts(const Graph& g, const VertexSet& x, const VertexSet& f_vertices);

}  // namespace fvsk
