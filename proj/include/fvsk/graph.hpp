#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace fvsk {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Per-vertex flag array indexed by vertex id.
using VertexMask = std::vector<std::uint8_t>;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  /// Orders the endpoints so that u < v.
  static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  auto operator<=>(const Edge&) const = default;
};

void normalize(VertexSet& s);
VertexSet make_set(std::vector<Vertex> items);
bool set_contains(const VertexSet& s, Vertex v);

/// Simple undirected graph over stable integer ids.
///
/// Ids run from 0 to id_bound() - 1. Removing a vertex tombstones its id; ids
/// are never reused, so records that mention a vertex stay unambiguous across
/// a whole reduction run. Neighbor lists are kept strictly increasing.
///
/// All neighbor lists live in one pool; a list that outgrows its slot moves
/// to the end of the pool. Adding an edge invalidates neighbor spans.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  /// Builds a graph on ids 0..n-1. Throws ValidationError on self-loops,
  /// out-of-range ids or duplicate edges.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t id_bound() const noexcept { return slot_.size(); }
  std::size_t num_vertices() const noexcept { return alive_count_; }
  std::size_t num_edges() const noexcept { return edge_count_; }
  bool is_dense() const noexcept { return alive_count_ == slot_.size(); }

  bool contains(Vertex v) const noexcept { return v < slot_.size() && alive_[v] != 0; }
  std::span<const Vertex> neighbors(Vertex v) const { return {pool_.data() + slot_[v].offset, slot_[v].size}; }
  std::size_t degree(Vertex v) const { return slot_[v].size; }
  bool adjacent(Vertex u, Vertex v) const;

  VertexSet vertices() const;
  std::vector<Edge> edges() const;

  /// Inserts {u, v}; returns false when the edge already exists.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);
  void remove_vertex(Vertex v);

  /// Flag array with 1 for every id in `s`. Throws on unknown ids.
  VertexMask mask_of(std::span<const Vertex> s) const;

  bool operator==(const Graph& other) const;

 private:
  struct Slot {
    std::uint32_t offset = 0;
    std::uint32_t size = 0;
    std::uint32_t cap = 0;
  };

  void check_vertex(Vertex v) const;
  Vertex* list(Vertex v) { return pool_.data() + slot_[v].offset; }
  /// Inserts w into v's sorted list; w must be absent.
  void insert_sorted(Vertex v, Vertex w);
  void erase_sorted(Vertex v, Vertex w);

  std::vector<Slot> slot_;
  std::vector<Vertex> pool_;
  std::vector<std::uint8_t> alive_;
  std::size_t alive_count_ = 0;
  std::size_t edge_count_ = 0;
};

/// G - S. Surviving vertices keep their ids.
Graph delete_vertices(const Graph& g, std::span<const Vertex> s);

/// G[S]. Same id space as `g`.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> s);

/// Connected components as sorted vertex sets, ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);

bool is_forest(const Graph& g);

/// Acyclicity of the subgraph induced by the alive vertices not flagged in
/// `excluded`.
bool is_forest(const Graph& g, const VertexMask& excluded);

}  // namespace fvsk
