#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fvsk/graph.hpp"

namespace fvsk {

struct Matching {
  std::vector<Edge> edges;
  /// mate[v] is v's partner or kNoVertex. Sized to the host's id bound.
  std::vector<Vertex> mate;

  std::size_t size() const noexcept { return edges.size(); }
  bool covers(Vertex v) const { return v < mate.size() && mate[v] != kNoVertex; }
  bool contains(Vertex u, Vertex v) const { return u < mate.size() && mate[u] == v; }
};

/// Rebuilds m.edges from m.mate, sorted.
void fill_edges(Matching& m);

/// Hopcroft-Karp on an explicit bipartite graph. Left vertices are
/// 0..left-1, right vertices 0..right-1. The neighbors of left vertex i are
/// targets[offsets[i] .. offsets[i+1]).
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t left, std::size_t right, std::vector<std::uint32_t> offsets,
                   std::vector<std::uint32_t> targets);

  /// Runs to a maximum matching; returns its size.
  std::size_t run();

  const std::vector<std::uint32_t>& mate_left() const { return mate_l_; }
  const std::vector<std::uint32_t>& mate_right() const { return mate_r_; }

  /// Replaces the current matching. Sizes must match left/right.
  void load(std::vector<std::uint32_t> mate_left, std::vector<std::uint32_t> mate_right);

  /// True when an augmenting path exists for the current matching.
  bool has_augmenting_path();

  /// Koenig cover for the current (maximum) matching: left vertices not
  /// reachable from free left vertices by alternating paths, plus the
  /// reachable right vertices.
  void koenig_cover(std::vector<std::uint8_t>& left_in, std::vector<std::uint8_t>& right_in) const;

  static constexpr std::uint32_t kFree = 0xffffffffu;

 private:
  std::span<const std::uint32_t> row(std::uint32_t u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  bool bfs();
  bool dfs(std::uint32_t root);

  std::size_t left_;
  std::size_t right_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<std::uint32_t> mate_l_;
  std::vector<std::uint32_t> mate_r_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::uint32_t> iter_;
};

/// side[v] in {0,1} for every alive vertex. Throws ValidationError on an
/// edge inside one side.
Matching max_matching_bipartite(const Graph& g, const VertexMask& side);

/// Koenig vertex cover of size |m|. Throws PreconditionError when m is not a
/// maximum matching.
VertexSet min_vc_bipartite(const Graph& g, const VertexMask& side, const Matching& m);

bool is_matching(const Graph& g, const Matching& m);

}  // namespace fvsk
