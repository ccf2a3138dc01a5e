#pragma once

#include <cstdint>
#include <vector>

#include "fvsk/graph.hpp"
#include "fvsk/instance.hpp"

namespace fvsk {

/// Independent set Y such that every component of G - Y is a single edge.
/// The question is whether alpha(G) >= k.
struct P2SplitInstance {
  Graph graph;
  VertexSet y;
  std::int64_t k = 0;
};

/// Throws ValidationError when Y is not independent or G - Y is not a
/// disjoint union of edges.
void validate_p2split(const P2SplitInstance& p);

/// The P2 edges of G - Y ordered by their lower endpoint, as (a_j, b_j)
/// with a_j < b_j.
std::vector<Edge> p2_edges(const P2SplitInstance& p);

/// Replaces {u, v} by the path u - p1 - p2 - v; p1, p2 get the next two ids.
/// Raises alpha by exactly one.
Graph subdivide_edge(const Graph& g, Vertex u, Vertex v);

/// Subdivides every edge in sorted order. Y = V(g), target k + |E(g)|.
P2SplitInstance subdivide_to_p2split(const Graph& g, std::int64_t k);

/// Weighted OR-composite of t P2-split instances.
///
/// Layout: the Y copies of instances 0..t-1 (each in Y order), then
/// a'_0, b'_0, a'_1, b'_1, ..., then s_0^0, s_0^1, s_1^0, s_1^1, ...
/// Instance i is wired to s_j^{b(i,j)} where b(i,j) is bit j of i (least
/// significant first).
struct WeightedComposite {
  /// Independent set form with weights 1 and t(n+1).
  Instance instance;
  /// The primed and selector vertices; a vertex cover of the composite.
  VertexSet cover;
  std::size_t t = 0;
  std::size_t t_original = 0;
  std::size_t bits = 0;
  std::size_t q = 0;
  std::size_t n = 0;
  std::int64_t k = 0;
  /// copies[i][c] is the composite id of the c-th Y vertex of instance i.
  std::vector<std::vector<Vertex>> copies;
  std::vector<Vertex> a_prime;
  std::vector<Vertex> b_prime;
  std::vector<Vertex> sel0;
  std::vector<Vertex> sel1;
  /// Per input instance: its Y and (a_j, b_j) labels, for decoding.
  std::vector<VertexSet> ys;
  std::vector<std::vector<Edge>> p2s;
};

/// Pads t up to a power of two (at least 2) by repeating the last input.
/// Inputs must agree on |V|, |Y| and k (ValidationError); t = 0 is a
/// PreconditionError.
WeightedComposite cross_compose(const std::vector<P2SplitInstance>& inputs);

struct DecodedWitness {
  std::size_t index = 0;
  /// Independent set of input `index`, in its own ids.
  VertexSet vertices;
};

/// Reads the instance index off the selectors of an independent set of
/// weight >= k'. PreconditionError when the set is dependent, too light, or
/// misses a selector pair.
DecodedWitness decode_witness(const WeightedComposite& c, const VertexSet& is);

}  // namespace fvsk
