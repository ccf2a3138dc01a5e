#include "fvsk/compose.hpp"

#include <algorithm>

#include "fvsk/error.hpp"

namespace fvsk {

void validate_p2split(const P2SplitInstance& p) {
  const Graph& g = p.graph;
  const VertexMask in_y = g.mask_of(p.y);
  if (!is_independent(g, p.y)) {
    throw ValidationError("Y is not independent");
  }
  for (Vertex v : g.vertices()) {
    if (in_y[v]) {
      continue;
    }
    std::size_t outside = 0;
    for (Vertex u : g.neighbors(v)) {
      outside += !in_y[u];
    }
    if (outside != 1) {
      throw ValidationError("vertex " + std::to_string(v + 1) + " is not on a single edge outside Y");
    }
  }
  if (p.k < 0) {
    throw ValidationError("negative target");
  }
}

std::vector<Edge> p2_edges(const P2SplitInstance& p) {
  const VertexMask in_y = p.graph.mask_of(p.y);
  std::vector<Edge> out;
  for (Vertex v : p.graph.vertices()) {
    if (in_y[v]) {
      continue;
    }
    for (Vertex u : p.graph.neighbors(v)) {
      if (!in_y[u] && v < u) {
        out.push_back({v, u});
      }
    }
  }
  return out;
}

Graph subdivide_edge(const Graph& g, Vertex u, Vertex v) {
  if (!g.is_dense()) {
    throw PreconditionError("subdivision expects a graph without removed vertices");
  }
  if (!g.contains(u) || !g.contains(v) || !g.adjacent(u, v)) {
    throw PreconditionError("no edge to subdivide");
  }
  const auto p1 = static_cast<Vertex>(g.id_bound());
  const Vertex p2 = p1 + 1;
  std::vector<Edge> edges = g.edges();
  std::erase(edges, Edge::make(u, v));
  edges.push_back(Edge::make(u, p1));
  edges.push_back(Edge::make(p1, p2));
  edges.push_back(Edge::make(p2, v));
  return Graph::from_edges(g.id_bound() + 2, edges);
}

P2SplitInstance subdivide_to_p2split(const Graph& g, std::int64_t k) {
  if (!g.is_dense()) {
    throw PreconditionError("subdivision expects a graph without removed vertices");
  }
  const std::vector<Edge> old = g.edges();
  const std::size_t n = g.id_bound();
  std::vector<Edge> edges;
  edges.reserve(3 * old.size());
  for (std::size_t i = 0; i < old.size(); ++i) {
    const auto p1 = static_cast<Vertex>(n + 2 * i);
    edges.push_back(Edge::make(old[i].u, p1));
    edges.push_back(Edge::make(p1, p1 + 1));
    edges.push_back(Edge::make(p1 + 1, old[i].v));
  }
  P2SplitInstance out;
  out.graph = Graph::from_edges(n + 2 * old.size(), edges);
  out.y = g.vertices();
  out.k = k + static_cast<std::int64_t>(old.size());
  return out;
}

WeightedComposite cross_compose(const std::vector<P2SplitInstance>& inputs) {
  if (inputs.empty()) {
    throw PreconditionError("nothing to compose");
  }
  for (const auto& p : inputs) {
    validate_p2split(p);
    if (!p.graph.is_dense()) {
      throw PreconditionError("composition expects graphs without removed vertices");
    }
    if (p.graph.num_vertices() != inputs[0].graph.num_vertices() || p.y.size() != inputs[0].y.size() ||
        p.k != inputs[0].k) {
      throw ValidationError("inputs differ in vertex count, |Y| or k");
    }
  }
  WeightedComposite c;
  c.t_original = inputs.size();
  c.t = 2;
  c.bits = 1;
  while (c.t < c.t_original) {
    c.t *= 2;
    ++c.bits;
  }
  c.n = inputs[0].graph.num_vertices();
  c.q = (c.n - inputs[0].y.size()) / 2;
  c.k = inputs[0].k;
  for (std::size_t i = 0; i < c.t; ++i) {
    const P2SplitInstance& p = inputs[std::min(i, c.t_original - 1)];
    if (i < c.t_original) {
      c.ys.push_back(p.y);
      c.p2s.push_back(p2_edges(p));
    }
  }

  Vertex next = 0;
  c.copies.resize(c.t);
  for (std::size_t i = 0; i < c.t; ++i) {
    for (std::size_t j = 0; j < c.ys[std::min(i, c.t_original - 1)].size(); ++j) {
      c.copies[i].push_back(next++);
    }
  }
  for (std::size_t j = 0; j < c.q; ++j) {
    c.a_prime.push_back(next++);
    c.b_prime.push_back(next++);
  }
  for (std::size_t j = 0; j < c.bits; ++j) {
    c.sel0.push_back(next++);
    c.sel1.push_back(next++);
  }

  std::vector<Edge> edges;
  for (std::size_t j = 0; j < c.q; ++j) {
    edges.push_back(Edge::make(c.a_prime[j], c.b_prime[j]));
  }
  for (std::size_t j = 0; j < c.bits; ++j) {
    edges.push_back(Edge::make(c.sel0[j], c.sel1[j]));
  }
  for (std::size_t i = 0; i < c.t; ++i) {
    const std::size_t src = std::min(i, c.t_original - 1);
    const Graph& g = inputs[src].graph;
    const VertexSet& y = c.ys[src];
    const auto& p2 = c.p2s[src];
    for (std::size_t yi = 0; yi < y.size(); ++yi) {
      const Vertex copy = c.copies[i][yi];
      for (std::size_t j = 0; j < c.q; ++j) {
        if (g.adjacent(y[yi], p2[j].u)) {
          edges.push_back(Edge::make(copy, c.a_prime[j]));
        }
        if (g.adjacent(y[yi], p2[j].v)) {
          edges.push_back(Edge::make(copy, c.b_prime[j]));
        }
      }
      for (std::size_t j = 0; j < c.bits; ++j) {
        const Vertex s = ((i >> j) & 1U) != 0 ? c.sel1[j] : c.sel0[j];
        edges.push_back(Edge::make(copy, s));
      }
    }
  }

  const auto heavy = static_cast<std::int64_t>(c.t * (c.n + 1));
  Instance& inst = c.instance;
  inst.graph = Graph::from_edges(next, edges);
  inst.problem = Problem::independent_set;
  inst.target = c.k + heavy * static_cast<std::int64_t>(c.bits);
  std::vector<std::int64_t> w(next, 1);
  for (std::size_t j = 0; j < c.bits; ++j) {
    w[c.sel0[j]] = heavy;
    w[c.sel1[j]] = heavy;
  }
  inst.weights = std::move(w);
  c.cover.insert(c.cover.end(), c.a_prime.begin(), c.a_prime.end());
  c.cover.insert(c.cover.end(), c.b_prime.begin(), c.b_prime.end());
  c.cover.insert(c.cover.end(), c.sel0.begin(), c.sel0.end());
  c.cover.insert(c.cover.end(), c.sel1.begin(), c.sel1.end());
  normalize(c.cover);
  inst.fvs = c.cover;
  return c;
}

DecodedWitness decode_witness(const WeightedComposite& c, const VertexSet& witness) {
  const Instance& inst = c.instance;
  const VertexSet is = make_set(witness);
  if (!is_independent(inst.graph, is)) {
    throw PreconditionError("witness is not an independent set");
  }
  std::int64_t weight = 0;
  for (Vertex v : is) {
    weight += inst.weight(v);
  }
  if (weight < inst.target) {
    throw PreconditionError("witness weight " + std::to_string(weight) + " is below " + std::to_string(inst.target));
  }
  std::size_t index = 0;
  for (std::size_t j = 0; j < c.bits; ++j) {
    const bool has0 = set_contains(is, c.sel0[j]);
    const bool has1 = set_contains(is, c.sel1[j]);
    if (has0 == has1) {
      throw PreconditionError("witness misses selector pair " + std::to_string(j));
    }
    if (has0) {
      index |= std::size_t{1} << j;
    }
  }
  DecodedWitness out;
  out.index = std::min(index, c.t_original - 1);
  const VertexSet& y = c.ys[out.index];
  const auto& p2 = c.p2s[out.index];
  for (std::size_t yi = 0; yi < y.size(); ++yi) {
    if (set_contains(is, c.copies[index][yi])) {
      out.vertices.push_back(y[yi]);
    }
  }
  for (std::size_t j = 0; j < c.q; ++j) {
    if (set_contains(is, c.a_prime[j])) {
      out.vertices.push_back(p2[j].u);
    }
    if (set_contains(is, c.b_prime[j])) {
      out.vertices.push_back(p2[j].v);
    }
  }
  normalize(out.vertices);
  return out;
}

}  // namespace fvsk
