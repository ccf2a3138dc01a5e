#include "fvsk/graph.hpp"

#include <algorithm>
#include <string>

#include "fvsk/error.hpp"

namespace fvsk {

void normalize(VertexSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

VertexSet make_set(std::vector<Vertex> items) {
  normalize(items);
  return items;
}

bool set_contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

Graph::Graph(std::size_t n) : slot_(n), alive_(n, 1), alive_count_(n) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw ValidationError("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw ValidationError("self-loop on vertex " + std::to_string(e.u + 1));
    }
    ++g.slot_[e.u].cap;
    ++g.slot_[e.v].cap;
  }
  std::uint32_t at = 0;
  for (Slot& s : g.slot_) {
    s.offset = at;
    at += s.cap;
  }
  g.pool_.resize(at);
  for (const Edge& e : edges) {
    g.list(e.u)[g.slot_[e.u].size++] = e.v;
    g.list(e.v)[g.slot_[e.v].size++] = e.u;
  }
  for (Vertex v = 0; v < n; ++v) {
    Vertex* a = g.list(v);
    Vertex* end = a + g.slot_[v].size;
    std::sort(a, end);
    Vertex* dup = std::adjacent_find(a, end);
    if (dup != end) {
      const auto lo = std::min<std::size_t>(v, *dup);
      const auto hi = std::max<std::size_t>(v, *dup);
      throw ValidationError("duplicate edge " + std::to_string(lo + 1) + " " + std::to_string(hi + 1));
    }
  }
  g.edge_count_ = edges.size();
  return g;
}

void Graph::check_vertex(Vertex v) const {
  if (!contains(v)) {
    throw PreconditionError("unknown vertex id " + std::to_string(v));
  }
}

void Graph::insert_sorted(Vertex v, Vertex w) {
  Slot& s = slot_[v];
  if (s.size == s.cap) {
    const std::uint32_t cap = std::max<std::uint32_t>(4, 2 * s.cap);
    const auto at = static_cast<std::uint32_t>(pool_.size());
    pool_.resize(pool_.size() + cap);
    std::copy_n(pool_.begin() + s.offset, s.size, pool_.begin() + at);
    s.offset = at;
    s.cap = cap;
  }
  Vertex* a = list(v);
  Vertex* pos = std::lower_bound(a, a + s.size, w);
  std::copy_backward(pos, a + s.size, a + s.size + 1);
  *pos = w;
  ++s.size;
}

void Graph::erase_sorted(Vertex v, Vertex w) {
  Slot& s = slot_[v];
  Vertex* a = list(v);
  Vertex* pos = std::lower_bound(a, a + s.size, w);
  std::copy(pos + 1, a + s.size, pos);
  --s.size;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) {
    return false;
  }
  const bool from_u = slot_[u].size <= slot_[v].size;
  const auto a = neighbors(from_u ? u : v);
  return std::binary_search(a.begin(), a.end(), from_u ? v : u);
}

VertexSet Graph::vertices() const {
  VertexSet out;
  out.reserve(alive_count_);
  for (Vertex v = 0; v < slot_.size(); ++v) {
    if (alive_[v]) {
      out.push_back(v);
    }
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < slot_.size(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) {
        out.push_back({u, v});
      }
    }
  }
  return out;
}

bool Graph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) {
    throw PreconditionError("self-loop on vertex " + std::to_string(u));
  }
  if (adjacent(u, v)) {
    return false;
  }
  insert_sorted(u, v);
  insert_sorted(v, u);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(Vertex u, Vertex v) {
  if (!adjacent(u, v)) {
    return false;
  }
  erase_sorted(u, v);
  erase_sorted(v, u);
  --edge_count_;
  return true;
}

void Graph::remove_vertex(Vertex v) {
  check_vertex(v);
  for (Vertex u : neighbors(v)) {
    erase_sorted(u, v);
  }
  edge_count_ -= slot_[v].size;
  slot_[v].size = 0;
  alive_[v] = 0;
  --alive_count_;
}

VertexMask Graph::mask_of(std::span<const Vertex> s) const {
  VertexMask mask(slot_.size(), 0);
  for (Vertex v : s) {
    check_vertex(v);
    mask[v] = 1;
  }
  return mask;
}

bool Graph::operator==(const Graph& other) const {
  if (alive_ != other.alive_) {
    return false;
  }
  for (Vertex v = 0; v < slot_.size(); ++v) {
    const auto a = neighbors(v);
    const auto b = other.neighbors(v);
    if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
      return false;
    }
  }
  return true;
}

Graph delete_vertices(const Graph& g, std::span<const Vertex> s) {
  const VertexMask drop = g.mask_of(s);
  std::vector<Edge> keep;
  for (Vertex u = 0; u < g.id_bound(); ++u) {
    if (drop[u]) {
      continue;
    }
    for (Vertex v : g.neighbors(u)) {
      if (u < v && !drop[v]) {
        keep.push_back({u, v});
      }
    }
  }
  Graph out = Graph::from_edges(g.id_bound(), keep);
  for (Vertex v = 0; v < g.id_bound(); ++v) {
    if (!g.contains(v) || drop[v]) {
      out.remove_vertex(v);
    }
  }
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
  const VertexMask keep = g.mask_of(s);
  VertexSet drop;
  for (Vertex v = 0; v < g.id_bound(); ++v) {
    if (g.contains(v) && !keep[v]) {
      drop.push_back(v);
    }
  }
  return delete_vertices(g, drop);
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> out;
  VertexMask seen(g.id_bound(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.id_bound(); ++s) {
    if (!g.contains(s) || seen[s]) {
      continue;
    }
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex u : g.neighbors(v)) {
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_forest(const Graph& g) { return is_forest(g, VertexMask(g.id_bound(), 0)); }

bool is_forest(const Graph& g, const VertexMask& excluded) {
  // A component is a tree iff it has exactly |C| - 1 edges.
  VertexMask seen(g.id_bound(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.id_bound(); ++s) {
    if (!g.contains(s) || excluded[s] || seen[s]) {
      continue;
    }
    std::size_t vertices = 0;
    std::size_t degree_sum = 0;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      ++vertices;
      for (Vertex u : g.neighbors(v)) {
        if (excluded[u]) {
          continue;
        }
        ++degree_sum;
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    if (degree_sum / 2 != vertices - 1) {
      return false;
    }
  }
  return true;
}

}  // namespace fvsk
