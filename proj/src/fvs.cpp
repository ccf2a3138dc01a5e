#include "fvsk/fvs.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace fvsk {

namespace {

constexpr long double kEps = 1e-9L;

struct Dsu {
  std::vector<Vertex> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Vertex find(Vertex v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    parent[a] = b;
    return true;
  }
};

bool acyclic_without(const Graph& g, const VertexMask& removed) {
  Dsu dsu(g.id_bound());
  for (const Edge& e : g.edges()) {
    if (!removed[e.u] && !removed[e.v] && !dsu.unite(e.u, e.v)) {
      return false;
    }
  }
  return true;
}

// Residual graph of the local-ratio loop: live flags and current degrees.
struct Residual {
  const Graph& g;
  VertexMask live;
  std::vector<std::size_t> deg;

  explicit Residual(const Graph& graph) : g(graph), live(graph.id_bound(), 0), deg(graph.id_bound(), 0) {
    for (Vertex v : g.vertices()) {
      live[v] = 1;
      deg[v] = g.degree(v);
    }
  }

  void remove(Vertex v) {
    live[v] = 0;
    for (Vertex u : g.neighbors(v)) {
      if (live[u]) {
        --deg[u];
      }
    }
  }

  void prune_low_degree() {
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < g.id_bound(); ++v) {
      if (live[v] && deg[v] <= 1) {
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      const Vertex v = queue.back();
      queue.pop_back();
      if (!live[v]) {
        continue;
      }
      remove(v);
      for (Vertex u : g.neighbors(v)) {
        if (live[u] && deg[u] == 1) {
          queue.push_back(u);
        }
      }
    }
  }

  bool empty() const { return std::find(live.begin(), live.end(), 1) == live.end(); }

  Vertex other_live_neighbor(Vertex v, Vertex not_this) const {
    for (Vertex u : g.neighbors(v)) {
      if (live[u] && u != not_this) {
        return u;
      }
    }
    return kNoVertex;
  }

  // A cycle in which all vertices but at most one have degree two. Chains of
  // degree-2 vertices are walked from the lowest id; the first chain that
  // closes on itself or returns to one endpoint wins.
  std::optional<std::vector<Vertex>> semidisjoint_cycle() const {
    VertexMask seen(g.id_bound(), 0);
    for (Vertex s = 0; s < g.id_bound(); ++s) {
      if (!live[s] || deg[s] != 2 || seen[s]) {
        continue;
      }
      std::vector<Vertex> chain{s};
      seen[s] = 1;
      Vertex ends[2];
      bool closed = false;
      Vertex first_nbrs[2];
      std::size_t idx = 0;
      for (Vertex u : g.neighbors(s)) {
        if (live[u]) {
          first_nbrs[idx++] = u;
        }
      }
      for (int side = 0; side < 2 && !closed; ++side) {
        Vertex prev = s;
        Vertex cur = first_nbrs[side];
        while (deg[cur] == 2 && cur != s) {
          if (seen[cur]) {
            break;
          }
          seen[cur] = 1;
          chain.push_back(cur);
          const Vertex next = other_live_neighbor(cur, prev);
          prev = cur;
          cur = next;
        }
        if (cur == s) {
          closed = true;
        }
        ends[side] = cur;
      }
      if (closed) {
        return chain;
      }
      if (ends[0] == ends[1]) {
        chain.push_back(ends[0]);
        return chain;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

bool validate_fvs(const Graph& g, const VertexSet& x) {
  VertexMask removed(g.id_bound(), 0);
  for (Vertex v : x) {
    if (!g.contains(v)) {
      return false;
    }
    removed[v] = 1;
  }
  return acyclic_without(g, removed);
}

VertexSet approx_fvs(const Graph& g) {
  Residual h(g);
  std::vector<long double> w(g.id_bound(), 1.0L);
  std::vector<Vertex> added;
  while (true) {
    h.prune_low_degree();
    if (h.empty()) {
      break;
    }
    Vertex argmin = kNoVertex;
    if (auto cycle = h.semidisjoint_cycle()) {
      long double gamma = 0;
      for (Vertex v : *cycle) {
        if (argmin == kNoVertex || w[v] < gamma || (w[v] == gamma && v < argmin)) {
          gamma = w[v];
          argmin = v;
        }
      }
      for (Vertex v : *cycle) {
        w[v] -= gamma;
      }
    } else {
      long double gamma = 0;
      for (Vertex v = 0; v < g.id_bound(); ++v) {
        if (!h.live[v]) {
          continue;
        }
        const long double r = w[v] / static_cast<long double>(h.deg[v] - 1);
        if (argmin == kNoVertex || r < gamma) {
          gamma = r;
          argmin = v;
        }
      }
      for (Vertex v = 0; v < g.id_bound(); ++v) {
        if (h.live[v]) {
          w[v] -= gamma * static_cast<long double>(h.deg[v] - 1);
        }
      }
    }
    w[argmin] = 0;
    std::vector<Vertex> batch;
    for (Vertex v = 0; v < g.id_bound(); ++v) {
      if (h.live[v] && w[v] <= kEps) {
        batch.push_back(v);
      }
    }
    for (Vertex v : batch) {
      h.remove(v);
      added.push_back(v);
    }
  }
  // Reverse-addition minimalization.
  VertexMask in(g.id_bound(), 0);
  for (Vertex v : added) {
    in[v] = 1;
  }
  for (std::size_t i = added.size(); i-- > 0;) {
    const Vertex v = added[i];
    in[v] = 0;
    if (!acyclic_without(g, in)) {
      in[v] = 1;
    }
  }
  VertexSet out;
  for (Vertex v : added) {
    if (in[v]) {
      out.push_back(v);
    }
  }
  normalize(out);
  return out;
}

}  // namespace fvsk
