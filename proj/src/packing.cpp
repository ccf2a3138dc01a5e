#include "fvsk/packing.hpp"

#include <algorithm>
#include <set>

#include "fvsk/error.hpp"

namespace fvsk {

namespace {

bool is_leaf(const Graph& t, Vertex v) { return t.degree(v) == 1; }

Vertex leaf_neighbor(const Graph& t, Vertex v) {
  for (Vertex u : t.neighbors(v)) {
    if (is_leaf(t, u)) {
      return u;
    }
  }
  return kNoVertex;
}

// Degree at least 4, or degree 3 without a leaf neighbor.
bool branches_out(const Graph& t, Vertex v) {
  return t.degree(v) >= 4 || (t.degree(v) == 3 && leaf_neighbor(t, v) == kNoVertex);
}

bool is_spike(const Graph& t, Vertex v) {
  if (t.degree(v) != 3) {
    return false;
  }
  int leaves = 0;
  for (Vertex u : t.neighbors(v)) {
    leaves += is_leaf(t, u);
  }
  return leaves == 1;
}

void check_tree(const Graph& t) {
  if (t.num_vertices() == 0) {
    return;
  }
  if (t.num_edges() + 1 != t.num_vertices() || connected_components(t).size() != 1) {
    throw ValidationError("packing needs a tree");
  }
}

void check_perfect(const Graph& t, const Matching& m) {
  for (Vertex v : t.vertices()) {
    if (v >= m.mate.size() || m.mate[v] == kNoVertex || !t.contains(m.mate[v]) || !t.adjacent(v, m.mate[v]) ||
        m.mate[m.mate[v]] != v) {
      throw PreconditionError("matching is not perfect on the tree");
    }
  }
}

// Grows T' and keeps O (open branches) and S (live spikes) up to date by
// re-evaluating only the vertices whose T'-degree changed.
class Grower {
 public:
  explicit Grower(const Graph& t)
      : t_(t),
        in_tree_(t.id_bound(), 0),
        deg_in_(t.id_bound(), 0),
        spike_(t.id_bound(), 0),
        in_struct_(t.id_bound(), 0) {
    for (Vertex v : t.vertices()) {
      spike_[v] = is_spike(t, v);
    }
  }

  bool inside(Vertex v) const { return in_tree_[v] != 0; }
  bool has_open() const { return !open_.empty(); }
  Vertex lowest_open() const { return *open_.begin(); }
  Packing& result() { return out_; }

  void grow(int op, Vertex v0, std::vector<Vertex> path, const std::optional<ConflictStructure>& s) {
    VertexSet add;
    if (op == 2) {
      add.push_back(path.back());
    } else {
      for (Vertex p : path) {
        if (!inside(p)) {
          add.push_back(p);
        }
        for (Vertex u : t_.neighbors(p)) {
          if (!inside(u)) {
            add.push_back(u);
          }
        }
      }
    }
    normalize(add);

    VertexSet touched = add;
    for (Vertex x : add) {
      for (Vertex y : t_.neighbors(x)) {
        if (inside(y)) {
          touched.push_back(y);
        }
      }
    }
    normalize(touched);

    const std::int64_t o0 = static_cast<std::int64_t>(open_.size());
    const std::int64_t s0 = live_spikes_;
    for (Vertex v : touched) {
      if (open_.erase(v) != 0) {
        live_spikes_ -= spike_[v];
      }
    }
    for (Vertex x : add) {
      in_tree_[x] = 1;
    }
    for (Vertex x : add) {
      for (Vertex y : t_.neighbors(x)) {
        if (!inside(y)) {
          continue;
        }
        ++deg_in_[x];
        if (!std::binary_search(add.begin(), add.end(), y)) {
          ++deg_in_[y];
        }
      }
    }
    for (Vertex v : touched) {
      if (deg_in_[v] == 1 && t_.degree(v) >= 2) {
        open_.insert(v);
        live_spikes_ += spike_[v];
      }
    }

    LedgerStep step;
    step.op = op;
    step.v0 = v0;
    step.path = std::move(path);
    step.d_open = static_cast<std::int64_t>(open_.size()) - o0;
    step.d_spikes = live_spikes_ - s0;
    step.d_vertices = static_cast<std::int64_t>(add.size());
    step.added = std::move(add);
    if (s) {
      for (Vertex v : s->vertices) {
        if (in_struct_[v] || !inside(v) || open_.count(v) != 0) {
          throw InvariantViolation("structure overlaps or touches the boundary at vertex " + std::to_string(v));
        }
        in_struct_[v] = 1;
      }
      out_.structures.push_back(*s);
      step.d_structures = 1;
    }
    for (Vertex v : touched) {
      if (in_struct_[v] && open_.count(v) != 0) {
        throw InvariantViolation("structure vertex became an open branch");
      }
    }
    check_step(step);
    out_.ledger.push_back(std::move(step));
  }

 private:
  void check_step(const LedgerStep& st) const {
    if (!st.balanced()) {
      throw InvariantViolation("ledger step for operation " + std::to_string(st.op) + " at vertex " +
                               std::to_string(st.v0) + " breaks 8dO + 14dC + dS >= dN");
    }
    const bool ok2 = st.op != 2 || (st.d_open == 0 && st.d_structures == 0 && st.d_spikes == 1 && st.d_vertices == 1);
    const bool ok3 = st.op != 3 || (st.d_open == 0 && st.d_structures == 1 && st.d_spikes >= -1 && st.d_vertices == 4);
    if (!ok2 || !ok3) {
      throw InvariantViolation("operation " + std::to_string(st.op) + " changed the counters unexpectedly");
    }
  }

  const Graph& t_;
  VertexMask in_tree_;
  std::vector<std::uint32_t> deg_in_;
  VertexMask spike_;
  VertexMask in_struct_;
  std::set<Vertex> open_;
  std::int64_t live_spikes_ = 0;
  Packing out_;
};

Vertex other_neighbor(const Graph& t, Vertex v, Vertex from) {
  for (Vertex u : t.neighbors(v)) {
    if (u != from) {
      return u;
    }
  }
  return kNoVertex;
}

std::optional<ConflictStructure> matched_pair(const Graph& t, const Matching& m, Vertex a, Vertex b) {
  if (!m.contains(a, b) || t.degree(a) > 2 || t.degree(b) > 2) {
    throw InvariantViolation("expected a matched low-degree edge at " + std::to_string(a) + "-" + std::to_string(b));
  }
  return ConflictStructure::a(std::min(a, b), std::max(a, b));
}

}  // namespace

VertexSet find_spikes(const Graph& t) {
  VertexSet out;
  for (Vertex v : t.vertices()) {
    if (is_spike(t, v)) {
      out.push_back(v);
    }
  }
  return out;
}

Packing pack(const Graph& t, const Matching& m) {
  check_tree(t);
  check_perfect(t, m);
  const VertexSet verts = t.vertices();
  if (verts.empty()) {
    return {};
  }
  if (verts.size() == 2) {
    Packing p;
    p.structures.push_back(ConflictStructure::a(verts[0], verts[1]));
    return p;
  }

  Grower g(t);
  {
    Vertex leaf = kNoVertex;
    for (Vertex v : verts) {
      if (is_leaf(t, v)) {
        leaf = v;
        break;
      }
    }
    const Vertex u = t.neighbors(leaf)[0];
    g.grow(1, leaf, {u}, std::nullopt);
  }

  while (g.has_open()) {
    const Vertex v0 = g.lowest_open();
    const std::size_t d0 = t.degree(v0);
    if (branches_out(t, v0)) {
      g.grow(5, v0, {v0}, std::nullopt);
      continue;
    }
    if (d0 == 3) {
      const Vertex l0 = leaf_neighbor(t, v0);
      Vertex v1 = kNoVertex;
      for (Vertex u : t.neighbors(v0)) {
        if (!g.inside(u) && !is_leaf(t, u)) {
          v1 = u;
          break;
        }
      }
      if (v1 == kNoVertex || g.inside(l0)) {
        throw InvariantViolation("open branch " + std::to_string(v0) + " has no way out");
      }
      if (branches_out(t, v1)) {
        g.grow(5, v0, {v0, v1}, std::nullopt);
      } else if (t.degree(v1) == 3) {
        const Vertex l1 = leaf_neighbor(t, v1);
        g.grow(3, v0, {v0, v1}, ConflictStructure::b(l0, v0, v1, l1));
      } else {
        const Vertex v2 = other_neighbor(t, v1, v0);
        if (t.degree(v2) <= 2) {
          g.grow(4, v0, {v0, v1, v2}, matched_pair(t, m, v1, v2));
        } else {
          g.grow(5, v0, {v0, v1, v2}, std::nullopt);
        }
      }
      continue;
    }
    if (d0 == 2) {
      Vertex v1 = kNoVertex;
      for (Vertex u : t.neighbors(v0)) {
        if (!g.inside(u)) {
          v1 = u;
        }
      }
      if (v1 == kNoVertex) {
        throw InvariantViolation("open branch " + std::to_string(v0) + " has no outside neighbor");
      }
      const std::size_t d1 = t.degree(v1);
      if (branches_out(t, v1)) {
        g.grow(5, v0, {v0, v1}, std::nullopt);
      } else if (d1 == 3) {
        g.grow(2, v0, {v0, v1}, std::nullopt);
      } else if (d1 == 1) {
        g.grow(4, v0, {v0, v1}, matched_pair(t, m, v0, v1));
      } else {
        const Vertex v2 = other_neighbor(t, v1, v0);
        if (t.degree(v2) <= 2) {
          if (m.contains(v0, v1)) {
            g.grow(4, v0, {v0, v1}, matched_pair(t, m, v0, v1));
          } else {
            g.grow(4, v0, {v0, v1, v2}, matched_pair(t, m, v1, v2));
          }
        } else if (leaf_neighbor(t, v2) != kNoVertex) {
          g.grow(4, v0, {v0, v1}, matched_pair(t, m, v0, v1));
        } else {
          g.grow(5, v0, {v0, v1, v2}, std::nullopt);
        }
      }
      continue;
    }
    throw InvariantViolation("no operation applies at open branch " + std::to_string(v0));
  }
  Packing out = std::move(g.result());
  std::int64_t total = 0;
  for (const auto& st : out.ledger) {
    total += st.d_vertices;
  }
  if (total != static_cast<std::int64_t>(verts.size())) {
    throw InvariantViolation("subtree stopped before covering the tree");
  }
  return out;
}

Packing pack_forest(const Graph& f, const Matching& m) {
  Packing out;
  for (const VertexSet& comp : connected_components(f)) {
    Packing p = pack(induced_subgraph(f, comp), m);
    out.structures.insert(out.structures.end(), p.structures.begin(), p.structures.end());
    out.ledger.insert(out.ledger.end(), p.ledger.begin(), p.ledger.end());
  }
  return out;
}

bool valid_structure(const Graph& f, const Matching& m, const ConflictStructure& s) {
  const auto& v = s.vertices;
  for (Vertex a : v) {
    if (!f.contains(a)) {
      return false;
    }
  }
  if (s.kind == StructureKind::A) {
    return v.size() == 2 && v[0] != v[1] && m.contains(v[0], v[1]) && f.adjacent(v[0], v[1]) &&
           f.degree(v[0]) <= 2 && f.degree(v[1]) <= 2;
  }
  if (v.size() != 4) {
    return false;
  }
  VertexSet distinct(v.begin(), v.end());
  normalize(distinct);
  return distinct.size() == 4 && f.adjacent(v[0], v[1]) && f.adjacent(v[1], v[2]) && f.adjacent(v[2], v[3]) &&
         f.degree(v[0]) == 1 && f.degree(v[3]) == 1 && f.degree(v[1]) == 3 && f.degree(v[2]) == 3;
}

bool verify_packing(const Graph& f, const Matching& m, const std::vector<ConflictStructure>& s) {
  VertexMask used(f.id_bound(), 0);
  for (const ConflictStructure& c : s) {
    if (!valid_structure(f, m, c)) {
      return false;
    }
    for (Vertex v : c.vertices) {
      if (used[v]) {
        return false;
      }
      used[v] = 1;
    }
  }
  return 14 * s.size() >= f.num_vertices();
}

std::optional<ChunkKey> hit_by(const Graph& g, const VertexSet& x, const ConflictStructure& s) {
  const auto& v = s.vertices;
  std::vector<std::pair<Vertex, Vertex>> targets;
  if (s.kind == StructureKind::A) {
    targets = {{v[0], v[1]}};
  } else {
    targets = {{v[0], v[1]}, {v[2], v[3]}, {v[0], v[3]}};
  }
  for (const ChunkKey& c : enumerate_chunks(g, x)) {
    auto seen = [&](Vertex a) {
      for (Vertex y : c.members()) {
        if (g.adjacent(y, a)) {
          return true;
        }
      }
      return false;
    };
    for (const auto& [a, b] : targets) {
      if (seen(a) && seen(b)) {
        return c;
      }
    }
  }
  return std::nullopt;
}

}  // namespace fvsk
