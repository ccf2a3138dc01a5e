#include "fvsk/reduce.hpp"

#include <algorithm>
#include <deque>
#include <memory>

#include "fvsk/error.hpp"

namespace fvsk {

namespace {

constexpr std::uint32_t kNoIndex = 0xffffffffu;

Graph local_tree(const VertexSet& tree, const std::vector<Edge>& edges) {
  std::vector<Edge> local;
  local.reserve(edges.size());
  auto index = [&](Vertex v) {
    auto it = std::lower_bound(tree.begin(), tree.end(), v);
    if (it == tree.end() || *it != v) {
      throw InvariantViolation("tree edge leaves the tree");
    }
    return static_cast<Vertex>(it - tree.begin());
  };
  for (const Edge& e : edges) {
    local.push_back(Edge::make(index(e.u), index(e.v)));
  }
  return Graph::from_edges(tree.size(), local);
}

}  // namespace

Graph local_tree_graph(const R3Record& rec) { return local_tree(rec.tree, rec.tree_edges); }

std::int64_t k_decrease(const RuleRecord& r) {
  switch (r.index()) {
    case 2: {
      const auto& rec = std::get<R3Record>(r);
      return alpha_forest(local_tree(rec.tree, rec.tree_edges));
    }
    case 3:
      return 1;
    case 4:
      return 2;
    default:
      return 0;
  }
}

ReductionSession::ReductionSession(Instance inst) : inst_(std::move(inst)) {
  if (inst_.problem != Problem::independent_set) {
    throw PreconditionError("reduction expects an independent set instance");
  }
  if (!inst_.unit_weights()) {
    throw PreconditionError("reduction rules need unit weights");
  }
  const Graph& g = inst_.graph;
  in_x_ = g.mask_of(inst_.fvs);
  if (!perfect_matching_forest(g, in_x_)) {
    throw PreconditionError("instance is not clean: forest has no perfect matching");
  }
  fdeg_.assign(g.id_bound(), 0);
  for (Vertex v : g.vertices()) {
    if (in_x_[v]) {
      continue;
    }
    for (Vertex u : g.neighbors(v)) {
      fdeg_[v] += !in_x_[u];
    }
  }
  xindex_.assign(g.id_bound(), kNoIndex);
  xdim_ = inst_.fvs.size();
  for (std::uint32_t i = 0; i < xdim_; ++i) {
    xindex_[inst_.fvs[i]] = i;
  }
  xadj_.assign(xdim_ * xdim_, 0);
  for (Vertex a : inst_.fvs) {
    for (Vertex b : g.neighbors(a)) {
      if (in_x_[b]) {
        xadj_[xindex_[a] * xdim_ + xindex_[b]] = 1;
      }
    }
  }
}

bool ReductionSession::x_adjacent(Vertex a, Vertex b) const {
  return xadj_[xindex_[a] * xdim_ + xindex_[b]] != 0;
}

VertexSet ReductionSession::x_neighbors(Vertex v) const {
  VertexSet out;
  for (Vertex u : inst_.graph.neighbors(v)) {
    if (in_x_[u]) {
      out.push_back(u);
    }
  }
  return out;
}

ReductionSession::Few ReductionSession::forest_neighbors(Vertex v) const {
  Few out;
  for (Vertex u : inst_.graph.neighbors(v)) {
    if (!in_x_[u] && out.n < 3) {
      out.v[out.n++] = u;
    }
  }
  return out;
}

bool ReductionSession::is_blockable(Vertex x, Vertex y) const {
  const Graph& g = inst_.graph;
  for (Vertex a : g.neighbors(x)) {
    if (!in_x_[a]) {
      continue;
    }
    for (Vertex b : g.neighbors(y)) {
      if (in_x_[b] && (a == b || !x_adjacent(a, b))) {
        return true;
      }
    }
  }
  return false;
}

std::vector<ChunkKey> ReductionSession::chunks() const { return enumerate_chunks(inst_.graph, inst_.fvs); }

std::int64_t ReductionSession::conf(const ChunkKey& y) const {
  ConflictEngine engine(inst_.graph, in_x_);
  return engine.conf(y.members());
}

bool ReductionSession::chunk_alive(const ChunkKey& c) const {
  if (!in_x(c.a())) {
    return false;
  }
  if (!c.is_pair()) {
    return true;
  }
  return in_x(c.b()) && !x_adjacent(c.a(), c.b());
}

void ReductionSession::link(Vertex a, Vertex b) {
  if (inst_.graph.add_edge(a, b) && !in_x_[a] && !in_x_[b]) {
    ++fdeg_[a];
    ++fdeg_[b];
  }
}

void ReductionSession::drop(Vertex v) {
  if (!in_x_[v]) {
    for (Vertex u : inst_.graph.neighbors(v)) {
      if (!in_x_[u]) {
        --fdeg_[u];
      }
    }
  }
  inst_.graph.remove_vertex(v);
  fdeg_[v] = 0;
}

// ---- raw rule bodies ----

void ReductionSession::do_rule1(Vertex v) {
  R1Record rec;
  const auto nbrs = inst_.graph.neighbors(v);
  rec.v = v;
  rec.nbrs.assign(nbrs.begin(), nbrs.end());
  drop(v);
  in_x_[v] = 0;
  inst_.fvs.erase(std::lower_bound(inst_.fvs.begin(), inst_.fvs.end(), v));
  records_.push_back(std::move(rec));
  ++stats_.applied[1];
}

void ReductionSession::do_rule2(Vertex u, Vertex v) {
  inst_.graph.add_edge(u, v);
  xadj_[xindex_[u] * xdim_ + xindex_[v]] = 1;
  xadj_[xindex_[v] * xdim_ + xindex_[u]] = 1;
  records_.push_back(R2Record{std::min(u, v), std::max(u, v)});
  ++stats_.applied[2];
}

void ReductionSession::do_rule3(const VertexSet& tree) {
  R3Record rec;
  rec.tree = tree;
  for (Vertex a : tree) {
    for (Vertex b : inst_.graph.neighbors(a)) {
      if (in_x_[b]) {
        rec.x_edges.push_back(Edge::make(a, b));
      } else if (a < b) {
        rec.tree_edges.push_back({a, b});
      }
    }
  }
  std::sort(rec.x_edges.begin(), rec.x_edges.end());
  std::sort(rec.tree_edges.begin(), rec.tree_edges.end());
  const std::int64_t alpha = alpha_forest(local_tree(rec.tree, rec.tree_edges));
  for (Vertex a : tree) {
    drop(a);
  }
  inst_.target -= alpha;
  records_.push_back(std::move(rec));
  ++stats_.applied[3];
}

void ReductionSession::do_rule4(Vertex u, Vertex v, std::vector<Vertex>& changed) {
  R4Record rec;
  rec.u = u;
  rec.v = v;
  for (Vertex a : forest_neighbors(u)) {
    if (a != v) {
      rec.t = a;
    }
  }
  for (Vertex a : forest_neighbors(v)) {
    if (a != u) {
      rec.w = a;
    }
  }
  rec.xu = x_neighbors(u);
  rec.xv = x_neighbors(v);
  drop(u);
  drop(v);
  inst_.target -= 1;
  if (rec.t != kNoVertex) {
    for (Vertex x : rec.xv) {
      link(rec.t, x);
    }
    changed.push_back(rec.t);
  }
  if (rec.w != kNoVertex) {
    for (Vertex x : rec.xu) {
      link(rec.w, x);
    }
    changed.push_back(rec.w);
  }
  if (rec.t != kNoVertex && rec.w != kNoVertex) {
    link(rec.t, rec.w);
  }
  records_.push_back(std::move(rec));
  ++stats_.applied[4];
}

void ReductionSession::do_rule5(Vertex t, Vertex u, Vertex v, Vertex w, std::vector<Vertex>& changed) {
  R5Record rec;
  rec.t = t;
  rec.u = u;
  rec.v = v;
  rec.w = w;
  for (Vertex a : forest_neighbors(u)) {
    if (a != t && a != v) {
      rec.p = a;
    }
  }
  for (Vertex a : forest_neighbors(v)) {
    if (a != w && a != u) {
      rec.q = a;
    }
  }
  rec.xt = x_neighbors(t);
  rec.xw = x_neighbors(w);
  rec.xu = x_neighbors(u);
  rec.xv = x_neighbors(v);
  drop(t);
  drop(u);
  drop(v);
  drop(w);
  inst_.target -= 2;
  for (Vertex x : rec.xt) {
    link(rec.p, x);
  }
  for (Vertex x : rec.xw) {
    link(rec.q, x);
  }
  changed.push_back(rec.p);
  changed.push_back(rec.q);
  records_.push_back(std::move(rec));
  ++stats_.applied[5];
}

bool ReductionSession::rule5_applicable(Vertex t, Vertex u, Vertex v, Vertex w) const {
  const Graph& g = inst_.graph;
  for (Vertex a : {t, u, v, w}) {
    if (!g.contains(a) || in_x_[a]) {
      return false;
    }
  }
  if (t == u || t == v || t == w || u == v || u == w || v == w) {
    return false;
  }
  if (fdeg_[u] != 3 || fdeg_[v] != 3 || fdeg_[t] != 1 || fdeg_[w] != 1) {
    return false;
  }
  if (!g.adjacent(t, u) || !g.adjacent(w, v) || !g.adjacent(u, v)) {
    return false;
  }
  return !is_blockable(u, t) && !is_blockable(v, w) && !is_blockable(t, w);
}

// ---- checked API ----

void ReductionSession::apply_rule1(Vertex v) {
  if (!in_x(v)) {
    throw PreconditionError("rule 1: vertex not in X");
  }
  if (conf(ChunkKey::single(v)) < static_cast<std::int64_t>(inst_.fvs.size())) {
    throw PreconditionError("rule 1: conflict count below |X|");
  }
  do_rule1(v);
}

void ReductionSession::apply_rule2(Vertex u, Vertex v) {
  if (!in_x(u) || !in_x(v) || u == v || inst_.graph.adjacent(u, v)) {
    throw PreconditionError("rule 2: need two distinct non-adjacent X vertices");
  }
  if (conf(ChunkKey::pair(u, v)) < static_cast<std::int64_t>(inst_.fvs.size())) {
    throw PreconditionError("rule 2: conflict count below |X|");
  }
  do_rule2(u, v);
}

void ReductionSession::apply_rule3(const VertexSet& tree) {
  if (tree.empty()) {
    throw PreconditionError("rule 3: empty tree");
  }
  ConflictEngine engine(inst_.graph, in_x_);
  const ForestIndex& index = engine.index();
  if (!index.contains(tree.front())) {
    throw PreconditionError("rule 3: vertex not in the forest");
  }
  const std::uint32_t t = index.tree_of(tree.front());
  if (index.tree_vertices(t) != tree) {
    throw PreconditionError("rule 3: not a tree of the forest");
  }
  for (const ChunkKey& c : chunks()) {
    bool hit = false;
    engine.conf_per_tree(c.members(), [&](std::uint32_t tt, std::int64_t) { hit |= tt == t; });
    if (hit) {
      throw PreconditionError("rule 3: some chunk has a conflict on the tree");
    }
  }
  do_rule3(tree);
}

void ReductionSession::apply_rule4(Vertex u, Vertex v) {
  const Graph& g = inst_.graph;
  if (!g.contains(u) || !g.contains(v) || in_x_[u] || in_x_[v] || !g.adjacent(u, v)) {
    throw PreconditionError("rule 4: need adjacent forest vertices");
  }
  if (fdeg_[u] > 2 || fdeg_[v] > 2) {
    throw PreconditionError("rule 4: forest degree above 2");
  }
  if (is_blockable(u, v)) {
    throw PreconditionError("rule 4: pair is blockable");
  }
  std::vector<Vertex> changed;
  do_rule4(u, v, changed);
}

void ReductionSession::apply_rule5(Vertex t, Vertex u, Vertex v, Vertex w) {
  if (!rule5_applicable(t, u, v, w)) {
    throw PreconditionError("rule 5: not applicable");
  }
  std::vector<Vertex> changed;
  do_rule5(t, u, v, w, changed);
}

// ---- schedule ----

std::vector<ReductionSession::ChunkConf> ReductionSession::phase_rules12() {
  std::vector<ChunkConf> table;
  {
    ConflictEngine engine(inst_.graph, in_x_);
    for (const ChunkKey& c : chunks()) {
      table.push_back({c, engine.conf(c.members())});
    }
  }
  // Counting sort by conflict count, descending; stable within a bucket.
  std::int64_t top = 0;
  for (const auto& e : table) {
    top = std::max(top, e.conf);
  }
  std::vector<std::vector<std::uint32_t>> buckets(static_cast<std::size_t>(top) + 1);
  for (std::uint32_t i = 0; i < table.size(); ++i) {
    buckets[static_cast<std::size_t>(table[i].conf)].push_back(i);
  }
  for (std::size_t b = buckets.size(); b-- > 0;) {
    for (std::uint32_t i : buckets[b]) {
      const ChunkConf& e = table[i];
      if (!chunk_alive(e.key)) {
        continue;
      }
      if (e.conf < static_cast<std::int64_t>(inst_.fvs.size())) {
        continue;
      }
      if (e.key.is_pair()) {
        do_rule2(e.key.a(), e.key.b());
      } else {
        do_rule1(e.key.a());
      }
    }
  }
  std::vector<ChunkConf> survivors;
  for (const auto& e : table) {
    if (chunk_alive(e.key)) {
      survivors.push_back(e);
    }
  }
  return survivors;
}

bool ReductionSession::try_rules45_at(Vertex a, std::vector<Vertex>& changed) {
  if (fdeg_[a] <= 2) {
    for (Vertex b : forest_neighbors(a)) {
      if (fdeg_[b] <= 2 && !is_blockable(a, b)) {
        do_rule4(std::min(a, b), std::max(a, b), changed);
        return true;
      }
    }
  }
  // a degree-3 center and its forest neighbors, in id order
  std::array<Vertex, 4> cand{};
  std::size_t nc = 0;
  Vertex center = kNoVertex;
  if (fdeg_[a] == 3) {
    center = a;
  } else if (fdeg_[a] == 1) {
    const Vertex n = *forest_neighbors(a).begin();
    if (fdeg_[n] == 3) {
      center = n;
    }
  }
  if (center != kNoVertex) {
    cand[nc++] = center;
    for (Vertex b : forest_neighbors(center)) {
      cand[nc++] = b;
    }
    std::sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(nc));
  }
  for (std::size_t ci = 0; ci < nc; ++ci) {
    const Vertex u = cand[ci];
    if (fdeg_[u] != 3) {
      continue;
    }
    const auto nu = forest_neighbors(u);
    for (Vertex v : nu) {
      if (fdeg_[v] != 3) {
        continue;
      }
      const auto nv = forest_neighbors(v);
      for (Vertex t : nu) {
        if (t == v || fdeg_[t] != 1) {
          continue;
        }
        for (Vertex w : nv) {
          if (w == u || fdeg_[w] != 1) {
            continue;
          }
          if (!is_blockable(u, t) && !is_blockable(v, w) && !is_blockable(t, w)) {
            do_rule5(t, u, v, w, changed);
            return true;
          }
        }
      }
    }
  }
  return false;
}

void ReductionSession::phase_rules45() {
  const Graph& g = inst_.graph;
  std::deque<Vertex> work;
  VertexMask queued(g.id_bound(), 0);
  for (Vertex v : g.vertices()) {
    if (!in_x_[v]) {
      work.push_back(v);
      queued[v] = 1;
    }
  }
  std::vector<Vertex> changed;
  while (!work.empty()) {
    const Vertex a = work.front();
    work.pop_front();
    queued[a] = 0;
    if (!g.contains(a) || in_x_[a]) {
      continue;
    }
    changed.clear();
    if (try_rules45_at(a, changed)) {
      for (Vertex c : changed) {
        if (g.contains(c) && !queued[c]) {
          queued[c] = 1;
          work.push_back(c);
        }
      }
    }
  }
}

void ReductionSession::phase_rule3(ConflictEngine* current) {
  std::vector<VertexSet> free_trees;
  {
    std::unique_ptr<ConflictEngine> own;
    if (current == nullptr) {
      own = std::make_unique<ConflictEngine>(inst_.graph, in_x_);
      current = own.get();
    }
    ConflictEngine& engine = *current;
    const ForestIndex& index = engine.index();
    std::vector<std::uint8_t> conflicted(index.num_trees(), 0);
    for (const ChunkKey& c : chunks()) {
      engine.conf_per_tree(c.members(), [&](std::uint32_t t, std::int64_t) { conflicted[t] = 1; });
    }
    for (std::uint32_t t = 0; t < index.num_trees(); ++t) {
      if (!conflicted[t]) {
        free_trees.push_back(index.tree_vertices(t));
      }
    }
  }
  for (const VertexSet& tree : free_trees) {
    do_rule3(tree);
  }
}

void ReductionSession::reduce(const ReduceOptions& opts) {
  // whenever the loop exits, a non-null engine matches the current graph
  std::unique_ptr<ConflictEngine> fresh;
  while (true) {
    ++stats_.rounds;
    const std::vector<ChunkConf> maintained = phase_rules12();
    phase_rules45();
    if (!opts.verify_conflict_stability) {
      break;
    }
    fresh = std::make_unique<ConflictEngine>(inst_.graph, in_x_);
    ConflictEngine& engine = *fresh;
    std::size_t mismatches = 0;
    for (const ChunkConf& e : maintained) {
      ++stats_.conflict_checks;
      if (engine.conf(e.key.members()) != e.conf) {
        ++mismatches;
      }
    }
    stats_.conflict_mismatches += mismatches;
    if (mismatches == 0) {
      break;
    }
    stats_.fallback_active = true;
    const auto x = static_cast<std::int64_t>(inst_.fvs.size());
    bool applicable = false;
    for (const ChunkKey& c : chunks()) {
      if (engine.conf(c.members()) >= x) {
        applicable = true;
        break;
      }
    }
    if (!applicable) {
      break;
    }
  }
  phase_rule3(fresh.get());
}

}  // namespace fvsk
