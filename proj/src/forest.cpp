#include "fvsk/forest.hpp"

#include <algorithm>
#include <utility>

#include "fvsk/error.hpp"

namespace fvsk {

namespace {
constexpr std::int64_t kBlocked = -(std::int64_t{1} << 40);

VertexMask complement_mask(const Graph& g, const VertexSet& keep) {
  VertexMask excluded(g.id_bound(), 1);
  for (Vertex v : keep) {
    if (!g.contains(v)) {
      throw PreconditionError("unknown vertex id " + std::to_string(v));
    }
    excluded[v] = 0;
  }
  return excluded;
}
}  // namespace

ForestIndex::ForestIndex(const Graph& g, const VertexMask& excluded) {
  const std::size_t n = g.id_bound();
  pos_.assign(n, kNone);
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<Vertex, std::uint32_t>> stack;
  std::vector<Vertex> pv(n, kNoVertex);
  for (Vertex s = 0; s < n; ++s) {
    if (!g.contains(s) || excluded[s] || state[s]) {
      continue;
    }
    const std::uint32_t tree = static_cast<std::uint32_t>(tree_begin_.size() - 1);
    stack.push_back({s, 0});
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto nbrs = g.neighbors(v);
      bool pushed = false;
      while (next < nbrs.size()) {
        const Vertex u = nbrs[next++];
        if (excluded[u] || u == pv[v]) {
          continue;
        }
        if (state[u]) {
          throw ValidationError("forest part contains a cycle");
        }
        state[u] = 1;
        pv[u] = v;
        stack.push_back({u, 0});
        pushed = true;
        break;
      }
      if (!pushed) {
        const Vertex done = v;
        stack.pop_back();
        state[done] = 2;
        pos_[done] = static_cast<std::uint32_t>(order_.size());
        order_.push_back(done);
        tree_.push_back(tree);
      }
    }
    tree_begin_.push_back(static_cast<std::uint32_t>(order_.size()));
  }
  parent_.resize(order_.size());
  for (std::uint32_t i = 0; i < order_.size(); ++i) {
    const Vertex p = pv[order_[i]];
    parent_[i] = p == kNoVertex ? kNone : pos_[p];
  }
}

VertexSet ForestIndex::tree_vertices(std::uint32_t t) const {
  VertexSet out(order_.begin() + tree_begin(t), order_.begin() + tree_end(t));
  std::sort(out.begin(), out.end());
  return out;
}

ForestDp::ForestDp(const ForestIndex& index)
    : index_(&index), take_(index.size()), skip_(index.size()) {}

void ForestDp::run(std::uint32_t begin, std::uint32_t end, const std::vector<std::uint8_t>& blocked_pos) {
  for (std::uint32_t i = begin; i < end; ++i) {
    take_[i] = blocked_pos[i] ? kBlocked : 1;
    skip_[i] = 0;
  }
  for (std::uint32_t i = begin; i < end; ++i) {
    const std::uint32_t p = index_->parent(i);
    if (p != ForestIndex::kNone) {
      take_[p] += skip_[i];
      skip_[p] += std::max(take_[i], skip_[i]);
    }
  }
}

std::int64_t ForestDp::alpha_tree(std::uint32_t t, const std::vector<std::uint8_t>& blocked_pos) {
  const std::uint32_t b = index_->tree_begin(t);
  const std::uint32_t e = index_->tree_end(t);
  run(b, e, blocked_pos);
  return std::max(take_[e - 1], skip_[e - 1]);
}

std::int64_t ForestDp::alpha(const std::vector<std::uint8_t>& blocked_pos) {
  std::int64_t sum = 0;
  for (std::uint32_t t = 0; t < index_->num_trees(); ++t) {
    sum += alpha_tree(t, blocked_pos);
  }
  return sum;
}

void ForestDp::mis_tree(std::uint32_t t, const std::vector<std::uint8_t>& blocked_pos,
                        std::vector<Vertex>& out) {
  const std::uint32_t b = index_->tree_begin(t);
  const std::uint32_t e = index_->tree_end(t);
  run(b, e, blocked_pos);
  // Parents come after children, so a reverse sweep decides top-down.
  std::vector<std::uint8_t> chosen(e - b, 0);
  for (std::uint32_t i = e; i-- > b;) {
    const std::uint32_t p = index_->parent(i);
    const bool parent_taken = p != ForestIndex::kNone && chosen[p - b];
    if (!parent_taken && !blocked_pos[i] && take_[i] >= skip_[i]) {
      chosen[i - b] = 1;
      out.push_back(index_->vertex(i));
    }
  }
}

ConflictEngine::ConflictEngine(const Graph& g, const VertexMask& excluded)
    : g_(&g), index_(g, excluded), dp_(index_) {
  blocked_.assign(index_.size(), 0);
  tree_touched_.assign(index_.num_trees(), 0);
  tree_alpha_.resize(index_.num_trees());
  for (std::uint32_t t = 0; t < index_.num_trees(); ++t) {
    tree_alpha_[t] = dp_.alpha_tree(t, blocked_);
    alpha_total_ += tree_alpha_[t];
  }
}

void ConflictEngine::mark(std::span<const Vertex> y) {
  for (Vertex x : y) {
    for (Vertex u : g_->neighbors(x)) {
      if (!index_.contains(u)) {
        continue;
      }
      const std::uint32_t p = index_.position(u);
      if (blocked_[p]) {
        continue;
      }
      blocked_[p] = 1;
      blocked_list_.push_back(p);
      const std::uint32_t t = index_.tree_of_pos(p);
      if (!tree_touched_[t]) {
        tree_touched_[t] = 1;
        touched_.push_back(t);
      }
    }
  }
}

void ConflictEngine::unmark() {
  for (std::uint32_t p : blocked_list_) {
    blocked_[p] = 0;
  }
  for (std::uint32_t t : touched_) {
    tree_touched_[t] = 0;
  }
  blocked_list_.clear();
  touched_.clear();
}

std::int64_t ConflictEngine::conf(std::span<const Vertex> y) {
  std::int64_t total = 0;
  conf_per_tree(y, [&](std::uint32_t, std::int64_t d) { total += d; });
  return total;
}

Matching max_matching_forest(const Graph& g, const VertexMask& excluded) {
  const ForestIndex index(g, excluded);
  Matching m;
  m.mate.assign(g.id_bound(), kNoVertex);
  for (std::uint32_t i = 0; i < index.size(); ++i) {
    const std::uint32_t p = index.parent(i);
    const Vertex v = index.vertex(i);
    if (p == ForestIndex::kNone || m.mate[v] != kNoVertex) {
      continue;
    }
    const Vertex u = index.vertex(p);
    if (m.mate[u] == kNoVertex) {
      m.mate[u] = v;
      m.mate[v] = u;
    }
  }
  fill_edges(m);
  return m;
}

Matching max_matching_forest(const Graph& f) { return max_matching_forest(f, VertexMask(f.id_bound(), 0)); }

std::optional<Matching> perfect_matching_forest(const Graph& g, const VertexMask& excluded) {
  Matching m = max_matching_forest(g, excluded);
  std::size_t count = 0;
  for (Vertex v : g.vertices()) {
    count += !excluded[v];
  }
  if (2 * m.size() != count) {
    return std::nullopt;
  }
  return m;
}

std::optional<Matching> perfect_matching_forest(const Graph& f) {
  return perfect_matching_forest(f, VertexMask(f.id_bound(), 0));
}

std::int64_t alpha_forest(const Graph& f) { return alpha_forest_avoiding(f, {}); }

std::int64_t alpha_forest_avoiding(const Graph& f, const VertexSet& avoid) {
  const ForestIndex index(f, VertexMask(f.id_bound(), 0));
  std::vector<std::uint8_t> blocked(index.size(), 0);
  for (Vertex v : avoid) {
    if (!f.contains(v)) {
      throw PreconditionError("unknown vertex id " + std::to_string(v));
    }
    blocked[index.position(v)] = 1;
  }
  ForestDp dp(index);
  return dp.alpha(blocked);
}

VertexSet mis_forest_avoiding(const Graph& f, const VertexSet& avoid) {
  const ForestIndex index(f, VertexMask(f.id_bound(), 0));
  std::vector<std::uint8_t> blocked(index.size(), 0);
  for (Vertex v : avoid) {
    if (!f.contains(v)) {
      throw PreconditionError("unknown vertex id " + std::to_string(v));
    }
    blocked[index.position(v)] = 1;
  }
  ForestDp dp(index);
  VertexSet out;
  for (std::uint32_t t = 0; t < index.num_trees(); ++t) {
    dp.mis_tree(t, blocked, out);
  }
  normalize(out);
  return out;
}

std::int64_t conf(const Graph& g, const VertexSet& f_vertices, const VertexSet& y) {
  ConflictEngine engine(g, complement_mask(g, f_vertices));
  return engine.conf(y);
}

std::vector<ChunkKey> enumerate_chunks(const Graph& g, const VertexSet& x) {
  std::vector<ChunkKey> out;
  out.reserve(x.size() * (x.size() + 1) / 2);
  for (Vertex a : x) {
    out.push_back(ChunkKey::single(a));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (!g.adjacent(x[i], x[j])) {
        out.push_back(ChunkKey::pair(x[i], x[j]));
      }
    }
  }
  return out;
}

std::int64_t active_conflicts(const Graph& g, const VertexSet& x, const VertexSet& f_vertices) {
  ConflictEngine engine(g, complement_mask(g, f_vertices));
  std::int64_t total = 0;
  for (const ChunkKey& c : enumerate_chunks(g, x)) {
    total += engine.conf(c.members());
  }
  return total;
}

}  // namespace fvsk
