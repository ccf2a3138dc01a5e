#include "fvsk/matching.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "fvsk/error.hpp"

namespace fvsk {

void fill_edges(Matching& m) {
  m.edges.clear();
  for (Vertex v = 0; v < m.mate.size(); ++v) {
    if (m.mate[v] != kNoVertex && v < m.mate[v]) {
      m.edges.push_back({v, m.mate[v]});
    }
  }
}

namespace {
constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
}

BipartiteMatcher::BipartiteMatcher(std::size_t left, std::size_t right, std::vector<std::uint32_t> offsets,
                                   std::vector<std::uint32_t> targets)
    : left_(left),
      right_(right),
      offsets_(std::move(offsets)),
      targets_(std::move(targets)),
      mate_l_(left, kFree),
      mate_r_(right, kFree),
      dist_(left, kInf),
      iter_(left, 0) {}

bool BipartiteMatcher::bfs() {
  std::vector<std::uint32_t> queue;
  queue.reserve(left_);
  for (std::uint32_t u = 0; u < left_; ++u) {
    if (mate_l_[u] == kFree) {
      dist_[u] = 0;
      queue.push_back(u);
    } else {
      dist_[u] = kInf;
    }
  }
  bool found = false;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t u = queue[head];
    for (std::uint32_t v : row(u)) {
      const std::uint32_t w = mate_r_[v];
      if (w == kFree) {
        found = true;
      } else if (dist_[w] == kInf) {
        dist_[w] = dist_[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return found;
}

// Iterative layered DFS; an explicit stack keeps long paths off the call stack.
bool BipartiteMatcher::dfs(std::uint32_t root) {
  std::vector<std::uint32_t> stack{root};
  while (!stack.empty()) {
    const std::uint32_t u = stack.back();
    bool advanced = false;
    const auto nbrs = row(u);
    while (iter_[u] < nbrs.size()) {
      const std::uint32_t v = nbrs[iter_[u]];
      const std::uint32_t w = mate_r_[v];
      if (w == kFree) {
        // Flip the path recorded on the stack.
        std::uint32_t right = v;
        for (std::size_t i = stack.size(); i-- > 0;) {
          const std::uint32_t l = stack[i];
          const std::uint32_t prev = mate_l_[l];
          mate_l_[l] = right;
          mate_r_[right] = l;
          right = prev;
        }
        return true;
      }
      if (dist_[w] == dist_[u] + 1) {
        stack.push_back(w);
        advanced = true;
        break;
      }
      ++iter_[u];
    }
    if (!advanced) {
      dist_[u] = kInf;
      stack.pop_back();
      if (!stack.empty()) {
        ++iter_[stack.back()];
      }
    }
  }
  return false;
}

std::size_t BipartiteMatcher::run() {
  while (bfs()) {
    std::fill(iter_.begin(), iter_.end(), 0);
    for (std::uint32_t u = 0; u < left_; ++u) {
      if (mate_l_[u] == kFree) {
        dfs(u);
      }
    }
  }
  std::size_t size = 0;
  for (std::uint32_t u = 0; u < left_; ++u) {
    size += mate_l_[u] != kFree;
  }
  return size;
}

void BipartiteMatcher::load(std::vector<std::uint32_t> mate_left, std::vector<std::uint32_t> mate_right) {
  if (mate_left.size() != left_ || mate_right.size() != right_) {
    throw PreconditionError("matching size mismatch");
  }
  mate_l_ = std::move(mate_left);
  mate_r_ = std::move(mate_right);
}

bool BipartiteMatcher::has_augmenting_path() { return bfs(); }

void BipartiteMatcher::koenig_cover(std::vector<std::uint8_t>& left_in,
                                    std::vector<std::uint8_t>& right_in) const {
  std::vector<std::uint8_t> seen_l(left_, 0);
  std::vector<std::uint8_t> seen_r(right_, 0);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t u = 0; u < left_; ++u) {
    if (mate_l_[u] == kFree) {
      seen_l[u] = 1;
      queue.push_back(u);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t u = queue[head];
    for (std::uint32_t v : row(u)) {
      if (seen_r[v] || mate_l_[u] == v) {
        continue;
      }
      seen_r[v] = 1;
      const std::uint32_t w = mate_r_[v];
      if (w != kFree && !seen_l[w]) {
        seen_l[w] = 1;
        queue.push_back(w);
      }
    }
  }
  left_in.assign(left_, 0);
  right_in.assign(right_, 0);
  for (std::uint32_t u = 0; u < left_; ++u) {
    left_in[u] = !seen_l[u];
  }
  for (std::uint32_t v = 0; v < right_; ++v) {
    right_in[v] = seen_r[v];
  }
}

namespace {

struct Sides {
  std::vector<Vertex> left;
  std::vector<Vertex> right;
  std::vector<std::uint32_t> local;
};

Sides split_sides(const Graph& g, const VertexMask& side) {
  if (side.size() < g.id_bound()) {
    throw PreconditionError("bipartition mask too short");
  }
  Sides s;
  s.local.assign(g.id_bound(), 0);
  for (Vertex v : g.vertices()) {
    auto& list = side[v] ? s.right : s.left;
    s.local[v] = static_cast<std::uint32_t>(list.size());
    list.push_back(v);
  }
  for (const Edge& e : g.edges()) {
    if ((side[e.u] != 0) == (side[e.v] != 0)) {
      throw ValidationError("edge " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) +
                            " inside one side");
    }
  }
  return s;
}

BipartiteMatcher make_matcher(const Graph& g, const VertexMask& side, const Sides& s) {
  std::vector<std::uint32_t> offsets{0};
  std::vector<std::uint32_t> targets;
  for (std::uint32_t i = 0; i < s.left.size(); ++i) {
    for (Vertex u : g.neighbors(s.left[i])) {
      if (side[u]) {
        targets.push_back(s.local[u]);
      }
    }
    offsets.push_back(static_cast<std::uint32_t>(targets.size()));
  }
  return BipartiteMatcher(s.left.size(), s.right.size(), std::move(offsets), std::move(targets));
}

}  // namespace

Matching max_matching_bipartite(const Graph& g, const VertexMask& side) {
  const Sides s = split_sides(g, side);
  BipartiteMatcher hk = make_matcher(g, side, s);
  hk.run();
  Matching m;
  m.mate.assign(g.id_bound(), kNoVertex);
  for (std::uint32_t i = 0; i < s.left.size(); ++i) {
    const std::uint32_t j = hk.mate_left()[i];
    if (j != BipartiteMatcher::kFree) {
      const Vertex u = s.left[i];
      const Vertex v = s.right[j];
      m.mate[u] = v;
      m.mate[v] = u;
    }
  }
  fill_edges(m);
  return m;
}

VertexSet min_vc_bipartite(const Graph& g, const VertexMask& side, const Matching& m) {
  if (!is_matching(g, m)) {
    throw PreconditionError("not a matching of the graph");
  }
  const Sides s = split_sides(g, side);
  BipartiteMatcher loaded = make_matcher(g, side, s);
  std::vector<std::uint32_t> ml(s.left.size(), BipartiteMatcher::kFree);
  std::vector<std::uint32_t> mr(s.right.size(), BipartiteMatcher::kFree);
  for (const Edge& e : m.edges) {
    const Vertex l = side[e.u] ? e.v : e.u;
    const Vertex r = side[e.u] ? e.u : e.v;
    ml[s.local[l]] = s.local[r];
    mr[s.local[r]] = s.local[l];
  }
  loaded.load(std::move(ml), std::move(mr));
  if (loaded.has_augmenting_path()) {
    throw PreconditionError("matching is not maximum");
  }
  std::vector<std::uint8_t> lin;
  std::vector<std::uint8_t> rin;
  loaded.koenig_cover(lin, rin);
  VertexSet cover;
  for (std::uint32_t i = 0; i < s.left.size(); ++i) {
    if (lin[i]) {
      cover.push_back(s.left[i]);
    }
  }
  for (std::uint32_t j = 0; j < s.right.size(); ++j) {
    if (rin[j]) {
      cover.push_back(s.right[j]);
    }
  }
  normalize(cover);
  if (cover.size() != m.size()) {
    throw InvariantViolation("koenig cover size differs from matching size");
  }
  return cover;
}

bool is_matching(const Graph& g, const Matching& m) {
  VertexMask used(g.id_bound(), 0);
  for (const Edge& e : m.edges) {
    if (!g.adjacent(e.u, e.v) || used[e.u] || used[e.v]) {
      return false;
    }
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

}  // namespace fvsk
