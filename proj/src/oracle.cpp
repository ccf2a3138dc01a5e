#include "fvsk/oracle.hpp"

#include <bit>
#include <functional>

#include "fvsk/error.hpp"
#include "fvsk/forest.hpp"

namespace fvsk {

namespace {

using Mask = std::uint64_t;

struct Local {
  VertexSet ids;
  std::vector<Mask> adj;
};

Local localize(const Graph& g, std::size_t cap) {
  Local l;
  l.ids = g.vertices();
  if (l.ids.size() > cap || l.ids.size() > 64) {
    throw LimitExceeded("exact solver refuses " + std::to_string(l.ids.size()) + " vertices (cap " +
                        std::to_string(cap) + ")");
  }
  std::vector<std::uint32_t> pos(g.id_bound(), 0);
  for (std::uint32_t i = 0; i < l.ids.size(); ++i) {
    pos[l.ids[i]] = i;
  }
  l.adj.assign(l.ids.size(), 0);
  for (std::uint32_t i = 0; i < l.ids.size(); ++i) {
    for (Vertex u : g.neighbors(l.ids[i])) {
      l.adj[i] |= Mask{1} << pos[u];
    }
  }
  return l;
}

VertexSet expand(const Local& l, Mask m) {
  VertexSet out;
  while (m != 0) {
    out.push_back(l.ids[std::countr_zero(m)]);
    m &= m - 1;
  }
  return out;
}

// Maximum independent set of the vertices in `live`.
Mask mis_unweighted(const Local& l, Mask live) {
  Mask taken = 0;
  while (live != 0) {
    int pick = -1;
    int best = -1;
    int best_deg = -1;
    bool all_two = true;
    for (Mask m = live; m != 0; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int d = std::popcount(l.adj[v] & live);
      if (d <= 1) {
        pick = v;
        break;
      }
      all_two &= d == 2;
      if (d > best_deg) {
        best_deg = d;
        best = v;
      }
    }
    if (pick < 0 && all_two) {
      pick = std::countr_zero(live);
    }
    if (pick >= 0) {
      taken |= Mask{1} << pick;
      live &= ~(l.adj[pick] | (Mask{1} << pick));
      continue;
    }
    const Mask bit = Mask{1} << best;
    const Mask with = bit | mis_unweighted(l, live & ~(l.adj[best] | bit));
    const Mask without = mis_unweighted(l, live & ~bit);
    return taken | (std::popcount(with) >= std::popcount(without) ? with : without);
  }
  return taken;
}

std::int64_t weight_of(const std::vector<std::int64_t>& w, Mask m) {
  std::int64_t s = 0;
  for (; m != 0; m &= m - 1) {
    s += w[std::countr_zero(m)];
  }
  return s;
}

Mask mis_weighted(const Local& l, const std::vector<std::int64_t>& w, Mask live) {
  Mask taken = 0;
  while (live != 0) {
    int pick = -1;
    int best = -1;
    int best_deg = -1;
    for (Mask m = live; m != 0; m &= m - 1) {
      const int v = std::countr_zero(m);
      const Mask nb = l.adj[v] & live;
      const int d = std::popcount(nb);
      if (d == 0 || (d == 1 && w[v] >= w[std::countr_zero(nb)])) {
        pick = v;
        break;
      }
      if (d > best_deg) {
        best_deg = d;
        best = v;
      }
    }
    if (pick >= 0) {
      taken |= Mask{1} << pick;
      live &= ~(l.adj[pick] | (Mask{1} << pick));
      continue;
    }
    const Mask bit = Mask{1} << best;
    const Mask with = bit | mis_weighted(l, w, live & ~(l.adj[best] | bit));
    const Mask without = mis_weighted(l, w, live & ~bit);
    return taken | (weight_of(w, with) >= weight_of(w, without) ? with : without);
  }
  return taken;
}

Mask full(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

}  // namespace

std::int64_t exact_alpha(const Graph& g, const OracleLimits& lim) {
  return static_cast<std::int64_t>(exact_mis(g, lim).size());
}

VertexSet exact_mis(const Graph& g, const OracleLimits& lim) {
  const Local l = localize(g, lim.max_vertices);
  return expand(l, mis_unweighted(l, full(l.ids.size())));
}

std::int64_t exact_alpha_weighted(const Graph& g, const std::vector<std::int64_t>& w, const OracleLimits& lim) {
  std::int64_t s = 0;
  for (Vertex v : exact_mis_weighted(g, w, lim)) {
    s += w[v];
  }
  return s;
}

VertexSet exact_mis_weighted(const Graph& g, const std::vector<std::int64_t>& w, const OracleLimits& lim) {
  const Local l = localize(g, lim.max_vertices);
  std::vector<std::int64_t> lw(l.ids.size());
  for (std::size_t i = 0; i < l.ids.size(); ++i) {
    lw[i] = w.at(l.ids[i]);
    if (lw[i] < 1) {
      throw ValidationError("weights must be positive");
    }
  }
  return expand(l, mis_weighted(l, lw, full(l.ids.size())));
}

VertexSet fpt_mis(const Graph& g, const VertexSet& x, const OracleLimits& lim) {
  if (x.size() > lim.max_fpt_x) {
    throw LimitExceeded("fpt solver refuses |X| = " + std::to_string(x.size()));
  }
  const VertexMask in_x = g.mask_of(x);
  if (!is_forest(g, in_x)) {
    throw ValidationError("G - X is not a forest");
  }
  ConflictEngine engine(g, in_x);
  const std::int64_t base = engine.alpha_forest();
  std::vector<std::uint8_t> xadj(x.size() * x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      xadj[i * x.size() + j] = g.adjacent(x[i], x[j]);
    }
  }
  std::vector<std::uint32_t> chosen;
  std::vector<Vertex> members;
  std::int64_t best = -1;
  VertexSet best_set;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == x.size()) {
      const std::int64_t value = static_cast<std::int64_t>(members.size()) + base - engine.conf(members);
      if (value > best) {
        best = value;
        best_set = members;
      }
      return;
    }
    bool free = true;
    for (std::uint32_t c : chosen) {
      free &= xadj[c * x.size() + i] == 0;
    }
    if (free) {
      chosen.push_back(static_cast<std::uint32_t>(i));
      members.push_back(x[i]);
      walk(i + 1);
      chosen.pop_back();
      members.pop_back();
    }
    walk(i + 1);
  };
  walk(0);

  const Graph f = delete_vertices(g, x);
  VertexSet avoid;
  for (Vertex y : best_set) {
    for (Vertex u : g.neighbors(y)) {
      if (!in_x[u]) {
        avoid.push_back(u);
      }
    }
  }
  normalize(avoid);
  VertexSet out = mis_forest_avoiding(f, avoid);
  out.insert(out.end(), best_set.begin(), best_set.end());
  normalize(out);
  if (static_cast<std::int64_t>(out.size()) != best) {
    throw InvariantViolation("fpt solver rebuilt a set of the wrong size");
  }
  return out;
}

std::int64_t fpt_alpha(const Graph& g, const VertexSet& x, const OracleLimits& lim) {
  return static_cast<std::int64_t>(fpt_mis(g, x, lim).size());
}

VertexSet exact_fvs(const Graph& g, const OracleLimits& lim) {
  const VertexSet vs = g.vertices();
  if (vs.size() > lim.max_fvs_vertices) {
    throw LimitExceeded("exact fvs refuses " + std::to_string(vs.size()) + " vertices");
  }
  VertexMask mask(g.id_bound(), 0);
  std::vector<std::size_t> idx;
  // Lexicographic combinations of each size, smallest size first.
  std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t from, std::size_t left) {
    if (left == 0) {
      return is_forest(g, mask);
    }
    for (std::size_t i = from; i + left <= vs.size(); ++i) {
      mask[vs[i]] = 1;
      idx.push_back(i);
      if (choose(i + 1, left - 1)) {
        return true;
      }
      idx.pop_back();
      mask[vs[i]] = 0;
    }
    return false;
  };
  for (std::size_t s = 0; s <= vs.size(); ++s) {
    if (choose(0, s)) {
      VertexSet out;
      for (std::size_t i : idx) {
        out.push_back(vs[i]);
      }
      return out;
    }
  }
  return vs;
}

}  // namespace fvsk
