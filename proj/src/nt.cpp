#include "fvsk/nt.hpp"

#include <utility>

#include "fvsk/error.hpp"
#include "fvsk/forest.hpp"
#include "fvsk/matching.hpp"

namespace fvsk {

namespace {

// One LP solve restricted to `core`. Returns per-vertex doubled LP values
// (0, 1 or 2) indexed by position in `core`.
std::vector<std::uint8_t> doubled_lp(const Graph& g, const VertexSet& core) {
  std::vector<std::uint32_t> local(g.id_bound(), BipartiteMatcher::kFree);
  for (std::uint32_t i = 0; i < core.size(); ++i) {
    local[core[i]] = i;
  }
  std::vector<std::uint32_t> offsets{0};
  std::vector<std::uint32_t> targets;
  offsets.reserve(core.size() + 1);
  for (std::uint32_t i = 0; i < core.size(); ++i) {
    for (Vertex u : g.neighbors(core[i])) {
      if (local[u] != BipartiteMatcher::kFree) {
        targets.push_back(local[u]);
      }
    }
    offsets.push_back(static_cast<std::uint32_t>(targets.size()));
  }
  BipartiteMatcher hk(core.size(), core.size(), std::move(offsets), std::move(targets));
  hk.run();
  std::vector<std::uint8_t> left;
  std::vector<std::uint8_t> right;
  hk.koenig_cover(left, right);
  std::vector<std::uint8_t> value(core.size());
  for (std::uint32_t i = 0; i < core.size(); ++i) {
    value[i] = static_cast<std::uint8_t>(left[i] + right[i]);
  }
  return value;
}

}  // namespace

NtDecomposition nt_decompose(const Graph& g) {
  NtDecomposition d;
  VertexSet core = g.vertices();
  while (!core.empty()) {
    const auto value = doubled_lp(g, core);
    VertexSet next;
    for (std::uint32_t i = 0; i < core.size(); ++i) {
      if (value[i] == 2) {
        d.c0.push_back(core[i]);
      } else if (value[i] == 0) {
        d.j.push_back(core[i]);
      } else {
        next.push_back(core[i]);
      }
    }
    if (next.size() == core.size()) {
      break;
    }
    core = std::move(next);
  }
  d.v0 = std::move(core);
  normalize(d.c0);
  normalize(d.j);
  return d;
}

Instance to_is(const Instance& inst) {
  if (inst.problem == Problem::independent_set) {
    return inst;
  }
  Instance out = inst;
  out.problem = Problem::independent_set;
  out.target = inst.total_weight() - inst.target;
  return out;
}

Instance to_vc(const Instance& inst) {
  if (inst.problem == Problem::vertex_cover) {
    return inst;
  }
  Instance out = inst;
  out.problem = Problem::vertex_cover;
  out.target = inst.total_weight() - inst.target;
  return out;
}

CleanResult clean(Instance inst) {
  if (inst.problem != Problem::independent_set) {
    throw PreconditionError("clean expects an independent set instance");
  }
  if (!inst.unit_weights()) {
    throw PreconditionError("clean expects unit weights");
  }
  const NtDecomposition d = nt_decompose(inst.graph);
  CleanResult r;
  r.record.c0 = d.c0;
  r.record.j = d.j;
  r.record.k_offset = static_cast<std::int64_t>(d.j.size());

  Instance& out = r.instance;
  out.graph = std::move(inst.graph);
  for (Vertex v : d.c0) {
    out.graph.remove_vertex(v);
  }
  for (Vertex v : d.j) {
    out.graph.remove_vertex(v);
  }
  out.problem = Problem::independent_set;
  out.target = inst.target - r.record.k_offset;
  VertexSet x_hat;
  for (Vertex v : inst.fvs) {
    if (out.graph.contains(v)) {
      x_hat.push_back(v);
    }
  }
  VertexMask in_x = out.graph.mask_of(x_hat);
  const Matching m = max_matching_forest(out.graph, in_x);
  for (Vertex v : out.graph.vertices()) {
    if (!in_x[v] && m.mate[v] == kNoVertex) {
      r.record.moved.push_back(v);
    }
  }
  if (r.record.moved.size() > x_hat.size()) {
    throw InvariantViolation("clean moved more vertices than the X vertices left in V0");
  }
  out.fvs = x_hat;
  out.fvs.insert(out.fvs.end(), r.record.moved.begin(), r.record.moved.end());
  normalize(out.fvs);
  return r;
}

}  // namespace fvsk
