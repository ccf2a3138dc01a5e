#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "fvsk/error.hpp"
#include "fvsk/forest.hpp"
#include "fvsk/kernel.hpp"
#include "fvsk/reduce.hpp"

using namespace fvsk;

namespace {

Instance clean_instance(std::size_t n, std::vector<Edge> e, VertexSet x, std::int64_t k) {
  std::sort(e.begin(), e.end());
  Instance inst;
  inst.graph = Graph::from_edges(n, e);
  inst.fvs = std::move(x);
  inst.target = k;
  inst.problem = Problem::independent_set;
  return inst;
}

// Matched forest on 2*pairs vertices plus nx X vertices wired at random.
Instance random_clean(std::mt19937_64& rng, std::size_t pairs, std::size_t nx, double px, double pxx) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < pairs; ++i) {
    e.push_back({2 * i, 2 * i + 1});
    if (i > 0 && rng() % 4 != 0) {
      const Vertex j = static_cast<Vertex>(rng() % i);
      e.push_back(Edge::make(2 * i + static_cast<Vertex>(rng() & 1), 2 * j + static_cast<Vertex>(rng() & 1)));
    }
  }
  std::bernoulli_distribution cx(px);
  std::bernoulli_distribution cxx(pxx);
  const auto nf = static_cast<Vertex>(2 * pairs);
  VertexSet x;
  for (Vertex i = 0; i < nx; ++i) {
    const Vertex xv = nf + i;
    x.push_back(xv);
    for (Vertex v = 0; v < nf; ++v) {
      if (cx(rng)) {
        e.push_back({v, xv});
      }
    }
    for (Vertex j = 0; j < i; ++j) {
      if (cxx(rng)) {
        e.push_back({nf + j, xv});
      }
    }
  }
  return clean_instance(nf + nx, e, x, static_cast<std::int64_t>(rng() % (nf + nx + 1)));
}

std::int64_t alpha_of(const Instance& inst) { return brute::alpha(inst.graph); }

// Re-applies every record through the checked entry points, checking the
// decrease against the oracle after each step.
void replay_checked(const Instance& start, const std::vector<RuleRecord>& records) {
  ReductionSession s(start);
  std::int64_t before = alpha_of(s.instance());
  for (const RuleRecord& r : records) {
    if (const auto* r1 = std::get_if<R1Record>(&r)) {
      s.apply_rule1(r1->v);
    } else if (const auto* r2 = std::get_if<R2Record>(&r)) {
      s.apply_rule2(r2->u, r2->v);
    } else if (const auto* r3 = std::get_if<R3Record>(&r)) {
      s.apply_rule3(r3->tree);
    } else if (const auto* r4 = std::get_if<R4Record>(&r)) {
      s.apply_rule4(r4->u, r4->v);
    } else if (const auto* r5 = std::get_if<R5Record>(&r)) {
      s.apply_rule5(r5->t, r5->u, r5->v, r5->w);
    }
    const std::int64_t after = alpha_of(s.instance());
    CHECK(before == after + k_decrease(r));
    before = after;
    const Instance& cur = s.instance();
    CHECK(perfect_matching_forest(cur.graph, cur.graph.mask_of(cur.fvs)).has_value());
  }
  CHECK(s.records() == records);
}

// No rule fires on a fresh session over `inst`.
void check_exhausted(const Instance& inst) {
  ReductionSession s(inst);
  const auto xn = static_cast<std::int64_t>(inst.fvs.size());
  for (const ChunkKey& c : s.chunks()) {
    CHECK(s.conf(c) < xn);
  }
  const Graph& g = inst.graph;
  VertexMask in_x = g.mask_of(inst.fvs);
  for (const Edge& e : g.edges()) {
    if (in_x[e.u] || in_x[e.v]) {
      continue;
    }
    CHECK_THROWS_AS(s.apply_rule4(e.u, e.v), PreconditionError);
    for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      for (Vertex t : g.neighbors(u)) {
        for (Vertex w : g.neighbors(v)) {
          if (t != v && w != u && t != w && !in_x[t] && !in_x[w]) {
            CHECK_THROWS_AS(s.apply_rule5(t, u, v, w), PreconditionError);
          }
        }
      }
    }
  }
  const ForestIndex idx(g, in_x);
  for (std::uint32_t t = 0; t < idx.num_trees(); ++t) {
    CHECK_THROWS_AS(s.apply_rule3(idx.tree_vertices(t)), PreconditionError);
  }
}

}  // namespace

TEST_SUITE("rules") {
  TEST_CASE("session rejects unclean input") {
    Instance vc = clean_instance(2, {{0, 1}}, {}, 1);
    vc.problem = Problem::vertex_cover;
    CHECK_THROWS_AS(ReductionSession{vc}, PreconditionError);
    CHECK_THROWS_AS(ReductionSession{clean_instance(3, {{0, 1}, {1, 2}}, {}, 1)}, PreconditionError);
  }

  TEST_CASE("blockable pairs") {
    // forest 0-1, 2-3; X = {4, 5, 6}; 4 sees 0 and 2; 5 sees 1; 6 sees 3; 5-6 adjacent
    const Instance inst = clean_instance(7, {{0, 1}, {2, 3}, {0, 4}, {2, 4}, {1, 5}, {3, 6}, {5, 6}}, {4, 5, 6}, 1);
    ReductionSession s(inst);
    CHECK(s.is_blockable(0, 2));
    CHECK(s.is_blockable(0, 3));
    CHECK_FALSE(s.is_blockable(1, 3));
    CHECK_FALSE(ReductionSession(clean_instance(3, {{0, 1}, {1, 2}}, {2}, 1)).is_blockable(0, 1));
  }

  TEST_CASE("rule 1") {
    const Instance inst = clean_instance(3, {{0, 1}, {0, 2}, {1, 2}}, {2}, 1);
    ReductionSession s(inst);
    s.apply_rule1(2);
    CHECK_FALSE(s.instance().graph.contains(2));
    CHECK(s.instance().fvs.empty());
    CHECK(s.instance().target == 1);
    CHECK(brute::alpha(inst.graph) == brute::alpha(s.instance().graph));

    ReductionSession t(clean_instance(3, {{0, 1}}, {2}, 1));
    CHECK_THROWS_AS(t.apply_rule1(2), PreconditionError);
    CHECK_THROWS_AS(t.apply_rule1(0), PreconditionError);
  }

  TEST_CASE("rule 2") {
    const Instance inst = clean_instance(6, {{0, 1}, {2, 3}, {0, 4}, {1, 4}, {2, 5}, {3, 5}}, {4, 5}, 2);
    ReductionSession s(inst);
    s.apply_rule2(4, 5);
    CHECK(s.instance().graph.adjacent(4, 5));
    CHECK(s.chunks().size() == 2);
    CHECK(brute::alpha(inst.graph) == brute::alpha(s.instance().graph));
    CHECK_THROWS_AS(s.apply_rule2(4, 5), PreconditionError);
  }

  TEST_CASE("rule 3") {
    ReductionSession iso(clean_instance(2, {{0, 1}}, {}, 1));
    iso.apply_rule3({0, 1});
    CHECK(iso.instance().graph.num_vertices() == 0);
    CHECK(iso.instance().target == 0);

    const Instance one_side = clean_instance(3, {{0, 1}, {0, 2}}, {2}, 2);
    ReductionSession s(one_side);
    s.apply_rule3({0, 1});
    CHECK(s.instance().target == 1);
    CHECK(brute::alpha(one_side.graph) == brute::alpha(s.instance().graph) + 1);

    ReductionSession both(clean_instance(3, {{0, 1}, {0, 2}, {1, 2}}, {2}, 1));
    CHECK_THROWS_AS(both.apply_rule3({0, 1}), PreconditionError);
    CHECK_THROWS_AS(both.apply_rule3({0}), PreconditionError);
  }

  TEST_CASE("rule 4") {
    // u = 0, v = 1; X = {2, 3} adjacent; 0 sees 2, 1 sees 3
    const Instance inst = clean_instance(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {2, 3}, 2);
    ReductionSession s(inst);
    s.apply_rule4(0, 1);
    CHECK(s.instance().graph.num_vertices() == 2);
    CHECK(s.instance().target == 1);
    CHECK(brute::alpha(inst.graph) == brute::alpha(s.instance().graph) + 1);

    ReductionSession shared(clean_instance(3, {{0, 1}, {0, 2}, {1, 2}}, {2}, 1));
    CHECK_THROWS_AS(shared.apply_rule4(0, 1), PreconditionError);
  }

  TEST_CASE("rule 4 with both outer neighbours") {
    // path 4-0-1-5 inside a matched path 6-4-0-1-5-7; X = {2, 3}
    const Instance inst =
        clean_instance(8, {{0, 1}, {0, 4}, {1, 5}, {4, 6}, {5, 7}, {0, 2}, {1, 3}, {2, 3}, {6, 3}}, {2, 3}, 4);
    ReductionSession s(inst);
    s.apply_rule4(0, 1);
    const Graph& g = s.instance().graph;
    CHECK(g.adjacent(4, 5));
    CHECK(g.adjacent(4, 3));
    CHECK(g.adjacent(5, 2));
    CHECK(brute::alpha(inst.graph) == brute::alpha(g) + 1);
  }

  TEST_CASE("rule 5") {
    // t=0 u=1 v=2 w=3 p=4 q=5, p-6 and q-7 matched
    const std::vector<Edge> h{{0, 1}, {1, 2}, {2, 3}, {1, 4}, {2, 5}, {4, 6}, {5, 7}};
    const Instance inst = clean_instance(8, h, {}, 4);
    ReductionSession s(inst);
    s.apply_rule5(0, 1, 2, 3);
    CHECK(s.instance().graph.num_vertices() == 4);
    CHECK(s.instance().target == 2);
    CHECK(brute::alpha(inst.graph) == brute::alpha(s.instance().graph) + 2);

    std::vector<Edge> blocked = h;
    blocked.push_back({0, 8});
    blocked.push_back({3, 8});
    ReductionSession b(clean_instance(9, blocked, {8}, 4));
    CHECK_THROWS_AS(b.apply_rule5(0, 1, 2, 3), PreconditionError);
  }

  TEST_CASE("reduce examples") {
    const Instance pairs = clean_instance(6, {{0, 1}, {2, 3}, {4, 5}}, {}, 3);
    ReductionSession s(pairs);
    s.reduce();
    CHECK(s.instance().graph.num_vertices() == 0);
    CHECK(s.instance().target == 0);

    // reduced output is a fixpoint
    ReductionSession again(s.instance());
    again.reduce();
    CHECK(again.records().empty());

    CHECK(reduced_bound(2) == 86);
  }

  TEST_CASE("random clean instances") {
    std::mt19937_64 rng(59);
    std::array<std::size_t, 6> fired{};
    for (int it = 0; it < 1500; ++it) {
      const std::size_t pairs = 1 + rng() % 5;
      const std::size_t nx = rng() % 4;
      const Instance inst = random_clean(rng, pairs, nx, 0.1 + 0.1 * static_cast<double>(rng() % 5), 0.4);
      ReductionSession s(inst);
      s.reduce();
      const Instance& out = s.instance();
      std::int64_t dec = 0;
      for (const RuleRecord& r : s.records()) {
        dec += k_decrease(r);
      }
      CHECK(inst.target - out.target == dec);
      CHECK(brute::alpha(inst.graph) == brute::alpha(out.graph) + dec);
      CHECK(static_cast<std::int64_t>(out.graph.num_vertices()) <=
            reduced_bound(static_cast<std::int64_t>(out.fvs.size())));
      replay_checked(inst, s.records());
      check_exhausted(compact(out).instance);
      for (int r = 1; r <= 5; ++r) {
        fired[r] += s.stats().applied[r];
      }
    }
    // Rule 3 has nothing left once Rules 4/5 are exhausted: each tree keeps
    // a conflict structure, and a hit one is a conflict.
    for (int r : {1, 2, 4, 5}) {
      CHECK(fired[r] > 0);
    }
    CHECK(fired[3] == 0);
  }

  TEST_CASE("conflicts hold across the rule 4/5 phase") {
    std::mt19937_64 rng(61);
    std::size_t mismatches = 0;
    for (int it = 0; it < 300; ++it) {
      const Instance inst = random_clean(rng, 2 + rng() % 30, 1 + rng() % 5, 0.08, 0.3);
      ReductionSession s(inst);
      s.reduce();
      mismatches += s.stats().conflict_mismatches;
      if (s.stats().conflict_mismatches > 0) {
        CHECK(s.stats().fallback_active);
      }
    }
    MESSAGE("conflict mismatches: " << mismatches);
  }
}
