#include <doctest.h>

#include <array>
#include <random>

#include "brute.hpp"
#include "fvsk/error.hpp"
#include "fvsk/forest.hpp"
#include "fvsk/packing.hpp"

using namespace fvsk;

namespace {

Graph from(std::size_t n, std::vector<Edge> e) {
  std::sort(e.begin(), e.end());
  return Graph::from_edges(n, e);
}

Matching perfect(const Graph& t) {
  const auto m = perfect_matching_forest(t);
  REQUIRE(m.has_value());
  return *m;
}

using OpCounts = std::array<std::size_t, 6>;

// Checks everything the ledger promises for one tree.
void check_pack(const Graph& t, OpCounts* ops = nullptr) {
  const Matching m = perfect(t);
  const Packing p = pack(t, m);
  CHECK(verify_packing(t, m, p.structures));
  std::int64_t n = 0;
  std::int64_t c = 0;
  std::int64_t o = 0;
  std::int64_t s = 0;
  for (const LedgerStep& st : p.ledger) {
    CHECK(st.balanced());
    CHECK(st.op >= 1);
    CHECK(st.op <= 5);
    if (ops) {
      ++(*ops)[static_cast<std::size_t>(st.op)];
    }
    if (st.op == 2) {
      CHECK(st.d_open == 0);
      CHECK(st.d_structures == 0);
      CHECK(st.d_spikes == 1);
      CHECK(st.d_vertices == 1);
    }
    if (st.op == 3) {
      CHECK(st.d_open == 0);
      CHECK(st.d_structures == 1);
      CHECK(st.d_spikes >= -1);
      CHECK(st.d_vertices == 4);
    }
    n += st.d_vertices;
    c += st.d_structures;
    o += st.d_open;
    s += st.d_spikes;
  }
  if (t.num_vertices() > 2) {
    CHECK(n == static_cast<std::int64_t>(t.num_vertices()));
    CHECK(c == static_cast<std::int64_t>(p.structures.size()));
    CHECK(o == 0);
    CHECK(s == 0);
  }
  CHECK(14 * p.structures.size() >= t.num_vertices());
}

}  // namespace

TEST_SUITE("packing") {
  TEST_CASE("spikes") {
    CHECK(find_spikes(from(2, {{0, 1}})).empty());
    CHECK(find_spikes(from(4, {{0, 1}, {0, 2}, {0, 3}})).empty());
    // 0-1-2-3-4 with leaf 5 on 2
    CHECK(find_spikes(from(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}})) == VertexSet{2});
    // a leaf on both sides of 1 makes it no spike
    CHECK(find_spikes(from(5, {{0, 1}, {1, 2}, {2, 3}, {1, 4}})).empty());
  }

  TEST_CASE("small trees") {
    const Graph k2 = from(2, {{0, 1}});
    const Packing one = pack(k2, perfect(k2));
    REQUIRE(one.structures.size() == 1);
    CHECK(one.structures[0].kind == StructureKind::A);

    const Graph p4 = from(4, {{0, 1}, {1, 2}, {2, 3}});
    const Packing grown = pack(p4, perfect(p4));
    // initialization spends {0, 1} without a structure
    REQUIRE(grown.structures.size() == 1);
    CHECK(grown.structures[0] == ConflictStructure::a(2, 3));
    CHECK(verify_packing(p4, perfect(p4), {ConflictStructure::a(0, 1), ConflictStructure::a(2, 3)}));
    check_pack(p4);
  }

  TEST_CASE("double spike") {
    // t=0 u=1 v=2 w=3, u-4-5 and v-6-7
    const Graph t = from(8, {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}, {2, 6}, {6, 7}});
    const Matching m = perfect(t);
    CHECK(valid_structure(t, m, ConflictStructure::b(0, 1, 2, 3)));
    const Packing p = pack(t, m);
    CHECK(verify_packing(t, m, p.structures));
    check_pack(t);
  }

  TEST_CASE("verify rejects bad packings") {
    const Graph k2 = from(2, {{0, 1}});
    const Matching m = perfect(k2);
    CHECK(verify_packing(k2, m, {ConflictStructure::a(0, 1)}));
    CHECK_FALSE(verify_packing(k2, m, {ConflictStructure::a(0, 1), ConflictStructure::a(0, 1)}));

    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < 14; ++i) {
      e.push_back({i, i + 1});
    }
    const Graph p14 = from(14, e);
    CHECK_FALSE(verify_packing(p14, perfect(p14), {}));
    // an unmatched edge is no type A structure
    CHECK_FALSE(valid_structure(p14, perfect(p14), ConflictStructure::a(1, 2)));
  }

  TEST_CASE("input checks") {
    const Graph p3 = from(3, {{0, 1}, {1, 2}});
    Matching m = brute::as_matching(3, {{0, 1}});
    CHECK_THROWS_AS(pack(p3, m), PreconditionError);
    const Graph two = from(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(pack(two, perfect(two)), ValidationError);
  }

  TEST_CASE("hit_by") {
    // structure A on {0, 1}
    const ConflictStructure a = ConflictStructure::a(0, 1);
    const Graph both = from(3, {{0, 1}, {0, 2}, {1, 2}});
    const auto hit = hit_by(both, {2}, a);
    REQUIRE(hit.has_value());
    CHECK(*hit == ChunkKey::single(2));

    const Graph split = from(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK_FALSE(hit_by(split, {2, 3}, a).has_value());

    // B on 0-1-2-3 with x=8 seeing 0 and y=9 seeing 3
    const Graph t = from(10, {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}, {2, 6}, {6, 7}, {0, 8}, {3, 9}});
    const auto hb = hit_by(t, {8, 9}, ConflictStructure::b(0, 1, 2, 3));
    REQUIRE(hb.has_value());
    CHECK(*hb == ChunkKey::pair(8, 9));
  }

  TEST_CASE("tree enumeration counts") {
    const std::size_t rooted[] = {1, 1, 2, 4, 9, 20, 48, 115, 286, 719};
    for (std::size_t n = 1; n <= 10; ++n) {
      std::size_t count = 0;
      brute::for_each_rooted_tree(n, [&](const std::vector<std::size_t>& lv) {
        ++count;
        CHECK(brute::tree_from_levels(lv).num_edges() == n - 1);
      });
      CHECK(count == rooted[n - 1]);
    }
  }

  TEST_CASE("every matched tree up to 12 vertices") {
    std::size_t trees = 0;
    OpCounts ops{};
    for (std::size_t n = 2; n <= 12; n += 2) {
      brute::for_each_rooted_tree(n, [&](const std::vector<std::size_t>& lv) {
        const Graph t = brute::tree_from_levels(lv);
        if (!brute::leaf_matching(t).empty()) {
          ++trees;
          check_pack(t, &ops);
        }
      });
    }
    CHECK(trees > 0);
    for (int op = 1; op <= 5; ++op) {
      CHECK(ops[op] > 0);
    }
  }

  TEST_CASE("random matched trees") {
    std::mt19937_64 rng(83);
    OpCounts ops{};
    for (int it = 0; it < 300; ++it) {
      check_pack(brute::random_matched_tree(rng, 1 + rng() % 120), &ops);
    }
    for (int op = 1; op <= 5; ++op) {
      CHECK(ops[op] > 0);
    }
  }

  TEST_CASE("forests pack tree by tree") {
    std::mt19937_64 rng(89);
    const Graph a = brute::random_matched_tree(rng, 10);
    const Graph b = brute::random_matched_tree(rng, 7);
    std::vector<Edge> e = a.edges();
    for (const Edge& x : b.edges()) {
      e.push_back({x.u + 20, x.v + 20});
    }
    const Graph f = from(34, e);
    const Matching m = perfect(f);
    const Packing p = pack_forest(f, m);
    CHECK(verify_packing(f, m, p.structures));
    CHECK(p.structures.size() == pack(a, perfect(a)).structures.size() + pack(b, perfect(b)).structures.size());
  }
}
