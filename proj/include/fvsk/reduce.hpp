#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "fvsk/forest.hpp"
#include "fvsk/graph.hpp"
#include "fvsk/instance.hpp"

namespace fvsk {

// Snapshots are taken immediately before the rule fires. X-neighborhoods
// are sorted.

struct R1Record {
  Vertex v = kNoVertex;
  VertexSet nbrs;
  bool operator==(const R1Record&) const = default;
};

struct R2Record {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  bool operator==(const R2Record&) const = default;
};

struct R3Record {
  VertexSet tree;
  std::vector<Edge> tree_edges;
  /// Edges between the tree and X, normalized.
  std::vector<Edge> x_edges;
  bool operator==(const R3Record&) const = default;
};

struct R4Record {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  /// Other forest neighbors of u and v, kNoVertex when absent.
  Vertex t = kNoVertex;
  Vertex w = kNoVertex;
  VertexSet xu;
  VertexSet xv;
  bool operator==(const R4Record&) const = default;
};

struct R5Record {
  Vertex t = kNoVertex;
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  Vertex w = kNoVertex;
  Vertex p = kNoVertex;
  Vertex q = kNoVertex;
  VertexSet xt;
  VertexSet xw;
  VertexSet xu;
  VertexSet xv;
  bool operator==(const R5Record&) const = default;
};

using RuleRecord = std::variant<R1Record, R2Record, R3Record, R4Record, R5Record>;

/// The recorded tree on local ids: vertex i is rec.tree[i].
Graph local_tree_graph(const R3Record& rec);

/// Decrease of k caused by a record (R3 needs the tree's alpha).
std::int64_t k_decrease(const RuleRecord& r);

struct ReduceOptions {
  /// Recompute the conflict table after the Rule 4/5 phase and compare it
  /// with the table from the Rule 1/2 phase. On a mismatch the Rule 1/2 and
  /// Rule 4/5 phases are repeated while Rule 1 or 2 applies.
  bool verify_conflict_stability = true;
};

struct ReduceStats {
  /// Applications per rule, index 1..5.
  std::array<std::size_t, 6> applied{};
  /// Chunks whose conflict count changed across a Rule 4/5 phase.
  std::size_t conflict_mismatches = 0;
  /// Chunks compared across Rule 4/5 phases.
  std::size_t conflict_checks = 0;
  bool fallback_active = false;
  std::size_t rounds = 0;
};

/// Owns a clean independent set instance and applies Rules 1-5 to it.
///
/// Vertex ids stay those of the input; deleted vertices are tombstoned.
class ReductionSession {
 public:
  /// Throws PreconditionError unless `inst` is an unweighted independent set
  /// instance whose forest has a perfect matching.
  explicit ReductionSession(Instance inst);

  const Instance& instance() const { return inst_; }
  const std::vector<RuleRecord>& records() const { return records_; }
  const ReduceStats& stats() const { return stats_; }

  bool in_x(Vertex v) const { return inst_.graph.contains(v) && in_x_[v]; }
  std::size_t forest_degree(Vertex v) const { return fdeg_[v]; }
  bool is_blockable(Vertex x, Vertex y) const;
  std::vector<ChunkKey> chunks() const;
  /// Fresh CONF_F(Y) for the current forest.
  std::int64_t conf(const ChunkKey& y) const;

  // Checked rule applications; throw PreconditionError when not applicable.
  void apply_rule1(Vertex v);
  void apply_rule2(Vertex u, Vertex v);
  void apply_rule3(const VertexSet& tree);
  void apply_rule4(Vertex u, Vertex v);
  void apply_rule5(Vertex t, Vertex u, Vertex v, Vertex w);

  /// Applies the rules exhaustively.
  void reduce(const ReduceOptions& opts = {});

 private:
  struct ChunkConf {
    ChunkKey key;
    std::int64_t conf;
  };

  VertexSet x_neighbors(Vertex v) const;
  /// Up to three forest neighbors without allocating; callers check fdeg_.
  struct Few {
    std::array<Vertex, 3> v{};
    std::size_t n = 0;
    const Vertex* begin() const { return v.data(); }
    const Vertex* end() const { return v.data() + n; }
  };
  Few forest_neighbors(Vertex v) const;
  bool chunk_alive(const ChunkKey& c) const;
  bool x_adjacent(Vertex a, Vertex b) const;
  void link(Vertex a, Vertex b);
  void drop(Vertex v);

  void do_rule1(Vertex v);
  void do_rule2(Vertex u, Vertex v);
  void do_rule3(const VertexSet& tree);
  void do_rule4(Vertex u, Vertex v, std::vector<Vertex>& changed);
  void do_rule5(Vertex t, Vertex u, Vertex v, Vertex w, std::vector<Vertex>& changed);
  bool rule5_applicable(Vertex t, Vertex u, Vertex v, Vertex w) const;

  std::vector<ChunkConf> phase_rules12();
  void phase_rules45();
  bool try_rules45_at(Vertex a, std::vector<Vertex>& changed);
  /// `current` may be an engine already built on the present graph.
  void phase_rule3(ConflictEngine* current);

  Instance inst_;
  VertexMask in_x_;
  std::vector<std::uint32_t> fdeg_;
  std::vector<std::uint32_t> xindex_;
  std::size_t xdim_ = 0;
  std::vector<std::uint8_t> xadj_;
  std::vector<RuleRecord> records_;
  ReduceStats stats_;
};

}  // namespace fvsk
