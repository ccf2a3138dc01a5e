#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fvsk/forest.hpp"
#include "fvsk/graph.hpp"
#include "fvsk/matching.hpp"

namespace fvsk {

enum class StructureKind { A, B };

/// Type A: a matched edge {v1, v2} with both forest degrees at most 2.
/// Type B: a path (v1, v2, v3, v4) with v1, v4 leaves and v2, v3 of degree 3.
struct ConflictStructure {
  StructureKind kind = StructureKind::A;
  std::vector<Vertex> vertices;

  static ConflictStructure a(Vertex u, Vertex v) { return {StructureKind::A, {u, v}}; }
  static ConflictStructure b(Vertex l0, Vertex v0, Vertex v1, Vertex l1) { return {StructureKind::B, {l0, v0, v1, l1}}; }
  bool operator==(const ConflictStructure&) const = default;
};

/// One growth step of the subtree. op is 1..5.
struct LedgerStep {
  int op = 0;
  Vertex v0 = kNoVertex;
  std::vector<Vertex> path;
  VertexSet added;
  std::int64_t d_open = 0;
  std::int64_t d_structures = 0;
  std::int64_t d_spikes = 0;
  std::int64_t d_vertices = 0;

  bool balanced() const { return 8 * d_open + 14 * d_structures + d_spikes >= d_vertices; }
};

struct Packing {
  std::vector<ConflictStructure> structures;
  std::vector<LedgerStep> ledger;
};

/// Degree-3 vertices with exactly one adjacent leaf.
VertexSet find_spikes(const Graph& t);

/// Grows a subtree from a leaf and collects disjoint conflict structures,
/// at least |V(t)|/14 of them. The alive vertices of `t` must form a tree
/// (ValidationError) and `m` must be perfect on it (PreconditionError).
/// Throws InvariantViolation when a ledger step breaks the balance.
Packing pack(const Graph& t, const Matching& m);

/// Packs every tree of the forest `f` separately and concatenates.
Packing pack_forest(const Graph& f, const Matching& m);

/// Definition check against forest `f` and its perfect matching.
bool valid_structure(const Graph& f, const Matching& m, const ConflictStructure& s);

/// All structures valid, pairwise disjoint, and 14|S| >= |V(f)|.
bool verify_packing(const Graph& f, const Matching& m, const std::vector<ConflictStructure>& s);

/// A chunk of X whose neighborhood covers {v1,v2} (type A) or one of
/// {v1,v2}, {v3,v4}, {v1,v4} (type B). Singletons are tried before pairs.
std::optional<ChunkKey> hit_by(const Graph& g, const VertexSet& x, const ConflictStructure& s);

}  // namespace fvsk
