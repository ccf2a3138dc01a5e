#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fvsk/graph.hpp"

namespace fvsk {

enum class Problem { vertex_cover, independent_set };

const char* problem_name(Problem p);

/// A graph with a feedback vertex set, a target and an optional weighting.
/// For vertex cover the question is "is there a cover of weight <= target",
/// for independent set "is there an independent set of weight >= target".
struct Instance {
  Graph graph;
  VertexSet fvs;
  std::int64_t target = 0;
  Problem problem = Problem::vertex_cover;
  std::optional<std::vector<std::int64_t>> weights;

  std::int64_t weight(Vertex v) const { return weights ? (*weights)[v] : 1; }
  std::int64_t total_weight() const;
  bool unit_weights() const;
};

/// Throws ValidationError when the fvs is not a feedback vertex set, the
/// target is negative or a weight is not positive.
void validate(const Instance& inst);

struct ParseOptions {
  /// Compute a feedback vertex set when the input has no `x` lines.
  bool auto_fvs = false;
};

Instance parse_instance(std::istream& in, const ParseOptions& opts = {});
Instance parse_instance(std::string_view text, const ParseOptions& opts = {});

/// Canonical VCK text. Requires a graph without tombstoned ids.
std::string emit_instance(const Instance& inst);

/// Renumbers the alive vertices to 0..n'-1 preserving order.
struct Compacted {
  Instance instance;
  std::vector<Vertex> original_ids;
};
Compacted compact(const Instance& inst);

struct Solution {
  std::int64_t value = 0;
  VertexSet vertices;
};

Solution parse_solution(std::istream& in);
Solution parse_solution(std::string_view text);
std::string emit_solution(const Solution& s);

bool is_independent(const Graph& g, const VertexSet& s);
bool is_vertex_cover(const Graph& g, const VertexSet& s);

}  // namespace fvsk
