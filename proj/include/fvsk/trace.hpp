#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fvsk/instance.hpp"
#include "fvsk/nt.hpp"
#include "fvsk/reduce.hpp"

namespace fvsk {

enum class Shortcut { none, yes, no };

/// Everything needed to map a kernel solution back to the input graph.
///
/// Ids in the records are those of the input. Kernel vertex i is input
/// vertex kernel_ids[i].
struct ReductionTrace {
  Problem problem = Problem::vertex_cover;
  std::size_t original_n = 0;
  std::int64_t original_k = 0;
  CleanRecord clean;
  std::vector<RuleRecord> rules;
  std::vector<Vertex> kernel_ids;
  /// The emitted kernel is a fixed trivial instance (empty YES or K2 NO);
  /// lifting ignores the kernel solution and starts from the empty set.
  Shortcut shortcut = Shortcut::none;
  bool trivial() const { return shortcut != Shortcut::none; }

  /// Size gained by lifting an independent set: |J| plus all rule k-offsets.
  std::int64_t offset() const;

  bool operator==(const ReductionTrace&) const = default;
};

/// Lifts an independent set of the kernel (kernel ids) to one of the input
/// graph (input ids). |result| = |kernel_is| + offset().
VertexSet lift_is(const ReductionTrace& trace, const VertexSet& kernel_is);
/// Same, but first checks that kernel_is is independent in `kernel`.
VertexSet lift_is(const ReductionTrace& trace, const Graph& kernel, const VertexSet& kernel_is);

/// S = V(G) \ lift_is(V(G') \ S'). Checks that S' covers `kernel`.
VertexSet lift_vc(const ReductionTrace& trace, const Graph& kernel, const VertexSet& kernel_cover);

/// Replays the trace on `input` and returns the reduced instance in IS form
/// (input ids, tombstoned).
Instance replay_forward(const Instance& input, const ReductionTrace& trace);

std::string serialize_trace(const ReductionTrace& trace);
ReductionTrace parse_trace(std::istream& in);
ReductionTrace parse_trace(std::string_view text);

}  // namespace fvsk
