#pragma once

#include <cstdint>

#include "fvsk/graph.hpp"
#include "fvsk/instance.hpp"

namespace fvsk {

/// C0 never joins a maximum independent set, J always can, V0 is the rest.
struct NtDecomposition {
  VertexSet c0;
  VertexSet v0;
  VertexSet j;
};

/// Half-integral LP optimum from the Koenig cover of the bipartite double
/// cover, re-solved on G[V0] until the residual optimum is all halves.
NtDecomposition nt_decompose(const Graph& g);

struct CleanRecord {
  VertexSet c0;
  VertexSet j;
  /// Forest vertices left unmatched and moved into X.
  VertexSet moved;
  std::int64_t k_offset = 0;
  bool operator==(const CleanRecord&) const = default;
};

struct CleanResult {
  /// Same id space as the input; C0 and J are tombstoned.
  Instance instance;
  CleanRecord record;
};

/// Requires an independent set instance with unit weights.
CleanResult clean(Instance inst);

/// k becomes n - k (or total weight - k). Involution.
Instance to_is(const Instance& inst);
Instance to_vc(const Instance& inst);

}  // namespace fvsk
