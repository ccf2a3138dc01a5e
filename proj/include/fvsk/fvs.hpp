#pragma once

#include "fvsk/graph.hpp"

namespace fvsk {

/// Feedback vertex set of size at most twice the optimum (local ratio over
/// semidisjoint cycles and degree weights, then minimalization).
/// Deterministic.
VertexSet approx_fvs(const Graph& g);

/// True iff g - x is a forest.
bool validate_fvs(const Graph& g, const VertexSet& x);

}  // namespace fvsk
