#pragma once

#include <cstdint>
#include <vector>

#include "fvsk/graph.hpp"

namespace fvsk {

/// Size caps for the exact solvers; exceeding one throws LimitExceeded.
struct OracleLimits {
  std::size_t max_vertices = 30;
  std::size_t max_fvs_vertices = 12;
  std::size_t max_fpt_x = 30;
};

/// Branch on a maximum-degree vertex; vertices of degree <= 1 are taken
/// outright, and once every degree is 2 any vertex can be taken.
std::int64_t exact_alpha(const Graph& g, const OracleLimits& lim = {});
VertexSet exact_mis(const Graph& g, const OracleLimits& lim = {});

/// Maximum weight independent set; `w` is indexed by vertex id.
std::int64_t exact_alpha_weighted(const Graph& g, const std::vector<std::int64_t>& w, const OracleLimits& lim = {});
VertexSet exact_mis_weighted(const Graph& g, const std::vector<std::int64_t>& w, const OracleLimits& lim = {});

/// max over independent X' of X of |X'| + alpha(G - X - N(X')).
/// ValidationError when g - x is not a forest.
std::int64_t fpt_alpha(const Graph& g, const VertexSet& x, const OracleLimits& lim = {});
VertexSet fpt_mis(const Graph& g, const VertexSet& x, const OracleLimits& lim = {});

/// Minimum feedback vertex set, lexicographically first among minimum ones.
VertexSet exact_fvs(const Graph& g, const OracleLimits& lim = {});

}  // namespace fvsk
