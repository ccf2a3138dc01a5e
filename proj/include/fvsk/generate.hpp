#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "fvsk/instance.hpp"

namespace fvsk {

/// Random forest with a perfect matching on n - f vertices plus f planted
/// feedback vertices.
struct GenConfig {
  std::size_t n = 100;
  std::size_t f = 4;
  /// Probability that a matched pair is joined to an earlier pair; lower
  /// values give more, smaller trees.
  double join_prob = 0.9;
  /// Forest neighbors per planted vertex.
  std::size_t x_degree = 4;
  /// Edge probability between two planted vertices.
  double xx_prob = 0.3;
  std::uint64_t seed = 1;
  /// Vertex cover target; default (n - f)/2 + f/2.
  std::optional<std::int64_t> k;
};

/// Deterministic for a given config on every platform. ValidationError when
/// f > n or n - f is odd.
Instance generate(const GenConfig& cfg);

/// 64-bit FNV-1a of a text, printed in hex by the CLI.
std::uint64_t digest(std::string_view text);

}  // namespace fvsk
