#include "fvsk/generate.hpp"

#include <algorithm>
#include <random>

#include "fvsk/error.hpp"

namespace fvsk {

namespace {

// std distributions are implementation-defined; these are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t r = eng_();
    while (r >= limit) {
      r = eng_();
    }
    return r % bound;
  }

  bool chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace

Instance generate(const GenConfig& cfg) {
  if (cfg.f > cfg.n) {
    throw ValidationError("more planted vertices than vertices");
  }
  const std::size_t forest = cfg.n - cfg.f;
  if (forest % 2 != 0) {
    throw ValidationError("n - f must be even for the forest to have a perfect matching");
  }
  Rng rng(cfg.seed);
  std::vector<Edge> edges;
  const std::size_t pairs = forest / 2;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto a = static_cast<Vertex>(2 * i);
    edges.push_back({a, a + 1});
    if (i > 0 && rng.chance(cfg.join_prob)) {
      const auto j = static_cast<Vertex>(rng.below(i));
      const Vertex mine = a + static_cast<Vertex>(rng.below(2));
      const Vertex theirs = 2 * j + static_cast<Vertex>(rng.below(2));
      edges.push_back(Edge::make(theirs, mine));
    }
  }
  const std::size_t x_deg = forest == 0 ? 0 : std::min(cfg.x_degree, forest);
  for (std::size_t i = 0; i < cfg.f; ++i) {
    const auto x = static_cast<Vertex>(forest + i);
    VertexSet nbrs;
    while (nbrs.size() < x_deg) {
      const auto u = static_cast<Vertex>(rng.below(forest));
      if (!set_contains(nbrs, u)) {
        nbrs.insert(std::lower_bound(nbrs.begin(), nbrs.end(), u), u);
      }
    }
    for (Vertex u : nbrs) {
      edges.push_back({u, x});
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (rng.chance(cfg.xx_prob)) {
        edges.push_back({static_cast<Vertex>(forest + j), x});
      }
    }
  }

  std::vector<Vertex> label(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    label[i] = static_cast<Vertex>(i);
  }
  for (std::size_t i = cfg.n; i > 1; --i) {
    std::swap(label[i - 1], label[rng.below(i)]);
  }
  for (Edge& e : edges) {
    e = Edge::make(label[e.u], label[e.v]);
  }
  std::sort(edges.begin(), edges.end());

  Instance inst;
  inst.graph = Graph::from_edges(cfg.n, edges);
  for (std::size_t i = 0; i < cfg.f; ++i) {
    inst.fvs.push_back(label[forest + i]);
  }
  normalize(inst.fvs);
  inst.problem = Problem::vertex_cover;
  inst.target = cfg.k.value_or(static_cast<std::int64_t>(forest / 2 + cfg.f / 2));
  return inst;
}

std::uint64_t digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace fvsk
