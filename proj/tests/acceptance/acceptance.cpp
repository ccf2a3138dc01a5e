// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. `--only N` runs a single criterion, `--quick` shrinks corpora.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "brute.hpp"
#include "fvsk/compose.hpp"
#include "fvsk/error.hpp"
#include "fvsk/forest.hpp"
#include "fvsk/fvs.hpp"
#include "fvsk/generate.hpp"
#include "fvsk/kernel.hpp"
#include "fvsk/nt.hpp"
#include "fvsk/oracle.hpp"
#include "fvsk/packing.hpp"
#include "fvsk/trace.hpp"

using namespace fvsk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects violations; only the first few are kept for the report.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      if (failures == 0) {
        first = what;
      }
      ++failures;
    }
  }
};

struct Config {
  bool quick = false;
  std::size_t scale(std::size_t full, std::size_t small) const { return quick ? small : full; }
};

VertexSet minus(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet random_independent(std::mt19937_64& rng, const Graph& g) {
  VertexSet order = g.vertices();
  std::shuffle(order.begin(), order.end(), rng);
  VertexSet out;
  for (Vertex v : order) {
    bool free = rng() % 3 != 0;
    for (Vertex w : out) {
      free = free && !g.adjacent(v, w);
    }
    if (free) {
      out.push_back(v);
    }
  }
  normalize(out);
  return out;
}

// Corpus 1: small random graphs with a minimum FVS.
struct SmallCase {
  Graph graph;
  VertexSet fvs;
  std::int64_t alpha = 0;
};

std::vector<SmallCase> small_corpus(std::size_t count) {
  std::mt19937_64 rng(20240601);
  std::vector<SmallCase> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 1 + rng() % 12;
    const double p = 0.05 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
    SmallCase c;
    c.graph = brute::random_graph(rng, n, p);
    c.fvs = exact_fvs(c.graph);
    c.alpha = brute::alpha(c.graph);
    out.push_back(std::move(c));
  }
  return out;
}

Instance vc_instance(const SmallCase& c, std::int64_t k) {
  Instance inst;
  inst.graph = c.graph;
  inst.fvs = c.fvs;
  inst.target = k;
  inst.problem = Problem::vertex_cover;
  return inst;
}

GenConfig gen_config(std::mt19937_64& rng, std::size_t n_max, std::size_t f_lo, std::size_t f_hi) {
  GenConfig g;
  g.f = f_lo + rng() % (f_hi - f_lo + 1);
  g.n = g.f + 2 * (1 + rng() % ((n_max - g.f) / 2));
  g.join_prob = 0.3 + 0.7 * static_cast<double>(rng() % 100) / 100.0;
  g.x_degree = 1 + rng() % 80;
  g.xx_prob = static_cast<double>(rng() % 100) / 100.0;
  g.seed = rng();
  return g;
}

KernelOptions exact_opts() {
  KernelOptions o;
  o.allow_trivial = false;
  return o;
}

// ---- criteria ----

std::string c1_equivalence(const Config& cfg, Tally& t) {
  const auto corpus = small_corpus(cfg.scale(10000, 1000));
  for (const SmallCase& c : corpus) {
    const auto n = static_cast<std::int64_t>(c.graph.num_vertices());
    for (std::int64_t k = 0; k <= n; ++k) {
      // the IS question alpha >= k is the VC question with target n - k
      const KernelResult r = kernelize(vc_instance(c, n - k), exact_opts());
      const Instance& red = r.reduced;
      const bool before = c.alpha >= k;
      const bool after = brute::alpha(red.graph) >= red.target;
      t.check(before == after, "decision changed at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  return std::to_string(corpus.size()) + " graphs";
}

std::string c2_kernel_size(const Config& cfg, Tally& t) {
  std::mt19937_64 rng(2);
  const std::size_t count = cfg.scale(200, 40);
  std::size_t largest = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const GenConfig g = gen_config(rng, cfg.scale(5000, 1000), 2, 8);
    const Instance inst = generate(g);
    const KernelResult r = kernelize(inst, exact_opts());
    const auto n_out = static_cast<std::int64_t>(r.reduced.graph.num_vertices());
    const auto x = static_cast<std::int64_t>(inst.fvs.size());
    largest = std::max(largest, r.reduced.graph.num_vertices());
    t.check(n_out <= kernel_bound(x), "kernel above bound, seed " + std::to_string(g.seed));
    t.check(r.reduced.fvs.size() <= 2 * inst.fvs.size(), "|X'| > 2|X|, seed " + std::to_string(g.seed));
  }
  return std::to_string(count) + " instances, largest kernel " + std::to_string(largest);
}

std::string c3_cleaning(const Config& cfg, Tally& t) {
  const auto corpus = small_corpus(cfg.scale(10000, 1000));
  std::mt19937_64 rng(3);
  for (const SmallCase& c : corpus) {
    const auto n = static_cast<std::int64_t>(c.graph.num_vertices());
    Instance is = to_is(vc_instance(c, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n + 1))));
    const CleanResult r = clean(is);
    const Instance& out = r.instance;
    const VertexMask in_x = out.graph.mask_of(out.fvs);
    t.check(perfect_matching_forest(out.graph, in_x).has_value(), "no perfect matching after cleaning");
    t.check(out.fvs.size() <= 2 * c.fvs.size(), "|X'| > 2|X|");
    t.check(out.target <= is.target, "k' > k");
    const VertexSet x_hat = minus(minus(c.fvs, r.record.c0), r.record.j);
    t.check(r.record.moved.size() <= x_hat.size(), "|I| > |X^|");
  }
  return std::to_string(corpus.size()) + " graphs";
}

void check_packing(const Graph& tree, Tally& t) {
  const auto m = perfect_matching_forest(tree);
  if (!m) {
    t.check(false, "tree without perfect matching");
    return;
  }
  try {
    const Packing p = pack(tree, *m);
    t.check(verify_packing(tree, *m, p.structures), "packing does not verify");
    for (const LedgerStep& st : p.ledger) {
      t.check(st.balanced(), "unbalanced ledger step, op " + std::to_string(st.op));
    }
  } catch (const InvariantViolation& e) {
    t.check(false, e.what());
  }
}

std::string c4_packing(const Config& cfg, Tally& t) {
  std::size_t trees = 0;
  const std::size_t n_max = cfg.scale(14, 10);
  for (std::size_t n = 2; n <= n_max; n += 2) {
    brute::for_each_rooted_tree(n, [&](const std::vector<std::size_t>& levels) {
      const Graph tree = brute::tree_from_levels(levels);
      if (!brute::leaf_matching(tree).empty()) {
        ++trees;
        check_packing(tree, t);
      }
    });
  }
  std::mt19937_64 rng(4);
  const std::size_t random = cfg.scale(1000, 100);
  for (std::size_t i = 0; i < random; ++i) {
    check_packing(brute::random_matched_tree(rng, 1 + rng() % 250), t);
  }
  return std::to_string(trees) + " rooted trees up to " + std::to_string(n_max) + ", " + std::to_string(random) +
         " random";
}

std::string c5_conflicts(const Config& cfg, Tally& t) {
  std::mt19937_64 rng(5);
  const std::size_t count = cfg.scale(200, 40);
  std::size_t structures = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const GenConfig g = gen_config(rng, 2000, 2, 6);
    const KernelResult r = kernelize(generate(g), exact_opts());
    const Instance& red = r.reduced;
    const Graph& graph = red.graph;
    const VertexSet& x = red.fvs;
    const Graph forest = delete_vertices(graph, x);
    const auto m = perfect_matching_forest(graph, graph.mask_of(x));
    if (!m) {
      t.check(false, "reduced forest lost its perfect matching");
      continue;
    }
    const Packing p = pack_forest(forest, *m);
    structures += p.structures.size();
    for (const ConflictStructure& s : p.structures) {
      t.check(hit_by(graph, x, s).has_value(), "structure not hit, seed " + std::to_string(g.seed));
    }
    const std::int64_t active = active_conflicts(graph, x, forest.vertices());
    const auto xs = static_cast<std::int64_t>(x.size());
    t.check(active >= static_cast<std::int64_t>(p.structures.size()), "fewer conflicts than structures");
    t.check(active <= xs * xs + xs * (xs - 1) / 2 * xs, "conflicts above ceiling");
  }
  return std::to_string(count) + " instances, " + std::to_string(structures) + " structures";
}

std::string c6_lifting(const Config& cfg, Tally& t) {
  const auto corpus = small_corpus(cfg.scale(10000, 1000));
  const std::size_t per = cfg.scale(100, 20);
  std::mt19937_64 rng(6);
  for (const SmallCase& c : corpus) {
    const auto n = static_cast<std::int64_t>(c.graph.num_vertices());
    const KernelResult r = kernelize(vc_instance(c, n / 2), Problem::independent_set, exact_opts());
    const Graph kg = r.emitted().graph;
    const ReductionTrace& tr = r.trace;
    const auto nk = static_cast<std::int64_t>(kg.num_vertices());

    const VertexSet best = exact_mis(kg);
    const VertexSet is = lift_is(tr, kg, best);
    t.check(is_independent(c.graph, is) && static_cast<std::int64_t>(is.size()) == c.alpha, "optimal IS lift");
    const VertexSet vc = lift_vc(tr, kg, minus(kg.vertices(), best));
    t.check(is_vertex_cover(c.graph, vc) && static_cast<std::int64_t>(vc.size()) == n - c.alpha,
            "optimal VC lift");

    for (std::size_t j = 0; j < per; ++j) {
      const VertexSet some = random_independent(rng, kg);
      const VertexSet li = lift_is(tr, kg, some);
      t.check(is_independent(c.graph, li), "lifted IS dependent");
      t.check(static_cast<std::int64_t>(li.size()) == static_cast<std::int64_t>(some.size()) + tr.offset(),
              "IS offset bookkeeping");
      const VertexSet cover = minus(kg.vertices(), some);
      const VertexSet lc = lift_vc(tr, kg, cover);
      t.check(is_vertex_cover(c.graph, lc), "lifted cover misses an edge");
      t.check(static_cast<std::int64_t>(lc.size()) ==
                  n - nk + static_cast<std::int64_t>(cover.size()) - tr.offset(),
              "VC offset bookkeeping");
    }
  }
  return std::to_string(corpus.size()) + " graphs, " + std::to_string(per) + " suboptimal each";
}

P2SplitInstance tiny_p2(std::mt19937_64& rng) {
  // Y = {0, 1}, pairs {2, 3} and {4, 5}
  std::vector<Edge> e{{2, 3}, {4, 5}};
  for (Vertex y = 0; y < 2; ++y) {
    for (Vertex v = 2; v < 6; ++v) {
      if (rng() % 2 == 0) {
        e.push_back({y, v});
      }
    }
  }
  std::sort(e.begin(), e.end());
  P2SplitInstance p;
  p.graph = Graph::from_edges(6, e);
  p.y = {0, 1};
  p.k = 4;
  return p;
}

// Calls fn on every multiset of size t from 0..pool-1, as sorted indices.
void for_each_multiset(std::size_t pool, std::size_t t, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(t, 0);
  while (true) {
    fn(idx);
    std::size_t i = t;
    while (i > 0 && idx[i - 1] == pool - 1) {
      --i;
    }
    if (i == 0) {
      return;
    }
    const std::size_t v = idx[i - 1] + 1;
    std::fill(idx.begin() + static_cast<std::ptrdiff_t>(i - 1), idx.end(), v);
  }
}

std::string c7_composition(const Config&, Tally& t) {
  std::mt19937_64 rng(7);
  std::vector<P2SplitInstance> pool;
  std::vector<bool> status;
  std::size_t yes_count = 0;
  while (pool.size() < 8) {
    P2SplitInstance p = tiny_p2(rng);
    const bool yes = brute::alpha(p.graph) >= p.k;
    // four of each
    if ((yes && yes_count < 4) || (!yes && pool.size() - yes_count < 4)) {
      yes_count += yes ? 1 : 0;
      pool.push_back(std::move(p));
      status.push_back(yes);
    }
  }
  std::size_t composites = 0;
  for (std::size_t size : {std::size_t{2}, std::size_t{4}}) {
    for_each_multiset(pool.size(), size, [&](const std::vector<std::size_t>& pick) {
      ++composites;
      std::vector<P2SplitInstance> in;
      bool any = false;
      for (std::size_t i : pick) {
        in.push_back(pool[i]);
        any = any || status[i];
      }
      const WeightedComposite c = cross_compose(in);
      const Instance& inst = c.instance;
      const std::vector<std::int64_t>& w = *inst.weights;
      const std::int64_t best = brute::alpha(inst.graph, &w);
      t.check((best >= inst.target) == any, "OR semantics");
      const std::size_t log_t = size == 2 ? 1 : 2;
      t.check(c.cover.size() == 2 * c.q + 2 * log_t, "|X'| != 2q + 2 log t");
      t.check(is_vertex_cover(inst.graph, c.cover), "X' leaves edges");
      if (!any) {
        return;
      }
      // every maximum weight independent set decodes to a YES input
      const auto adj = brute::adjacency_bits(inst.graph);
      const std::size_t n = inst.graph.id_bound();
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        if (!brute::independent_bits(adj, s)) {
          continue;
        }
        std::int64_t weight = 0;
        for (std::size_t v = 0; v < n; ++v) {
          weight += (s >> v & 1) ? w[v] : 0;
        }
        if (weight != best) {
          continue;
        }
        const DecodedWitness d = decode_witness(c, brute::from_bits(s));
        t.check(d.index < size && status[pick[d.index]], "decoded a NO input");
        t.check(is_independent(in[d.index].graph, d.vertices) &&
                    static_cast<std::int64_t>(d.vertices.size()) >= in[d.index].k,
                "decoded set too small");
      }
    });
  }
  return std::to_string(composites) + " composites from a pool of 8";
}

std::string c8_subdivision(const Config& cfg, Tally& t) {
  std::mt19937_64 rng(8);
  const std::size_t count = cfg.scale(500, 100);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 1 + rng() % 10;
    const Graph g = brute::random_graph(rng, n, 0.1 + 0.5 * static_cast<double>(rng() % 10) / 10.0);
    const std::int64_t a = exact_alpha(g);
    const auto edges = g.edges();
    if (!edges.empty()) {
      const Edge e = edges[rng() % edges.size()];
      t.check(exact_alpha(subdivide_edge(g, e.u, e.v)) == a + 1, "single subdivision");
    }
    const P2SplitInstance p = subdivide_to_p2split(g, 0);
    t.check(fpt_alpha(p.graph, p.y) == a + static_cast<std::int64_t>(edges.size()), "full subdivision");
  }
  return std::to_string(count) + " graphs";
}

std::string c9_fvs(const Config& cfg, Tally& t) {
  std::mt19937_64 rng(9);
  const std::size_t count = cfg.scale(2000, 300);
  std::size_t worst_num = 0;
  std::size_t worst_den = 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 1 + rng() % 11;
    const Graph g = brute::random_graph(rng, n, 0.1 + 0.6 * static_cast<double>(rng() % 10) / 10.0);
    const VertexSet a = approx_fvs(g);
    const std::size_t opt = brute::fvs_size(g);
    t.check(brute::acyclic_without(g, brute::to_bits(a)), "g - approx_fvs has a cycle");
    t.check(a.size() <= 2 * opt, "approx_fvs above twice the optimum");
    if (opt > 0 && a.size() * worst_den > worst_num * opt) {
      worst_num = a.size();
      worst_den = opt;
    }
  }
  std::ostringstream s;
  s << count << " graphs, worst ratio " << worst_num << "/" << worst_den;
  return s.str();
}

// Mean wall time of back-to-back kernelize calls filling at least 0.5 s.
// A single call at these sizes is short enough for scheduler noise to
// dominate.
double kernelize_seconds(const Instance& inst) {
  const auto t0 = Clock::now();
  int calls = 0;
  do {
    const KernelResult r = kernelize(inst);
    ++calls;
  } while (seconds_since(t0) < 0.5);
  return seconds_since(t0) / calls;
}

double median3(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[1];
}

std::string c10_performance(const Config&, Tally& t) {
  // n - f must be even, so n is one above the round number
  GenConfig half;
  half.n = 50001;
  half.f = 15;
  half.seed = 10;
  GenConfig full = half;
  full.n = 100001;
  const Instance small = generate(half);
  const Instance large = generate(full);
  // one untimed pass each warms the allocator, then the sizes alternate;
  // the median of three runs is reported
  kernelize_seconds(small);
  kernelize_seconds(large);
  std::vector<double> runs_half;
  std::vector<double> runs_full;
  for (int i = 0; i < 3; ++i) {
    runs_half.push_back(kernelize_seconds(small));
    runs_full.push_back(kernelize_seconds(large));
  }
  const double t_half = median3(runs_half);
  const double t_full = median3(runs_full);
  t.check(t_full <= 10.0, "n=1e5 took more than 10 s");
  // tiny timings are all noise
  const double ratio = t_full / std::max(t_half, 0.05);
  t.check(ratio <= 3.0, "doubling n more than tripled the time");
  char buf[96];
  std::snprintf(buf, sizeof buf, "5e4: %.3fs, 1e5: %.3fs, ratio %.2f", t_half, t_full, t_full / t_half);
  return buf;
}

std::string c11_stability(const Config& cfg, Tally& t) {
  std::mt19937_64 rng(11);
  const std::size_t count = cfg.scale(200, 40);
  std::size_t checks = 0;
  std::size_t mismatches = 0;
  std::size_t fallbacks = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const GenConfig g = gen_config(rng, 3000, 2, 8);
    const KernelResult r = kernelize(generate(g), exact_opts());
    checks += r.stats.conflict_checks;
    mismatches += r.stats.conflict_mismatches;
    fallbacks += r.stats.fallback_active ? 1 : 0;
    if (r.stats.conflict_mismatches > 0) {
      std::cerr << "  conflict mismatch on seed " << g.seed << ": " << r.stats.conflict_mismatches << " chunks\n";
    }
    t.check(r.stats.conflict_mismatches == 0 || r.stats.fallback_active, "mismatch without fallback");
  }
  return std::to_string(count) + " instances, " + std::to_string(checks) + " chunk comparisons, " +
         std::to_string(mismatches) + " mismatches, " + std::to_string(fallbacks) + " fallbacks";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks for the kernelization toolkit"};
  Config cfg;
  int only = 0;
  app.add_flag("--quick", cfg.quick, "Smaller corpora");
  app.add_option("--only", only, "Run one criterion")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  using Fn = std::string (*)(const Config&, Tally&);
  const std::pair<const char*, Fn> criteria[] = {
      {"equivalence", c1_equivalence},  {"kernel-size", c2_kernel_size}, {"cleaning", c3_cleaning},
      {"packing", c4_packing},          {"conflicts", c5_conflicts},     {"lifting", c6_lifting},
      {"composition", c7_composition},  {"subdivision", c8_subdivision}, {"fvs-approx", c9_fvs},
      {"performance", c10_performance}, {"stability", c11_stability},
  };

  bool all = true;
  for (int i = 0; i < 11; ++i) {
    if (only != 0 && only != i + 1) {
      continue;
    }
    Tally t;
    std::string detail;
    const auto t0 = Clock::now();
    try {
      detail = criteria[i].second(cfg, t);
    } catch (const std::exception& e) {
      t.check(false, std::string("exception: ") + e.what());
    }
    const bool pass = t.failures == 0;
    all = all && pass;
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", seconds_since(t0));
    std::cout << (pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << detail << " ("
              << t.checks << " checks, " << time << ")";
    if (!pass) {
      std::cout << " -- " << t.failures << " failures, first: " << t.first;
    }
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
