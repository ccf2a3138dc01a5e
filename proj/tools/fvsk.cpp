#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "fvsk/compose.hpp"
#include "fvsk/error.hpp"
#include "fvsk/fvs.hpp"
#include "fvsk/generate.hpp"
#include "fvsk/kernel.hpp"
#include "fvsk/nt.hpp"
#include "fvsk/oracle.hpp"
#include "fvsk/packing.hpp"
#include "fvsk/trace.hpp"

using namespace fvsk;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kInvalid = 3;
constexpr int kInternal = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw UsageError("cannot write " + path);
  }
}

Instance load(const std::string& path, bool auto_fvs) { return parse_instance(slurp(path), {auto_fvs}); }

std::int64_t weight_of(const Instance& inst, const VertexSet& s) {
  std::int64_t w = 0;
  for (Vertex v : s) {
    w += inst.weight(v);
  }
  return w;
}

VertexSet complement(const Graph& g, const VertexSet& s) {
  VertexSet out;
  for (Vertex v : g.vertices()) {
    if (!set_contains(s, v)) {
      out.push_back(v);
    }
  }
  return out;
}

Problem problem_from(const std::string& s) { return s == "is" ? Problem::independent_set : Problem::vertex_cover; }

// ---- kernelize ----

struct KernelizeArgs {
  std::string in;
  std::string out;
  std::string trace;
  std::string problem;
  bool auto_fvs = false;
  bool fast = false;
  bool no_stability = false;
};

int run_kernelize(const KernelizeArgs& a) {
  const Instance input = load(a.in, a.auto_fvs);
  const Problem form = a.problem.empty() ? input.problem : problem_from(a.problem);
  KernelOptions opts;
  opts.fast = a.fast;
  opts.verify_conflict_stability = !a.no_stability;
  const KernelResult r = kernelize(input, form, opts);
  const Instance kernel = r.emitted();
  spill(a.out, emit_instance(kernel));
  if (!a.trace.empty()) {
    spill(a.trace, serialize_trace(r.trace));
  }
  std::ostringstream line;
  line << "n_in=" << input.graph.num_vertices() << " n_out=" << kernel.graph.num_vertices()
       << " x_in=" << input.fvs.size() << " x_out=" << kernel.fvs.size()
       << " k_in=" << (form == Problem::independent_set ? to_is(input).target : to_vc(input).target)
       << " k_out=" << kernel.target
       << " bound=" << kernel_bound(static_cast<std::int64_t>(input.fvs.size()));
  if (r.trivial_yes) {
    line << " trivial=yes";
  } else if (r.trivial_no) {
    line << " trivial=no";
  }
  if (r.nt_no_certificate) {
    line << " no_certificate=1";
  }
  (a.out.empty() || a.out == "-" ? std::cerr : std::cout) << line.str() << '\n';
  return kOk;
}

// ---- gen ----

int run_gen(const GenConfig& cfg, const std::string& out, std::int64_t k) {
  GenConfig c = cfg;
  if (k >= 0) {
    c.k = k;
  }
  const std::string text = emit_instance(generate(c));
  spill(out, text);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest(text)));
  std::cerr << "digest=" << buf << '\n';
  return kOk;
}

// ---- verify ----

std::string check_solution(const std::string& inst_path, const std::string& sol_path) {
  const Instance inst = load(inst_path, false);
  const Solution sol = parse_solution(slurp(sol_path));
  const VertexSet s = make_set(sol.vertices);
  if (s.size() != sol.vertices.size()) {
    return "FAIL " + sol_path + ": repeated vertex";
  }
  for (Vertex v : s) {
    if (!inst.graph.contains(v)) {
      return "FAIL " + sol_path + ": vertex " + std::to_string(v + 1) + " out of range";
    }
  }
  const std::int64_t w = weight_of(inst, s);
  if (w != sol.value) {
    return "FAIL " + sol_path + ": declared " + std::to_string(sol.value) + " but weight is " + std::to_string(w);
  }
  if (inst.problem == Problem::vertex_cover) {
    for (const Edge& e : inst.graph.edges()) {
      if (!set_contains(s, e.u) && !set_contains(s, e.v)) {
        return "FAIL " + sol_path + ": edge " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) +
               " uncovered";
      }
    }
    if (w > inst.target) {
      return "FAIL " + sol_path + ": cover weight " + std::to_string(w) + " exceeds k=" + std::to_string(inst.target);
    }
  } else {
    for (Vertex v : s) {
      for (Vertex u : inst.graph.neighbors(v)) {
        if (set_contains(s, u)) {
          return "FAIL " + sol_path + ": edge " + std::to_string(std::min(u, v) + 1) + " " +
                 std::to_string(std::max(u, v) + 1) + " inside the set";
        }
      }
    }
    if (w < inst.target) {
      return "FAIL " + sol_path + ": weight " + std::to_string(w) + " below k=" + std::to_string(inst.target);
    }
  }
  return "OK " + sol_path;
}

int run_verify(const std::vector<std::string>& files, unsigned jobs) {
  if (files.size() % 2 != 0 || files.empty()) {
    throw UsageError("verify takes instance/solution pairs");
  }
  const std::size_t pairs = files.size() / 2;
  std::vector<std::string> verdict(pairs);
  std::vector<int> code(pairs, kOk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs; i = next++) {
      try {
        verdict[i] = check_solution(files[2 * i], files[2 * i + 1]);
        code[i] = verdict[i].rfind("OK", 0) == 0 ? kOk : kNo;
      } catch (const UsageError& e) {
        verdict[i] = std::string("ERROR ") + e.what();
        code[i] = kUsage;
      } catch (const Error& e) {
        verdict[i] = std::string("ERROR ") + files[2 * i + 1] + ": " + e.what();
        code[i] = kInvalid;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1U, jobs); ++j) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }
  int worst = kOk;
  for (std::size_t i = 0; i < pairs; ++i) {
    std::cout << verdict[i] << '\n';
    worst = std::max(worst, code[i]);
  }
  return worst;
}

// ---- pack ----

std::string id1(Vertex v) { return std::to_string(std::int64_t{v} + 1); }

int run_pack(const std::string& in, bool ledger, bool auto_fvs) {
  const Instance inst = load(in, auto_fvs);
  const Graph f = delete_vertices(inst.graph, inst.fvs);
  const auto m = perfect_matching_forest(f);
  if (!m) {
    throw ValidationError("forest has no perfect matching; kernelize the instance first");
  }
  const Packing p = pack_forest(f, *m);
  for (const auto& s : p.structures) {
    std::cout << "structure " << (s.kind == StructureKind::A ? 'A' : 'B');
    for (Vertex v : s.vertices) {
      std::cout << ' ' << id1(v);
    }
    const auto hit = hit_by(inst.graph, inst.fvs, s);
    std::cout << " hit=";
    if (hit) {
      std::cout << id1(hit->a());
      if (hit->is_pair()) {
        std::cout << ',' << id1(hit->b());
      }
    } else {
      std::cout << '-';
    }
    std::cout << '\n';
  }
  if (ledger) {
    for (const auto& st : p.ledger) {
      std::cout << "step op=" << st.op << " v0=" << id1(st.v0) << " dO=" << st.d_open << " dC=" << st.d_structures
                << " dS=" << st.d_spikes << " dN=" << st.d_vertices << '\n';
    }
  }
  const bool ok = verify_packing(f, *m, p.structures);
  std::cout << "trees=" << connected_components(f).size() << " forest_vertices=" << f.num_vertices()
            << " structures=" << p.structures.size() << " verified=" << (ok ? 1 : 0) << '\n';
  return ok ? kOk : kInternal;
}

// ---- compose / subdivide ----

P2SplitInstance as_p2split(const Instance& inst) {
  const Instance is = to_is(inst);
  return {is.graph, is.fvs, is.target};
}

Instance from_p2split(const P2SplitInstance& p) {
  Instance out;
  out.graph = p.graph;
  out.fvs = p.y;
  out.target = p.k;
  out.problem = Problem::independent_set;
  return out;
}

int run_compose(const std::vector<std::string>& ins, const std::string& out, bool vc) {
  std::vector<P2SplitInstance> parts;
  for (const auto& path : ins) {
    parts.push_back(as_p2split(load(path, false)));
  }
  const WeightedComposite c = cross_compose(parts);
  spill(out, emit_instance(vc ? to_vc(c.instance) : c.instance));
  std::cerr << "t=" << c.t_original << " t_padded=" << c.t << " q=" << c.q << " n=" << c.n
            << " cover=" << c.cover.size() << " k=" << c.instance.target << '\n';
  return kOk;
}

int run_subdivide(const std::string& in, const std::string& out, const std::vector<std::int64_t>& edge) {
  const Instance is = to_is(load(in, true));
  if (!is.unit_weights()) {
    throw ValidationError("subdivision needs unit weights");
  }
  Instance result;
  if (edge.empty()) {
    result = from_p2split(subdivide_to_p2split(is.graph, is.target));
  } else {
    if (edge[0] < 1 || edge[1] < 1) {
      throw UsageError("--edge takes two 1-based vertex ids");
    }
    result.graph = subdivide_edge(is.graph, static_cast<Vertex>(edge[0] - 1), static_cast<Vertex>(edge[1] - 1));
    result.fvs = is.fvs;
    result.target = is.target + 1;
    result.problem = Problem::independent_set;
    if (!validate_fvs(result.graph, result.fvs)) {
      result.fvs = approx_fvs(result.graph);
    }
  }
  spill(out, emit_instance(result));
  return kOk;
}

// ---- solve / lift ----

int run_solve(const std::string& in, const std::string& method, const std::string& out, bool auto_fvs) {
  const Instance inst = load(in, auto_fvs);
  VertexSet is;
  if (method == "oracle") {
    is = inst.weights ? exact_mis_weighted(inst.graph, *inst.weights) : exact_mis(inst.graph);
  } else {
    if (!inst.unit_weights()) {
      throw ValidationError("method " + method + " needs unit weights");
    }
    if (method == "fpt") {
      is = fpt_mis(inst.graph, inst.fvs);
    } else {
      KernelOptions opts;
      opts.allow_trivial = false;
      const KernelResult r = kernelize(inst, Problem::independent_set, opts);
      const Instance kernel = r.emitted();
      is = lift_is(r.trace, kernel.graph, fpt_mis(kernel.graph, kernel.fvs));
    }
  }
  Solution sol;
  sol.vertices = inst.problem == Problem::independent_set ? is : complement(inst.graph, is);
  sol.value = weight_of(inst, sol.vertices);
  spill(out, emit_solution(sol));
  const bool yes = inst.problem == Problem::independent_set ? sol.value >= inst.target : sol.value <= inst.target;
  std::cerr << (yes ? "YES" : "NO") << " value=" << sol.value << " k=" << inst.target << '\n';
  return yes ? kOk : kNo;
}

int run_lift(const std::string& trace_path, const std::string& kernel_path, const std::string& sol_path,
             const std::string& out) {
  const ReductionTrace trace = parse_trace(slurp(trace_path));
  const Instance kernel = load(kernel_path, false);
  const Solution ks = parse_solution(slurp(sol_path));
  const VertexSet s = make_set(ks.vertices);
  Solution sol;
  sol.vertices = trace.problem == Problem::independent_set ? lift_is(trace, kernel.graph, s)
                                                           : lift_vc(trace, kernel.graph, s);
  sol.value = static_cast<std::int64_t>(sol.vertices.size());
  spill(out, emit_solution(sol));
  return kOk;
}

// ---- stats ----

int run_stats(const std::string& in, bool auto_fvs) {
  const Instance inst = load(in, auto_fvs);
  const Graph& g = inst.graph;
  const VertexMask in_x = g.mask_of(inst.fvs);
  ConflictEngine engine(g, in_x);
  const auto chunks = enumerate_chunks(g, inst.fvs);
  std::vector<std::int64_t> per_tree(engine.index().num_trees(), 0);
  std::int64_t active = 0;
  for (const ChunkKey& c : chunks) {
    engine.conf_per_tree(c.members(), [&](std::uint32_t t, std::int64_t d) {
      per_tree[t] += d;
      active += d;
    });
  }
  const auto x = static_cast<std::int64_t>(inst.fvs.size());
  std::cout << "n=" << g.num_vertices() << " m=" << g.num_edges() << " x=" << x << " trees=" << per_tree.size()
            << " chunks=" << chunks.size() << " active_conflicts=" << active
            << " reduced_ceiling=" << x * x + x * (x - 1) / 2 * x << '\n';
  const ForestIndex& idx = engine.index();
  for (std::uint32_t t = 0; t < per_tree.size(); ++t) {
    std::cout << "tree root=" << id1(idx.root(t)) << " size=" << idx.tree_size(t) << " alpha=" << engine.alpha_tree(t)
              << " conflicts=" << per_tree[t] << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernelization toolkit for vertex cover and independent set parameterized by a feedback vertex set"};
  app.require_subcommand(1);
  int status = kOk;

  KernelizeArgs ka;
  auto* kz = app.add_subcommand("kernelize", "Reduce an instance and write the kernel and its trace");
  kz->add_option("input", ka.in, "Instance file (- for stdin)")->required();
  kz->add_option("-o,--out", ka.out, "Kernel output (default stdout)");
  kz->add_option("--trace", ka.trace, "Trace output");
  kz->add_option("--problem", ka.problem, "Form of the kernel and of lifted solutions")
      ->check(CLI::IsMember({"is", "vc"}));
  kz->add_flag("--auto-fvs", ka.auto_fvs, "Compute a feedback vertex set when none is given");
  kz->add_flag("--fast", ka.fast, "Skip the reduction rules when n <= |X|^3");
  kz->add_flag("--no-stability-check", ka.no_stability, "Do not recompute conflicts after rules 4 and 5");
  kz->callback([&] { status = run_kernelize(ka); });

  GenConfig gc;
  std::string gen_out;
  std::int64_t gen_k = -1;
  auto* gen = app.add_subcommand("gen", "Generate a random instance with a planted feedback vertex set");
  gen->add_option("--n", gc.n, "Vertices")->required();
  gen->add_option("--f", gc.f, "Planted feedback vertices")->required();
  gen->add_option("--seed", gc.seed, "Seed");
  gen->add_option("--join-prob", gc.join_prob, "Chance to join a matched pair to an earlier one")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--x-degree", gc.x_degree, "Forest neighbors per planted vertex");
  gen->add_option("--xx-prob", gc.xx_prob, "Edge chance between planted vertices")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--k", gen_k, "Vertex cover target");
  gen->add_option("-o,--out", gen_out, "Output (default stdout)");
  gen->callback([&] { status = run_gen(gc, gen_out, gen_k); });

  std::vector<std::string> verify_files;
  unsigned jobs = 1;
  auto* ver = app.add_subcommand("verify", "Check solutions against instances");
  ver->add_option("pairs", verify_files, "instance solution [instance solution ...]")->required();
  ver->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  ver->callback([&] { status = run_verify(verify_files, jobs); });

  std::string pack_in;
  bool pack_ledger = false;
  bool pack_auto = false;
  auto* pk = app.add_subcommand("pack", "Pack disjoint conflict structures in the forest G - X");
  pk->add_option("input", pack_in, "Clean instance")->required();
  pk->add_flag("--ledger", pack_ledger, "Print the per-step ledger");
  pk->add_flag("--auto-fvs", pack_auto, "Compute a feedback vertex set when none is given");
  pk->callback([&] { status = run_pack(pack_in, pack_ledger, pack_auto); });

  std::vector<std::string> comp_in;
  std::string comp_out;
  bool comp_vc = false;
  auto* cp = app.add_subcommand("compose", "OR-compose P2-split instances (x lines give Y)");
  cp->add_option("inputs", comp_in, "Instance files")->required();
  cp->add_option("-o,--out", comp_out, "Output (default stdout)");
  cp->add_flag("--vc", comp_vc, "Emit in vertex cover form");
  cp->callback([&] { status = run_compose(comp_in, comp_out, comp_vc); });

  std::string sub_in;
  std::string sub_out;
  std::vector<std::int64_t> sub_edge;
  auto* sd = app.add_subcommand("subdivide", "Subdivide every edge (or one edge) by two new vertices");
  sd->add_option("input", sub_in, "Instance file")->required();
  sd->add_option("-o,--out", sub_out, "Output (default stdout)");
  sd->add_option("--edge", sub_edge, "Only subdivide this edge")->expected(2);
  sd->callback([&] { status = run_subdivide(sub_in, sub_out, sub_edge); });

  std::string solve_in;
  std::string solve_method = "kernel-then-fpt";
  std::string solve_out;
  bool solve_auto = false;
  auto* sv = app.add_subcommand("solve", "Solve exactly and report whether the target is met");
  sv->add_option("input", solve_in, "Instance file")->required();
  sv->add_option("--method", solve_method, "Solver")->check(CLI::IsMember({"oracle", "fpt", "kernel-then-fpt"}));
  sv->add_option("-o,--out", solve_out, "Solution output (default stdout)");
  sv->add_flag("--auto-fvs", solve_auto, "Compute a feedback vertex set when none is given");
  sv->callback([&] { status = run_solve(solve_in, solve_method, solve_out, solve_auto); });

  std::string lift_trace;
  std::string lift_kernel;
  std::string lift_sol;
  std::string lift_out;
  auto* lf = app.add_subcommand("lift", "Map a kernel solution back to the input graph");
  lf->add_option("trace", lift_trace, "Trace file")->required();
  lf->add_option("kernel", lift_kernel, "Kernel instance")->required();
  lf->add_option("solution", lift_sol, "Kernel solution")->required();
  lf->add_option("-o,--out", lift_out, "Output (default stdout)");
  lf->callback([&] { status = run_lift(lift_trace, lift_kernel, lift_sol, lift_out); });

  std::string stats_in;
  bool stats_auto = false;
  auto* st = app.add_subcommand("stats", "Print size and conflict statistics");
  st->add_option("input", stats_in, "Instance file")->required();
  st->add_flag("--auto-fvs", stats_auto, "Compute a feedback vertex set when none is given");
  st->callback([&] { status = run_stats(stats_in, stats_auto); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return status;
}
