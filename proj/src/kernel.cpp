#include "fvsk/kernel.hpp"

#include "fvsk/error.hpp"
#include "fvsk/nt.hpp"

namespace fvsk {

std::int64_t kernel_bound(std::int64_t x) { return 2 * x + 28 * x * x + 56 * x * x * x; }

std::int64_t reduced_bound(std::int64_t x) { return x + 14 * x * (x + x * (x - 1) / 2); }

Instance KernelResult::emitted() const {
  Instance out;
  if (trivial_yes) {
    out.problem = trace.problem;
    return out;
  }
  if (trivial_no) {
    // A single edge asking for both endpoints.
    const std::vector<Edge> edge{{0, 1}};
    out.graph = Graph::from_edges(2, edge);
    out.problem = Problem::independent_set;
    out.target = 2;
    return trace.problem == Problem::vertex_cover ? to_vc(out) : out;
  }
  out = compact(reduced).instance;
  return trace.problem == Problem::vertex_cover ? to_vc(out) : out;
}

KernelResult kernelize(const Instance& input, const KernelOptions& opts) {
  return kernelize(input, input.problem, opts);
}

KernelResult kernelize(const Instance& input, Problem out_problem, const KernelOptions& opts) {
  if (!input.unit_weights()) {
    throw ValidationError("kernelization needs unit weights");
  }
  if (!input.graph.is_dense()) {
    throw PreconditionError("kernelization expects a graph without removed vertices");
  }
  KernelResult r;
  Instance is = to_is(input);
  r.x_in = input.fvs.size();
  r.trace.problem = out_problem;
  r.trace.original_n = input.graph.id_bound();
  // unit weights: the cover target is n - k of the independent set form
  const std::int64_t vc_target = static_cast<std::int64_t>(input.graph.num_vertices()) - is.target;
  r.trace.original_k = out_problem == Problem::independent_set ? is.target : vc_target;

  CleanResult cleaned = clean(std::move(is));
  r.trace.clean = std::move(cleaned.record);
  r.x_clean = cleaned.instance.fvs.size();

  const auto n = static_cast<std::int64_t>(input.graph.num_vertices());
  const auto x = static_cast<std::int64_t>(r.x_in);
  if (opts.fast && n <= x * x * x) {
    r.rules_skipped = true;
    r.reduced = std::move(cleaned.instance);
  } else {
    ReductionSession session(std::move(cleaned.instance));
    session.reduce({opts.verify_conflict_stability});
    r.reduced = session.instance();
    r.trace.rules = session.records();
    r.stats = session.stats();
  }

  if (opts.allow_trivial && r.reduced.target <= 0) {
    // Everything still lifts: starting from the empty set, the offsets
    // alone reach the original target.
    r.trivial_yes = true;
    r.trace.shortcut = Shortcut::yes;
  } else if (opts.allow_trivial &&
             r.reduced.target > static_cast<std::int64_t>(r.reduced.graph.num_vertices())) {
    r.trivial_no = true;
    r.trace.shortcut = Shortcut::no;
  } else {
    r.trace.kernel_ids = r.reduced.graph.vertices();
  }

  // The bound is about the reduced graph; the NO gadget is a constant.
  const auto n_reduced = static_cast<std::int64_t>(r.reduced.graph.num_vertices());
  if (n_reduced > kernel_bound(x)) {
    throw InvariantViolation("kernel has " + std::to_string(n_reduced) + " vertices, above the bound " +
                             std::to_string(kernel_bound(x)));
  }
  std::int64_t n_out = n_reduced;
  if (r.trivial_yes) {
    n_out = 0;
  } else if (r.trivial_no) {
    n_out = 2;
  }
  r.nt_no_certificate = n_out > 2 * vc_target;
  return r;
}

}  // namespace fvsk
