#include "fvsk/trace.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

#include "fvsk/error.hpp"
#include "fvsk/forest.hpp"

namespace fvsk {

std::int64_t ReductionTrace::offset() const {
  std::int64_t total = clean.k_offset;
  for (const RuleRecord& r : rules) {
    total += k_decrease(r);
  }
  return total;
}

namespace {

bool meets(const VertexSet& xs, const VertexMask& in_i) {
  return std::any_of(xs.begin(), xs.end(), [&](Vertex x) { return in_i[x] != 0; });
}

void take(VertexMask& in_i, Vertex v) {
  if (in_i[v]) {
    throw InvariantViolation("lifting re-adds vertex " + std::to_string(v + 1));
  }
  in_i[v] = 1;
}

void lift_r4(const R4Record& r, VertexMask& in_i) {
  if (r.t != kNoVertex && in_i[r.t]) {
    if (r.w != kNoVertex && in_i[r.w]) {
      throw InvariantViolation("lifting rule 4: both t and w selected");
    }
    take(in_i, r.v);
  } else if (r.w != kNoVertex && in_i[r.w]) {
    take(in_i, r.u);
  } else if (!meets(r.xu, in_i)) {
    take(in_i, r.u);
  } else if (!meets(r.xv, in_i)) {
    take(in_i, r.v);
  } else {
    throw InvariantViolation("lifting rule 4: both endpoints blocked");
  }
}

void lift_r5(const R5Record& r, VertexMask& in_i) {
  const bool hit_t = meets(r.xt, in_i);
  const bool hit_w = meets(r.xw, in_i);
  if (!hit_t && !hit_w) {
    take(in_i, r.t);
    take(in_i, r.w);
  } else if (hit_t) {
    if (hit_w || meets(r.xu, in_i) || in_i[r.p]) {
      throw InvariantViolation("lifting rule 5: no valid case");
    }
    take(in_i, r.u);
    take(in_i, r.w);
  } else {
    if (meets(r.xv, in_i) || in_i[r.q]) {
      throw InvariantViolation("lifting rule 5: no valid case");
    }
    take(in_i, r.t);
    take(in_i, r.v);
  }
}

void lift_r3(const R3Record& r, VertexMask& in_i) {
  const Graph tree = local_tree_graph(r);
  VertexSet blocked;
  for (const Edge& e : r.x_edges) {
    const bool u_in_tree = std::binary_search(r.tree.begin(), r.tree.end(), e.u);
    const Vertex in_tree = u_in_tree ? e.u : e.v;
    const Vertex outside = u_in_tree ? e.v : e.u;
    if (in_i[outside]) {
      blocked.push_back(static_cast<Vertex>(std::lower_bound(r.tree.begin(), r.tree.end(), in_tree) -
                                            r.tree.begin()));
    }
  }
  normalize(blocked);
  const VertexSet mis = mis_forest_avoiding(tree, blocked);
  if (static_cast<std::int64_t>(mis.size()) != alpha_forest(tree)) {
    throw InvariantViolation("lifting rule 3: tree lost independence");
  }
  for (Vertex i : mis) {
    take(in_i, r.tree[i]);
  }
}

}  // namespace

VertexSet lift_is(const ReductionTrace& trace, const VertexSet& kernel_is) {
  VertexMask in_i(trace.original_n, 0);
  if (!trace.trivial()) {
    for (Vertex i : kernel_is) {
      if (i >= trace.kernel_ids.size()) {
        throw PreconditionError("kernel vertex " + std::to_string(i + 1) + " out of range");
      }
      in_i[trace.kernel_ids[i]] = 1;
    }
  }
  for (std::size_t idx = trace.rules.size(); idx-- > 0;) {
    const RuleRecord& r = trace.rules[idx];
    if (const auto* r3 = std::get_if<R3Record>(&r)) {
      lift_r3(*r3, in_i);
    } else if (const auto* r4 = std::get_if<R4Record>(&r)) {
      lift_r4(*r4, in_i);
    } else if (const auto* r5 = std::get_if<R5Record>(&r)) {
      lift_r5(*r5, in_i);
    }
  }
  for (Vertex v : trace.clean.j) {
    take(in_i, v);
  }
  VertexSet out;
  for (Vertex v = 0; v < in_i.size(); ++v) {
    if (in_i[v]) {
      out.push_back(v);
    }
  }
  return out;
}

VertexSet lift_is(const ReductionTrace& trace, const Graph& kernel, const VertexSet& kernel_is) {
  if (!is_independent(kernel, kernel_is)) {
    throw PreconditionError("kernel solution is not an independent set");
  }
  return lift_is(trace, kernel_is);
}

VertexSet lift_vc(const ReductionTrace& trace, const Graph& kernel, const VertexSet& kernel_cover) {
  if (!is_vertex_cover(kernel, kernel_cover)) {
    throw PreconditionError("kernel solution is not a vertex cover");
  }
  VertexSet rest;
  for (Vertex v : kernel.vertices()) {
    if (!std::binary_search(kernel_cover.begin(), kernel_cover.end(), v)) {
      rest.push_back(v);
    }
  }
  const VertexSet is = lift_is(trace, trace.trivial() ? VertexSet{} : rest);
  VertexSet out;
  std::size_t j = 0;
  for (Vertex v = 0; v < trace.original_n; ++v) {
    if (j < is.size() && is[j] == v) {
      ++j;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

Instance replay_forward(const Instance& input, const ReductionTrace& trace) {
  Instance inst = to_is(input);
  Graph& g = inst.graph;
  for (Vertex v : trace.clean.c0) {
    g.remove_vertex(v);
  }
  for (Vertex v : trace.clean.j) {
    g.remove_vertex(v);
  }
  inst.target -= trace.clean.k_offset;
  VertexSet x;
  for (Vertex v : inst.fvs) {
    if (g.contains(v)) {
      x.push_back(v);
    }
  }
  x.insert(x.end(), trace.clean.moved.begin(), trace.clean.moved.end());
  normalize(x);
  inst.fvs = std::move(x);
  for (const RuleRecord& r : trace.rules) {
    if (const auto* r1 = std::get_if<R1Record>(&r)) {
      g.remove_vertex(r1->v);
      inst.fvs.erase(std::find(inst.fvs.begin(), inst.fvs.end(), r1->v));
    } else if (const auto* r2 = std::get_if<R2Record>(&r)) {
      g.add_edge(r2->u, r2->v);
    } else if (const auto* r3 = std::get_if<R3Record>(&r)) {
      for (Vertex v : r3->tree) {
        g.remove_vertex(v);
      }
    } else if (const auto* r4 = std::get_if<R4Record>(&r)) {
      g.remove_vertex(r4->u);
      g.remove_vertex(r4->v);
      if (r4->t != kNoVertex) {
        for (Vertex xv : r4->xv) {
          g.add_edge(r4->t, xv);
        }
      }
      if (r4->w != kNoVertex) {
        for (Vertex xu : r4->xu) {
          g.add_edge(r4->w, xu);
        }
      }
      if (r4->t != kNoVertex && r4->w != kNoVertex) {
        g.add_edge(r4->t, r4->w);
      }
    } else if (const auto* r5 = std::get_if<R5Record>(&r)) {
      for (Vertex v : {r5->t, r5->u, r5->v, r5->w}) {
        g.remove_vertex(v);
      }
      for (Vertex xt : r5->xt) {
        g.add_edge(r5->p, xt);
      }
      for (Vertex xw : r5->xw) {
        g.add_edge(r5->q, xw);
      }
    }
    inst.target -= k_decrease(r);
  }
  return inst;
}

// ---- text format ----

namespace {

void put_id(std::ostream& out, Vertex v) { out << ' ' << (v == kNoVertex ? 0 : std::int64_t{v} + 1); }

void put_set(std::ostream& out, const std::vector<Vertex>& s) {
  out << ' ' << s.size();
  for (Vertex v : s) {
    put_id(out, v);
  }
}

void put_edges(std::ostream& out, const std::vector<Edge>& es) {
  out << ' ' << es.size();
  for (const Edge& e : es) {
    put_id(out, e.u);
    put_id(out, e.v);
  }
}

struct Tokens {
  std::size_t line_no;
  std::istringstream in;

  std::int64_t num() {
    std::string tok;
    if (!(in >> tok)) {
      throw ParseError(line_no, "record truncated");
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(line_no, "bad number '" + tok + "'");
    }
    return value;
  }
  Vertex id() {
    const std::int64_t v = num();
    if (v < 1 || v >= static_cast<std::int64_t>(kNoVertex)) {
      throw ParseError(line_no, "bad vertex id");
    }
    return static_cast<Vertex>(v - 1);
  }
  Vertex optional_id() {
    const std::int64_t v = num();
    if (v == 0) {
      return kNoVertex;
    }
    if (v < 0 || v >= static_cast<std::int64_t>(kNoVertex)) {
      throw ParseError(line_no, "bad vertex id");
    }
    return static_cast<Vertex>(v - 1);
  }
  std::size_t count() {
    const std::int64_t c = num();
    if (c < 0) {
      throw ParseError(line_no, "negative count");
    }
    return static_cast<std::size_t>(c);
  }
  std::vector<Vertex> set() {
    std::vector<Vertex> out(count());
    for (auto& v : out) {
      v = id();
    }
    return out;
  }
  std::vector<Edge> edges() {
    std::vector<Edge> out(count());
    for (auto& e : out) {
      e.u = id();
      e.v = id();
    }
    return out;
  }
  void finish() {
    std::string extra;
    if (in >> extra) {
      throw ParseError(line_no, "trailing token '" + extra + "'");
    }
  }
};

}  // namespace

std::string serialize_trace(const ReductionTrace& t) {
  std::ostringstream out;
  out << "trace 1\n";
  out << "problem " << problem_name(t.problem) << '\n';
  out << "original_n " << t.original_n << '\n';
  out << "original_k " << t.original_k << '\n';
  out << "NT C0";
  put_set(out, t.clean.c0);
  out << "\nNT J";
  put_set(out, t.clean.j);
  out << "\nNT I";
  put_set(out, t.clean.moved);
  out << '\n';
  for (const RuleRecord& r : t.rules) {
    if (const auto* r1 = std::get_if<R1Record>(&r)) {
      out << "R1";
      put_id(out, r1->v);
      put_set(out, r1->nbrs);
    } else if (const auto* r2 = std::get_if<R2Record>(&r)) {
      out << "R2";
      put_id(out, r2->u);
      put_id(out, r2->v);
    } else if (const auto* r3 = std::get_if<R3Record>(&r)) {
      out << "R3";
      put_set(out, r3->tree);
      put_edges(out, r3->tree_edges);
      put_edges(out, r3->x_edges);
    } else if (const auto* r4 = std::get_if<R4Record>(&r)) {
      out << "R4";
      for (Vertex v : {r4->u, r4->v, r4->t, r4->w}) {
        put_id(out, v);
      }
      put_set(out, r4->xu);
      put_set(out, r4->xv);
    } else if (const auto* r5 = std::get_if<R5Record>(&r)) {
      out << "R5";
      for (Vertex v : {r5->t, r5->u, r5->v, r5->w, r5->p, r5->q}) {
        put_id(out, v);
      }
      put_set(out, r5->xt);
      put_set(out, r5->xw);
      put_set(out, r5->xu);
      put_set(out, r5->xv);
    }
    out << '\n';
  }
  out << "kernel";
  put_set(out, t.kernel_ids);
  static constexpr const char* kNames[] = {"none", "yes", "no"};
  out << "\nshortcut " << kNames[static_cast<int>(t.shortcut)] << "\nend\n";
  return out.str();
}

ReductionTrace parse_trace(std::istream& in) {
  ReductionTrace t;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  bool ended = false;
  while (std::getline(in, line)) {
    ++line_no;
    Tokens r{line_no, std::istringstream(line)};
    std::string kind;
    if (!(r.in >> kind) || kind == "c") {
      continue;
    }
    if (ended) {
      throw ParseError(line_no, "content after 'end'");
    }
    if (!header) {
      if (kind != "trace" || r.num() != 1) {
        throw ParseError(line_no, "expected 'trace 1'");
      }
      header = true;
    } else if (kind == "problem") {
      std::string p;
      r.in >> p;
      if (p == "vc") {
        t.problem = Problem::vertex_cover;
      } else if (p == "is") {
        t.problem = Problem::independent_set;
      } else {
        throw ParseError(line_no, "unknown problem '" + p + "'");
      }
    } else if (kind == "original_n") {
      t.original_n = r.count();
    } else if (kind == "original_k") {
      t.original_k = r.num();
    } else if (kind == "NT") {
      std::string part;
      r.in >> part;
      if (part == "C0") {
        t.clean.c0 = r.set();
      } else if (part == "J") {
        t.clean.j = r.set();
        t.clean.k_offset = static_cast<std::int64_t>(t.clean.j.size());
      } else if (part == "I") {
        t.clean.moved = r.set();
      } else {
        throw ParseError(line_no, "unknown NT part '" + part + "'");
      }
    } else if (kind == "R1") {
      R1Record rec;
      rec.v = r.id();
      rec.nbrs = r.set();
      t.rules.push_back(std::move(rec));
    } else if (kind == "R2") {
      R2Record rec;
      rec.u = r.id();
      rec.v = r.id();
      t.rules.push_back(rec);
    } else if (kind == "R3") {
      R3Record rec;
      rec.tree = r.set();
      rec.tree_edges = r.edges();
      rec.x_edges = r.edges();
      t.rules.push_back(std::move(rec));
    } else if (kind == "R4") {
      R4Record rec;
      rec.u = r.id();
      rec.v = r.id();
      rec.t = r.optional_id();
      rec.w = r.optional_id();
      rec.xu = r.set();
      rec.xv = r.set();
      t.rules.push_back(std::move(rec));
    } else if (kind == "R5") {
      R5Record rec;
      rec.t = r.id();
      rec.u = r.id();
      rec.v = r.id();
      rec.w = r.id();
      rec.p = r.id();
      rec.q = r.id();
      rec.xt = r.set();
      rec.xw = r.set();
      rec.xu = r.set();
      rec.xv = r.set();
      t.rules.push_back(std::move(rec));
    } else if (kind == "kernel") {
      t.kernel_ids = r.set();
    } else if (kind == "shortcut") {
      std::string s;
      r.in >> s;
      if (s == "none") {
        t.shortcut = Shortcut::none;
      } else if (s == "yes") {
        t.shortcut = Shortcut::yes;
      } else if (s == "no") {
        t.shortcut = Shortcut::no;
      } else {
        throw ParseError(line_no, "unknown shortcut '" + s + "'");
      }
    } else if (kind == "end") {
      ended = true;
    } else {
      throw ParseError(line_no, "unknown record '" + kind + "'");
    }
    r.finish();
  }
  if (!header || !ended) {
    throw ParseError(0, "trace truncated");
  }
  return t;
}

ReductionTrace parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

}  // namespace fvsk
