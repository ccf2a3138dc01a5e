#include "fvsk/instance.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

#include "fvsk/error.hpp"
#include "fvsk/fvs.hpp"

namespace fvsk {

const char* problem_name(Problem p) { return p == Problem::vertex_cover ? "vc" : "is"; }

std::int64_t Instance::total_weight() const {
  std::int64_t sum = 0;
  for (Vertex v : graph.vertices()) {
    sum += weight(v);
  }
  return sum;
}

bool Instance::unit_weights() const {
  if (!weights) {
    return true;
  }
  for (Vertex v : graph.vertices()) {
    if ((*weights)[v] != 1) {
      return false;
    }
  }
  return true;
}

void validate(const Instance& inst) {
  if (inst.target < 0) {
    throw ValidationError("negative target");
  }
  for (Vertex v : inst.fvs) {
    if (!inst.graph.contains(v)) {
      throw ValidationError("fvs vertex " + std::to_string(v + 1) + " not in graph");
    }
  }
  if (!std::is_sorted(inst.fvs.begin(), inst.fvs.end()) ||
      std::adjacent_find(inst.fvs.begin(), inst.fvs.end()) != inst.fvs.end()) {
    throw ValidationError("fvs not a sorted set");
  }
  if (!is_forest(inst.graph, inst.graph.mask_of(inst.fvs))) {
    throw ValidationError("graph minus fvs is not a forest");
  }
  if (inst.weights) {
    if (inst.weights->size() != inst.graph.id_bound()) {
      throw ValidationError("weight vector size mismatch");
    }
    for (Vertex v : inst.graph.vertices()) {
      if ((*inst.weights)[v] < 1) {
        throw ValidationError("non-positive weight on vertex " + std::to_string(v + 1));
      }
    }
  }
}

namespace {

struct LineReader {
  std::size_t line_no;
  std::istringstream in;

  template <typename T>
  T next(const char* what) {
    std::string tok;
    if (!(in >> tok)) {
      throw ParseError(line_no, std::string("missing ") + what);
    }
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(line_no, std::string("bad ") + what + " '" + tok + "'");
    }
    return value;
  }

  std::string word(const char* what) {
    std::string tok;
    if (!(in >> tok)) {
      throw ParseError(line_no, std::string("missing ") + what);
    }
    return tok;
  }

  void finish() {
    std::string extra;
    if (in >> extra) {
      throw ParseError(line_no, "trailing token '" + extra + "'");
    }
  }
};

}  // namespace

Instance parse_instance(std::istream& in, const ParseOptions& opts) {
  std::string line;
  std::size_t line_no = 0;
  bool have_p = false;
  bool have_k = false;
  bool have_t = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Edge> edges;
  std::vector<Vertex> xs;
  std::vector<std::int64_t> weights;
  std::vector<std::uint8_t> weight_seen;
  bool any_weight = false;
  Instance inst;

  auto vertex = [&](LineReader& r) {
    const auto id = r.next<std::int64_t>("vertex id");
    if (id < 1 || static_cast<std::uint64_t>(id) > n) {
      throw ParseError(r.line_no, "vertex id " + std::to_string(id) + " out of range");
    }
    return static_cast<Vertex>(id - 1);
  };

  while (std::getline(in, line)) {
    ++line_no;
    LineReader r{line_no, std::istringstream(line)};
    std::string kind;
    if (!(r.in >> kind) || kind == "c") {
      continue;
    }
    if (kind != "p" && !have_p) {
      throw ParseError(line_no, "'" + kind + "' line before header");
    }
    if (kind == "p") {
      if (have_p) {
        throw ParseError(line_no, "duplicate header");
      }
      if (r.word("format") != "vck") {
        throw ParseError(line_no, "expected 'p vck'");
      }
      n = r.next<std::size_t>("vertex count");
      m = r.next<std::size_t>("edge count");
      if (n >= kNoVertex) {
        throw ParseError(line_no, "vertex count too large");
      }
      have_p = true;
      weights.assign(n, 1);
      weight_seen.assign(n, 0);
      edges.reserve(m);
    } else if (kind == "e") {
      const Vertex u = vertex(r);
      const Vertex v = vertex(r);
      if (u == v) {
        throw ParseError(line_no, "self-loop on vertex " + std::to_string(u + 1));
      }
      edges.push_back(Edge::make(u, v));
    } else if (kind == "x") {
      xs.push_back(vertex(r));
    } else if (kind == "w") {
      const Vertex v = vertex(r);
      const auto w = r.next<std::int64_t>("weight");
      if (w < 1) {
        throw ValidationError("line " + std::to_string(line_no) + ": weight must be positive");
      }
      if (weight_seen[v]) {
        throw ValidationError("line " + std::to_string(line_no) + ": duplicate weight for vertex " +
                              std::to_string(v + 1));
      }
      weight_seen[v] = 1;
      weights[v] = w;
      any_weight = true;
    } else if (kind == "k") {
      if (have_k) {
        throw ParseError(line_no, "duplicate 'k' line");
      }
      inst.target = r.next<std::int64_t>("target");
      have_k = true;
    } else if (kind == "t") {
      if (have_t) {
        throw ParseError(line_no, "duplicate 't' line");
      }
      const std::string p = r.word("problem");
      if (p == "is") {
        inst.problem = Problem::independent_set;
      } else if (p == "vc") {
        inst.problem = Problem::vertex_cover;
      } else {
        throw ParseError(line_no, "unknown problem '" + p + "'");
      }
      have_t = true;
    } else {
      throw ParseError(line_no, "unknown line type '" + kind + "'");
    }
    r.finish();
  }
  if (!have_p) {
    throw ParseError(0, "missing 'p vck' header");
  }
  if (!have_k) {
    throw ParseError(0, "missing 'k' line");
  }
  if (edges.size() != m) {
    throw ValidationError("header declares " + std::to_string(m) + " edges, found " +
                          std::to_string(edges.size()));
  }
  inst.graph = Graph::from_edges(n, edges);
  const std::size_t x_count = xs.size();
  inst.fvs = make_set(std::move(xs));
  if (inst.fvs.size() != x_count) {
    throw ValidationError("duplicate 'x' line");
  }
  if (any_weight) {
    inst.weights = std::move(weights);
  }
  if (inst.fvs.empty() && !is_forest(inst.graph)) {
    if (!opts.auto_fvs) {
      throw ValidationError("fvs absent and graph cyclic");
    }
    inst.fvs = approx_fvs(inst.graph);
  }
  validate(inst);
  return inst;
}

Instance parse_instance(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_instance(in, opts);
}

std::string emit_instance(const Instance& inst) {
  const Graph& g = inst.graph;
  if (!g.is_dense()) {
    throw PreconditionError("emit_instance needs a compact graph");
  }
  std::ostringstream out;
  out << "p vck " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  if (inst.problem == Problem::independent_set) {
    out << "t is\n";
  }
  for (const Edge& e : g.edges()) {
    out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  }
  for (Vertex v : inst.fvs) {
    out << "x " << v + 1 << '\n';
  }
  if (inst.weights) {
    for (Vertex v = 0; v < g.id_bound(); ++v) {
      out << "w " << v + 1 << ' ' << (*inst.weights)[v] << '\n';
    }
  }
  out << "k " << inst.target << '\n';
  return out.str();
}

Compacted compact(const Instance& inst) {
  const Graph& g = inst.graph;
  Compacted c;
  c.original_ids = g.vertices();
  std::vector<Vertex> to_new(g.id_bound(), kNoVertex);
  for (Vertex i = 0; i < c.original_ids.size(); ++i) {
    to_new[c.original_ids[i]] = i;
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    edges.push_back(Edge::make(to_new[e.u], to_new[e.v]));
  }
  Instance& out = c.instance;
  out.graph = Graph::from_edges(c.original_ids.size(), edges);
  for (Vertex v : inst.fvs) {
    out.fvs.push_back(to_new[v]);
  }
  out.target = inst.target;
  out.problem = inst.problem;
  if (inst.weights) {
    std::vector<std::int64_t> w;
    w.reserve(c.original_ids.size());
    for (Vertex v : c.original_ids) {
      w.push_back((*inst.weights)[v]);
    }
    out.weights = std::move(w);
  }
  return c;
}

Solution parse_solution(std::istream& in) {
  Solution s;
  std::string line;
  std::size_t line_no = 0;
  bool have_s = false;
  std::vector<Vertex> vs;
  while (std::getline(in, line)) {
    ++line_no;
    LineReader r{line_no, std::istringstream(line)};
    std::string kind;
    if (!(r.in >> kind) || kind == "c") {
      continue;
    }
    if (kind == "s") {
      if (have_s) {
        throw ParseError(line_no, "duplicate 's' line");
      }
      s.value = r.next<std::int64_t>("value");
      have_s = true;
    } else if (kind == "v") {
      const auto id = r.next<std::int64_t>("vertex id");
      if (id < 1 || id > static_cast<std::int64_t>(kNoVertex)) {
        throw ParseError(line_no, "vertex id out of range");
      }
      vs.push_back(static_cast<Vertex>(id - 1));
    } else {
      throw ParseError(line_no, "unknown line type '" + kind + "'");
    }
    r.finish();
  }
  if (!have_s) {
    throw ParseError(0, "missing 's' line");
  }
  const std::size_t count = vs.size();
  s.vertices = make_set(std::move(vs));
  if (s.vertices.size() != count) {
    throw ValidationError("duplicate vertex in solution");
  }
  return s;
}

Solution parse_solution(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_solution(in);
}

std::string emit_solution(const Solution& s) {
  std::ostringstream out;
  out << "s " << s.value << '\n';
  for (Vertex v : s.vertices) {
    out << "v " << v + 1 << '\n';
  }
  return out.str();
}

bool is_independent(const Graph& g, const VertexSet& s) {
  VertexMask in(g.id_bound(), 0);
  for (Vertex v : s) {
    if (!g.contains(v)) {
      return false;
    }
    in[v] = 1;
  }
  for (Vertex v : s) {
    for (Vertex u : g.neighbors(v)) {
      if (in[u]) {
        return false;
      }
    }
  }
  return true;
}

bool is_vertex_cover(const Graph& g, const VertexSet& s) {
  VertexMask in(g.id_bound(), 0);
  for (Vertex v : s) {
    if (!g.contains(v)) {
      return false;
    }
    in[v] = 1;
  }
  for (const Edge& e : g.edges()) {
    if (!in[e.u] && !in[e.v]) {
      return false;
    }
  }
  return true;
}

}  // namespace fvsk
