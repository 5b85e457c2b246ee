#include "dca/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dca/error.hpp"

namespace dca::io {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kBadInput, "field '" + field + "': " + what);
}

const Json& need(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where.empty() ? key : where + "." + key, "missing");
  return j.at(key);
}

std::string path_of(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

int get_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  return j.get<int>();
}

int need_int(const Json& j, const std::string& key, const std::string& where) {
  return get_int(need(j, key, where), path_of(where, key));
}

int opt_int(const Json& j, const std::string& key, int fallback, const std::string& where) {
  return j.contains(key) ? get_int(j.at(key), path_of(where, key)) : fallback;
}

std::string get_name(const Json& j, const std::string& field) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad(field, "expected a name");
}

std::string opt_string(const Json& j, const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  return get_name(j.at(key), key);
}

const Json& need_array(const Json& j, const std::string& key, const std::string& where) {
  const Json& a = need(j, key, where);
  if (!a.is_array()) bad(path_of(where, key), "expected an array");
  return a;
}

PathOrientation path_orientation(const std::string& s, const std::string& field) {
  if (s == "none") return PathOrientation::kNone;
  if (s == "linear") return PathOrientation::kLinear;
  if (s == "alternating") return PathOrientation::kAlternating;
  bad(field, "unknown orientation '" + s + "'");
}

TreeOrientation tree_orientation(const std::string& s, const std::string& field) {
  if (s == "none") return TreeOrientation::kNone;
  if (s == "linear") return TreeOrientation::kLinear;
  if (s == "zigzag") return TreeOrientation::kZigzag;
  if (s == "rooted") return TreeOrientation::kRooted;
  bad(field, "unknown orientation '" + s + "'");
}

std::pair<int, int> bounds(const Json& j, const std::string& where) {
  const Json& b = need_array(j, "bounds", where);
  if (b.size() != 2) bad(path_of(where, "bounds"), "expected [lo, hi]");
  return {get_int(b[0], path_of(where, "bounds")), get_int(b[1], path_of(where, "bounds"))};
}

Graph orient_if_asked(Graph g, const Json& j, const std::string& where) {
  if (!j.contains("orient")) return g;
  const std::string mode = get_name(j.at("orient"), path_of(where, "orient"));
  if (mode == "none") return g.without_orientation();
  if (mode != "admissible") bad(path_of(where, "orient"), "expected \"admissible\" or \"none\"");
  if (!is_modular_graph(g).holds) bad(path_of(where, "orient"), "graph is not modular");
  auto arcs = find_admissible_orientation(g);
  if (!arcs) bad(path_of(where, "orient"), "graph has no admissible orientation");
  return g.with_orientation(*arcs);
}

Vertex vertex_of(const Graph& g, const Json& j, const std::string& field) {
  const std::string name = get_name(j, field);
  auto v = g.find(name);
  if (!v) bad(field, "unknown vertex '" + name + "'");
  return *v;
}

// "a>b" (a above b) or "a<b"; names may not contain the separator.
std::pair<Vertex, Vertex> parse_arc(const Graph& g, const std::string& text, const std::string& field) {
  for (char sep : {'>', '<'}) {
    const auto pos = text.find(sep);
    if (pos == std::string::npos) continue;
    auto a = g.find(text.substr(0, pos));
    auto b = g.find(text.substr(pos + 1));
    if (!a || !b) bad(field, "unknown vertex in '" + text + "'");
    return sep == '>' ? std::pair{*a, *b} : std::pair{*b, *a};
  }
  bad(field, "expected \"u>v\" or \"u<v\"");
}

Graph explicit_graph(const Json& j, const std::string& where) {
  const Json& vs = need_array(j, "vertices", where);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vs.size(); ++i) names.push_back(get_name(vs[i], path_of(where, "vertices")));
  Rational len(1);
  if (j.contains("edge_length")) len = read_rational(j.at("edge_length"), path_of(where, "edge_length"));
  // Names first, so edges may refer to them.
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto index_of = [&](const Json& e, const std::string& field) {
    const std::string n = get_name(e, field);
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<Vertex>(i);
    bad(field, "unknown vertex '" + n + "'");
  };
  const Json& es = need_array(j, "edges", where);
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string f = path_of(where, "edges[" + std::to_string(i) + "]");
    if (!es[i].is_array() || es[i].size() != 2) bad(f, "expected [u, v]");
    edges.emplace_back(index_of(es[i][0], f), index_of(es[i][1], f));
  }
  Graph g(std::move(names), edges, len);
  std::vector<std::pair<Vertex, Vertex>> arcs;
  if (j.contains("orientation")) {
    const Json& o = j.at("orientation");
    const std::string f = path_of(where, "orientation");
    if (!o.is_object()) bad(f, "expected an object {\"u-v\": \"u>v\"}");
    for (auto it = o.begin(); it != o.end(); ++it)
      arcs.push_back(parse_arc(g, get_name(it.value(), f + "." + it.key()), f + "." + it.key()));
  }
  if (j.contains("arcs")) {
    const Json& a = j.at("arcs");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string f = path_of(where, "arcs[" + std::to_string(i) + "]");
      if (!a[i].is_array() || a[i].size() != 2) bad(f, "expected [upper, lower]");
      arcs.emplace_back(vertex_of(g, a[i][0], f), vertex_of(g, a[i][1], f));
    }
  }
  if (!arcs.empty()) g = g.with_orientation(arcs);
  return g;
}

std::vector<Graph> read_factors(const Json& j, const std::string& where);

Graph generated_graph(const Json& j, const std::string& where) {
  const std::string gen = get_name(j.at("generator"), path_of(where, "generator"));
  const std::string orient = opt_string(j, "orientation", "none");
  if (gen == "path") {
    auto [lo, hi] = bounds(j, where);
    return path_graph(lo, hi, path_orientation(orient, path_of(where, "orientation")));
  }
  if (gen == "complete") return complete_graph(need_int(j, "k", where));
  if (gen == "complete_bipartite") return complete_bipartite(need_int(j, "k", where), need_int(j, "l", where));
  if (gen == "cube") return cube_graph(need_int(j, "n", where));
  if (gen == "star") return star_graph(need_int(j, "k", where));
  if (gen == "cycle") return cycle_graph(need_int(j, "n", where));
  if (gen == "tree") {
    const Json& vs = need_array(j, "vertices", where);
    std::vector<std::string> names;
    for (const Json& v : vs) names.push_back(get_name(v, path_of(where, "vertices")));
    auto find = [&](const Json& e, const std::string& f) {
      const std::string n = get_name(e, f);
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == n) return static_cast<Vertex>(i);
      bad(f, "unknown vertex '" + n + "'");
    };
    std::vector<std::pair<Vertex, Vertex>> edges;
    const Json& es = need_array(j, "edges", where);
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string f = path_of(where, "edges[" + std::to_string(i) + "]");
      if (!es[i].is_array() || es[i].size() != 2) bad(f, "expected [u, v]");
      edges.emplace_back(find(es[i][0], f), find(es[i][1], f));
    }
    const Vertex root = j.contains("root") ? find(j.at("root"), path_of(where, "root")) : 0;
    return tree_graph(names, edges, tree_orientation(orient, path_of(where, "orientation")), root);
  }
  if (gen == "subdivision") return barycentric_subdivision(read_graph(need(j, "of", where))).star;
  if (gen == "covering") return covering_graph(read_lattice(need(j, "of", where)).lattice);
  if (gen == "grid" || gen == "linear_grid" || gen == "alternating_grid" || gen == "product" || gen == "power") {
    return ProductSpace(read_factors(j, where)).materialize(200'000);
  }
  bad(path_of(where, "generator"), "unknown generator '" + gen + "'");
}

std::vector<Graph> read_factors(const Json& j, const std::string& where) {
  const std::string gen = get_name(j.at("generator"), path_of(where, "generator"));
  std::vector<Graph> out;
  if (gen == "grid" || gen == "linear_grid" || gen == "alternating_grid") {
    auto [lo, hi] = bounds(j, where);
    if (lo > hi) throw Error(ErrorCode::kBadBounds, "field '" + path_of(where, "bounds") + "': empty");
    std::string orient = opt_string(j, "orientation", "none");
    if (gen == "linear_grid") orient = "linear";
    if (gen == "alternating_grid") orient = "alternating";
    const int dims = need_int(j, "dims", where);
    if (dims < 1) throw Error(ErrorCode::kBadBounds, "field '" + path_of(where, "dims") + "': must be positive");
    out.assign(static_cast<std::size_t>(dims), path_graph(lo, hi, path_orientation(orient, path_of(where, "orientation"))));
  } else if (gen == "product") {
    const Json& fs = need_array(j, "factors", where);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      ProductSpace s = read_space(fs[i]);
      for (std::size_t k = 0; k < s.dimension(); ++k) out.push_back(s.factor(k));
    }
    if (out.empty()) bad(path_of(where, "factors"), "empty product");
  } else if (gen == "power") {
    const int n = need_int(j, "n", where);
    if (n < 1) bad(path_of(where, "n"), "must be positive");
    ProductSpace s = read_space(need(j, "of", where));
    for (int r = 0; r < n; ++r)
      for (std::size_t k = 0; k < s.dimension(); ++k) out.push_back(s.factor(k));
  } else {
    out.push_back(generated_graph(j, where));
  }
  if (j.contains("orient"))
    for (Graph& g : out) g = orient_if_asked(g, j, where);
  return out;
}

}  // namespace

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kBadInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kBadInput, path + ": " + e.what());
  }
}

void save_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::kBadInput, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::kBadInput, "cannot write " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::kBadInput, "cannot write " + path);
}

Rational read_rational(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) bad(field, "expected \"p/q\" or an integer");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error&) {
    bad(field, "not a rational: '" + j.get<std::string>() + "'");
  }
}

ExtRat read_ext(const Json& j, const std::string& field) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "+inf")) return ExtRat::infinity();
  return read_rational(j, field);
}

Json write_ext(const ExtRat& x) { return x.str(); }

bool looks_like_poset(const Json& j) { return j.is_object() && (j.contains("elements") || j.contains("family")); }

bool looks_like_graph(const Json& j) { return j.is_object() && (j.contains("vertices") || j.contains("generator")); }

LatticeSpec read_lattice(const Json& j) {
  if (j.contains("family")) {
    const std::string fam = get_name(j.at("family"), "family");
    if (fam == "sk") {
      const int k = need_int(j, "k", ""), n = opt_int(j, "n", 1, "");
      if (k < 1 || n < 1) bad("family", "sk needs k, n >= 1");
      return {make_sk_power(k, n), "sk", k, n};
    }
    if (fam == "skl") return {make_skl(need_int(j, "k", ""), need_int(j, "l", "")), "", 0, 0};
    if (fam == "boolean") return {make_boolean(need_int(j, "n", "")), "", 0, 0};
    if (fam == "chain") return {make_chain(need_int(j, "n", "")), "", 0, 0};
    if (fam == "pentagon") return {make_pentagon(), "", 0, 0};
    bad("family", "unknown family '" + fam + "'");
  }
  const Json& es = need_array(j, "elements", "");
  std::vector<std::string> names;
  for (const Json& e : es) names.push_back(get_name(e, "elements"));
  auto find = [&](const Json& e, const std::string& f) {
    const std::string n = get_name(e, f);
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<Elem>(i);
    bad(f, "unknown element '" + n + "'");
  };
  std::vector<std::pair<Elem, Elem>> covers;
  const Json& cs = need_array(j, "covers", "");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string f = "covers[" + std::to_string(i) + "]";
    if (!cs[i].is_array() || cs[i].size() != 2) bad(f, "expected [child, parent]");
    covers.emplace_back(find(cs[i][0], f), find(cs[i][1], f));
  }
  return {Semilattice(Poset::from_covers(std::move(names), covers)), "", 0, 0};
}

Graph read_graph(const Json& j) {
  if (!j.is_object()) bad("graph", "expected an object");
  Graph g = j.contains("generator") ? generated_graph(j, "") : explicit_graph(j, "");
  if (j.contains("generator")) {
    const std::string gen = j.at("generator").get<std::string>();
    // Products already applied "orient" per factor.
    if (gen == "grid" || gen == "linear_grid" || gen == "alternating_grid" || gen == "product" || gen == "power") return g;
  }
  return orient_if_asked(std::move(g), j, "");
}

Json write_graph(const Graph& g) {
  Json j;
  j["vertices"] = g.names();
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.name(u), g.name(v)});
  j["edges"] = edges;
  if (g.oriented()) {
    Json arcs = Json::array();
    for (auto [u, v] : g.arcs()) arcs.push_back({g.name(u), g.name(v)});
    j["arcs"] = arcs;
  }
  if (g.edge_length() != 1) j["edge_length"] = to_string(g.edge_length());
  return j;
}

ProductSpace read_space(const Json& j) {
  if (!j.is_object()) bad("graph", "expected an object");
  if (j.contains("generator")) return ProductSpace(read_factors(j, ""));
  return ProductSpace(read_graph(j));
}

FnTable read_values(const Json& j, std::size_t size, const std::function<std::size_t(const std::string&)>& find) {
  const Json& vals = need(j, "values", "");
  if (vals.is_array()) {
    if (vals.size() != size)
      bad("values", "expected " + std::to_string(size) + " entries, got " + std::to_string(vals.size()));
    FnTable f;
    for (std::size_t i = 0; i < size; ++i) f.push_back(read_ext(vals[i], "values[" + std::to_string(i) + "]"));
    return f;
  }
  if (!vals.is_object()) bad("values", "expected an object or an array");
  std::vector<std::optional<ExtRat>> slots(size);
  for (auto it = vals.begin(); it != vals.end(); ++it) {
    const std::size_t id = find(it.key());
    if (slots[id]) bad("values." + it.key(), "given twice");
    slots[id] = read_ext(it.value(), "values." + it.key());
  }
  std::optional<ExtRat> fallback;
  if (j.contains("default")) fallback = read_ext(j.at("default"), "default");
  FnTable f;
  for (std::size_t i = 0; i < size; ++i) {
    if (!slots[i] && !fallback) bad("values", "no value for element #" + std::to_string(i) + " and no default");
    f.push_back(slots[i] ? *slots[i] : *fallback);
  }
  return f;
}

FnTable read_function(const Json& j, const Semilattice& lattice) {
  return read_values(j, lattice.size(), [&](const std::string& name) {
    auto e = lattice.poset().find(name);
    if (!e) bad("values." + name, "unknown element");
    return static_cast<std::size_t>(*e);
  });
}

FnTable read_function(const Json& j, const ProductSpace& space) {
  return read_values(j, space.size(), [&](const std::string& name) {
    try {
      return space.find(name);
    } catch (const Error&) {
      bad("values." + name, "unknown vertex");
    }
  });
}

Valuation read_valuation(const Json& j, const Semilattice& lattice) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "rank")) return rank_valuation(lattice);
  if (j.contains("alpha")) {
    std::vector<Rational> alpha;
    for (std::size_t i = 0; i < j.at("alpha").size(); ++i)
      alpha.push_back(read_rational(j.at("alpha")[i], "alpha[" + std::to_string(i) + "]"));
    Valuation v = alpha_valuation(alpha);
    if (v.size() != lattice.size()) bad("alpha", "length does not match the domain");
    return v;
  }
  FnTable t = read_function(j, lattice);
  Valuation v;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].is_inf()) bad("values", "a valuation must be finite");
    v.push_back(t[i].value());
  }
  return v;
}

ZeroExtInstance read_zero_ext(const Json& j) {
  Graph g = read_graph(need(j, "graph", ""));
  const int n = need_int(j, "n", "");
  if (n < 1) bad("n", "must be positive");
  ZeroExtInstance inst(g, n);
  if (j.contains("b")) {
    const Json& bs = j.at("b");
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const std::string f = "b[" + std::to_string(i) + "]";
      if (!bs[i].is_array() || bs[i].size() != 3) bad(f, "expected [variable, vertex, weight]");
      const int var = get_int(bs[i][0], f);
      if (var < 0 || var >= n) bad(f, "variable out of range");
      const Rational w = read_rational(bs[i][2], f);
      if (w < 0) bad(f, "negative weight");
      inst.add_b(var, vertex_of(g, bs[i][1], f), w);
    }
  }
  if (j.contains("c")) {
    const Json& cs = j.at("c");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string f = "c[" + std::to_string(i) + "]";
      if (!cs[i].is_array() || cs[i].size() != 3) bad(f, "expected [i, j, weight]");
      const int a = get_int(cs[i][0], f), b = get_int(cs[i][1], f);
      if (a < 0 || a >= n || b < 0 || b >= n || a == b) bad(f, "bad variable pair");
      const Rational w = read_rational(cs[i][2], f);
      if (w < 0) bad(f, "negative weight");
      inst.add_c(a, b, w);
    }
  }
  return inst;
}

Json write_zero_ext(const ZeroExtInstance& inst) {
  Json j;
  j["graph"] = write_graph(inst.graph);
  j["n"] = inst.n;
  Json b = Json::array();
  for (int i = 0; i < inst.n; ++i)
    for (std::size_t v = 0; v < inst.graph.size(); ++v)
      if (inst.b[i][v] != 0) b.push_back({i, inst.graph.name(static_cast<Vertex>(v)), to_string(inst.b[i][v])});
  j["b"] = b;
  Json c = Json::array();
  for (const PairWeight& p : inst.c) c.push_back({p.i, p.j, to_string(p.w)});
  j["c"] = c;
  return j;
}

CutInstance read_cut(const Json& j) {
  CutInstance cut;
  const Json& ns = need_array(j, "nodes", "");
  for (const Json& n : ns) cut.nodes.push_back(get_name(n, "nodes"));
  auto find = [&](const Json& e, const std::string& f) {
    const std::string n = get_name(e, f);
    for (std::size_t i = 0; i < cut.nodes.size(); ++i)
      if (cut.nodes[i] == n) return static_cast<int>(i);
    bad(f, "unknown node '" + n + "'");
  };
  const Json& es = need_array(j, "edges", "");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string f = "edges[" + std::to_string(i) + "]";
    if (!es[i].is_array() || es[i].size() < 2 || es[i].size() > 3) bad(f, "expected [u, v] or [u, v, capacity]");
    CutEdge e{find(es[i][0], f), find(es[i][1], f), Rational(1)};
    if (es[i].size() == 3) e.capacity = read_rational(es[i][2], f);
    cut.edges.push_back(e);
  }
  const Json& ts = need_array(j, "terminals", "");
  for (const Json& t : ts) cut.terminals.push_back(find(t, "terminals"));
  cut.validate();
  return cut;
}

Json write_cut(const CutInstance& cut) {
  Json j;
  j["nodes"] = cut.nodes;
  Json es = Json::array();
  for (const CutEdge& e : cut.edges) es.push_back({cut.nodes[e.u], cut.nodes[e.v], to_string(e.capacity)});
  j["edges"] = es;
  Json ts = Json::array();
  for (int t : cut.terminals) ts.push_back(cut.nodes[t]);
  j["terminals"] = ts;
  return j;
}

Json trace_json(const SDATrace& trace, const ProductSpace& space) {
  Json j;
  j["start"] = space.name(trace.start);
  j["terminal"] = space.name(trace.terminal);
  j["iterations"] = trace.iterations;
  Json it = Json::array(), vals = Json::array();
  for (Index x : trace.iterates) it.push_back(space.name(x));
  for (const ExtRat& v : trace.values) vals.push_back(write_ext(v));
  j["iterates"] = it;
  j["values"] = vals;
  j["certificate"] = trace.certificate ? Json(*trace.certificate) : Json(nullptr);
  j["exact_precondition"] = trace.exact_precondition;
  Json steps = Json::array();
  for (const SDAStep& s : trace.steps)
    steps.push_back({{"x", space.name(s.x)}, {"local_size", s.local_size}, {"chosen", space.name(s.chosen)}, {"value", write_ext(s.value)}});
  j["steps"] = steps;
  return j;
}

}  // namespace dca::io
