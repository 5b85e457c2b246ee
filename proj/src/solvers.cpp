#include "dca/solvers.hpp"

#include <algorithm>
#include <numeric>

#include "dca/error.hpp"

namespace dca {

namespace {

std::string label(int i) { return std::to_string(i); }

// |Γ|^n, saturating at budget + 1.
std::size_t power_size(std::size_t base, int n, std::size_t budget) {
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (base != 0 && total > budget / base) return budget + 1;
    total *= base;
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// Instances

ZeroExtInstance::ZeroExtInstance(Graph gamma, int variables)
    : n(variables), graph(std::move(gamma)) {
  if (n < 1) throw Error(ErrorCode::kBadInput, "n must be positive");
  b.assign(static_cast<std::size_t>(n), std::vector<Rational>(graph.size(), Rational(0)));
}

void ZeroExtInstance::add_b(int i, Vertex v, Rational w) {
  if (i < 0 || i >= n) throw Error(ErrorCode::kBadInput, "b: variable " + label(i) + " out of range");
  if (v < 0 || static_cast<std::size_t>(v) >= graph.size())
    throw Error(ErrorCode::kBadInput, "b: vertex " + label(v) + " out of range");
  b[i][v] += w;
}

void ZeroExtInstance::add_c(int i, int j, Rational w) {
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw Error(ErrorCode::kBadInput, "c: pair (" + label(i) + "," + label(j) + ") out of range");
  if (i == j) throw Error(ErrorCode::kBadInput, "c: pair (" + label(i) + "," + label(j) + ") is not a pair");
  c.push_back({std::min(i, j), std::max(i, j), w});
}

void ZeroExtInstance::validate() const {
  if (b.size() != static_cast<std::size_t>(n)) throw Error(ErrorCode::kBadInput, "b: one row per variable");
  for (int i = 0; i < n; ++i) {
    if (b[i].size() != graph.size()) throw Error(ErrorCode::kBadInput, "b: row " + label(i) + " has the wrong length");
    for (std::size_t v = 0; v < graph.size(); ++v)
      if (b[i][v] < 0) throw Error(ErrorCode::kBadInput, "b[" + label(i) + "][" + graph.name(static_cast<Vertex>(v)) + "] is negative");
  }
  for (const PairWeight& p : c) {
    if (p.i < 0 || p.i >= n || p.j < 0 || p.j >= n || p.i == p.j)
      throw Error(ErrorCode::kBadInput, "c: bad pair (" + label(p.i) + "," + label(p.j) + ")");
    if (p.w < 0) throw Error(ErrorCode::kBadInput, "c[" + label(p.i) + "," + label(p.j) + "] is negative");
  }
}

ExtRat zero_ext_objective(const ZeroExtInstance& inst, std::span<const Vertex> x) {
  if (x.size() != static_cast<std::size_t>(inst.n)) throw Error(ErrorCode::kBadInput, "labeling has the wrong length");
  Rational total(0);
  for (int i = 0; i < inst.n; ++i) {
    if (x[i] < 0 || static_cast<std::size_t>(x[i]) >= inst.graph.size())
      throw Error(ErrorCode::kBadInput, "label of variable " + label(i) + " out of range");
    for (std::size_t v = 0; v < inst.graph.size(); ++v)
      if (inst.b[i][v] != 0) total += inst.b[i][v] * inst.graph.metric(x[i], static_cast<Vertex>(v));
  }
  for (const PairWeight& p : inst.c) total += p.w * inst.graph.metric(x[p.i], x[p.j]);
  return total;
}

ZeroExtSolution solve_zero_ext_brute(const ZeroExtInstance& inst, std::size_t budget) {
  inst.validate();
  const std::size_t m = inst.graph.size();
  const std::size_t total = power_size(m, inst.n, budget);
  if (total > budget) throw Error(ErrorCode::kTooLarge, "|Γ|^n exceeds the brute-force budget");
  std::vector<Vertex> x(static_cast<std::size_t>(inst.n), 0);
  ZeroExtSolution best{x, Rational(0)};
  bool have = false;
  for (std::size_t step = 0; step < total; ++step) {
    const Rational v = zero_ext_objective(inst, x).value();
    if (!have || v < best.value) {
      best = {x, v};
      have = true;
    }
    for (std::size_t i = x.size(); i-- > 0;) {
      if (static_cast<std::size_t>(++x[i]) < m) break;
      x[i] = 0;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Relaxation on Γ*

StarRelaxation::StarRelaxation(const Graph& base) : map_(barycentric_subdivision(base)) {
  const Graph& s = map_.star;
  for (Vertex x = 0; x < static_cast<Vertex>(base.size()); ++x)
    for (Vertex y = 0; y < static_cast<Vertex>(base.size()); ++y)
      ensure(s.metric(map_.embed[x], map_.embed[y]) == base.metric(x, y), "subdivision is not isometric");

  ProductSpace one(s);
  for (Vertex v = 0; v < static_cast<Vertex>(base.size()); ++v) {
    FnTable h(s.size());
    for (Vertex u = 0; u < static_cast<Vertex>(s.size()); ++u) h[u] = s.metric(u, map_.embed[v]);
    LConvexReport r = is_l_convex(one, h);
    if (!r.l_convex) throw Error(ErrorCode::kNotLConvex, "d*(., " + base.name(v) + ") is not L-convex: " + r.reason);
  }
  ProductSpace two = ProductSpace::power(s, 2);
  FnTable d(two.size());
  for (Index u = 0; u < two.size(); ++u) d[u] = s.metric(two.coord(u, 0), two.coord(u, 1));
  LConvexReport r = is_l_convex(two, d);
  if (!r.l_convex) throw Error(ErrorCode::kNotLConvex, "d* is not L-convex on the square: " + r.reason);

  for (Vertex u = 0; u < static_cast<Vertex>(s.size()); ++u)
    for (Vertex v = 0; v < static_cast<Vertex>(s.size()); ++v)
      delta_diameter_ = std::max(delta_diameter_, one.delta_dist(u, v));
}

StarSpace StarRelaxation::power(int n) const {
  return StarSpace{ProductSpace::power(map_.star, n), std::vector<SubdivisionMap>(static_cast<std::size_t>(n), map_)};
}

std::vector<std::vector<Rational>> StarRelaxation::b_costs(const ZeroExtInstance& inst) const {
  if (inst.graph.size() != map_.embed.size()) throw Error(ErrorCode::kBadInput, "instance graph does not match");
  const Graph& s = map_.star;
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(inst.n), std::vector<Rational>(s.size(), Rational(0)));
  for (int i = 0; i < inst.n; ++i)
    for (Vertex u = 0; u < static_cast<Vertex>(s.size()); ++u)
      for (std::size_t v = 0; v < inst.graph.size(); ++v)
        if (inst.b[i][v] != 0) out[i][u] += inst.b[i][v] * s.metric(u, map_.embed[v]);
  return out;
}

ExtRat StarRelaxation::evaluate(const ZeroExtInstance& inst, const std::vector<std::vector<Rational>>& bstar,
                                const StarSpace& star, Index u) const {
  const Graph& s = map_.star;
  Rational total(0);
  for (int i = 0; i < inst.n; ++i) total += bstar[i][star.space.coord(u, i)];
  for (const PairWeight& p : inst.c) total += p.w * s.metric(star.space.coord(u, p.i), star.space.coord(u, p.j));
  return total;
}

Evaluator StarRelaxation::objective(const ZeroExtInstance& inst) const {
  auto bstar = std::make_shared<std::vector<std::vector<Rational>>>(b_costs(inst));
  auto star = std::make_shared<StarSpace>(power(inst.n));
  return [this, &inst, bstar, star](Index u) { return evaluate(inst, *bstar, *star, u); };
}

// ---------------------------------------------------------------------------
// Exact 0-extension

namespace {

Graph orient_modular(const Graph& gamma) {
  if (!is_modular_graph(gamma).holds) throw Error(ErrorCode::kNotOrientedModular, "target graph is not modular");
  if (gamma.oriented()) {
    GraphReport r = is_admissible_orientation(gamma);
    if (!r.holds) throw Error(ErrorCode::kNotOrientedModular, "orientation is not admissible: " + r.reason);
    return gamma;
  }
  auto arcs = find_admissible_orientation(gamma);
  if (!arcs) throw Error(ErrorCode::kNotOrientedModular, "target graph has no admissible orientation");
  return gamma.with_orientation(*arcs);
}

}  // namespace

ZeroExtSolver::ZeroExtSolver(const Graph& gamma, ZeroExtOptions options)
    : oriented_(orient_modular(gamma)),
      options_(std::move(options)),
      relax_(std::make_unique<StarRelaxation>(oriented_)) {}

ZeroExtSolver::~ZeroExtSolver() = default;
ZeroExtSolver::ZeroExtSolver(ZeroExtSolver&&) noexcept = default;

ZeroExtResult ZeroExtSolver::solve(const ZeroExtInstance& inst, std::optional<std::vector<Vertex>> start) const {
  inst.validate();
  if (inst.graph.names() != oriented_.names() || inst.graph.edges() != oriented_.edges())
    throw Error(ErrorCode::kBadInput, "instance graph differs from the solver's graph");
  const ProductSpace base = ProductSpace::power(oriented_, inst.n);
  const StarSpace star = relax_->power(inst.n);
  const auto bstar = relax_->b_costs(inst);
  Evaluator g = [&](Index u) { return relax_->evaluate(inst, bstar, star, u); };
  auto h = [&](Index x) { return zero_ext_objective(inst, base.coords(x)); };

  ZeroExtResult out;
  if (star.space.size() <= options_.full_check_limit) {
    auto& checker = checkers_[inst.n];
    if (!checker) checker = std::make_unique<LConvexChecker>(star.space);
    FnTable table(star.space.size());
    for (Index u = 0; u < table.size(); ++u) table[u] = g(u);
    LConvexReport r = checker->check(table);
    ensure(r.l_convex, "relaxation of the instance is not L-convex: " + r.reason);
    out.full_check = true;
  }

  std::vector<Vertex> x0 = start.value_or(std::vector<Vertex>(static_cast<std::size_t>(inst.n), 0));
  if (x0.size() != static_cast<std::size_t>(inst.n)) throw Error(ErrorCode::kBadInput, "start has the wrong length");
  for (Vertex v : x0)
    if (v < 0 || static_cast<std::size_t>(v) >= oriented_.size()) throw Error(ErrorCode::kBadInput, "start vertex out of range");
  out.trace = sda_minimize(star.space, g, star.embed(base.index(x0), base), options_.sda);

  const Index u = out.trace.terminal;
  auto [x, y] = star.endpoints(u, base);
  const ExtRat gu = g(u), hx = h(x), hy = h(y);
  ensure(gu == (hx + hy) / Rational(2), "relaxation identity fails at " + star.space.name(u));
  ensure(hx == gu && hy == gu, "interval endpoints are not optimal");
  out.x = base.coords(x);
  out.y = base.coords(y);
  out.value = gu.value();
  out.star_delta_diameter = relax_->delta_diameter();
  out.bound_ok = out.trace.iterations <= out.star_delta_diameter + 2 &&
                 (!out.trace.certificate || out.trace.iterations <= *out.trace.certificate + 2);
  return out;
}

ZeroExtResult solve_zero_ext_sda(const ZeroExtInstance& inst, const ZeroExtOptions& options) {
  return ZeroExtSolver(inst.graph, options).solve(inst);
}

// ---------------------------------------------------------------------------
// Multiway cut

void CutInstance::validate() const {
  const int n = static_cast<int>(nodes.size());
  if (n == 0) throw Error(ErrorCode::kBadInput, "nodes: empty network");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const CutEdge& ce = edges[e];
    if (ce.u < 0 || ce.u >= n || ce.v < 0 || ce.v >= n)
      throw Error(ErrorCode::kBadInput, "edges[" + std::to_string(e) + "]: endpoint out of range");
    if (ce.u == ce.v) throw Error(ErrorCode::kBadInput, "edges[" + std::to_string(e) + "]: loop");
    if (ce.capacity < 0) throw Error(ErrorCode::kBadInput, "edges[" + std::to_string(e) + "]: negative capacity");
  }
  if (terminals.size() < 2) throw Error(ErrorCode::kBadInput, "terminals: need at least two");
  std::vector<int> t = terminals;
  std::sort(t.begin(), t.end());
  if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw Error(ErrorCode::kBadInput, "terminals: not distinct");
  if (t.front() < 0 || t.back() >= n) throw Error(ErrorCode::kBadInput, "terminals: out of range");
}

Rational CutInstance::cut_value(std::span<const int> labels) const {
  Rational total(0);
  for (const CutEdge& e : edges)
    if (labels[e.u] != labels[e.v]) total += e.capacity;
  return total;
}

bool CutInstance::separates(std::span<const int> labels) const {
  std::vector<int> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const CutEdge& e : edges)
    if (labels[e.u] == labels[e.v]) parent[find(e.u)] = find(e.v);
  std::vector<int> roots;
  for (int t : terminals) roots.push_back(find(t));
  std::sort(roots.begin(), roots.end());
  return std::adjacent_find(roots.begin(), roots.end()) == roots.end();
}

ZeroExtInstance multiway_cut_encoding(const CutInstance& cut) {
  cut.validate();
  const int k = static_cast<int>(cut.terminals.size());
  ZeroExtInstance inst(complete_graph(k), static_cast<int>(cut.nodes.size()));
  Rational pin(1);
  for (const CutEdge& e : cut.edges) pin += e.capacity;
  for (int j = 0; j < k; ++j) inst.add_b(cut.terminals[j], j, pin);
  for (const CutEdge& e : cut.edges)
    if (e.capacity != 0) inst.add_c(e.u, e.v, e.capacity);
  return inst;
}

MultiwayCutResult solve_multiway_cut(const CutInstance& cut, const MultiwayCutOptions& options) {
  const ZeroExtInstance inst = multiway_cut_encoding(cut);
  const std::size_t k = cut.terminals.size();
  if (power_size(k + 1, inst.n, options.budget) > options.budget)
    throw Error(ErrorCode::kTooLarge, "relaxation space exceeds the budget");

  const StarRelaxation relax(inst.graph);
  const ProductSpace base = ProductSpace::power(inst.graph, inst.n);
  const StarSpace star = relax.power(inst.n);
  const auto bstar = relax.b_costs(inst);
  Evaluator g = [&](Index u) { return relax.evaluate(inst, bstar, star, u); };
  Evaluator h = [&](Index x) { return zero_ext_objective(inst, base.coords(x)); };

  // Start with every variable at the centre (the whole label set).
  Vertex centre = 0;
  for (Vertex s = 0; s < static_cast<Vertex>(relax.star().size()); ++s)
    if (relax.map().sets[s].count() == k) centre = s;
  const std::vector<Vertex> c0(static_cast<std::size_t>(inst.n), centre);
  SDATrace trace = sda_minimize(star.space, g, star.space.index(c0), options.sda);

  MultiwayCutResult out;
  const Index xs = trace.terminal;
  out.relaxation.relaxed_value = g(xs).value();
  out.relaxation.sda_iterations = trace.iterations;
  out.relaxation.candidates = 1;
  for (const auto& m : star.members(xs)) {
    out.relaxation.candidates *= m.size();
    if (m.size() > 1) ++out.relaxation.free_variables;
  }
  if (out.relaxation.candidates > options.budget) throw Error(ErrorCode::kTooLarge, "persistency filter exceeds the budget");
  const Index x = persistency_round(base, star, h, xs, options.budget);

  for (Vertex v : base.coords(x)) out.labels.push_back(v);
  for (std::size_t j = 0; j < k; ++j)
    ensure(out.labels[cut.terminals[j]] == static_cast<int>(j), "terminal pin violated");
  out.value = cut.cut_value(out.labels);
  ensure(h(x) == ExtRat(out.value), "encoding objective differs from the cut capacity");
  ensure(cut.separates(out.labels), "labeling does not separate the terminals");
  for (std::size_t e = 0; e < cut.edges.size(); ++e)
    if (out.labels[cut.edges[e].u] != out.labels[cut.edges[e].v]) out.cut_edges.push_back(e);
  out.relaxation.half_integral_gap = out.relaxation.relaxed_value < out.value;
  return out;
}

}  // namespace dca
