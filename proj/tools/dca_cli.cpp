// dca: command-line front end for the recognition, checking and solver kernels.
#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

#include "dca/error.hpp"
#include "dca/io.hpp"
#include "dca/lconvex.hpp"
#include "dca/midpoint.hpp"
#include "dca/solvers.hpp"
#include "dca/submodular.hpp"

using namespace dca;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

const char* yes(bool b) { return b ? "true" : "false"; }

std::string tuple_names(const Graph& g, std::span<const Vertex> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + g.name(x[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------

int verify(const std::string& path) {
  Json j = io::load_file(path);
  if (io::looks_like_poset(j)) {
    std::cout << "kind: poset\n";
    io::LatticeSpec spec = io::read_lattice(j);
    const Semilattice& l = spec.lattice;
    std::cout << "elements: " << l.size() << "\n";
    std::cout << "graded: " << yes(l.poset().graded()) << "\n";
    std::cout << "semilattice: true\n";
    ModularityReport m = is_modular_semilattice(l);
    std::cout << "modular: " << yes(m.modular) << "\n";
    if (!m.modular) std::cout << "modular_reason: " << m.reason << "\n";
    const bool comp = m.modular && is_complemented(l);
    std::cout << "complemented: " << yes(comp) << "\n";
    if (comp) {
      PolarReport p = is_polar_space(l);
      std::cout << "polar: " << yes(p.polar) << "\n";
      if (p.polar) std::cout << "frames: " << p.frames.size() << "\n";
      else std::cout << "polar_reason: " << p.reason << "\n";
    } else {
      std::cout << "polar: false\n";
    }
    return kOk;
  }
  if (!io::looks_like_graph(j)) throw Error(ErrorCode::kBadInput, path + ": neither a graph nor a poset");
  Graph g = io::read_graph(j);
  std::cout << "kind: graph\n";
  std::cout << "vertices: " << g.size() << "\n";
  std::cout << "edges: " << g.edge_count() << "\n";
  std::cout << "diameter: " << g.diameter() << "\n";
  std::cout << "bipartite: " << yes(is_bipartite(g)) << "\n";
  GraphReport mod = is_modular_graph(g);
  GraphReport wm = is_weakly_modular(g);
  std::cout << "modular: " << yes(mod.holds) << "\n";
  std::cout << "weakly_modular: " << yes(wm.holds) << "\n";
  const bool swm = wm.holds && is_swm(g).holds;
  std::cout << "swm: " << yes(swm) << "\n";
  const bool orientable = mod.holds && find_admissible_orientation(g).has_value();
  std::cout << "orientable: " << yes(orientable) << "\n";
  std::cout << "oriented: " << yes(g.oriented()) << "\n";
  if (g.oriented()) {
    GraphReport adm = is_admissible_orientation(g);
    std::cout << "admissible: " << yes(adm.holds) << "\n";
    if (mod.holds && adm.holds) std::cout << "well_oriented: " << yes(g.well_oriented()) << "\n";
  }
  if (swm) std::cout << "boolean_gated_sets: " << boolean_gated_sets(g).size() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

int check_submodular(const std::string& fn_path, const std::string& val_path) {
  Json j = io::load_file(fn_path);
  if (!j.contains("domain")) throw Error(ErrorCode::kBadInput, "field 'domain': missing");
  io::LatticeSpec spec = io::read_lattice(j.at("domain"));
  const Semilattice& l = spec.lattice;
  FnTable f = io::read_function(j, l);
  Json vj = val_path.empty() ? Json(nullptr) : io::load_file(val_path);
  Valuation v = io::read_valuation(vj, l);
  ValuationReport vr = validate_valuation(l, v);
  if (!vr.valid) throw Error(ErrorCode::kBadInput, "valuation: " + vr.reason);

  SubmodularReport r = is_submodular(l, f, v);
  std::cout << "submodular: " << yes(r.submodular) << "\n";
  if (r.witness) {
    auto [p, q] = *r.witness;
    std::cout << "witness: " << l.name(p) << " " << l.name(q) << " (f(p)+f(q) = " << r.lhs << " < " << r.rhs << ")\n";
  }
  const bool rank = vj.is_null() || vj.is_string();
  if (rank && spec.family == "sk") {
    KSubmodularReport k = is_k_submodular(spec.k, spec.n, f);
    std::cout << "k_submodular: " << yes(k.k_submodular) << "\n";
  }
  if (!vj.is_null() && vj.contains("alpha")) {
    std::vector<Rational> alpha;
    for (const Json& a : vj.at("alpha")) alpha.push_back(io::read_rational(a, "alpha"));
    AlphaReport a = is_alpha_bisubmodular(f, alpha);
    std::cout << "alpha_bisubmodular: " << yes(a.alpha_bisubmodular) << "\n";
    std::cout << "closed_form_matches: " << yes(a.formula_matches) << "\n";
  }
  if (rank && l.size() <= 200 && is_modular_semilattice(l).modular && is_complemented(l) && is_polar_space(l).polar) {
    PolarSubmodularReport p = is_polar_submodular(l, f);
    std::cout << "polar_checks: fractional_join=" << yes(p.by_fractional_join) << " pseudo_join=" << yes(p.by_pseudo_join)
              << " frames=" << yes(p.by_frames) << "\n";
  }
  return r.submodular ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

ProductSpace oriented_space(const std::string& path) {
  ProductSpace s = io::read_space(io::load_file(path));
  if (!s.oriented())
    throw Error(ErrorCode::kBadInput, path + ": graph has no orientation (add \"orient\": \"admissible\")");
  return s;
}

FnTable function_on(const std::string& path, const ProductSpace& s) { return io::read_function(io::load_file(path), s); }

int check_lconvex(const std::string& graph_path, const std::string& fn_path) {
  ProductSpace s = oriented_space(graph_path);
  FnTable f = function_on(fn_path, s);
  LConvexReport r = is_l_convex(s, f);
  std::cout << "l_convex: " << yes(r.l_convex) << "\n";
  std::cout << "domain_connected: " << yes(r.domain_connected) << "\n";
  if (r.by_neighborhood) std::cout << "neighborhood_criterion: " << yes(*r.by_neighborhood) << "\n";
  if (r.by_filter_ideal) std::cout << "filter_ideal_criterion: " << yes(*r.by_filter_ideal) << "\n";
  if (r.witness_vertex) std::cout << "witness_vertex: " << s.name(*r.witness_vertex) << "\n";
  if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
  return r.l_convex ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

int minimize(const std::string& graph_path, const std::string& fn_path, const std::string& start_name,
             const std::string& trace_path, std::optional<std::uint64_t> seed) {
  ProductSpace s = oriented_space(graph_path);
  FnTable f = function_on(fn_path, s);
  Index x0 = 0;
  if (start_name.empty()) {
    while (x0 < f.size() && f[x0].is_inf()) ++x0;
    if (x0 == f.size()) throw Error(ErrorCode::kBadInput, "function is +inf everywhere");
  } else {
    x0 = s.find(start_name);
  }
  if (s.size() <= 20000) {
    LConvexReport r = is_l_convex(s, f);
    if (!r.l_convex) {
      std::cout << "l_convex: false\nreason: " << r.reason << "\n";
      return kFailed;
    }
    std::cout << "l_convex: true\n";
  }
  SDAOptions opt;
  opt.tie_seed = seed;
  SDATrace t = sda_minimize(s, f, x0, opt);
  Evaluator g = [&](Index x) { return f[x]; };
  IterationBoundReport b = iteration_bound_report(t, s, g);
  std::cout << "start: " << s.name(t.start) << "\n";
  std::cout << "optimum: " << s.name(t.terminal) << "\n";
  std::cout << "value: " << f[t.terminal] << "\n";
  std::cout << "N: " << b.iterations << "\n";
  std::cout << "d_delta: " << b.d_delta << "\n";
  std::cout << "well_oriented: " << yes(b.well_oriented) << "\n";
  std::cout << "bound: " << (b.bound_ok ? "ok" : "violated") << " (N <= d_delta + 2)\n";
  if (b.exact_case) std::cout << "exact_case: N == d_delta " << (b.exact_ok ? "holds" : "fails") << "\n";
  bool ok = b.bound_ok && (!b.exact_case || b.exact_ok);
  if (!b.well_oriented) {
    // The bound is stated for well-oriented spaces; report the run on the subdivision as well.
    LiftedSDA lifted = sda_minimize_lifted(s, f, x0, opt);
    Evaluator gs = [&](Index x) { return lifted.g_star[x]; };
    IterationBoundReport lb = iteration_bound_report(lifted.trace, lifted.star.space, gs);
    std::cout << "subdivision_N: " << lb.iterations << "\n";
    std::cout << "subdivision_d_delta: " << lb.d_delta << "\n";
    std::cout << "subdivision_bound: " << (lb.bound_ok ? "ok" : "violated") << "\n";
    ok = lb.bound_ok && (!lb.exact_case || lb.exact_ok);
  }
  if (!trace_path.empty()) io::save_file(trace_path, io::trace_json(t, s).dump(2) + "\n");
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

int solve_0ext(const std::string& path, std::optional<std::uint64_t> seed) {
  ZeroExtInstance inst = io::read_zero_ext(io::load_file(path));
  ZeroExtOptions opt;
  opt.sda.tie_seed = seed;
  ZeroExtSolver solver(inst.graph, opt);
  ZeroExtResult r = solver.solve(inst);
  std::cout << "value: " << to_string(r.value) << "\n";
  std::cout << "labeling: " << tuple_names(inst.graph, r.x) << "\n";
  if (r.y != r.x) std::cout << "also_optimal: " << tuple_names(inst.graph, r.y) << "\n";
  std::cout << "iterations: " << r.trace.iterations << "\n";
  std::cout << "star_delta_diameter: " << r.star_delta_diameter << "\n";
  std::cout << "bound: " << (r.bound_ok ? "ok" : "violated") << "\n";
  std::cout << "relaxation_checked: " << (r.full_check ? "whole" : "per term") << "\n";
  return r.bound_ok ? kOk : kFailed;
}

int solve_cut(const std::string& path, std::optional<std::uint64_t> seed) {
  CutInstance cut = io::read_cut(io::load_file(path));
  MultiwayCutOptions opt;
  opt.sda.tie_seed = seed;
  MultiwayCutResult r = solve_multiway_cut(cut, opt);
  std::cout << "value: " << to_string(r.value) << "\n";
  std::cout << "labels:";
  for (std::size_t i = 0; i < r.labels.size(); ++i)
    std::cout << " " << cut.nodes[i] << "=" << cut.nodes[cut.terminals[r.labels[i]]];
  std::cout << "\ncut_edges:";
  for (std::size_t e : r.cut_edges) std::cout << " " << cut.nodes[cut.edges[e].u] << "-" << cut.nodes[cut.edges[e].v];
  std::cout << "\nrelaxed_value: " << to_string(r.relaxation.relaxed_value) << "\n";
  std::cout << "relaxation_iterations: " << r.relaxation.sda_iterations << "\n";
  std::cout << "free_variables: " << r.relaxation.free_variables << "\n";
  std::cout << "persistency_candidates: " << r.relaxation.candidates << "\n";
  std::cout << "feasible: " << yes(cut.separates(r.labels)) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct BenchFamily {
  std::string name;
  ProductSpace space;
};

BenchFamily bench_family(const std::string& name) {
  if (name == "alternating_grid") return {name, alternating_grid(2, 0, 6).space()};
  if (name == "k3k3_star") {
    Graph s = barycentric_subdivision(complete_graph(3)).star;
    return {name, ProductSpace({s, s})};
  }
  if (name == "zigzag_tree") return {name, zigzag_tree_product({star_tree(3), star_tree(2)}).space()};
  if (name == "cube_star") return {name, ProductSpace(barycentric_subdivision(cube_graph(2)).star)};
  throw Error(ErrorCode::kBadInput, "unknown family '" + name + "' (alternating_grid, k3k3_star, zigzag_tree, cube_star)");
}

int bench_sda(const std::string& family, int seeds, std::uint64_t seed) {
  if (seeds < 1) throw Error(ErrorCode::kBadInput, "--seeds must be positive");
  BenchFamily fam = bench_family(family);
  const ProductSpace& s = fam.space;
  std::cout << "family,seed,n,start,dDelta,N,bound_ok,exact_case\n";
  bool all_ok = true;
  for (int i = 0; i < seeds; ++i) {
    const std::uint64_t sd = seed + static_cast<std::uint64_t>(i);
    std::mt19937_64 rng(sd);
    FnTable f = random_l_convex(s, rng);
    std::vector<Index> dom;
    for (Index x = 0; x < f.size(); ++x)
      if (f[x].is_finite()) dom.push_back(x);
    const Index x0 = dom[rng() % dom.size()];
    SDATrace t = sda_minimize(s, f, x0);
    Evaluator g = [&](Index x) { return f[x]; };
    IterationBoundReport b = iteration_bound_report(t, s, g);
    const bool ok = b.bound_ok && (!b.exact_case || b.exact_ok);
    all_ok = all_ok && ok;
    std::cout << fam.name << "," << sd << "," << s.size() << ",\"" << s.name(x0) << "\"," << b.d_delta << ","
              << b.iterations << "," << yes(b.bound_ok) << "," << yes(b.exact_case) << "\n";
  }
  return all_ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

int oracle(const std::string& path, bool brute) {
  if (!brute) throw Error(ErrorCode::kBadInput, "oracle needs --brute");
  Json j = io::load_file(path);
  if (j.contains("terminals")) {
    CutInstance cut = io::read_cut(j);
    ZeroExtSolution b = solve_zero_ext_brute(multiway_cut_encoding(cut));
    MultiwayCutResult r = solve_multiway_cut(cut);
    std::cout << "brute_value: " << to_string(b.value) << "\n";
    std::cout << "solver_value: " << to_string(r.value) << "\n";
    std::cout << "match: " << yes(b.value == r.value) << "\n";
    return b.value == r.value ? kOk : kFailed;
  }
  if (j.contains("graph") && j.contains("n")) {
    ZeroExtInstance inst = io::read_zero_ext(j);
    ZeroExtSolution b = solve_zero_ext_brute(inst);
    std::cout << "brute_value: " << to_string(b.value) << "\n";
    std::cout << "brute_labeling: " << tuple_names(inst.graph, b.x) << "\n";
    try {
      ZeroExtResult r = solve_zero_ext_sda(inst);
      std::cout << "solver_value: " << to_string(r.value) << "\n";
      std::cout << "match: " << yes(b.value == r.value) << "\n";
      return b.value == r.value ? kOk : kFailed;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotOrientedModular) throw;
      std::cout << "solver: not applicable (" << e.what() << ")\n";
      return kOk;
    }
  }
  if (j.contains("domain") && io::looks_like_graph(j.at("domain"))) {
    ProductSpace s = io::read_space(j.at("domain"));
    FnTable f = io::read_function(j, s);
    const Index m = argmin(f);
    std::cout << "brute_value: " << f[m] << "\nbrute_minimizer: " << s.name(m) << "\n";
    if (!s.oriented() || f[m].is_inf()) return kOk;
    Index x0 = 0;
    while (f[x0].is_inf()) ++x0;
    SDATrace t = sda_minimize(s, f, x0);
    std::cout << "solver_value: " << f[t.terminal] << "\nmatch: " << yes(f[t.terminal] == f[m]) << "\n";
    return f[t.terminal] == f[m] ? kOk : kFailed;
  }
  throw Error(ErrorCode::kBadInput, path + ": expected a 0-extension instance, a cut instance or a function on a graph");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks and solvers for submodular and L-convex functions"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Seed for randomized tie-breaking and benchmarks");

  std::string a, b, start, trace, family;
  int seeds = 10;
  bool brute = false;

  auto* c_verify = app.add_subcommand("verify", "Structure recognition report for a graph or poset file");
  c_verify->add_option("file", a)->required();
  auto* c_sub = app.add_subcommand("check-submodular", "Submodularity of a function on a semilattice");
  c_sub->add_option("fn", a)->required();
  c_sub->add_option("valuation", b);
  auto* c_lc = app.add_subcommand("check-lconvex", "L-convexity of a function on an oriented modular graph");
  c_lc->add_option("graph", a)->required();
  c_lc->add_option("fn", b)->required();
  auto* c_min = app.add_subcommand("minimize", "Steepest descent with the iteration-bound report");
  c_min->add_option("graph", a)->required();
  c_min->add_option("fn", b)->required();
  c_min->add_option("--start", start, "Start vertex name");
  c_min->add_option("--trace", trace, "Write the trace as JSON");
  auto* c_0ext = app.add_subcommand("solve-0ext", "Minimum 0-extension through the relaxation on the subdivision");
  c_0ext->add_option("instance", a)->required();
  auto* c_cut = app.add_subcommand("solve-multiway-cut", "Multiway cut by relaxation and persistency");
  c_cut->add_option("instance", a)->required();
  auto* c_bench = app.add_subcommand("bench-sda", "CSV of SDA iteration counts on random L-convex functions");
  c_bench->add_option("family", family)->required();
  c_bench->add_option("--seeds", seeds, "Number of seeds");
  auto* c_oracle = app.add_subcommand("oracle", "Brute-force comparison");
  c_oracle->add_option("file", a)->required();
  c_oracle->add_flag("--brute", brute, "Enumerate all states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*c_verify) return verify(a);
    if (*c_sub) return check_submodular(a, b);
    if (*c_lc) return check_lconvex(a, b);
    if (*c_min) return minimize(a, b, start, trace, seed);
    if (*c_0ext) return solve_0ext(a, seed);
    if (*c_cut) return solve_cut(a, seed);
    if (*c_bench) return bench_sda(family, seeds, seed.value_or(1));
    if (*c_oracle) return oracle(a, brute);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool failed = e.code() == ErrorCode::kNotLConvex || e.code() == ErrorCode::kInvariantViolated;
    return failed ? kFailed : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
