// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Limits are wall-clock seconds and are part of the verdict.

#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "dca/error.hpp"
#include "dca/lconvex.hpp"
#include "dca/lovasz.hpp"
#include "dca/midpoint.hpp"
#include "dca/solvers.hpp"

using namespace dca;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report.
class Tally {
 public:
  void expect(bool cond, const std::string& what) {
    ++checks_;
    if (cond) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { extra_ += (extra_.empty() ? "" : ", ") + s; }
  Outcome outcome() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (!extra_.empty()) os << ", " << extra_;
    if (failures_) os << ", " << failures_ << " failed: " << notes_;
    return {failures_ == 0, os.str()};
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string notes_;
  std::string extra_;
};

std::string str(const Rational& r) { return to_string(r); }

// ---------------------------------------------------------------------------
// 1. Cones of the three operations on S_2 under v_alpha.

Outcome s2_cones() {
  Tally t;
  const Semilattice s2 = make_sk(2);
  const Elem plus = testutil::elem(s2, "+"), minus = testutil::elem(s2, "-");
  for (Rational a : {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(1)}) {
    std::vector<Rational> alpha{a};
    const Valuation v = alpha_valuation(alpha);
    // sqcup_+ sends both incomparable pairs to +.
    BinaryOp sq_plus = pseudo_join_table(s2);
    sq_plus[plus * 3 + minus] = plus;
    sq_plus[minus * 3 + plus] = plus;

    const SlopeCone want_l{ExtRat(0), ExtRat(a)};
    const SlopeCone want_r{ExtRat(1 / a), ExtRat::infinity()};
    auto cl = operation_cone(s2, v, left_join_table(s2));
    auto cr = operation_cone(s2, v, right_join_table(s2));
    auto cs = operation_cone(s2, v, sq_plus);
    t.expect(cl && *cl == want_l, "v_L cone at alpha " + str(a));
    t.expect(cr && *cr == want_r, "v_R cone at alpha " + str(a));
    if (a < 1) {
      t.expect(cs && *cs == SlopeCone{ExtRat(a), ExtRat(1 / a)}, "sqcup_+ cone at alpha " + str(a));
    } else {
      // Cone(1,1) is a ray: no interior.
      t.expect(!cs, "sqcup_+ should be thin at alpha 1");
    }
    // The computed operation: measures 1/(1+lo) - 1/(1+hi) summing to 1.
    auto ops = fractional_join_operation(s2, v);
    Rational total = 0;
    for (const auto& op : ops) {
      total += op.weight;
      const Rational lo = op.cone.lo.value();
      const Rational m = 1 / (1 + lo) - (op.cone.hi.is_inf() ? Rational(0) : 1 / (1 + op.cone.hi.value()));
      t.expect(op.weight == m, "operation weight is not its cone measure");
    }
    t.expect(total == 1, "weights do not sum to 1");
    t.expect(ops.size() == (a < 1 ? 3u : 2u), "operation count at alpha " + str(a));
    for (const auto& op : ops) {
      const bool known = op.table == left_join_table(s2) || op.table == right_join_table(s2) || op.table == sq_plus;
      t.expect(known, "unexpected operation in the fractional join");
    }
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 2. Fractional join = 1/2 v_L + 1/2 v_R on polar spaces.

// Boolean-gated sets of g under reverse inclusion.
Semilattice subdivision_lattice(const Graph& g) {
  const SubdivisionMap m = barycentric_subdivision(g);
  std::vector<std::string> names(m.sets.size());
  for (std::size_t i = 0; i < names.size(); ++i) names[i] = "s" + std::to_string(i);
  return Semilattice(Poset::from_relation(names, [&](Elem a, Elem b) { return m.sets[b].is_subset_of(m.sets[a]); }));
}

Outcome polar_fractional_join() {
  Tally t;
  struct Case {
    std::string name;
    Semilattice lattice;
  };
  std::vector<Case> cases{{"S_3^2", make_sk_power(3, 2)},
                          {"S_4", make_sk(4)},
                          {"S_{2,2}", make_skl(2, 2)},
                          {"K_3*", subdivision_lattice(complete_graph(3))},
                          {"K_{2,3}*", subdivision_lattice(complete_bipartite(2, 3))}};
  for (const auto& c : cases) {
    const Semilattice& l = c.lattice;
    t.expect(is_polar_space(l).polar, c.name + " is not polar");
    const Valuation v = rank_valuation(l);
    const auto n = static_cast<Elem>(l.size());
    long pairs = 0;
    for (Elem p = 0; p < n; ++p) {
      for (Elem q = 0; q < n; ++q) {
        const FracJoin fj = fractional_join(l, p, q, v);
        const Elem a = left_join(l, p, q), b = right_join(l, p, q);
        bool same = fj.total() == 1;
        for (Elem u = 0; u < n; ++u) {
          Rational want = (u == a ? Rational(1, 2) : Rational(0)) + (u == b ? Rational(1, 2) : Rational(0));
          same = same && fj.weight_of(u) == want;
        }
        t.expect(same, c.name + " pair (" + l.name(p) + "," + l.name(q) + ")");
        ++pairs;
      }
    }
    t.note(c.name + ":" + std::to_string(pairs));
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 3. Three polar verdicts.

// Random table, or a nonnegative sum of distances plus a little noise.
FnTable random_polar_function(const Semilattice& l, std::mt19937& rng) {
  if (rng() % 2) return testutil::random_table(l.size(), rng);
  FnTable f(l.size(), ExtRat(0));
  const int terms = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < terms; ++k) {
    const Elem c = static_cast<Elem>(rng() % l.size());
    const int w = 1 + static_cast<int>(rng() % 3);
    for (Elem e = 0; e < static_cast<Elem>(l.size()); ++e) f[e] += ExtRat(w * l.dist(c, e));
  }
  if (rng() % 2) f[rng() % l.size()] += ExtRat(1);
  return f;
}

Outcome polar_three_way() {
  Tally t;
  std::mt19937 rng(301);
  struct Case {
    std::string name;
    Semilattice lattice;
  };
  for (const auto& c : std::vector<Case>{{"S_2^2", make_sk_power(2, 2)},
                                         {"S_3^2", make_sk_power(3, 2)},
                                         {"S_{2,3}", make_skl(2, 3)}}) {
    PolarSubmodularChecker checker(c.lattice);
    int yes = 0;
    for (int i = 0; i < 500; ++i) {
      FnTable f = random_polar_function(c.lattice, rng);
      try {
        auto r = checker.check(f);
        t.expect(r.by_fractional_join == r.by_pseudo_join && r.by_pseudo_join == r.by_frames,
                 c.name + " verdicts differ");
        t.expect(r.submodular || r.witness.has_value(), c.name + " no witness");
        yes += r.submodular;
      } catch (const Error& e) {
        t.expect(false, c.name + ": " + e.what());
      }
    }
    t.note(c.name + " submodular " + std::to_string(yes) + "/500");
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 4. k-submodular and alpha-bisubmodular.

bool k_submodular_oracle(const FnTable& f, int k, int n) {
  auto meet = [](int a, int b) { return a == b ? a : 0; };
  auto sqcup = [](int a, int b) { return a == 0 ? b : b == 0 ? a : a == b ? a : 0; };
  const int size = static_cast<int>(f.size());
  for (int p = 0; p < size; ++p) {
    for (int q = 0; q < size; ++q) {
      auto a = sk_coords(p, k, n), b = sk_coords(q, k, n);
      std::vector<int> m(n), s(n);
      for (int i = 0; i < n; ++i) {
        m[i] = meet(a[i], b[i]);
        s[i] = sqcup(a[i], b[i]);
      }
      if (!dominates(f[p] + f[q], f[sk_code(m, k)] + f[sk_code(s, k)])) return false;
    }
  }
  return true;
}

Outcome k_and_alpha() {
  Tally t;
  std::mt19937 rng(401);
  KSubmodularChecker ks(3, 2);
  int yes = 0;
  for (int i = 0; i < 500; ++i) {
    FnTable f = random_polar_function(ks.lattice(), rng);
    auto r = ks.check(f);
    t.expect(r.k_submodular == r.submodular, "k-submodular vs general");
    t.expect(r.k_submodular == k_submodular_oracle(f, 3, 2), "k-submodular vs oracle");
    yes += r.k_submodular;
  }
  t.note("S_3^2 k-submodular " + std::to_string(yes) + "/500");
  for (const auto& alpha : {std::vector<Rational>{Rational(1, 2), 1}, std::vector<Rational>{Rational(1, 3), Rational(1, 3)}}) {
    AlphaChecker ac(alpha);
    const std::string name = "alpha (" + str(alpha[0]) + "," + str(alpha[1]) + ")";
    t.expect(ac.formula_matches(), name + " closed form");
    int ok = 0;
    for (int i = 0; i < 500; ++i) {
      FnTable f = random_polar_function(ac.lattice(), rng);
      auto r = ac.check(f);
      t.expect(r.alpha_bisubmodular == r.submodular, name + " verdicts differ");
      t.expect(r.formula_matches, name + " formula");
      ok += r.submodular;
    }
    t.note(name + " " + std::to_string(ok) + "/500");
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 5. SDA terminal, iteration bound, exact case.

Outcome sda_samples() {
  Tally t;
  std::mt19937 rng(501);
  const Graph z = path_graph(0, 6, PathOrientation::kAlternating);
  const std::vector<std::pair<std::string, ProductSpace>> spaces{
      {"Z^2 [0,6]^2", ProductSpace({z, z})},
      {"(K3xK3)*", subdivide(ProductSpace::power(complete_graph(3), 2)).space}};
  for (const auto& [name, space] : spaces) {
    LConvexChecker checker(space);
    int exact = 0;
    for (int i = 0; i < 500; ++i) {
      FnTable f = testutil::random_l_convex(space, rng);
      if (!checker.check(f).l_convex) {
        t.expect(false, name + " generated function is not L-convex");
        continue;
      }
      std::vector<Index> dom, opt;
      ExtRat best = ExtRat::infinity();
      for (Index x = 0; x < f.size(); ++x) {
        if (!f[x].is_finite()) continue;
        dom.push_back(x);
        if (f[x] < best) {
          best = f[x];
          opt.clear();
        }
        if (f[x] == best) opt.push_back(x);
      }
      const Index start = dom[rng() % dom.size()];
      SDAOptions o;
      if (i % 2) o.tie_seed = rng();
      SDATrace tr = sda_minimize(space, f, start, o);
      int d = 1 << 30;
      for (Index y : opt) d = std::min(d, space.delta_dist(start, y));
      t.expect(f[tr.terminal] == best, name + " terminal is not a minimizer");
      t.expect(tr.iterations <= d + 2, name + " iteration bound");
      auto rep = iteration_bound_report(tr, space, [&](Index x) { return f[x]; });
      t.expect(rep.d_delta == d && rep.bound_ok, name + " bound report");
      if (tr.exact_precondition) {
        ++exact;
        t.expect(tr.iterations == d, name + " exact case N != d");
      }
    }
    t.note(name + " exact-case starts " + std::to_string(exact));
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 6. L-natural regression on the linear box.

Outcome l_natural() {
  Tally t;
  const OrientedTreeProduct box = linear_grid(3, 0, 5);
  const ProductSpace& s = box.space();
  const std::vector<int> a{1, 4, 2};
  FnTable g(s.size());
  for (Index x = 0; x < s.size(); ++x) {
    auto c = s.coords(x);
    // Vertex names are the integers, ids run 0..5 in order.
    int sum = 0;
    for (int i = 0; i < 3; ++i) sum += std::abs(std::stoi(s.factor(i).name(c[i])) - a[i]);
    int hi = -100, lo = 100;
    for (int i = 0; i < 3; ++i) {
      const int v = std::stoi(s.factor(i).name(c[i]));
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
    g[x] = ExtRat(sum + hi - lo);
  }
  t.expect(is_l_convex(s, g).l_convex, "is_l_convex");
  t.expect(is_midpoint_convex(box, g).convex, "is_midpoint_convex");
  ExtRat best = ExtRat::infinity();
  for (const auto& v : g) best = std::min(best, v);
  for (const char* corner : {"0,0,0", "5,5,5", "0,5,0"}) {
    const Index start = s.find(corner);
    SDATrace tr = sda_minimize(s, g, start);
    t.expect(g[tr.terminal] == best, std::string("terminal from ") + corner);
    // ‖start - opt‖∞ over the minimizers, on integer coordinates.
    int d = 1 << 30;
    for (Index y = 0; y < s.size(); ++y) {
      if (g[y] != best) continue;
      int m = 0;
      auto cs = s.coords(start), cy = s.coords(y);
      for (int i = 0; i < 3; ++i)
        m = std::max(m, std::abs(std::stoi(s.factor(i).name(cs[i])) - std::stoi(s.factor(i).name(cy[i]))));
      d = std::min(d, m);
    }
    t.expect(tr.iterations <= d + 2, std::string("bound from ") + corner);
    if (tr.exact_precondition) t.expect(tr.iterations == d, std::string("exact from ") + corner);
    t.note(std::string(corner) + " N=" + std::to_string(tr.iterations) + " d=" + std::to_string(d));
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 7. 0-extension against brute force.

ZeroExtInstance random_instance(const Graph& g, int n, std::mt19937& rng) {
  ZeroExtInstance inst(g, n);
  std::uniform_int_distribution<int> w(0, 10);
  for (int i = 0; i < n; ++i)
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
      if (rng() % 3 == 0) inst.add_b(i, v, w(rng));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() % 2) inst.add_c(i, j, w(rng));
  return inst;
}

Outcome zero_extension() {
  Tally t;
  std::mt19937 rng(701);
  const std::vector<std::pair<std::string, Graph>> targets{{"K2", complete_graph(2)},
                                                          {"P4", path_graph(0, 3)},
                                                          {"2x2", grid_graph(2, 0, 1)},
                                                          {"K13", star_graph(3)},
                                                          {"Q3", cube_graph(3)}};
  for (const auto& [name, g] : targets) {
    ZeroExtSolver solver(g);
    for (int i = 0; i < 20; ++i) {
      const int n = 1 + i % 3;
      ZeroExtInstance inst = random_instance(solver.oriented(), n, rng);
      auto r = solver.solve(inst);
      t.expect(r.value == solve_zero_ext_brute(inst).value, name + " value differs");
      t.expect(zero_ext_objective(inst, r.x) == ExtRat(r.value), name + " labeling value");
    }
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 8. Multiway cut against enumeration.

Rational enumerate_cut(const CutInstance& c) {
  const int n = static_cast<int>(c.nodes.size());
  const int k = static_cast<int>(c.terminals.size());
  std::vector<int> lab(n, 0);
  Rational best(-1);
  while (true) {
    bool ok = true;
    for (int j = 0; j < k; ++j) ok = ok && lab[c.terminals[j]] == j;
    if (ok) {
      Rational v(0);
      for (const auto& e : c.edges)
        if (lab[e.u] != lab[e.v]) v += e.capacity;
      if (best < 0 || v < best) best = v;
    }
    int i = n - 1;
    while (i >= 0 && ++lab[i] == k) lab[i--] = 0;
    if (i < 0) break;
  }
  return best;
}

// Connectivity of the non-cut edges, checked by BFS from each terminal.
bool feasible(const CutInstance& c, const std::vector<int>& labels) {
  const int n = static_cast<int>(c.nodes.size());
  for (std::size_t j = 0; j < c.terminals.size(); ++j) {
    if (labels[c.terminals[j]] != static_cast<int>(j)) return false;
    std::vector<char> seen(n, 0);
    std::deque<int> q{c.terminals[j]};
    seen[c.terminals[j]] = 1;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (const auto& e : c.edges) {
        if (labels[e.u] != labels[e.v]) continue;
        for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
          if (x == a && !seen[y]) {
            seen[y] = 1;
            q.push_back(y);
          }
        }
      }
    }
    for (std::size_t o = 0; o < c.terminals.size(); ++o)
      if (o != j && seen[c.terminals[o]]) return false;
  }
  return true;
}

Outcome multiway_cut() {
  Tally t;
  std::mt19937 rng(801);
  for (int i = 0; i < 100; ++i) {
    CutInstance c;
    const int n = 3 + static_cast<int>(rng() % 5);
    for (int v = 0; v < n; ++v) c.nodes.push_back("v" + std::to_string(v));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 2) c.edges.push_back({u, v, Rational(1 + static_cast<int>(rng() % 3))});
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    c.terminals.assign(perm.begin(), perm.begin() + 2 + static_cast<int>(rng() % 2));
    auto r = solve_multiway_cut(c);
    t.expect(feasible(c, r.labels), "infeasible labeling");
    t.expect(r.value == c.cut_value(r.labels), "reported value");
    t.expect(r.value == enumerate_cut(c), "value differs from enumeration");
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 9. Subdivision and thickening identities.

Graph oriented(const Graph& g) { return g.with_orientation(*find_admissible_orientation(g)); }

Outcome subdivision_identities() {
  Tally t;
  const Graph tree = tree_graph({"0", "1", "2", "3", "4", "5", "6"}, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {4, 6}});
  const std::vector<std::pair<std::string, Graph>> graphs{
      {"path", path_graph(0, 4, PathOrientation::kLinear)},
      {"zpath", path_graph(0, 4, PathOrientation::kAlternating)},
      {"grid", grid_graph(2, 0, 2, PathOrientation::kLinear)},
      {"zgrid", grid_graph(2, 0, 2, PathOrientation::kAlternating)},
      {"K2", complete_graph(2)},
      {"K3", complete_graph(3)},
      {"K4", complete_graph(4)},
      {"K23", complete_bipartite(2, 3)},
      {"K23o", oriented(complete_bipartite(2, 3))},
      {"Q3", cube_graph(3)},
      {"K13", star_graph(3)},
      {"K13o", oriented(star_graph(3))},
      {"C4", oriented(cycle_graph(4))},
      {"tree", tree},
      {"treeo", tree_graph({"0", "1", "2", "3", "4", "5", "6"}, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {4, 6}},
                           TreeOrientation::kZigzag)}};
  for (const auto& [name, g] : graphs) {
    SubdivisionOptions opts;
    opts.verify = false;  // recheck here
    const SubdivisionMap m = barycentric_subdivision(g, opts);
    const auto n = static_cast<Vertex>(g.size());
    bool restrict = true;
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = 0; y < n; ++y) restrict = restrict && m.star.metric(m.embed[x], m.embed[y]) == g.metric(x, y);
    t.expect(restrict, name + " restriction identity");
    if (!g.oriented()) continue;
    bool half = true;
    const auto s = static_cast<Vertex>(m.star.size());
    for (Vertex a = 0; a < s; ++a) {
      for (Vertex b = 0; b < s; ++b) {
        auto [p, q] = m.interval_repr[a];
        auto [p2, q2] = m.interval_repr[b];
        half = half && m.star.metric(a, b) == (g.metric(p, p2) + g.metric(q, q2)) / 2;
      }
    }
    t.expect(half, name + " half-sum formula");
  }

  for (const auto& [g, h] : {std::pair{complete_graph(2), complete_graph(3)}, std::pair{path_graph(0, 2), path_graph(0, 2)}}) {
    const Graph gh = product(g, h);
    const Graph lhs = barycentric_subdivision(gh).star;
    const Graph rhs = product(barycentric_subdivision(g).star, barycentric_subdivision(h).star);
    t.expect(testutil::isomorphic(lhs, rhs, true), "(GxH)* vs G*xH*");
    // (GxH)^Δ against the strong product of the factor thickenings.
    Thickening tg(g), th(h), tgh(gh);
    const auto nh = static_cast<Vertex>(h.size());
    bool strong = true;
    for (Vertex x = 0; x < static_cast<Vertex>(gh.size()); ++x) {
      for (Vertex y = 0; y < static_cast<Vertex>(gh.size()); ++y) {
        if (x == y) continue;
        const Vertex x1 = x / nh, x2 = x % nh, y1 = y / nh, y2 = y % nh;
        const bool adj = (x1 == y1 || tg.adjacent(x1, y1)) && (x2 == y2 || th.adjacent(x2, y2));
        strong = strong && tgh.adjacent(x, y) == adj;
      }
    }
    t.expect(strong, "(GxH)^Δ vs strong product");
  }

  for (auto kind : {PathOrientation::kNone, PathOrientation::kLinear, PathOrientation::kAlternating}) {
    for (auto [dims, hi] : {std::pair{2, 4}, std::pair{3, 2}}) {
      const Graph grid = grid_graph(dims, 0, hi, kind);
      Thickening th(grid);
      const int side = hi + 1;
      bool linf = true;
      for (Vertex x = 0; x < static_cast<Vertex>(grid.size()); ++x) {
        for (Vertex y = 0; y < static_cast<Vertex>(grid.size()); ++y) {
          int m = 0;
          for (int i = 0, a = x, b = y; i < dims; ++i, a /= side, b /= side) m = std::max(m, std::abs(a % side - b % side));
          linf = linf && th.dist(x, y) == m;
        }
      }
      t.expect(linf, "d^Δ is not l_inf on a " + std::to_string(dims) + "-dim box");
    }
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 10. Lovász roundtrip.

Outcome lovasz_roundtrip() {
  Tally t;
  std::mt19937 rng(1001);
  const EmbeddedComplex uj = EmbeddedComplex::union_jack(2, 0, 3);
  int yes = 0;
  for (int i = 0; i < 200; ++i) {
    FnTable f = i % 3 == 0 ? testutil::random_table(uj.size(), rng, 0, 4) : testutil::random_l_convex(uj.grid()->space(), rng);
    SegmentOptions o;
    o.seed = rng();
    o.trials = 40;
    RoundtripReport r = characterization_roundtrip(uj, f, o);
    t.expect(r.agree, "Z^2 box: " + r.detail);
    yes += r.l_convex;
  }
  t.note("Z^2 L-convex " + std::to_string(yes) + "/200");

  // {0,1}^3: submodularity on the Boolean lattice, plus the three grid verdicts.
  const EmbeddedComplex cube = EmbeddedComplex::order_polytope(make_boolean(3));
  const EmbeddedComplex fr = EmbeddedComplex::freudenthal(3, 0, 1);
  SubmodularChecker sub(*cube.lattice(), rank_valuation(*cube.lattice()));
  yes = 0;
  for (int i = 0; i < 200; ++i) {
    FnTable f = testutil::random_table(cube.size(), rng, 0, 6);
    if (i % 2) {
      for (Index e = 0; e < f.size(); ++e) {
        int k = 0;
        for (const auto& c : cube.point(e)) k += c == 1;
        f[e] = ExtRat(static_cast<int>(rng() % 2) + 3 * k * (3 - k));
      }
    }
    FnTable on_grid(fr.size());
    for (Index e = 0; e < f.size(); ++e) on_grid[*fr.find_point(cube.point(e))] = f[e];
    SegmentOptions o;
    o.seed = rng();
    o.trials = 40;
    const auto s = sub.check(f);
    RoundtripReport r = characterization_roundtrip(fr, on_grid, o);
    t.expect(r.agree, "{0,1}^3: " + r.detail);
    t.expect(s.submodular == r.l_convex, "{0,1}^3 submodular vs L-convex");
    t.expect(s.submodular || s.witness.has_value(), "{0,1}^3 missing witness");
    t.expect(segment_convexity_check(cube, f, o).convex == s.submodular, "{0,1}^3 order polytope segments");
    yes += s.submodular;
  }
  t.note("{0,1}^3 submodular " + std::to_string(yes) + "/200");
  return t.outcome();
}

// ---------------------------------------------------------------------------
// 11. Unique normal Δ-paths.

Outcome normal_paths() {
  Tally t;
  const std::vector<std::pair<std::string, Graph>> graphs{
      {"P4xP4", product(path_graph(0, 3), path_graph(0, 3))},
      {"K3xK3", product(complete_graph(3), complete_graph(3))},
      {"tree7", tree_graph({"0", "1", "2", "3", "4", "5", "6"}, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {4, 6}})}};
  for (const auto& [name, g] : graphs) {
    Thickening th(g);
    const auto sets = boolean_gated_sets(g);
    long pairs = 0;
    for (Vertex x = 0; x < static_cast<Vertex>(g.size()); ++x) {
      for (Vertex y = 0; y < static_cast<Vertex>(g.size()); ++y) {
        auto all = all_normal_delta_paths(g, th, sets, x, y, 2, 2'000'000);
        t.expect(all.size() == 1, name + " pair " + g.name(x) + "->" + g.name(y) + " has " + std::to_string(all.size()));
        if (all.size() == 1) {
          t.expect(normal_delta_path(g, th, sets, x, y) == all[0], name + " search disagrees");
          t.expect(static_cast<int>(all[0].size()) - 1 == th.dist(x, y), name + " path is not a Δ-geodesic");
        }
        ++pairs;
      }
    }
    t.note(name + " " + std::to_string(pairs) + " pairs");
  }
  return t.outcome();
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "fractional-join cones on S_2", 1, s2_cones},
      {2, "polar fractional join", 10, polar_fractional_join},
      {3, "three polar verdicts", 60, polar_three_way},
      {4, "k-submodular and alpha-bisubmodular", 60, k_and_alpha},
      {5, "SDA terminal and iteration bound", 300, sda_samples},
      {6, "L-natural regression", 30, l_natural},
      {7, "0-extension vs brute force", 300, zero_extension},
      {8, "multiway cut vs enumeration", 120, multiway_cut},
      {9, "subdivision and thickening identities", 30, subdivision_identities},
      {10, "Lovasz roundtrip", 120, lovasz_roundtrip},
      {11, "normal delta-path uniqueness", 60, normal_paths},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.ok && secs <= c.limit_s;
    if (!pass) ++failed;
    std::printf("%s %2d %-40s %8.2fs / %gs  %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, c.limit_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
