#include "dca/submodular.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dca/error.hpp"

namespace dca {

Valuation rank_valuation(const Semilattice& L) {
  Valuation v(L.size());
  for (Elem p = 0; p < static_cast<Elem>(L.size()); ++p) v[p] = L.rank(p);
  return v;
}

ValuationReport validate_valuation(const Semilattice& L, const Valuation& v) {
  ValuationReport report;
  const auto n = static_cast<Elem>(L.size());
  if (v.size() != L.size()) {
    report.reason = "valuation size does not match the semilattice";
    return report;
  }
  for (auto [p, q] : L.poset().cover_pairs()) {
    if (!(v[p] < v[q])) {
      report.witness = std::make_pair(p, q);
      report.reason = "not strictly increasing along a cover";
      return report;
    }
  }
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = p + 1; q < n; ++q) {
      auto j = L.join(p, q);
      if (j && v[p] + v[q] != v[L.meet(p, q)] + v[*j]) {
        report.witness = std::make_pair(p, q);
        report.reason = "modular equality fails";
        return report;
      }
    }
  }
  report.valid = true;
  return report;
}

namespace {

Rational cross(const IntervalPoint& o, const IntervalPoint& a, const IntervalPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Normal slope at which the objective switches from a to b (a has larger x).
Rational switch_slope(const IntervalPoint& a, const IntervalPoint& b) {
  return (a.x - b.x) / (b.y - a.y);
}

}  // namespace

ConvInterval conv_interval(const Semilattice& L, Elem p, Elem q, const Valuation& v) {
  ConvInterval out;
  const Elem m = L.meet(p, q);
  for (const auto& member : metric_interval(L, p, q)) {
    out.points.push_back({member.u, v[member.a] - v[m], v[member.b] - v[m]});
  }
  // Monotone chain hull.
  auto pts = out.points;
  std::sort(pts.begin(), pts.end(), [](const IntervalPoint& a, const IntervalPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const IntervalPoint& a, const IntervalPoint& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  if (pts.size() <= 2) {
    out.hull = pts;
  } else {
    std::vector<IntervalPoint> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& pt : pts) {
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], pt) <= 0) --k;
      hull[k++] = pt;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
      while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
      hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    out.hull = std::move(hull);
  }
  // Pareto-maximal points, x decreasing and y increasing.
  auto sorted = out.points;
  std::sort(sorted.begin(), sorted.end(), [](const IntervalPoint& a, const IntervalPoint& b) {
    return a.x > b.x || (a.x == b.x && a.y > b.y);
  });
  std::vector<IntervalPoint> pareto;
  for (const auto& pt : sorted) {
    if (pareto.empty() || pt.y > pareto.back().y) {
      if (!pareto.empty() && pareto.back().x == pt.x) continue;
      pareto.push_back(pt);
    }
  }
  // Keep only true vertices: switching slopes must strictly increase.
  std::vector<IntervalPoint> chain;
  for (const auto& pt : pareto) {
    while (chain.size() >= 2 &&
           !(switch_slope(chain[chain.size() - 2], chain.back()) < switch_slope(chain.back(), pt))) {
      chain.pop_back();
    }
    chain.push_back(pt);
  }
  out.maximal = std::move(chain);
  return out;
}

Rational SlopeCone::measure() const {
  auto part = [](const ExtRat& s) -> Rational {
    if (s.is_inf()) return Rational(0);
    return Rational(1) / (Rational(1) + s.value());
  };
  return part(lo) - part(hi);
}

std::optional<SlopeCone> SlopeCone::intersect(const SlopeCone& other) const {
  SlopeCone out{std::max(lo, other.lo), std::min(hi, other.hi)};
  if (!out.has_interior()) return std::nullopt;
  return out;
}

std::string to_string(const SlopeCone& cone) {
  return "Cone(" + cone.lo.str() + "," + cone.hi.str() + ")";
}

Rational FracJoin::total() const {
  Rational sum(0);
  for (const auto& t : terms) sum += t.weight;
  return sum;
}

const FracTerm* FracJoin::find(Elem u) const {
  for (const auto& t : terms) {
    if (t.u == u) return &t;
  }
  return nullptr;
}

Rational FracJoin::weight_of(Elem u) const {
  const FracTerm* t = find(u);
  return t ? t->weight : Rational(0);
}

FracJoin fractional_join(const Semilattice& L, Elem p, Elem q, const Valuation& v) {
  const auto hull = conv_interval(L, p, q, v);
  const auto& chain = hull.maximal;
  FracJoin out;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    SlopeCone cone;
    if (j > 0) cone.lo = switch_slope(chain[j - 1], chain[j]);
    if (j + 1 < chain.size()) cone.hi = switch_slope(chain[j], chain[j + 1]);
    out.terms.push_back({chain[j].u, cone.measure(), cone});
  }
  ensure(out.total() == 1, "fractional join weights do not sum to 1");
  return out;
}

namespace {

std::vector<FracJoin> all_fractional_joins(const Semilattice& L, const Valuation& v) {
  const auto n = static_cast<Elem>(L.size());
  std::vector<FracJoin> joins(static_cast<std::size_t>(n) * n);
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = 0; q < n; ++q) joins[p * n + q] = fractional_join(L, p, q, v);
  }
  return joins;
}

bool cone_contains_open(const SlopeCone& cone, const Rational& t) {
  return cone.lo < ExtRat(t) && ExtRat(t) < cone.hi;
}

}  // namespace

std::vector<WeightedOp> fractional_join_operation(const Semilattice& L, const Valuation& v) {
  const auto n = static_cast<Elem>(L.size());
  const auto joins = all_fractional_joins(L, v);
  std::set<Rational> cuts;
  for (const auto& fj : joins) {
    for (const auto& t : fj.terms) {
      if (t.cone.lo.is_finite() && t.cone.lo.value() > 0) cuts.insert(t.cone.lo.value());
      if (t.cone.hi.is_finite()) cuts.insert(t.cone.hi.value());
    }
  }
  std::vector<ExtRat> bounds{ExtRat(0)};
  for (const auto& c : cuts) bounds.emplace_back(c);
  bounds.push_back(ExtRat::infinity());
  std::vector<WeightedOp> ops;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    SlopeCone piece{bounds[i], bounds[i + 1]};
    Rational probe = bounds[i + 1].is_inf() ? bounds[i].value() + 1
                                            : (bounds[i].value() + bounds[i + 1].value()) / 2;
    BinaryOp table(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t k = 0; k < joins.size(); ++k) {
      for (const auto& t : joins[k].terms) {
        if (cone_contains_open(t.cone, probe)) table[k] = t.u;
      }
      ensure(table[k] >= 0, "slope refinement left a pair uncovered");
    }
    auto same = std::find_if(ops.begin(), ops.end(),
                             [&](const WeightedOp& op) { return op.table == table; });
    if (same != ops.end()) {
      same->cone.lo = std::min(same->cone.lo, piece.lo);
      same->cone.hi = std::max(same->cone.hi, piece.hi);
      same->weight = same->cone.measure();
    } else {
      ops.push_back({piece.measure(), piece, std::move(table)});
    }
  }
  return ops;
}

std::optional<SlopeCone> operation_cone(const Semilattice& L, const Valuation& v,
                                        const BinaryOp& op) {
  const auto n = static_cast<Elem>(L.size());
  SlopeCone cone;
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = 0; q < n; ++q) {
      auto fj = fractional_join(L, p, q, v);
      const FracTerm* t = fj.find(op[p * n + q]);
      if (!t) return std::nullopt;
      auto next = cone.intersect(t->cone);
      if (!next) return std::nullopt;
      cone = *next;
    }
  }
  return cone;
}

bool dominates(const ExtRat& lhs, const ExtRat& rhs) {
  if (lhs.is_inf()) return true;
  return rhs <= lhs;
}

SubmodularChecker::SubmodularChecker(const Semilattice& lattice, Valuation v)
    : lattice_(lattice), v_(std::move(v)) {
  auto report = validate_valuation(lattice_, v_);
  if (!report.valid) throw Error(ErrorCode::kBadInput, "invalid valuation: " + report.reason);
  joins_ = all_fractional_joins(lattice_, v_);
}

SubmodularChecker SubmodularChecker::product(std::span<const SubmodularChecker* const> parts) {
  ensure(!parts.empty(), "empty product");
  Semilattice lattice = parts[0]->lattice();
  Valuation v = parts[0]->valuation();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    lattice = dca::product(lattice, parts[i]->lattice());
    Valuation next;
    next.reserve(v.size() * parts[i]->valuation().size());
    for (const auto& a : v)
      for (const auto& b : parts[i]->valuation()) next.push_back(a + b);
    v = std::move(next);
  }
  const std::size_t n = lattice.size();
  const std::size_t k = parts.size();
  std::vector<std::size_t> sizes(k);
  for (std::size_t i = 0; i < k; ++i) sizes[i] = parts[i]->lattice().size();
  auto split = [&](Elem e) {
    std::vector<Elem> c(k);
    for (std::size_t i = k; i-- > 0;) {
      c[i] = static_cast<Elem>(e % static_cast<Elem>(sizes[i]));
      e /= static_cast<Elem>(sizes[i]);
    }
    return c;
  };
  std::vector<std::vector<Elem>> coords(n);
  for (std::size_t e = 0; e < n; ++e) coords[e] = split(static_cast<Elem>(e));

  std::vector<FracJoin> joins(n * n);
  std::vector<const FracJoin*> comp(k);
  std::map<Elem, std::pair<Rational, SlopeCone>> acc;
  std::function<void(std::size_t, const SlopeCone&, Elem)> rec = [&](std::size_t i, const SlopeCone& cone, Elem idx) {
    if (i == k) {
      auto& slot = acc[idx];
      slot.first += cone.measure();
      slot.second = cone;
      return;
    }
    for (const auto& t : comp[i]->terms)
      if (auto next = cone.intersect(t.cone)) rec(i + 1, *next, idx * static_cast<Elem>(sizes[i]) + t.u);
  };
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t i = 0; i < k; ++i) comp[i] = &parts[i]->frac_join(coords[p][i], coords[q][i]);
      acc.clear();
      rec(0, SlopeCone{}, 0);
      FracJoin& out = joins[p * n + q];
      for (auto& [u, wc] : acc) out.terms.push_back({u, wc.first, wc.second});
      ensure(out.total() == 1, "product fractional join weights do not sum to 1");
    }
  }
  return SubmodularChecker(std::move(lattice), std::move(v), std::move(joins));
}

ExtRat SubmodularChecker::rhs(std::span<const ExtRat> f, Elem p, Elem q) const {
  ExtRat sum = f[lattice_.meet(p, q)];
  for (const auto& t : frac_join(p, q).terms) sum += t.weight * f[t.u];
  return sum;
}

SubmodularReport SubmodularChecker::check(std::span<const ExtRat> f) const {
  ensure(f.size() == lattice_.size(), "function table size does not match the domain");
  const auto n = static_cast<Elem>(lattice_.size());
  SubmodularReport report;
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = p + 1; q < n; ++q) {
      if (lattice_.poset().comparable(p, q)) continue;  // holds with equality
      ExtRat lhs = f[p] + f[q];
      ExtRat rhs = this->rhs(f, p, q);
      if (!dominates(lhs, rhs)) {
        report.submodular = false;
        report.witness = std::make_pair(p, q);
        report.lhs = lhs;
        report.rhs = rhs;
        return report;
      }
    }
  }
  return report;
}

SubmodularReport is_submodular(const Semilattice& L, std::span<const ExtRat> f,
                               const Valuation& v) {
  SubmodularChecker checker(L, v);
  const auto n = static_cast<Elem>(L.size());
  const auto ops = fractional_join_operation(L, v);
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = 0; q < n; ++q) {
      ExtRat by_ops(0);
      for (const auto& op : ops) by_ops += op.weight * f[op.table[p * n + q]];
      ExtRat by_pair(0);
      for (const auto& t : checker.frac_join(p, q).terms) by_pair += t.weight * f[t.u];
      ensure(by_ops == by_pair, "operation form and pair form of the fractional join differ");
    }
  }
  return checker.check(f);
}

// ---------------------------------------------------------------------------
// Left / right / pseudo joins

Elem left_join(const Semilattice& L, Elem p, Elem q) {
  const Elem m = L.meet(p, q);
  const auto& poset = L.poset();
  auto candidates = poset.up_set(m) & poset.down_set(q);
  std::vector<Elem> joinable;
  for (auto u = candidates.find_first(); u != boost::dynamic_bitset<>::npos;
       u = candidates.find_next(u)) {
    if (L.join(p, static_cast<Elem>(u))) joinable.push_back(static_cast<Elem>(u));
  }
  Elem best = -1;
  for (Elem u : joinable) {
    if (std::all_of(joinable.begin(), joinable.end(), [&](Elem w) { return L.leq(w, u); })) best = u;
  }
  ensure(best >= 0 || joinable.empty(), "left join: maximal element is not unique");
  ensure(best >= 0, "left join: no candidate");
  return *L.join(p, best);
}

Elem right_join(const Semilattice& L, Elem p, Elem q) { return left_join(L, q, p); }

Elem pseudo_join(const Semilattice& L, Elem p, Elem q) {
  return L.meet(left_join(L, p, q), right_join(L, p, q));
}

Elem left_meet(const Semilattice& L, Elem p, Elem q) { return L.meet(p, right_join(L, p, q)); }
Elem right_meet(const Semilattice& L, Elem p, Elem q) { return L.meet(q, left_join(L, p, q)); }

namespace {

template <typename Op>
BinaryOp tabulate(const Semilattice& L, Op op) {
  const auto n = static_cast<Elem>(L.size());
  BinaryOp table(static_cast<std::size_t>(n) * n);
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = 0; q < n; ++q) table[p * n + q] = op(L, p, q);
  }
  return table;
}

}  // namespace

BinaryOp left_join_table(const Semilattice& L) { return tabulate(L, left_join); }
BinaryOp right_join_table(const Semilattice& L) { return tabulate(L, right_join); }
BinaryOp pseudo_join_table(const Semilattice& L) { return tabulate(L, pseudo_join); }

// ---------------------------------------------------------------------------
// Polar spaces

PolarSubmodularChecker::PolarSubmodularChecker(const Semilattice& lattice,
                                               const PolarOptions& options)
    : general_(lattice, rank_valuation(lattice)), pseudo_(pseudo_join_table(lattice)) {
  auto report = is_polar_space(lattice, options);
  if (!report.polar) throw Error(ErrorCode::kNotPolar, report.reason);
  frames_ = std::move(report.frames);
}

namespace {

int frame_digit(int code, int i) {
  for (int k = 0; k < i; ++k) code /= 3;
  return code % 3;
}

// Bisubmodularity of f on one frame; returns the violating element pair.
std::optional<std::pair<Elem, Elem>> frame_violation(const PolarFrame& frame,
                                                     std::span<const ExtRat> f) {
  const int n = static_cast<int>(frame.atom_pairs.size());
  const int count = static_cast<int>(frame.elements.size());
  for (int s = 0; s < count; ++s) {
    for (int t = s + 1; t < count; ++t) {
      int meet = 0, join = 0;
      for (int i = n - 1; i >= 0; --i) {
        int a = frame_digit(s, i), b = frame_digit(t, i);
        meet = meet * 3 + (a == b ? a : 0);
        int j = (a == b || b == 0) ? a : (a == 0 ? b : 0);
        join = join * 3 + j;
      }
      Elem p = frame.elements[s], q = frame.elements[t];
      if (!dominates(f[p] + f[q], f[frame.elements[meet]] + f[frame.elements[join]])) {
        return std::make_pair(p, q);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PolarSubmodularReport PolarSubmodularChecker::check(std::span<const ExtRat> f) const {
  const auto& L = general_.lattice();
  const auto n = static_cast<Elem>(L.size());
  PolarSubmodularReport report;
  auto general = general_.check(f);
  report.by_fractional_join = general.submodular;
  report.witness = general.witness;
  report.by_pseudo_join = true;
  for (Elem p = 0; p < n && report.by_pseudo_join; ++p) {
    for (Elem q = 0; q < n; ++q) {
      if (!dominates(f[p] + f[q], f[L.meet(p, q)] + f[pseudo_[p * n + q]])) {
        report.by_pseudo_join = false;
        if (!report.witness) report.witness = std::make_pair(p, q);
        break;
      }
    }
  }
  report.by_frames = true;
  for (const auto& frame : frames_) {
    if (auto bad = frame_violation(frame, f)) {
      report.by_frames = false;
      if (!report.witness) report.witness = bad;
      break;
    }
  }
  ensure(report.by_fractional_join == report.by_pseudo_join &&
             report.by_pseudo_join == report.by_frames,
         "polar submodularity characterizations disagree");
  report.submodular = report.by_fractional_join;
  return report;
}

PolarSubmodularReport is_polar_submodular(const Semilattice& L, std::span<const ExtRat> f) {
  return PolarSubmodularChecker(L).check(f);
}

// ---------------------------------------------------------------------------
// S_k^n

std::vector<int> sk_coords(int code, int k, int n) {
  std::vector<int> out(n);
  for (int i = n - 1; i >= 0; --i) {
    out[i] = code % (k + 1);
    code /= (k + 1);
  }
  return out;
}

int sk_code(std::span<const int> coords, int k) {
  int code = 0;
  for (int c : coords) code = code * (k + 1) + c;
  return code;
}

KSubmodularChecker::KSubmodularChecker(int k, int n)
    : k_(k), n_(n), general_(make_sk_power(k, n), rank_valuation(make_sk_power(k, n))) {
  const auto& L = general_.lattice();
  const auto size = static_cast<Elem>(L.size());
  pseudo_.resize(static_cast<std::size_t>(size) * size);
  for (Elem p = 0; p < size; ++p) {
    auto a = sk_coords(p, k, n);
    for (Elem q = 0; q < size; ++q) {
      auto b = sk_coords(q, k, n);
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) {
        c[i] = (a[i] == b[i] || b[i] == 0) ? a[i] : (a[i] == 0 ? b[i] : 0);
      }
      pseudo_[p * size + q] = sk_code(c, k);
      ensure(pseudo_[p * size + q] == pseudo_join(L, p, q),
             "componentwise pseudo join differs from the lattice pseudo join");
    }
  }
}

KSubmodularReport KSubmodularChecker::check(std::span<const ExtRat> f) const {
  const auto& L = general_.lattice();
  const auto size = static_cast<Elem>(L.size());
  KSubmodularReport report;
  report.k_submodular = true;
  for (Elem p = 0; p < size && report.k_submodular; ++p) {
    for (Elem q = p + 1; q < size; ++q) {
      if (!dominates(f[p] + f[q], f[L.meet(p, q)] + f[pseudo_[p * size + q]])) {
        report.k_submodular = false;
        report.witness = std::make_pair(p, q);
        break;
      }
    }
  }
  auto general = general_.check(f);
  report.submodular = general.submodular;
  if (!report.witness) report.witness = general.witness;
  ensure(report.k_submodular == report.submodular,
         "k-submodularity and submodularity verdicts disagree");
  return report;
}

KSubmodularReport is_k_submodular(int k, int n, std::span<const ExtRat> f) {
  return KSubmodularChecker(k, n).check(f);
}

// ---------------------------------------------------------------------------
// alpha-bisubmodularity

Valuation alpha_valuation(std::span<const Rational> alpha) {
  const int n = static_cast<int>(alpha.size());
  if (n == 0) throw Error(ErrorCode::kBadAlpha, "alpha must be nonempty");
  for (int i = 0; i < n; ++i) {
    if (alpha[i] <= 0 || alpha[i] > 1 || (i > 0 && alpha[i] < alpha[i - 1])) {
      throw Error(ErrorCode::kBadAlpha, "need 0 < alpha_1 <= ... <= alpha_n <= 1");
    }
  }
  const int size = sk_code(std::vector<int>(n, 2), 2) + 1;
  Valuation v(size);
  for (int code = 0; code < size; ++code) {
    auto x = sk_coords(code, 2, n);
    Rational sum(0);
    for (int i = 0; i < n; ++i) {
      if (x[i] == 1) sum += 1;
      if (x[i] == 2) sum += alpha[i];
    }
    v[code] = sum;
  }
  return v;
}

namespace {

int s2_join1(int a, int b) { return (a == b || b == 0) ? a : (a == 0 ? b : 0); }
int s2_join_plus1(int a, int b) { return (a != 0 && b != 0 && a != b) ? 1 : s2_join1(a, b); }
int s2_left1(int a, int b) { return a == 0 ? b : a; }

template <typename Tail>
Elem s2_apply(int n, Elem p, Elem q, int prefix, Tail tail) {
  auto a = sk_coords(p, 2, n);
  auto b = sk_coords(q, 2, n);
  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = i < prefix ? s2_join_plus1(a[i], b[i]) : tail(a[i], b[i]);
  return sk_code(c, 2);
}

}  // namespace

Elem s2_sqcup_plus(int n, Elem p, Elem q, int prefix) { return s2_apply(n, p, q, prefix, s2_join1); }
Elem s2_left_join(int n, Elem p, Elem q, int prefix) { return s2_apply(n, p, q, prefix, s2_left1); }
Elem s2_right_join(int n, Elem p, Elem q, int prefix) {
  return s2_apply(n, p, q, prefix, [](int a, int b) { return s2_left1(b, a); });
}

AlphaChecker::AlphaChecker(std::vector<Rational> alpha)
    : alpha_(std::move(alpha)),
      n_(static_cast<int>(alpha_.size())),
      general_(make_sk_power(2, static_cast<int>(alpha_.size())), alpha_valuation(alpha_)) {
  const auto size = static_cast<Elem>(general_.lattice().size());
  formula_matches_ = true;
  for (Elem p = 0; p < size && formula_matches_; ++p) {
    for (Elem q = 0; q < size; ++q) {
      auto closed = closed_form(p, q);
      const auto& direct = general_.frac_join(p, q);
      for (const auto& t : closed.terms) {
        if (direct.weight_of(t.u) != t.weight) formula_matches_ = false;
      }
      for (const auto& t : direct.terms) {
        if (closed.weight_of(t.u) != t.weight) formula_matches_ = false;
      }
      if (!formula_matches_) break;
    }
  }
}

FracJoin AlphaChecker::closed_form(Elem p, Elem q) const {
  std::map<Elem, Rational> weights;
  auto a = [&](int i) { return i == 0 ? Rational(0) : alpha_[i - 1]; };
  for (int i = 0; i < n_; ++i) {
    Rational w = Rational(1) / (1 + a(i)) - Rational(1) / (1 + a(i + 1));
    weights[s2_left_join(n_, p, q, i)] += w;
    weights[s2_right_join(n_, p, q, i)] += w;
  }
  weights[s2_sqcup_plus(n_, p, q, n_)] += (1 - a(n_)) / (1 + a(n_));
  FracJoin out;
  for (auto [u, w] : weights) {
    if (w != 0) out.terms.push_back({u, w, SlopeCone{}});
  }
  return out;
}

AlphaReport AlphaChecker::check(std::span<const ExtRat> f) const {
  const auto& L = general_.lattice();
  const auto size = static_cast<Elem>(L.size());
  AlphaReport report;
  report.formula_matches = formula_matches_;
  report.alpha_bisubmodular = true;
  auto a = [&](int i) { return i == 0 ? Rational(0) : (i > n_ ? Rational(1) : alpha_[i - 1]); };
  for (Elem p = 0; p < size && report.alpha_bisubmodular; ++p) {
    for (Elem q = p + 1; q < size; ++q) {
      ExtRat rhs = f[L.meet(p, q)];
      for (int i = 0; i <= n_; ++i) rhs += (a(i + 1) - a(i)) * f[s2_sqcup_plus(n_, p, q, i)];
      if (!dominates(f[p] + f[q], rhs)) {
        report.alpha_bisubmodular = false;
        report.witness = std::make_pair(p, q);
        break;
      }
    }
  }
  auto general = general_.check(f);
  report.submodular = general.submodular;
  if (!report.witness) report.witness = general.witness;
  ensure(report.alpha_bisubmodular == report.submodular,
         "alpha-bisubmodularity and valuation submodularity disagree");
  return report;
}

AlphaReport is_alpha_bisubmodular(std::span<const ExtRat> f, std::span<const Rational> alpha) {
  return AlphaChecker(std::vector<Rational>(alpha.begin(), alpha.end())).check(f);
}

// ---------------------------------------------------------------------------
// Products

Semilattice product_lattice(std::span<const ProductSpec> components) {
  ensure(!components.empty(), "empty product");
  Semilattice out = components[0].lattice;
  for (std::size_t i = 1; i < components.size(); ++i) out = product(out, components[i].lattice);
  return out;
}

Elem product_index(std::span<const ProductSpec> components, std::span<const Elem> coords) {
  Elem idx = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    idx = idx * static_cast<Elem>(components[i].lattice.size()) + coords[i];
  }
  return idx;
}

Valuation product_valuation(std::span<const ProductSpec> components) {
  Valuation v{Rational(0)};
  for (const auto& c : components) {
    Valuation next;
    next.reserve(v.size() * c.valuation.size());
    for (const auto& a : v) {
      for (const auto& b : c.valuation) next.push_back(a + b);
    }
    v = std::move(next);
  }
  return v;
}

FracJoin product_fractional_join(std::span<const Semilattice> components,
                                 std::span<const Valuation> valuations,
                                 std::span<const Elem> p, std::span<const Elem> q) {
  const std::size_t n = components.size();
  std::vector<FracJoin> parts;
  parts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(fractional_join(components[i], p[i], q[i], valuations[i]));
  }
  std::map<Elem, Rational> weights;
  std::map<Elem, SlopeCone> cones;
  // Depth-first over term tuples, pruning empty intersections.
  std::vector<std::size_t> pick(n, 0);
  std::function<void(std::size_t, SlopeCone, Elem)> rec = [&](std::size_t i, SlopeCone cone,
                                                              Elem idx) {
    if (i == n) {
      weights[idx] += cone.measure();
      cones[idx] = cone;
      return;
    }
    for (const auto& t : parts[i].terms) {
      if (auto next = cone.intersect(t.cone)) {
        rec(i + 1, *next, idx * static_cast<Elem>(components[i].size()) + t.u);
      }
    }
  };
  rec(0, SlopeCone{}, 0);
  FracJoin out;
  for (auto [u, w] : weights) out.terms.push_back({u, w, cones[u]});
  ensure(out.total() == 1, "product fractional join weights do not sum to 1");
  return out;
}

bool product_frac_join_check(std::span<const ProductSpec> components, std::span<const Elem> p,
                             std::span<const Elem> q) {
  Semilattice lattice = product_lattice(components);
  Valuation v = product_valuation(components);
  auto direct = fractional_join(lattice, product_index(components, p),
                                product_index(components, q), v);
  std::vector<Semilattice> lattices;
  std::vector<Valuation> valuations;
  for (const auto& c : components) {
    lattices.push_back(c.lattice);
    valuations.push_back(c.valuation);
  }
  auto viacones = product_fractional_join(lattices, valuations, p, q);
  if (direct.terms.size() != viacones.terms.size()) return false;
  for (const auto& t : direct.terms) {
    if (viacones.weight_of(t.u) != t.weight) return false;
  }
  return true;
}

}  // namespace dca
