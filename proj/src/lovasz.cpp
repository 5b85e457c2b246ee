#include "dca/lovasz.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dca/error.hpp"

namespace dca {

namespace {

Rational floor_of(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
  return Rational(q);
}

Rational abs_of(const Rational& r) { return r < 0 ? -r : r; }

// Level-set decomposition of s ∈ [0,1]^n: s = Σ λ_j 1{s >= w_j}, bottom up.
std::vector<std::pair<Rational, std::vector<bool>>> levels(const std::vector<Rational>& s) {
  std::vector<Rational> w{Rational(0), Rational(1)};
  for (const auto& v : s) w.push_back(v);
  std::sort(w.begin(), w.end(), std::greater<>());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  std::vector<std::pair<Rational, std::vector<bool>>> out;
  for (std::size_t j = 0; j + 1 < w.size(); ++j) {
    std::vector<bool> set(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) set[i] = s[i] >= w[j];
    out.emplace_back(w[j] - w[j + 1], std::move(set));
  }
  return out;
}

void check_chain(const std::function<bool(Index, Index)>& less, const ChainPoint& p) {
  if (p.chain.empty() || p.chain.size() != p.coefficients.size())
    throw Error(ErrorCode::kBadInput, "chain point needs one coefficient per element");
  Rational total(0);
  for (const auto& c : p.coefficients) {
    if (c < 0) throw Error(ErrorCode::kBadInput, "negative coefficient");
    total += c;
  }
  if (total != 1) throw Error(ErrorCode::kBadInput, "coefficients sum to " + to_string(total));
  for (std::size_t i = 0; i + 1 < p.chain.size(); ++i)
    if (!less(p.chain[i], p.chain[i + 1])) throw Error(ErrorCode::kNotAChain, "support is not an increasing chain");
}

ExtRat weighted_sum(std::span<const ExtRat> f, const ChainPoint& p) {
  ExtRat sum(0);
  for (std::size_t i = 0; i < p.chain.size(); ++i) {
    if (p.chain[i] >= f.size()) throw Error(ErrorCode::kBadInput, "chain element out of range");
    sum += p.coefficients[i] * f[p.chain[i]];
  }
  return sum;
}

}  // namespace

std::string to_string(const Point& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + to_string(x[i]);
  return out + ")";
}

std::string_view to_string(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::kOrderPolytope: return "order_polytope";
    case ComplexKind::kSignedCube: return "signed_cube";
    case ComplexKind::kUnionJack: return "union_jack";
    case ComplexKind::kFreudenthal: return "freudenthal";
  }
  return "?";
}

ExtRat lovasz_evaluate(const Poset& poset, std::span<const ExtRat> f, const ChainPoint& point) {
  if (f.size() != poset.size()) throw Error(ErrorCode::kBadInput, "function table size mismatch");
  for (Index e : point.chain)
    if (e >= poset.size()) throw Error(ErrorCode::kBadInput, "chain element out of range");
  check_chain([&](Index a, Index b) { return poset.less(static_cast<Elem>(a), static_cast<Elem>(b)); }, point);
  return weighted_sum(f, point);
}

// ---------------------------------------------------------------------------
// Complexes

void EmbeddedComplex::index_points() {
  by_point_.clear();
  for (Index e = 0; e < points_.size(); ++e) by_point_.emplace(points_[e], e);
}

EmbeddedComplex EmbeddedComplex::order_polytope(const Semilattice& lattice) {
  const auto n = static_cast<Elem>(lattice.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (!lattice.join(a, b)) throw Error(ErrorCode::kUnsupportedComplex, "not a lattice");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (lattice.meet(a, *lattice.join(b, c)) != *lattice.join(lattice.meet(a, b), lattice.meet(a, c)))
          throw Error(ErrorCode::kUnsupportedComplex, "lattice is not distributive");
  EmbeddedComplex e;
  e.kind_ = ComplexKind::kOrderPolytope;
  e.lattice_ = std::make_shared<Semilattice>(lattice);
  for (Elem p = 0; p < n; ++p)
    if (lattice.poset().lower_covers(p).size() == 1) e.irreducibles_.push_back(p);
  e.dim_ = static_cast<int>(e.irreducibles_.size());
  for (int i = 0; i < e.dim_; ++i)
    for (int j = 0; j < e.dim_; ++j)
      if (i != j && lattice.leq(e.irreducibles_[i], e.irreducibles_[j])) e.coordinate_order_.emplace_back(i, j);
  for (Elem p = 0; p < n; ++p) {
    Point x(e.dim_);
    for (int i = 0; i < e.dim_; ++i) x[i] = lattice.leq(e.irreducibles_[i], p) ? 1 : 0;
    e.points_.push_back(std::move(x));
  }
  e.index_points();
  ensure(e.by_point_.size() == e.points_.size(), "join-irreducible embedding is not injective");
  return e;
}

EmbeddedComplex EmbeddedComplex::signed_cube(int n) {
  if (n < 1) throw Error(ErrorCode::kBadBounds, "dimension must be positive");
  EmbeddedComplex e;
  e.kind_ = ComplexKind::kSignedCube;
  e.dim_ = n;
  e.lattice_ = std::make_shared<Semilattice>(make_sk_power(2, n));
  for (int code = 0; code < static_cast<int>(e.lattice_->size()); ++code) {
    Point x;
    for (int c : sk_coords(code, 2, n)) x.push_back(c == 0 ? 0 : (c == 1 ? 1 : -1));
    e.points_.push_back(std::move(x));
  }
  e.index_points();
  return e;
}

EmbeddedComplex EmbeddedComplex::union_jack(int n, int lo, int hi) {
  if (lo >= hi) throw Error(ErrorCode::kBadBounds, "box needs lo < hi");
  EmbeddedComplex e;
  e.kind_ = ComplexKind::kUnionJack;
  e.dim_ = n;
  e.lo_ = lo;
  e.hi_ = hi;
  e.grid_ = std::make_shared<OrientedTreeProduct>(alternating_grid(n, lo, hi));
  for (Index id = 0; id < e.grid_->space().size(); ++id) {
    Point x;
    for (Vertex c : e.grid_->space().coords(id)) x.push_back(lo + c);
    e.points_.push_back(std::move(x));
  }
  e.index_points();
  return e;
}

EmbeddedComplex EmbeddedComplex::freudenthal(int n, int lo, int hi) {
  EmbeddedComplex e = union_jack(n, lo, hi);
  e.kind_ = ComplexKind::kFreudenthal;
  e.grid_ = std::make_shared<OrientedTreeProduct>(linear_grid(n, lo, hi));
  return e;
}

EmbeddedComplex EmbeddedComplex::by_name(std::string_view kind, int n, int lo, int hi) {
  if (kind == "signed_cube") return signed_cube(n);
  if (kind == "union_jack") return union_jack(n, lo, hi);
  if (kind == "freudenthal") return freudenthal(n, lo, hi);
  if (kind == "order_polytope" || kind == "boolean") return order_polytope(make_boolean(n));
  throw Error(ErrorCode::kUnsupportedComplex,
              "no Euclidean embedding for complex kind '" + std::string(kind) + "'");
}

std::string EmbeddedComplex::name(Index e) const {
  if (lattice_) return lattice_->name(static_cast<Elem>(e));
  return grid_->space().name(e);
}

std::optional<Index> EmbeddedComplex::find_point(std::span<const Rational> x) const {
  auto it = by_point_.find(Point(x.begin(), x.end()));
  if (it == by_point_.end()) return std::nullopt;
  return it->second;
}

bool EmbeddedComplex::less(Index a, Index b) const {
  if (a == b) return false;
  if (lattice_) return lattice_->leq(static_cast<Elem>(a), static_cast<Elem>(b));
  const ProductSpace& s = grid_->space();
  for (std::size_t i = 0; i < s.dimension(); ++i)
    if (!s.factor(i).leq(s.coord(a, i), s.coord(b, i))) return false;
  return true;
}

bool EmbeddedComplex::is_simplex(std::span<const Index> chain) const {
  for (Index e : chain)
    if (e >= size()) return false;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!less(chain[i], chain[i + 1])) return false;
  // K' on grids: the chain must sit in one ⊑-interval (a unit cube).
  if (grid_ && !chain.empty()) return grid_->space().sq(chain.front(), chain.back());
  return true;
}

bool EmbeddedComplex::in_region(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  switch (kind_) {
    case ComplexKind::kSignedCube:
      return std::all_of(x.begin(), x.end(), [](const Rational& v) { return abs_of(v) <= 1; });
    case ComplexKind::kUnionJack:
    case ComplexKind::kFreudenthal:
      return std::all_of(x.begin(), x.end(), [&](const Rational& v) { return v >= lo_ && v <= hi_; });
    case ComplexKind::kOrderPolytope:
      if (!std::all_of(x.begin(), x.end(), [](const Rational& v) { return v >= 0 && v <= 1; })) return false;
      // Coordinates must decrease up the order of join-irreducibles.
      return std::all_of(coordinate_order_.begin(), coordinate_order_.end(),
                         [&](auto ij) { return x[ij.first] >= x[ij.second]; });
  }
  return false;
}

Point embed(const EmbeddedComplex& complex, const ChainPoint& point) {
  Point x(complex.dimension(), Rational(0));
  for (std::size_t k = 0; k < point.chain.size(); ++k)
    for (int i = 0; i < complex.dimension(); ++i) x[i] += point.coefficients[k] * complex.point(point.chain[k])[i];
  return x;
}

ExtRat lovasz_evaluate(const EmbeddedComplex& complex, std::span<const ExtRat> f, const ChainPoint& point) {
  if (f.size() != complex.size()) throw Error(ErrorCode::kBadInput, "function table size mismatch");
  check_chain([&](Index a, Index b) { return a < complex.size() && b < complex.size() && complex.less(a, b); },
              point);
  if (!complex.is_simplex(point.chain)) throw Error(ErrorCode::kNotAChain, "chain is not a simplex of the complex");
  return weighted_sum(f, point);
}

ChainPoint locate_simplex(const EmbeddedComplex& complex, std::span<const Rational> x) {
  if (!complex.in_region(x)) throw Error(ErrorCode::kOutOfRegion, "point " + to_string(Point(x.begin(), x.end())) +
                                                                      " is outside the embedded region");
  const int n = complex.dimension();
  std::vector<Rational> s(n);
  // Per coordinate: the value taken when the level set contains it or not.
  std::vector<Rational> on(n), off(n);
  switch (complex.kind()) {
    case ComplexKind::kOrderPolytope:
      for (int i = 0; i < n; ++i) {
        s[i] = x[i];
        on[i] = 1;
        off[i] = 0;
      }
      break;
    case ComplexKind::kSignedCube:
      for (int i = 0; i < n; ++i) {
        s[i] = abs_of(x[i]);
        on[i] = x[i] < 0 ? -1 : 1;
        off[i] = 0;
      }
      break;
    case ComplexKind::kUnionJack:
    case ComplexKind::kFreudenthal: {
      const Graph& path = complex.grid()->factor(0);
      for (int i = 0; i < n; ++i) {
        Rational m = floor_of(x[i]);
        if (m == complex.hi()) m -= 1;
        const Rational m1 = m + 1;
        const auto vm = static_cast<Vertex>(m.numerator() - complex.lo());
        // The lower end of the cell edge goes first.
        const bool m_lower = path.arrow(vm + 1, vm);
        off[i] = m_lower ? m : m1;
        on[i] = m_lower ? m1 : m;
        s[i] = abs_of(x[i] - off[i]);
      }
      break;
    }
  }
  ChainPoint out;
  for (auto& [lambda, set] : levels(s)) {
    Point p(n);
    for (int i = 0; i < n; ++i) p[i] = set[i] ? on[i] : off[i];
    auto e = complex.find_point(p);
    ensure(e.has_value(), "level set is not a complex vertex");
    out.chain.push_back(*e);
    out.coefficients.push_back(lambda);
  }
  ensure(complex.is_simplex(out.chain), "located chain is not a simplex");
  ensure(embed(complex, out) == Point(x.begin(), x.end()), "located simplex does not reproduce the point");
  return out;
}

ExtRat lovasz_value(const EmbeddedComplex& complex, std::span<const ExtRat> f, std::span<const Rational> x) {
  return lovasz_evaluate(complex, f, locate_simplex(complex, x));
}

// ---------------------------------------------------------------------------
// Segments

SegmentProfile segment_profile(const EmbeddedComplex& complex, std::span<const ExtRat> f,
                               std::span<const Rational> x, std::span<const Rational> y) {
  const int n = complex.dimension();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw Error(ErrorCode::kBadInput, "segment endpoints have the wrong dimension");
  // Every cell and sorting boundary of the supported kinds lies where a
  // coordinate, or a sum or difference of two coordinates, is an integer.
  std::vector<std::pair<Rational, Rational>> forms;
  for (int i = 0; i < n; ++i) {
    forms.emplace_back(x[i], y[i] - x[i]);
    for (int j = i + 1; j < n; ++j) {
      forms.emplace_back(x[i] + x[j], (y[i] + y[j]) - (x[i] + x[j]));
      forms.emplace_back(x[i] - x[j], (y[i] - y[j]) - (x[i] - x[j]));
    }
  }
  std::vector<Rational> ts{Rational(0), Rational(1)};
  for (const auto& [a, b] : forms) {
    if (b == 0) continue;
    Rational lo = std::min(a, a + b), hi = std::max(a, a + b);
    for (Rational k = floor_of(lo); k <= hi; k += 1) {
      Rational t = (k - a) / b;
      if (t > 0 && t < 1) ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  SegmentProfile out;
  for (const auto& t : ts) {
    Point z(n);
    for (int i = 0; i < n; ++i) z[i] = x[i] + t * (y[i] - x[i]);
    out.t.push_back(t);
    out.values.push_back(lovasz_value(complex, f, z));
  }
  return out;
}

namespace {

Point along(std::span<const Rational> x, std::span<const Rational> y, const Rational& t) {
  Point z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + t * (y[i] - x[i]);
  return z;
}

// One segment; returns a witness on failure.
std::optional<SegmentWitness> check_segment(const EmbeddedComplex& complex, std::span<const ExtRat> f,
                                            const Point& x, const Point& y, int t_grid) {
  const ExtRat fx = lovasz_value(complex, f, x);
  const ExtRat fy = lovasz_value(complex, f, y);
  if (fx.is_inf() || fy.is_inf()) return std::nullopt;
  auto chord = [&](const Rational& t) { return (1 - t) * fx + t * fy; };
  for (int k = 1; k < t_grid; ++k) {
    Rational t(k, t_grid);
    ExtRat v = lovasz_value(complex, f, along(x, y, t));
    if (v > chord(t)) return SegmentWitness{x, y, t, chord(t), v};
  }
  SegmentProfile prof = segment_profile(complex, f, x, y);
  for (std::size_t k = 0; k < prof.t.size(); ++k)
    if (prof.values[k].is_inf()) return SegmentWitness{x, y, prof.t[k], chord(prof.t[k]), prof.values[k]};
  for (std::size_t k = 1; k + 1 < prof.t.size(); ++k) {
    const Rational& a = prof.t[k - 1];
    const Rational& b = prof.t[k];
    const Rational& c = prof.t[k + 1];
    Rational left = (prof.values[k].value() - prof.values[k - 1].value()) / (b - a);
    Rational right = (prof.values[k + 1].value() - prof.values[k].value()) / (c - b);
    if (left > right) {
      // Report the violated chord of the sub-segment around the kink.
      const Rational s = (b - a) / (c - a);
      const ExtRat sub_chord = (1 - s) * prof.values[k - 1] + s * prof.values[k + 1];
      return SegmentWitness{along(x, y, a), along(x, y, c), s, sub_chord, prof.values[k]};
    }
  }
  return std::nullopt;
}

}  // namespace

SegmentReport segment_convexity_check(const EmbeddedComplex& complex, std::span<const ExtRat> f,
                                      const SegmentOptions& options) {
  if (f.size() != complex.size()) throw Error(ErrorCode::kBadInput, "function table size mismatch");
  if (options.t_grid < 1) throw Error(ErrorCode::kBadInput, "t-grid must be positive");
  SegmentReport report;
  std::vector<Index> dom;
  for (Index e = 0; e < f.size(); ++e)
    if (f[e].is_finite()) dom.push_back(e);
  if (dom.empty()) return report;

  auto run = [&](const Point& x, const Point& y) {
    ++report.segments;
    auto w = check_segment(complex, f, x, y, options.t_grid);
    if (w) {
      report.convex = false;
      report.witness = std::move(w);
    }
    return !w;
  };

  if (dom.size() <= options.exhaustive_limit) {
    for (std::size_t i = 0; i < dom.size(); ++i)
      for (std::size_t j = i + 1; j < dom.size(); ++j)
        if (!run(complex.point(dom[i]), complex.point(dom[j]))) return report;
  }

  std::mt19937_64 rng(options.seed);
  auto pick = [&] { return complex.point(dom[std::uniform_int_distribution<std::size_t>(0, dom.size() - 1)(rng)]); };
  // Random rational points: convex combinations of three lattice points of dom f.
  auto random_point = [&]() -> std::optional<Point> {
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::uniform_int_distribution<int> w(0, 4);
      int a = w(rng), b = w(rng), c = w(rng);
      if (a + b + c == 0) a = 1;
      const Rational sum(a + b + c);
      Point p = pick(), q = pick(), r = pick();
      Point z(p.size());
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = (Rational(a) * p[i] + Rational(b) * q[i] + Rational(c) * r[i]) / sum;
      if (lovasz_value(complex, f, z).is_finite()) return z;
    }
    return std::nullopt;
  };
  for (int trial = 0; trial < options.trials; ++trial) {
    auto x = random_point();
    auto y = random_point();
    if (!x || !y) continue;
    if (!run(*x, *y)) return report;
  }
  return report;
}

RoundtripReport characterization_roundtrip(const EmbeddedComplex& complex, std::span<const ExtRat> f,
                                           const SegmentOptions& options) {
  if (!complex.grid()) throw Error(ErrorCode::kUnsupportedComplex, "roundtrip needs a grid complex");
  const OrientedTreeProduct& grid = *complex.grid();
  RoundtripReport r;
  LConvexReport l = is_l_convex(grid.space(), f);
  MidpointReport m = is_midpoint_convex(grid, f);
  SegmentReport s = segment_convexity_check(complex, f, options);
  r.l_convex = l.l_convex;
  r.midpoint_convex = m.convex;
  r.segment_convex = s.convex;
  r.agree = r.l_convex == r.midpoint_convex && r.midpoint_convex == r.segment_convex;

  // At lattice pairs the midpoint of the segment is the average of floor and ceil.
  if (complex.size() <= 100) {
    for (Index x = 0; x < complex.size(); ++x) {
      for (Index y = x + 1; y < complex.size(); ++y) {
        if (f[x].is_inf() || f[y].is_inf()) continue;
        auto [lo, hi] = grid.midpoints(x, y);
        ExtRat mid = lovasz_value(complex, f, along(complex.point(x), complex.point(y), Rational(1, 2)));
        ensure(mid == (f[lo] + f[hi]) / Rational(2), "segment midpoint differs from the discrete midpoints");
      }
    }
  }

  if (!r.agree) {
    std::ostringstream os;
    os << "L-convex=" << r.l_convex << " midpoint=" << r.midpoint_convex << " segment=" << r.segment_convex;
    if (!l.reason.empty()) os << "; " << l.reason;
    if (m.witness)
      os << "; midpoint pair " << grid.space().name(m.witness->first) << " / " << grid.space().name(m.witness->second);
    if (s.witness)
      os << "; segment " << to_string(s.witness->x) << " -> " << to_string(s.witness->y)
         << " at t=" << to_string(s.witness->t);
    r.detail = os.str();
  }
  return r;
}

}  // namespace dca
