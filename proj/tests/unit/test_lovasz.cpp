#include <doctest.h>

#include <random>

#include "common.hpp"
#include "dca/lovasz.hpp"

using namespace dca;
using testutil::thrown_code;

namespace {

Point pt(std::initializer_list<Rational> v) { return Point(v); }

FnTable on_points(const EmbeddedComplex& e, const std::function<ExtRat(const Point&)>& f) {
  FnTable out(e.size());
  for (Index i = 0; i < e.size(); ++i) out[i] = f(e.point(i));
  return out;
}

}  // namespace

TEST_CASE("Lovász evaluation on posets") {
  Semilattice chain = make_chain(3);
  FnTable f{ExtRat(3), ExtRat(6), ExtRat(9), ExtRat(0)};
  CHECK(lovasz_evaluate(chain.poset(), f, {{1}, {Rational(1)}}) == ExtRat(6));
  ChainPoint uniform{{0, 1, 2}, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
  CHECK(lovasz_evaluate(chain.poset(), f, uniform) == ExtRat(6));
  CHECK(thrown_code([&] { lovasz_evaluate(chain.poset(), f, {{2, 1}, {Rational(1, 2), Rational(1, 2)}}); }) ==
        ErrorCode::kNotAChain);
  CHECK(thrown_code([&] { lovasz_evaluate(chain.poset(), f, {{0, 1}, {Rational(1, 2), Rational(1, 3)}}); }) ==
        ErrorCode::kBadInput);

  // Edge midpoint of [x,y] is the subdivision average.
  Semilattice s3 = make_sk(3);
  FnTable g{ExtRat(1), ExtRat(4), ExtRat(2), ExtRat(7)};
  CHECK(lovasz_evaluate(s3.poset(), g, {{0, 3}, {Rational(1, 2), Rational(1, 2)}}) == ExtRat(4));
  // Incomparable atoms do not form a chain.
  CHECK(thrown_code([&] { lovasz_evaluate(s3.poset(), g, {{1, 2}, {Rational(1, 2), Rational(1, 2)}}); }) ==
        ErrorCode::kNotAChain);
}

TEST_CASE("locating simplices") {
  EmbeddedComplex sc = EmbeddedComplex::signed_cube(2);
  ChainPoint p = locate_simplex(sc, pt({1, 0}));
  REQUIRE(p.chain.size() == 1);
  CHECK(sc.name(p.chain[0]) == "+,0");
  CHECK(p.coefficients[0] == 1);

  EmbeddedComplex fr = EmbeddedComplex::freudenthal(2, 0, 2);
  ChainPoint q = locate_simplex(fr, pt({Rational(1, 2), Rational(1, 4)}));
  REQUIRE(q.chain.size() == 3);
  CHECK(fr.name(q.chain[0]) == "0,0");
  CHECK(fr.name(q.chain[1]) == "1,0");
  CHECK(fr.name(q.chain[2]) == "1,1");
  CHECK(q.coefficients == std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4)});

  EmbeddedComplex uj = EmbeddedComplex::union_jack(1, 0, 2);
  ChainPoint r = locate_simplex(uj, pt({Rational(1, 2)}));
  REQUIRE(r.chain.size() == 2);
  // Bottom up: the odd vertex lies below the even one.
  CHECK(uj.name(r.chain[0]) == "1");
  CHECK(uj.name(r.chain[1]) == "0");
  CHECK(r.coefficients == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  CHECK(thrown_code([&] { locate_simplex(sc, pt({Rational(3, 2), 0})); }) == ErrorCode::kOutOfRegion);
  CHECK(thrown_code([&] { locate_simplex(fr, pt({-1, 0})); }) == ErrorCode::kOutOfRegion);

  // Embedding after locating is the identity; lattice points are vertices.
  std::mt19937 rng(4);
  for (const auto& e : {EmbeddedComplex::signed_cube(3), EmbeddedComplex::freudenthal(3, -1, 2),
                        EmbeddedComplex::union_jack(3, -1, 2), EmbeddedComplex::order_polytope(make_boolean(3))}) {
    for (Index v = 0; v < e.size(); ++v) {
      ChainPoint c = locate_simplex(e, e.point(v));
      CHECK(c.chain == std::vector<Index>{v});
    }
    std::uniform_int_distribution<std::size_t> any(0, e.size() - 1);
    for (int t = 0; t < 100; ++t) {
      const Point& a = e.point(any(rng));
      const Point& b = e.point(any(rng));
      Rational w(static_cast<int>(rng() % 9), 8);
      Point x(a.size());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = a[i] + w * (b[i] - a[i]);
      ChainPoint c = locate_simplex(e, x);
      Rational total(0);
      for (const auto& l : c.coefficients) total += l;
      CHECK(total == 1);
      CHECK(embed(e, c) == x);
    }
  }

  // K' of the linear grid only has unit-cube chains.
  CHECK(thrown_code([&] {
          FnTable z(fr.size(), ExtRat(0));
          lovasz_evaluate(fr, z, {{*fr.find_point(pt({0, 0})), *fr.find_point(pt({2, 0}))},
                                  {Rational(1, 2), Rational(1, 2)}});
        }) == ErrorCode::kNotAChain);
}

TEST_CASE("order polytopes of distributive lattices") {
  // Down-sets of the poset a < b, c: a distributive lattice with 5 elements.
  Poset p = Poset::from_covers({"0", "a", "ab", "ac", "abc"}, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}});
  EmbeddedComplex e = EmbeddedComplex::order_polytope(Semilattice(p));
  CHECK(e.dimension() == 3);
  CHECK(e.in_region(pt({1, Rational(1, 2), Rational(1, 4)})));
  CHECK_FALSE(e.in_region(pt({Rational(1, 2), 1, 0})));
  CHECK(thrown_code([] { EmbeddedComplex::order_polytope(make_sk_power(2, 1)); }) ==
        ErrorCode::kUnsupportedComplex);
  CHECK(thrown_code([] { EmbeddedComplex::by_name("polar_space", 2); }) == ErrorCode::kUnsupportedComplex);
}

TEST_CASE("Lovász extension is piecewise linear on segments") {
  std::mt19937 rng(8);
  for (const auto& e : {EmbeddedComplex::signed_cube(2), EmbeddedComplex::union_jack(2, 0, 3),
                        EmbeddedComplex::freudenthal(2, 0, 3), EmbeddedComplex::order_polytope(make_boolean(3))}) {
    FnTable f = testutil::random_table(e.size(), rng, -3, 5);
    std::uniform_int_distribution<std::size_t> any(0, e.size() - 1);
    for (int t = 0; t < 30; ++t) {
      const Point& x = e.point(any(rng));
      const Point& y = e.point(any(rng));
      SegmentProfile prof = segment_profile(e, f, x, y);
      // Linearity in f, agreement with f at vertices.
      CHECK(prof.values.front() == lovasz_value(e, f, x));
      for (int k = 0; k <= 64; ++k) {
        Rational s(k, 64);
        auto it = std::upper_bound(prof.t.begin(), prof.t.end(), s);
        std::size_t hi = std::min<std::size_t>(it - prof.t.begin(), prof.t.size() - 1);
        std::size_t lo = hi == 0 ? 0 : hi - 1;
        if (prof.t[lo] == s) hi = lo;
        Rational expect = prof.values[lo].value();
        if (hi != lo) {
          Rational w = (s - prof.t[lo]) / (prof.t[hi] - prof.t[lo]);
          expect = (1 - w) * prof.values[lo].value() + w * prof.values[hi].value();
        }
        Point z(x.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] + s * (y[i] - x[i]);
        CHECK(lovasz_value(e, f, z) == ExtRat(expect));
      }
      FnTable g = testutil::random_table(e.size(), rng, 0, 4), sum(e.size());
      for (Index i = 0; i < e.size(); ++i) sum[i] = f[i] + Rational(2) * g[i];
      Point mid(x.size());
      for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = (x[i] + y[i]) / 2;
      CHECK(lovasz_value(e, sum, mid) == lovasz_value(e, f, mid) + Rational(2) * lovasz_value(e, g, mid));
    }
  }
}

TEST_CASE("segment convexity characterizes submodularity") {
  EmbeddedComplex cube = EmbeddedComplex::order_polytope(make_boolean(2));
  SegmentOptions opts;
  // Cut function of a single edge (submodular) and XOR (not).
  FnTable cut = on_points(cube, [](const Point& x) { return ExtRat(x[0] != x[1] ? 1 : 0); });
  CHECK(segment_convexity_check(cube, cut, opts).convex);
  FnTable xr = on_points(cube, [](const Point& x) { return ExtRat(x[0] != x[1] ? 0 : 1); });
  SegmentReport bad = segment_convexity_check(cube, xr, opts);
  CHECK_FALSE(bad.convex);
  REQUIRE(bad.witness);
  CHECK(bad.witness->value > bad.witness->chord);

  // Random functions: Lovász convexity iff submodular / bisubmodular.
  std::mt19937 rng(12);
  SubmodularChecker boolean3(*EmbeddedComplex::order_polytope(make_boolean(3)).lattice(),
                             rank_valuation(make_boolean(3)));
  EmbeddedComplex b3 = EmbeddedComplex::order_polytope(make_boolean(3));
  KSubmodularChecker bisub(2, 2);
  EmbeddedComplex s2 = EmbeddedComplex::signed_cube(2);
  int yes_b = 0, yes_s = 0;
  for (int t = 0; t < 60; ++t) {
    FnTable f = testutil::random_table(b3.size(), rng, 0, 6);
    if (t % 2) {
      // Push toward submodularity with a concave function of the cardinality.
      for (Index i = 0; i < f.size(); ++i) {
        int k = 0;
        for (const auto& c : b3.point(i)) k += c == 1 ? 1 : 0;
        f[i] = ExtRat(static_cast<int>(rng() % 2) + k * (3 - k) * 3);
      }
    }
    const bool sub = boolean3.check(f).submodular;
    CHECK(segment_convexity_check(b3, f, opts).convex == sub);
    yes_b += sub;

    FnTable g = testutil::random_table(s2.size(), rng, 0, 6);
    if (t % 2) {
      for (Index i = 0; i < g.size(); ++i) {
        const Point& x = s2.point(i);
        g[i] = ExtRat(static_cast<int>(rng() % 2) + 4 * (abs(x[0]).numerator() + abs(x[1]).numerator()));
      }
    }
    const bool bs = bisub.check(g).k_submodular;
    CHECK(segment_convexity_check(s2, g, opts).convex == bs);
    yes_s += bs;
  }
  CHECK(yes_b >= 5);
  CHECK(yes_s >= 5);
}

TEST_CASE("three characterizations on grids agree") {
  std::mt19937 rng(21);
  for (const auto& e : {EmbeddedComplex::union_jack(2, 0, 3), EmbeddedComplex::freudenthal(2, 0, 3)}) {
    int yes = 0;
    for (int t = 0; t < 60; ++t) {
      FnTable f = t % 3 == 0 ? testutil::random_table(e.size(), rng, 0, 4)
                             : testutil::random_l_convex(e.grid()->space(), rng);
      SegmentOptions opts;
      opts.seed = rng();
      opts.trials = 40;
      RoundtripReport r = characterization_roundtrip(e, f, opts);
      CHECK_MESSAGE(r.agree, r.detail);
      yes += r.l_convex;
    }
    CHECK(yes >= 30);
  }

  // |x1 - x2| on the linear box.
  EmbeddedComplex fr = EmbeddedComplex::freudenthal(2, 0, 3);
  FnTable diff = on_points(fr, [](const Point& x) { return ExtRat(abs(x[0] - x[1])); });
  RoundtripReport r = characterization_roundtrip(fr, diff);
  CHECK(r.l_convex);
  CHECK(r.midpoint_convex);
  CHECK(r.segment_convex);

  // XOR on the unit square embedded in Ž².
  EmbeddedComplex uj = EmbeddedComplex::union_jack(2, 0, 1);
  FnTable xr = on_points(uj, [](const Point& x) { return ExtRat(x[0] != x[1] ? 0 : 1); });
  RoundtripReport rx = characterization_roundtrip(uj, xr);
  CHECK_FALSE(rx.l_convex);
  CHECK_FALSE(rx.midpoint_convex);
  CHECK_FALSE(rx.segment_convex);
  CHECK(rx.agree);

  CHECK(thrown_code([] {
          auto s = EmbeddedComplex::signed_cube(1);
          FnTable f(s.size(), ExtRat(0));
          characterization_roundtrip(s, f);
        }) == ErrorCode::kUnsupportedComplex);
}
