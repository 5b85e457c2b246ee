#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "common.hpp"

using namespace dca;
using testutil::elem;
using testutil::thrown_code;

namespace {

Valuation alpha_s2(Rational a) {
  std::vector<Rational> alpha{a};
  return alpha_valuation(alpha);
}

// f(p,q) = d(p,q) on the product L x L (left-nested ids p*n+q).
FnTable distance_table(const Semilattice& l) {
  const auto n = l.size();
  FnTable f(n * n);
  for (Elem p = 0; p < static_cast<Elem>(n); ++p) {
    for (Elem q = 0; q < static_cast<Elem>(n); ++q) f[p * n + q] = l.dist(p, q);
  }
  return f;
}

// Componentwise pseudo join on S_k^n, written independently of the library.
int sk_sqcup(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  return a == b ? a : 0;
}

int sk_meet(int a, int b) { return a == b ? a : 0; }

}  // namespace

TEST_CASE("valuations") {
  auto s2 = make_sk(2);
  CHECK(validate_valuation(s2, rank_valuation(s2)).valid);
  CHECK(validate_valuation(make_skl(2, 3), rank_valuation(make_skl(2, 3))).valid);
  auto v = alpha_s2(Rational(1, 2));
  CHECK(v[elem(s2, "0")] == 0);
  CHECK(v[elem(s2, "+")] == 1);
  CHECK(v[elem(s2, "-")] == Rational(1, 2));
  CHECK(validate_valuation(s2, v).valid);
  CHECK_FALSE(validate_valuation(s2, Valuation(3, Rational(1))).valid);
  // Modular equality fails on the Boolean lattice with a skewed top.
  auto b2 = make_boolean(2);
  Valuation bad = rank_valuation(b2);
  bad[elem(b2, "1,1")] += 1;
  CHECK_FALSE(validate_valuation(b2, bad).valid);
}

TEST_CASE("alpha valuation") {
  std::vector<Rational> ones{1, 1};
  auto s22 = make_sk_power(2, 2);
  CHECK(alpha_valuation(ones) == rank_valuation(s22));
  std::vector<Rational> a{Rational(1, 2), 1};
  CHECK(alpha_valuation(a)[elem(s22, "-,-")] == Rational(3, 2));
  std::vector<Rational> third{Rational(1, 3)};
  CHECK(alpha_valuation(third)[elem(make_sk(2), "+")] == 1);
  std::vector<Rational> decreasing{1, Rational(1, 2)};
  CHECK(thrown_code([&] { alpha_valuation(decreasing); }) == ErrorCode::kBadAlpha);
  std::vector<Rational> zero{0};
  CHECK(thrown_code([&] { alpha_valuation(zero); }) == ErrorCode::kBadAlpha);
  std::vector<Rational> big{2};
  CHECK(thrown_code([&] { AlphaChecker c(big); }) == ErrorCode::kBadAlpha);
}

TEST_CASE("conv interval") {
  auto s2 = make_sk(2);
  Elem p = elem(s2, "+"), q = elem(s2, "-");
  auto points = [](const ConvInterval& c) {
    std::set<std::pair<Rational, Rational>> out;
    for (const auto& pt : c.points) out.insert({pt.x, pt.y});
    return out;
  };
  auto r = conv_interval(s2, p, q, rank_valuation(s2));
  CHECK(points(r) == std::set<std::pair<Rational, Rational>>{{0, 0}, {1, 0}, {0, 1}});
  auto h = conv_interval(s2, p, q, alpha_s2(Rational(1, 2)));
  CHECK(points(h) == std::set<std::pair<Rational, Rational>>{{0, 0}, {1, 0}, {0, Rational(1, 2)}});
  CHECK(points(conv_interval(s2, p, p, rank_valuation(s2))).size() == 1);
}

TEST_CASE("fractional join") {
  auto s2 = make_sk(2);
  Elem p = elem(s2, "+"), q = elem(s2, "-");
  auto fj = fractional_join(s2, p, q, rank_valuation(s2));
  CHECK(fj.terms.size() == 2);
  CHECK(fj.weight_of(p) == Rational(1, 2));
  CHECK(fj.weight_of(q) == Rational(1, 2));
  auto fa = fractional_join(s2, p, q, alpha_s2(Rational(1, 2)));
  CHECK(fa.weight_of(p) == Rational(2, 3));
  CHECK(fa.weight_of(q) == Rational(1, 3));
  // Hand sum of the three sub-cones Cone(0,1/2), Cone(1/2,2), Cone(2,inf).
  SlopeCone c1{0, Rational(1, 2)}, c2{Rational(1, 2), 2}, c3{2, ExtRat::infinity()};
  CHECK(c1.measure() + c2.measure() == Rational(2, 3));
  CHECK(c3.measure() == Rational(1, 3));
  CHECK(fa.total() == 1);

  auto s22 = make_sk_power(2, 2);
  Elem lo = elem(s22, "+,0"), hi = elem(s22, "+,-");
  auto comp = fractional_join(s22, lo, hi, rank_valuation(s22));
  REQUIRE(comp.terms.size() == 1);
  CHECK(comp.terms[0].u == hi);
  CHECK(comp.terms[0].weight == 1);
}

TEST_CASE("slope cones") {
  SlopeCone whole;
  CHECK(whole.measure() == 1);
  SlopeCone a{0, 1}, b{Rational(1, 2), 3};
  auto c = a.intersect(b);
  REQUIRE(c.has_value());
  CHECK(*c == SlopeCone{Rational(1, 2), 1});
  CHECK_FALSE(a.intersect(SlopeCone{1, 2}).has_value());
}

TEST_CASE("is_submodular examples") {
  for (const auto& base : {make_sk(2), make_sk(3), make_skl(2, 2)}) {
    auto ll = product(base, base);
    auto f = distance_table(base);
    CHECK(is_submodular(ll, f, rank_valuation(ll)).submodular);
  }
  auto s2 = make_sk(2);
  CHECK(is_submodular(s2, FnTable(3, ExtRat(7)), rank_valuation(s2)).submodular);
  FnTable f(3);
  f[elem(s2, "0")] = 1;
  f[elem(s2, "+")] = 0;
  f[elem(s2, "-")] = 0;
  auto r = is_submodular(s2, f, rank_valuation(s2));
  CHECK_FALSE(r.submodular);
  REQUIRE(r.witness.has_value());
  auto [p, q] = *r.witness;
  CHECK(std::set<Elem>{p, q} == std::set<Elem>{elem(s2, "+"), elem(s2, "-")});
  CHECK(r.lhs == ExtRat(0));
  CHECK(r.rhs == ExtRat(1));
}

TEST_CASE("closure under sums and direct sums") {
  std::mt19937 rng(7);
  auto l = make_sk_power(2, 2);
  SubmodularChecker checker(l, rank_valuation(l));
  auto dist = distance_table(make_sk(2));  // submodular on S_2 x S_2
  REQUIRE(checker.check(dist).submodular);
  std::vector<FnTable> good{dist};
  for (int t = 0; t < 200 && good.size() < 6; ++t) {
    auto f = testutil::random_table(l.size(), rng);
    if (checker.check(f).submodular) good.push_back(f);
  }
  for (std::size_t i = 0; i < good.size(); ++i) {
    for (std::size_t j = 0; j < good.size(); ++j) {
      FnTable sum(l.size());
      for (std::size_t e = 0; e < l.size(); ++e) sum[e] = Rational(3) * good[i][e] + Rational(1, 2) * good[j][e];
      CHECK(checker.check(sum).submodular);
    }
  }
  // Direct sum f(x) + g(y) on S_2 x S_3.
  auto a = make_sk(2), b = make_sk(3);
  auto ab = product(a, b);
  FnTable fa{1, 0, 2}, fb{0, 3, 1, 1};
  REQUIRE(is_submodular(a, fa, rank_valuation(a)).submodular);
  REQUIRE(is_submodular(b, fb, rank_valuation(b)).submodular);
  FnTable direct(ab.size());
  for (Elem x = 0; x < 3; ++x) {
    for (Elem y = 0; y < 4; ++y) direct[x * 4 + y] = fa[x] + fb[y];
  }
  CHECK(is_submodular(ab, direct, rank_valuation(ab)).submodular);
}

TEST_CASE("left, right and pseudo joins") {
  auto s22 = make_sk_power(2, 2);
  CHECK(left_join(s22, elem(s22, "+,0"), elem(s22, "0,-")) == elem(s22, "+,-"));
  auto s2 = make_sk(2);
  CHECK(pseudo_join(s2, elem(s2, "+"), elem(s2, "-")) == elem(s2, "0"));
  CHECK(left_join(s2, elem(s2, "+"), elem(s2, "-")) == elem(s2, "+"));
  CHECK(right_join(s2, elem(s2, "+"), elem(s2, "-")) == elem(s2, "-"));
  for (const auto& l : {make_sk_power(2, 2), make_sk_power(3, 2), make_skl(2, 2), make_skl(2, 3)}) {
    const auto n = static_cast<Elem>(l.size());
    for (Elem p = 0; p < n; ++p) {
      for (Elem q = 0; q < n; ++q) {
        CHECK(left_join(l, p, q) == right_join(l, q, p));
        if (auto j = l.join(p, q)) {
          CHECK(left_join(l, p, q) == *j);
          CHECK(right_join(l, p, q) == *j);
          CHECK(pseudo_join(l, p, q) == *j);
        }
      }
    }
  }
}

TEST_CASE("polar lemma identities") {
  for (const auto& l : {make_sk_power(2, 2), make_sk_power(3, 2), make_skl(2, 2)}) {
    const auto n = static_cast<Elem>(l.size());
    for (Elem p = 0; p < n; ++p) {
      for (Elem q = 0; q < n; ++q) {
        Elem vl = left_join(l, p, q), vr = right_join(l, p, q), sq = pseudo_join(l, p, q);
        Elem ml = left_meet(l, p, q), mr = right_meet(l, p, q);
        CHECK(left_join(l, vl, vr) == vl);
        CHECK(right_join(l, vl, vr) == vr);
        CHECK(l.meet(ml, mr) == l.meet(p, q));
        CHECK(pseudo_join(l, ml, mr) == sq);
        CHECK(l.join(ml, mr) == sq);
        CHECK(pseudo_join(l, p, sq) == vl);
        CHECK(l.join(p, sq) == vl);
        CHECK(pseudo_join(l, q, sq) == vr);
        CHECK(l.meet(p, sq) == ml);
        CHECK(l.meet(q, sq) == mr);
        CHECK(l.rank(vl) == l.rank(vr));
      }
    }
  }
  // In S_k^n the left join is also (p ⊔ q) ⊔ p.
  auto s32 = make_sk_power(3, 2);
  for (Elem p = 0; p < 16; ++p) {
    for (Elem q = 0; q < 16; ++q) {
      CHECK(pseudo_join(s32, pseudo_join(s32, p, q), p) == left_join(s32, p, q));
    }
  }
}

TEST_CASE("polar submodularity three ways") {
  auto s3 = make_sk(3);
  auto s33 = product(s3, s3);
  auto r = is_polar_submodular(s33, distance_table(s3));
  CHECK(r.submodular);
  CHECK(r.by_fractional_join);
  CHECK(r.by_pseudo_join);
  CHECK(r.by_frames);

  auto s22 = make_sk_power(2, 2);
  PolarSubmodularChecker checker(s22);
  std::mt19937 rng(11);
  int yes = 0;
  for (int t = 0; t < 300; ++t) {
    auto f = testutil::random_table(s22.size(), rng);
    auto rep = checker.check(f);
    CHECK(rep.by_fractional_join == rep.by_pseudo_join);
    CHECK(rep.by_pseudo_join == rep.by_frames);
    yes += rep.submodular ? 1 : 0;
  }
  CHECK(yes > 0);

  // Break the ⊔-inequality at (+,0),(-,0) only.
  FnTable f(s22.size(), ExtRat(0));
  f[elem(s22, "0,0")] = 5;
  auto bad = is_polar_submodular(s22, f);
  CHECK_FALSE(bad.submodular);
  REQUIRE(bad.witness.has_value());
  auto [p, q] = *bad.witness;
  CHECK(pseudo_join(s22, p, q) == elem(s22, "0,0"));
  CHECK(thrown_code([] { PolarSubmodularChecker c(make_chain(2)); }) == ErrorCode::kNotPolar);
}

TEST_CASE("k-submodularity") {
  const int k = 3, n = 2;
  KSubmodularChecker checker(k, n);
  const auto size = checker.lattice().size();
  // Relaxed cut term: distance in the covering graph of S_3.
  FnTable cut(size), potts(size);
  for (Elem e = 0; e < static_cast<Elem>(size); ++e) {
    auto c = sk_coords(e, k, n);
    cut[e] = c[0] == c[1] ? 0 : (c[0] == 0 || c[1] == 0 ? 1 : 2);
    potts[e] = (c[0] != c[1] && c[0] != 0 && c[1] != 0) ? 1 : 0;
  }
  auto r = checker.check(cut);
  CHECK(r.k_submodular);
  CHECK(r.submodular);
  CHECK(checker.check(FnTable(size, ExtRat(2))).k_submodular);

  // Oracle: explicit componentwise inequality.
  auto oracle = [&](const FnTable& f) {
    for (Elem p = 0; p < static_cast<Elem>(size); ++p) {
      for (Elem q = 0; q < static_cast<Elem>(size); ++q) {
        auto a = sk_coords(p, k, n), b = sk_coords(q, k, n);
        std::vector<int> m(n), s(n);
        for (int i = 0; i < n; ++i) {
          m[i] = sk_meet(a[i], b[i]);
          s[i] = sk_sqcup(a[i], b[i]);
        }
        if (!dominates(f[p] + f[q], f[sk_code(m, k)] + f[sk_code(s, k)])) return false;
      }
    }
    return true;
  };
  CHECK(oracle(cut));
  // The plain Potts indicator fails at ((1,0),(0,2)).
  CHECK_FALSE(oracle(potts));
  CHECK_FALSE(checker.check(potts).k_submodular);
  // Indicator of {(1,0),(2,0)}: not closed under ⊔.
  FnTable ind(size, ExtRat::infinity());
  std::vector<int> c1{1, 0}, c2{2, 0};
  ind[sk_code(c1, k)] = 0;
  ind[sk_code(c2, k)] = 0;
  CHECK_FALSE(oracle(ind));
  CHECK_FALSE(checker.check(ind).k_submodular);
  CHECK_FALSE(checker.check(ind).submodular);

  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto f = testutil::random_table(size, rng);
    auto rep = checker.check(f);
    CHECK(rep.k_submodular == oracle(f));
    CHECK(rep.k_submodular == rep.submodular);
  }
}

TEST_CASE("alpha bisubmodularity") {
  std::vector<Rational> half{Rational(1, 2)};
  AlphaChecker one(half);
  CHECK(one.formula_matches());
  auto s2 = make_sk(2);
  Elem p = elem(s2, "+"), q = elem(s2, "-");
  auto cf = one.closed_form(p, q);
  // (1/3) v_L + (1/3) v_R + (1/3) ⊔^1 with v_L = ⊔^1 = +.
  CHECK(cf.weight_of(p) == Rational(2, 3));
  CHECK(cf.weight_of(q) == Rational(1, 3));
  CHECK(s2_left_join(1, p, q, 0) == p);
  CHECK(s2_right_join(1, p, q, 0) == q);
  CHECK(s2_sqcup_plus(1, p, q, 1) == p);
  CHECK(s2_sqcup_plus(1, p, q, 0) == elem(s2, "0"));

  std::vector<Rational> ones{1, 1};
  AlphaChecker bis(ones);
  auto s22 = make_sk_power(2, 2);
  std::mt19937 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto f = testutil::random_table(s22.size(), rng);
    auto a = bis.check(f);
    auto b = is_polar_submodular(s22, f);
    CHECK(a.alpha_bisubmodular == a.submodular);
    CHECK(a.submodular == b.submodular);
  }

  std::vector<Rational> mixed{Rational(1, 2), 1};
  AlphaChecker mc(mixed);
  CHECK(mc.formula_matches());
  for (int t = 0; t < 100; ++t) {
    FnTable f(s22.size());
    // Distance-induced: distance to a random element plus noise-free scaling.
    Elem c = static_cast<Elem>(rng() % s22.size());
    for (Elem e = 0; e < 9; ++e) f[e] = s22.dist(c, e) * static_cast<int>(1 + rng() % 3);
    auto a = mc.check(f);
    CHECK(a.alpha_bisubmodular == a.submodular);
  }
}

TEST_CASE("product fractional join") {
  auto s2 = make_sk(2), s3 = make_sk(3);
  std::vector<ProductSpec> s2s2{{s2, rank_valuation(s2)}, {s2, rank_valuation(s2)}};
  std::vector<ProductSpec> s2s3{{s2, rank_valuation(s2)}, {s3, rank_valuation(s3)}};
  std::vector<ProductSpec> single{{s3, rank_valuation(s3)}};
  for (const auto* spec : {&s2s2, &s2s3}) {
    auto& comps = *spec;
    const auto n0 = static_cast<Elem>(comps[0].lattice.size());
    const auto n1 = static_cast<Elem>(comps[1].lattice.size());
    for (Elem a = 0; a < n0; ++a) {
      for (Elem b = 0; b < n1; ++b) {
        for (Elem c = 0; c < n0; ++c) {
          for (Elem d = 0; d < n1; ++d) {
            std::vector<Elem> p{a, b}, q{c, d};
            CHECK(product_frac_join_check(comps, p, q));
          }
        }
      }
    }
  }
  for (Elem a = 0; a < 4; ++a) {
    for (Elem b = 0; b < 4; ++b) {
      std::vector<Elem> p{a}, q{b};
      CHECK(product_frac_join_check(single, p, q));
    }
  }
  // Alpha-weighted components as well.
  std::vector<ProductSpec> alpha{{s2, alpha_s2(Rational(1, 3))}, {s2, alpha_s2(Rational(1, 2))}};
  for (Elem a = 0; a < 9; ++a) {
    for (Elem b = 0; b < 9; ++b) {
      std::vector<Elem> p{a / 3, a % 3}, q{b / 3, b % 3};
      CHECK(product_frac_join_check(alpha, p, q));
    }
  }
}

TEST_CASE("product checker assembled from factors") {
  auto s2 = make_sk(2);
  auto b2 = make_boolean(2);
  auto m3 = make_skl(1, 2);
  SubmodularChecker a(s2, rank_valuation(s2)), b(b2, rank_valuation(b2)), c(m3, rank_valuation(m3));
  std::vector<const SubmodularChecker*> parts{&a, &b, &c};
  SubmodularChecker prod = SubmodularChecker::product(parts);
  Semilattice direct = product(product(s2, b2), m3);
  SubmodularChecker ref(direct, rank_valuation(direct));
  REQUIRE(prod.lattice().size() == direct.size());
  CHECK(prod.valuation() == ref.valuation());
  const auto n = static_cast<Elem>(direct.size());
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = 0; q < n; ++q) {
      const FracJoin& x = prod.frac_join(p, q);
      const FracJoin& y = ref.frac_join(p, q);
      REQUIRE(x.terms.size() == y.terms.size());
      for (const auto& t : y.terms) CHECK(x.weight_of(t.u) == t.weight);
    }
  }
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    FnTable f = testutil::random_table(direct.size(), rng, 0, 4);
    CHECK(prod.check(f).submodular == ref.check(f).submodular);
  }
}

TEST_CASE("fractional join operation") {
  auto s2 = make_sk(2);
  auto v = alpha_s2(Rational(1, 3));
  auto ops = fractional_join_operation(s2, v);
  Rational total = 0;
  for (const auto& op : ops) {
    total += op.weight;
    auto cone = operation_cone(s2, v, op.table);
    REQUIRE(cone.has_value());
    CHECK(op.weight == cone->measure());
  }
  CHECK(total == 1);
  CHECK(ops.size() == 3);
}
