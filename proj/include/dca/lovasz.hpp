#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dca/ext_rat.hpp"
#include "dca/midpoint.hpp"
#include "dca/poset.hpp"
#include "dca/submodular.hpp"

namespace dca {

using Point = std::vector<Rational>;

/// Formal convex combination of a chain, listed from the bottom up.
struct ChainPoint {
  std::vector<Index> chain;
  std::vector<Rational> coefficients;
};

/// Σ λ_i f(p_i). Throws NotAChain when the support is not a strictly
/// increasing chain, BadInput when the coefficients are negative or do not
/// sum to 1.
ExtRat lovasz_evaluate(const Poset& poset, std::span<const ExtRat> f, const ChainPoint& point);

enum class ComplexKind { kOrderPolytope, kSignedCube, kUnionJack, kFreudenthal };

std::string_view to_string(ComplexKind kind);

/// Orthoscheme complex with an isometric embedding onto a convex region of
/// rational n-space.
class EmbeddedComplex {
 public:
  /// Distributive lattice, embedded through its join-irreducibles. Throws
  /// UnsupportedComplex when the lattice is not distributive.
  static EmbeddedComplex order_polytope(const Semilattice& lattice);
  /// S_2^n onto [-1,1]^n; element ids are those of make_sk_power(2, n).
  static EmbeddedComplex signed_cube(int n);
  /// Ž^n box (alternating orientation) with its Union-Jack division.
  static EmbeddedComplex union_jack(int n, int lo, int hi);
  /// ⃗Z^n box (linear orientation); K' is the Freudenthal division.
  static EmbeddedComplex freudenthal(int n, int lo, int hi);
  /// Named kinds; anything else (modular lattices, polar spaces, buildings
  /// with several apartments) throws UnsupportedComplex.
  static EmbeddedComplex by_name(std::string_view kind, int n, int lo = 0, int hi = 1);

  ComplexKind kind() const { return kind_; }
  int dimension() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const Point& point(Index e) const { return points_[e]; }
  std::string name(Index e) const;
  std::optional<Index> find_point(std::span<const Rational> x) const;
  bool less(Index a, Index b) const;
  /// Chain that spans a simplex of the complex (bottom up).
  bool is_simplex(std::span<const Index> chain) const;
  bool in_region(std::span<const Rational> x) const;

  /// Lattice kinds only.
  const Semilattice* lattice() const { return lattice_.get(); }
  /// Grid kinds only.
  const OrientedTreeProduct* grid() const { return grid_.get(); }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

 private:
  EmbeddedComplex() = default;
  void index_points();

  ComplexKind kind_ = ComplexKind::kSignedCube;
  int dim_ = 0;
  int lo_ = 0;
  int hi_ = 1;
  std::vector<Point> points_;
  std::map<Point, Index> by_point_;
  std::shared_ptr<Semilattice> lattice_;
  std::shared_ptr<OrientedTreeProduct> grid_;
  // Order polytope: join-irreducible per coordinate and the induced order.
  std::vector<Elem> irreducibles_;
  std::vector<std::pair<int, int>> coordinate_order_;  // (i, j): x_i >= x_j
};

Point embed(const EmbeddedComplex& complex, const ChainPoint& point);
ExtRat lovasz_evaluate(const EmbeddedComplex& complex, std::span<const ExtRat> f, const ChainPoint& point);
/// The simplex containing x, with zero coefficients dropped. Throws OutOfRegion.
ChainPoint locate_simplex(const EmbeddedComplex& complex, std::span<const Rational> x);
/// f̄(x) through locate_simplex.
ExtRat lovasz_value(const EmbeddedComplex& complex, std::span<const ExtRat> f, std::span<const Rational> x);

/// f̄ on the segment x + t(y - x) at every candidate breakpoint t (including
/// 0 and 1); f̄ is affine between consecutive entries.
struct SegmentProfile {
  std::vector<Rational> t;
  std::vector<ExtRat> values;
};

SegmentProfile segment_profile(const EmbeddedComplex& complex, std::span<const ExtRat> f,
                               std::span<const Rational> x, std::span<const Rational> y);

struct SegmentOptions {
  /// Random rational point pairs in dom f̄.
  int trials = 200;
  std::uint64_t seed = 1;
  /// Also every pair of lattice points of dom f when dom f is at most this big.
  std::size_t exhaustive_limit = 400;
  /// t-grid {k / t_grid}.
  int t_grid = 8;
};

struct SegmentWitness {
  Point x;
  Point y;
  Rational t;
  ExtRat chord;
  ExtRat value;
};

struct SegmentReport {
  bool convex = true;
  std::optional<SegmentWitness> witness;
  std::size_t segments = 0;
};

/// Convexity of f̄ along sampled segments: chord test on the t-grid and slope
/// monotonicity across all breakpoints. Deterministic given the seed.
SegmentReport segment_convexity_check(const EmbeddedComplex& complex, std::span<const ExtRat> f,
                                      const SegmentOptions& options = {});

struct RoundtripReport {
  bool l_convex = false;
  bool midpoint_convex = false;
  bool segment_convex = false;
  bool agree = false;
  std::string detail;
};

/// L-convexity, midpoint convexity and segment convexity on a grid kind.
/// Throws UnsupportedComplex for other kinds.
RoundtripReport characterization_roundtrip(const EmbeddedComplex& complex, std::span<const ExtRat> f,
                                           const SegmentOptions& options = {});

std::string to_string(const Point& x);

}  // namespace dca
