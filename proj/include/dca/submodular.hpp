#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dca/ext_rat.hpp"
#include "dca/poset.hpp"

namespace dca {

/// Element -> value, indexed by Elem.
using Valuation = std::vector<Rational>;
/// Function values on a finite domain, indexed by element / vertex id.
using FnTable = std::vector<ExtRat>;
/// Binary operation as an n*n table, entry p*n+q.
using BinaryOp = std::vector<Elem>;

Valuation rank_valuation(const Semilattice& lattice);

struct ValuationReport {
  bool valid = false;
  std::optional<std::pair<Elem, Elem>> witness;
  std::string reason;
};

ValuationReport validate_valuation(const Semilattice& lattice, const Valuation& v);

struct IntervalPoint {
  Elem u;
  Rational x;
  Rational y;
};

struct ConvInterval {
  std::vector<IntervalPoint> points;
  /// Hull vertices, counter-clockwise starting at the lowest-leftmost point.
  std::vector<IntervalPoint> hull;
  /// Maximal extreme points ordered by decreasing x (increasing y).
  std::vector<IntervalPoint> maximal;
};

ConvInterval conv_interval(const Semilattice& lattice, Elem p, Elem q, const Valuation& v);

/// Cone {(x,y) >= 0 : lo*x <= y <= hi*x}, hi may be infinite.
struct SlopeCone {
  ExtRat lo{0};
  ExtRat hi = ExtRat::infinity();

  /// 1/(1+lo) - 1/(1+hi), with 1/(1+inf) = 0. Whole quadrant measures 1.
  Rational measure() const;
  bool has_interior() const { return lo < hi; }
  /// Intersection; nullopt when it has no interior.
  std::optional<SlopeCone> intersect(const SlopeCone& other) const;
  friend bool operator==(const SlopeCone&, const SlopeCone&) = default;
};

std::string to_string(const SlopeCone& cone);

struct FracTerm {
  Elem u;
  Rational weight;
  SlopeCone cone;
};

struct FracJoin {
  std::vector<FracTerm> terms;

  Rational total() const;
  /// 0 when u is not a term.
  Rational weight_of(Elem u) const;
  const FracTerm* find(Elem u) const;
};

FracJoin fractional_join(const Semilattice& lattice, Elem p, Elem q, const Valuation& v);

/// An operation of the fractional join operation with its cone.
struct WeightedOp {
  Rational weight;
  SlopeCone cone;
  BinaryOp table;
};

/// The fractional join operation, computed by refining the per-pair cone
/// partitions of the slope axis.
std::vector<WeightedOp> fractional_join_operation(const Semilattice& lattice, const Valuation& v);

/// Cone of an operation: intersection of C(op(p,q);p,q) over all pairs.
/// nullopt when op(p,q) is outside E(p,q) for some pair or the cone is thin.
std::optional<SlopeCone> operation_cone(const Semilattice& lattice, const Valuation& v,
                                        const BinaryOp& op);

/// a >= b with the convention that an infinite left side dominates.
bool dominates(const ExtRat& lhs, const ExtRat& rhs);

struct SubmodularReport {
  bool submodular = true;
  std::optional<std::pair<Elem, Elem>> witness;
  ExtRat lhs;
  ExtRat rhs;
};

/// Caches meets and fractional joins of every pair so that many functions on
/// the same (lattice, valuation) can be checked cheaply.
class SubmodularChecker {
 public:
  SubmodularChecker(const Semilattice& lattice, Valuation v);
  /// Left-nested product with the sum valuation; each fractional join is
  /// assembled from the component ones by intersecting their cones.
  static SubmodularChecker product(std::span<const SubmodularChecker* const> parts);

  const Semilattice& lattice() const { return lattice_; }
  const Valuation& valuation() const { return v_; }
  const FracJoin& frac_join(Elem p, Elem q) const { return joins_[p * lattice_.size() + q]; }
  /// Right-hand side f(p^q) + sum of weighted fractional-join values.
  ExtRat rhs(std::span<const ExtRat> f, Elem p, Elem q) const;
  SubmodularReport check(std::span<const ExtRat> f) const;

 private:
  SubmodularChecker(Semilattice lattice, Valuation v, std::vector<FracJoin> joins)
      : lattice_(std::move(lattice)), v_(std::move(v)), joins_(std::move(joins)) {}

  Semilattice lattice_;
  Valuation v_;
  std::vector<FracJoin> joins_;
};

/// Checks the defining inequality; also asserts that the per-pair sum and the
/// operation-form sum coincide for every pair.
SubmodularReport is_submodular(const Semilattice& lattice, std::span<const ExtRat> f,
                               const Valuation& v);

Elem left_join(const Semilattice& lattice, Elem p, Elem q);
Elem right_join(const Semilattice& lattice, Elem p, Elem q);
Elem pseudo_join(const Semilattice& lattice, Elem p, Elem q);
/// p ^ (p v_R q) and q ^ (p v_L q).
Elem left_meet(const Semilattice& lattice, Elem p, Elem q);
Elem right_meet(const Semilattice& lattice, Elem p, Elem q);

BinaryOp left_join_table(const Semilattice& lattice);
BinaryOp right_join_table(const Semilattice& lattice);
BinaryOp pseudo_join_table(const Semilattice& lattice);

struct PolarSubmodularReport {
  bool submodular = false;
  bool by_fractional_join = false;
  bool by_pseudo_join = false;
  bool by_frames = false;
  std::optional<std::pair<Elem, Elem>> witness;
};

/// Three-way check on a polar space. Throws NotPolar otherwise, and
/// InvariantViolated if the three verdicts ever differ.
class PolarSubmodularChecker {
 public:
  explicit PolarSubmodularChecker(const Semilattice& lattice, const PolarOptions& options = {});

  PolarSubmodularReport check(std::span<const ExtRat> f) const;
  const std::vector<PolarFrame>& frames() const { return frames_; }
  const SubmodularChecker& general() const { return general_; }

 private:
  SubmodularChecker general_;
  BinaryOp pseudo_;
  std::vector<PolarFrame> frames_;
};

PolarSubmodularReport is_polar_submodular(const Semilattice& lattice, std::span<const ExtRat> f);

// ---------------------------------------------------------------------------
// S_k^n. Elements of make_sk_power(k, n) are base-(k+1) codes with the first
// coordinate most significant; coordinate value 0 is the bottom.

std::vector<int> sk_coords(int code, int k, int n);
int sk_code(std::span<const int> coords, int k);

struct KSubmodularReport {
  bool k_submodular = false;
  bool submodular = false;  // general check with the rank valuation
  std::optional<std::pair<Elem, Elem>> witness;
};

/// f on make_sk_power(k, n). Asserts agreement with the general check.
class KSubmodularChecker {
 public:
  KSubmodularChecker(int k, int n);
  KSubmodularReport check(std::span<const ExtRat> f) const;
  const Semilattice& lattice() const { return general_.lattice(); }

 private:
  int k_;
  int n_;
  SubmodularChecker general_;
  BinaryOp pseudo_;
};

KSubmodularReport is_k_submodular(int k, int n, std::span<const ExtRat> f);

/// v_alpha on S_2^n; throws BadAlpha unless 0 < a_1 <= ... <= a_n <= 1.
Valuation alpha_valuation(std::span<const Rational> alpha);

/// Componentwise operations on S_2^n (coordinate values 0, + = 1, - = 2).
Elem s2_sqcup_plus(int n, Elem p, Elem q, int prefix);   // sqcup^prefix
Elem s2_left_join(int n, Elem p, Elem q, int prefix);    // v_L^prefix
Elem s2_right_join(int n, Elem p, Elem q, int prefix);   // v_R^prefix

struct AlphaReport {
  bool alpha_bisubmodular = false;  // explicit inequality
  bool submodular = false;          // valuation form
  bool formula_matches = false;     // fractional join equals the closed form on every pair
  std::optional<std::pair<Elem, Elem>> witness;
};

class AlphaChecker {
 public:
  explicit AlphaChecker(std::vector<Rational> alpha);
  AlphaReport check(std::span<const ExtRat> f) const;
  const Semilattice& lattice() const { return general_.lattice(); }
  bool formula_matches() const { return formula_matches_; }
  /// Closed-form fractional join of (p,q) as element -> weight terms.
  FracJoin closed_form(Elem p, Elem q) const;

 private:
  std::vector<Rational> alpha_;
  int n_;
  SubmodularChecker general_;
  bool formula_matches_ = false;
};

AlphaReport is_alpha_bisubmodular(std::span<const ExtRat> f, std::span<const Rational> alpha);

/// Fractional join of a product pair via intersections of component cones.
/// `product` must be the left-nested product of the components.
FracJoin product_fractional_join(std::span<const Semilattice> components,
                                 std::span<const Valuation> valuations,
                                 std::span<const Elem> p, std::span<const Elem> q);

struct ProductSpec {
  Semilattice lattice;
  Valuation valuation;
};

/// Compares the direct fractional join on the product with the cone-intersection form.
bool product_frac_join_check(std::span<const ProductSpec> components, std::span<const Elem> p,
                             std::span<const Elem> q);

/// Componentwise sum valuation on the left-nested product.
Valuation product_valuation(std::span<const ProductSpec> components);
Semilattice product_lattice(std::span<const ProductSpec> components);
/// Index of a tuple in the left-nested product.
Elem product_index(std::span<const ProductSpec> components, std::span<const Elem> coords);

}  // namespace dca
