#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dca/ext_rat.hpp"
#include "dca/graph.hpp"
#include "dca/submodular.hpp"

namespace dca {

/// Vertex id in a product space: coordinates in mixed radix, first factor
/// most significant (the same ids `product` gives).
using Index = std::size_t;
using Evaluator = std::function<ExtRat(Index)>;

/// Implicit product Γ_1 x ... x Γ_n of finite graphs. Order queries require
/// oriented factors.
class ProductSpace {
 public:
  ProductSpace(const Graph& g);  // NOLINT: a graph is a one-factor space
  explicit ProductSpace(std::vector<Graph> factors);
  static ProductSpace power(const Graph& g, int n);

  std::size_t dimension() const { return factors_.size(); }
  const Graph& factor(std::size_t i) const { return factors_[i]; }
  std::size_t size() const { return size_; }
  bool oriented() const;
  bool well_oriented() const;

  std::vector<Vertex> coords(Index id) const;
  Vertex coord(Index id, std::size_t i) const {
    return static_cast<Vertex>((id / strides_[i]) % factors_[i].size());
  }
  Index index(std::span<const Vertex> coords) const;
  std::string name(Index id) const;
  /// Parses either a single vertex name of a one-factor space or
  /// comma-separated factor names. Throws BadInput.
  Index find(std::string_view name) const;

  /// Hop distance (sum over factors).
  int dist(Index a, Index b) const;
  /// d^Δ: max over factors of the factor thickening distance.
  int delta_dist(Index a, Index b) const;
  const Thickening& thickening(std::size_t i) const;

  /// Principal ⊑-filter / ⊑-ideal (products of the factor ones), sorted.
  std::vector<Index> sq_filter(Index x) const;
  std::vector<Index> sq_ideal(Index x) const;
  std::size_t sq_filter_size(Index x) const;
  std::size_t sq_ideal_size(Index x) const;
  bool sq(Index a, Index b) const;

  /// Explicit product graph. Throws TooLarge beyond `limit` vertices.
  Graph materialize(std::size_t limit = 5000) const;

 private:
  void require_oriented() const;

  std::vector<Graph> factors_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  mutable std::vector<std::shared_ptr<Thickening>> thick_;
};

/// Product of the factor subdivisions, (Γ_1 x ... x Γ_n)* = Γ_1* x ... x Γ_n*.
struct StarSpace {
  ProductSpace space;
  std::vector<SubdivisionMap> maps;

  /// Star id of the singleton tuple.
  Index embed(Index base_id, const ProductSpace& base) const;
  /// Base ids (x, y) of the interval [x, y]; requires oriented factors.
  std::pair<Index, Index> endpoints(Index star_id, const ProductSpace& base) const;
  /// Per factor: the base vertices of the Boolean-gated set at that coordinate.
  std::vector<std::vector<Vertex>> members(Index star_id) const;
};

StarSpace subdivide(const ProductSpace& base, const SubdivisionOptions& options = {});

/// g*([x,y]) = (g(x) + g(y)) / 2 on every interval vertex.
FnTable lift_star(const ProductSpace& base, const StarSpace& star, std::span<const ExtRat> g);

bool is_delta_prime_connected(const ProductSpace& space, const VertexSet& members);

enum class LConvexMethod { kAuto, kNeighborhood, kFilterIdeal, kBoth };

struct LConvexReport {
  bool l_convex = false;
  bool domain_connected = false;
  std::optional<bool> by_neighborhood;
  std::optional<bool> by_filter_ideal;
  /// Vertex whose local semilattice failed, with the violating local pair
  /// given as product ids of the two endpoints' lower ends (neighborhood) or
  /// as vertices (filter/ideal).
  std::optional<Index> witness_vertex;
  std::optional<std::pair<Index, Index>> witness_pair;
  std::string reason;
};

/// Caches the local semilattices and their fractional joins of a space so
/// that many functions can be checked. kAuto uses the neighborhood criterion,
/// plus the filter/ideal criterion (with an agreement assertion) when the
/// space is well-oriented; large well-oriented spaces use filter/ideal only.
class LConvexChecker {
 public:
  explicit LConvexChecker(ProductSpace space, LConvexMethod method = LConvexMethod::kAuto);
  ~LConvexChecker();
  LConvexChecker(LConvexChecker&&) noexcept;

  LConvexReport check(std::span<const ExtRat> g) const;
  const ProductSpace& space() const { return space_; }
  LConvexMethod method() const { return method_; }

 private:
  struct Local;
  const Local& local(std::size_t kind, Index x) const;

  ProductSpace space_;
  LConvexMethod method_;
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

LConvexReport is_l_convex(const ProductSpace& space, std::span<const ExtRat> g,
                          LConvexMethod method = LConvexMethod::kAuto);

/// g(x) equals the minimum of g over F'_x ∪ I'_x.
bool check_l_optimality(const ProductSpace& space, const Evaluator& g, Index x);
bool check_l_optimality(const ProductSpace& space, std::span<const ExtRat> g, Index x);

struct SDAOptions {
  std::size_t local_budget = 1'000'000;
  /// Random tie-breaking among local minimizers instead of the smallest id.
  std::optional<std::uint64_t> tie_seed;
  /// Compare the terminal with a brute-force minimum when the space has at
  /// most this many vertices (0 disables).
  std::size_t brute_force_limit = 1'000'000;
  std::size_t max_iterations = 1'000'000;
};

struct SDAStep {
  Index x;
  std::size_t local_size;
  Index chosen;
  ExtRat value;
};

struct SDATrace {
  Index start = 0;
  Index terminal = 0;
  std::vector<Index> iterates;
  std::vector<ExtRat> values;
  std::vector<SDAStep> steps;
  /// Number of moves (step 3 executions).
  int iterations = 0;
  /// g(start) is the minimum over F'_start or over I'_start.
  bool exact_precondition = false;
  /// d^Δ(start, opt(g)) when the brute-force check ran.
  std::optional<int> certificate;
};

/// Throws LocalBudgetExceeded, NotLConvex (terminal is not a global minimizer
/// or a step fails to descend), BadInput (start outside dom g).
SDATrace sda_minimize(const ProductSpace& space, const Evaluator& g, Index x0,
                      const SDAOptions& options = {});
SDATrace sda_minimize(const ProductSpace& space, std::span<const ExtRat> g, Index x0,
                      const SDAOptions& options = {});

struct IterationBoundReport {
  int iterations = 0;
  int d_delta = 0;
  bool bound_ok = false;
  bool exact_case = false;
  /// N == d^Δ; meaningful when exact_case.
  bool exact_ok = false;
  bool well_oriented = false;
};

/// Brute-force opt(g), d^Δ(start, opt(g)), and the two claims of the bound.
IterationBoundReport iteration_bound_report(const SDATrace& trace, const ProductSpace& space,
                                            const Evaluator& g);

/// SDA on the subdivision for spaces that are not well-oriented; both
/// endpoints of the terminal interval minimize g.
struct LiftedSDA {
  StarSpace star;
  FnTable g_star;
  SDATrace trace;
  Index minimizer;
  Index other_minimizer;
};

LiftedSDA sda_minimize_lifted(const ProductSpace& space, std::span<const ExtRat> g, Index x0,
                              const SDAOptions& options = {});

/// Restriction of g (on the star space) to the embedded base equals h.
bool is_l_convex_relaxation(const ProductSpace& base, const StarSpace& star,
                            std::span<const ExtRat> h, std::span<const ExtRat> g,
                            bool verify_l_convex = true);
bool relaxation_exact(std::span<const ExtRat> h, std::span<const ExtRat> g);

/// Minimizer of h over H ∩ F_{x*}(H*): base tuples whose coordinates lie in
/// the Boolean-gated sets of x*. Throws EmptyFilter when h is infinite there,
/// LocalBudgetExceeded beyond `budget` candidates.
Index persistency_round(const ProductSpace& base, const StarSpace& star, const Evaluator& h,
                        Index x_star, std::size_t budget = 10'000'000);

/// Vertex of minimum value, smallest id on ties; BadInput when empty.
Index argmin(std::span<const ExtRat> f);

/// Random L-convex function: a nonnegative combination of distance functions
/// d(., v), a coordinate distance term when all factors agree, and optionally
/// the indicator of a product of gated hulls.
FnTable random_l_convex(const ProductSpace& space, std::mt19937_64& rng, bool with_indicator = true);

}  // namespace dca
