#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dca/ext_rat.hpp"
#include "dca/graph.hpp"
#include "dca/lconvex.hpp"

namespace dca {

struct PairWeight {
  int i = 0;
  int j = 0;
  Rational w{0};
};

/// Minimum 0-extension input: n variables placed on the vertices of Γ,
/// pulled towards vertices by b and towards each other by c.
struct ZeroExtInstance {
  ZeroExtInstance(Graph gamma, int variables);

  int n;
  Graph graph;
  std::vector<std::vector<Rational>> b;  // b[i][v]
  std::vector<PairWeight> c;

  void add_b(int i, Vertex v, Rational w);
  void add_c(int i, int j, Rational w);
  /// Throws BadInput naming the offending weight.
  void validate() const;
};

/// Σ b_iv d(x_i, v) + Σ c_ij d(x_i, x_j) in the metric of Γ.
ExtRat zero_ext_objective(const ZeroExtInstance& inst, std::span<const Vertex> x);

struct ZeroExtSolution {
  std::vector<Vertex> x;
  Rational value{0};
};

/// Enumeration of Γ^n; lexicographically smallest optimum. Throws TooLarge
/// when |Γ|^n exceeds the budget.
ZeroExtSolution solve_zero_ext_brute(const ZeroExtInstance& inst, std::size_t budget = 10'000'000);

struct ZeroExtOptions {
  SDAOptions sda;
  /// Check the whole relaxation with LConvexChecker when (Γ*)^n is at most
  /// this big; otherwise only the per-term certificates are used.
  std::size_t full_check_limit = 1000;
};

struct ZeroExtResult {
  /// Lower and upper endpoint of the interval minimizer; both are optimal.
  std::vector<Vertex> x;
  std::vector<Vertex> y;
  Rational value{0};
  /// SDA on (Γ*)^n.
  SDATrace trace;
  /// d^Δ-diameter of (Γ*)^n, i.e. that of Γ*.
  int star_delta_diameter = 0;
  bool bound_ok = false;
  bool full_check = false;
};

/// The distance terms of the relaxation on Γ*: every d*(., v) for v in Γ and
/// d* on Γ* x Γ* are checked L-convex once; sums of such terms over
/// coordinate pairs stay L-convex.
class StarRelaxation {
 public:
  /// Throws NotSwm; NotLConvex if a term check fails.
  explicit StarRelaxation(const Graph& base);

  const Graph& star() const { return map_.star; }
  int delta_diameter() const { return delta_diameter_; }
  const SubdivisionMap& map() const { return map_; }
  StarSpace power(int n) const;
  /// D_{I*} on (Γ*)^n; inst.graph must be the base graph (up to orientation).
  Evaluator objective(const ZeroExtInstance& inst) const;
  /// D_{I*} with the per-variable b-costs already tabulated.
  ExtRat evaluate(const ZeroExtInstance& inst, const std::vector<std::vector<Rational>>& bstar,
                  const StarSpace& star, Index u) const;
  std::vector<std::vector<Rational>> b_costs(const ZeroExtInstance& inst) const;

 private:
  SubdivisionMap map_;
  int delta_diameter_ = 0;
};

/// 0-extension on an orientable modular Γ through the exact relaxation on
/// (Γ*)^n. Caches the subdivision and the term certificates.
class ZeroExtSolver {
 public:
  /// Unoriented graphs get an admissible orientation. Throws
  /// NotOrientedModular when Γ is not orientable modular.
  explicit ZeroExtSolver(const Graph& gamma, ZeroExtOptions options = {});
  ~ZeroExtSolver();
  ZeroExtSolver(ZeroExtSolver&&) noexcept;

  const Graph& oriented() const { return oriented_; }
  const StarRelaxation& relaxation() const { return *relax_; }
  /// Start defaults to the all-first-vertex tuple.
  ZeroExtResult solve(const ZeroExtInstance& inst, std::optional<std::vector<Vertex>> start = {}) const;

 private:
  Graph oriented_;
  ZeroExtOptions options_;
  std::unique_ptr<StarRelaxation> relax_;
  mutable std::map<int, std::unique_ptr<LConvexChecker>> checkers_;
};

ZeroExtResult solve_zero_ext_sda(const ZeroExtInstance& inst, const ZeroExtOptions& options = {});

struct CutEdge {
  int u = 0;
  int v = 0;
  Rational capacity{1};
};

struct CutInstance {
  std::vector<std::string> nodes;
  std::vector<CutEdge> edges;
  std::vector<int> terminals;

  /// Throws BadInput.
  void validate() const;
  /// Capacity of the edges whose ends get different labels.
  Rational cut_value(std::span<const int> labels) const;
  /// Removing the cut edges leaves every terminal in its own component.
  bool separates(std::span<const int> labels) const;
};

/// K_k target, terminal j pinned to label j with weight 1 + Σ capacities.
ZeroExtInstance multiway_cut_encoding(const CutInstance& cut);

struct RelaxationReport {
  Rational relaxed_value{0};
  int sda_iterations = 0;
  /// Variables at the centre of the star (any label allowed).
  std::size_t free_variables = 0;
  std::size_t candidates = 0;
  bool half_integral_gap = false;
};

struct MultiwayCutResult {
  Rational value{0};
  /// Terminal index per node.
  std::vector<int> labels;
  std::vector<std::size_t> cut_edges;
  RelaxationReport relaxation;
};

struct MultiwayCutOptions {
  SDAOptions sda;
  /// Bound on (k+1)^|V| for the relaxation and k^free for rounding.
  std::size_t budget = 10'000'000;
};

/// Relaxation on (K_k*)^n by SDA, then persistency rounding. Throws TooLarge.
MultiwayCutResult solve_multiway_cut(const CutInstance& cut, const MultiwayCutOptions& options = {});

}  // namespace dca
