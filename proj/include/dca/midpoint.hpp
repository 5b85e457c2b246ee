#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dca/graph.hpp"
#include "dca/lconvex.hpp"

namespace dca {

enum class TreeKind { kLinear, kAlternating, kRooted, kZigzag, kCustom };

std::string_view to_string(TreeKind kind);

struct TreeSpec {
  std::vector<std::string> names;
  std::vector<std::pair<Vertex, Vertex>> edges;
  Vertex root = 0;
};

/// K_{1,k} with centre "r" and leaves "l0".."l{k-1}", rooted at the centre.
TreeSpec star_tree(int leaves);

/// Product of oriented trees. Every factor must be an oriented tree (BadInput).
class OrientedTreeProduct {
 public:
  OrientedTreeProduct(std::vector<Graph> factors, std::vector<TreeKind> kinds);

  const ProductSpace& space() const { return space_; }
  std::size_t dimension() const { return space_.dimension(); }
  const Graph& factor(std::size_t i) const { return space_.factor(i); }
  TreeKind kind(std::size_t i) const { return kinds_[i]; }

  /// (floor, ceil) of a pair of factor vertices, from the cached table.
  std::pair<Vertex, Vertex> factor_midpoints(std::size_t i, Vertex x, Vertex y) const {
    const auto n = static_cast<std::size_t>(space_.factor(i).size());
    return mids_[i][static_cast<std::size_t>(x) * n + y];
  }
  /// Componentwise (floor, ceil).
  std::pair<Index, Index> midpoints(Index x, Index y) const;

 private:
  ProductSpace space_;
  std::vector<TreeKind> kinds_;
  std::vector<std::vector<std::pair<Vertex, Vertex>>> mids_;
};

/// (floor, ceil) midpoints on an oriented tree: the middle vertex twice, or
/// the middle edge with ceil at its upper end.
std::pair<Vertex, Vertex> tree_midpoints(const Graph& tree, Vertex x, Vertex y);

struct MidpointReport {
  bool convex = false;
  std::optional<std::pair<Index, Index>> witness;
  ExtRat lhs;
  ExtRat rhs;
};

/// g(x) + g(y) >= g(floor) + g(ceil) over all pairs.
MidpointReport is_midpoint_convex(const OrientedTreeProduct& p, std::span<const ExtRat> g);

/// Throws BadBounds when lo > hi or n < 1.
OrientedTreeProduct linear_grid(int n, int lo, int hi);
OrientedTreeProduct alternating_grid(int n, int lo, int hi);
/// Trees oriented away from their roots (roots maximal).
OrientedTreeProduct rooted_tree_product(const std::vector<TreeSpec>& trees);
/// Even depth from the root is the upper colour class.
OrientedTreeProduct zigzag_tree_product(const std::vector<TreeSpec>& trees);

struct EquivalenceReport {
  bool midpoint_convex = false;
  bool l_convex = false;
  bool agree = false;
  /// Filled on disagreement: the failing pair of whichever test said no.
  std::string detail;
};

/// Runs both tests with cached state; a disagreement is reported, not thrown.
class EquivalenceChecker {
 public:
  explicit EquivalenceChecker(OrientedTreeProduct p);
  EquivalenceReport check(std::span<const ExtRat> g) const;
  const OrientedTreeProduct& product() const { return p_; }
  const LConvexChecker& l_checker() const { return l_; }

 private:
  OrientedTreeProduct p_;
  LConvexChecker l_;
};

EquivalenceReport equivalence_check(const OrientedTreeProduct& p, std::span<const ExtRat> g);

}  // namespace dca
