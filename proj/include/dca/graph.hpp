#pragma once

#include <boost/dynamic_bitset.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dca/ext_rat.hpp"
#include "dca/poset.hpp"

namespace dca {

using Vertex = int;
using VertexSet = boost::dynamic_bitset<>;

/// Connected simple graph with uniform edge length and an optional edge
/// orientation. An arc (x, y) means x -> y, i.e. x covers y in the induced order.
class Graph {
 public:
  /// Throws NotConnected / BadInput.
  Graph(std::vector<std::string> names, const std::vector<std::pair<Vertex, Vertex>>& edges,
        Rational edge_length = Rational(1));

  /// Copy with every edge oriented by `arcs` (upper, lower). Throws BadInput
  /// when an arc is not an edge or an edge is left unoriented, CycleDetected
  /// when the orientation is cyclic.
  Graph with_orientation(const std::vector<std::pair<Vertex, Vertex>>& arcs) const;
  Graph without_orientation() const;
  Graph with_edge_length(Rational length) const;

  std::size_t size() const { return names_.size(); }
  const std::string& name(Vertex v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Vertex> find(std::string_view name) const;
  /// Like find but throws BadInput naming the vertex.
  Vertex at(std::string_view name) const;

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  bool adjacent(Vertex u, Vertex v) const { return adj_bits_[u][v]; }
  std::vector<std::pair<Vertex, Vertex>> edges() const;
  std::size_t edge_count() const;
  const Rational& edge_length() const { return edge_length_; }

  /// Hop distance.
  int dist(Vertex u, Vertex v) const { return dist_[static_cast<std::size_t>(u) * size() + v]; }
  /// Distance in edge-length units.
  Rational metric(Vertex u, Vertex v) const { return edge_length_ * dist(u, v); }
  int diameter() const;
  /// Metric interval I(u,v).
  VertexSet interval(Vertex u, Vertex v) const;

  bool oriented() const { return oriented_; }
  /// u -> v (u covers v).
  bool arrow(Vertex u, Vertex v) const { return oriented_ && lower_bits_[u][v]; }
  std::vector<std::pair<Vertex, Vertex>> arcs() const;
  const std::vector<Vertex>& lower_neighbors(Vertex v) const { return lower_[v]; }
  const std::vector<Vertex>& upper_neighbors(Vertex v) const { return upper_[v]; }

  // Order queries; require an orientation.
  bool leq(Vertex u, Vertex v) const { return up_[u][v]; }
  const VertexSet& up_set(Vertex v) const { return up_[v]; }
  const VertexSet& down_set(Vertex v) const { return down_[v]; }
  VertexSet order_interval(Vertex u, Vertex v) const { return up_[u] & down_[v]; }
  std::optional<Vertex> meet(Vertex u, Vertex v) const;
  std::optional<Vertex> join(Vertex u, Vertex v) const;
  /// u ⊑ v: u <= v and [u,v] is a complemented modular lattice.
  bool sq(Vertex u, Vertex v) const { return sq_up_[u][v]; }
  const VertexSet& sq_filter(Vertex v) const { return sq_up_[v]; }
  const VertexSet& sq_ideal(Vertex v) const { return sq_down_[v]; }
  bool well_oriented() const;

 private:
  void compute_distances();
  void compute_order();
  bool interval_complemented(Vertex u, Vertex v) const;

  std::vector<std::string> names_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<VertexSet> adj_bits_;
  Rational edge_length_;
  std::vector<int> dist_;

  bool oriented_ = false;
  std::vector<std::vector<Vertex>> lower_;
  std::vector<std::vector<Vertex>> upper_;
  std::vector<VertexSet> lower_bits_;
  std::vector<VertexSet> up_;
  std::vector<VertexSet> down_;
  std::vector<VertexSet> sq_up_;
  std::vector<VertexSet> sq_down_;
};

std::vector<Vertex> to_list(const VertexSet& set);
VertexSet to_set(std::size_t n, const std::vector<Vertex>& list);

/// Cartesian product with product orientation; vertex (a,b) has id a*|H|+b
/// and name "a,b".
Graph product(const Graph& g, const Graph& h);
Graph covering_graph(const Semilattice& lattice);

struct GraphReport {
  bool holds = false;
  std::vector<Vertex> witness;
  std::string reason;
};

GraphReport is_modular_graph(const Graph& g);
GraphReport is_weakly_modular(const Graph& g);
GraphReport is_swm(const Graph& g);
bool is_bipartite(const Graph& g);

/// Admissibility of the graph's own orientation on every 4-cycle.
GraphReport is_admissible_orientation(const Graph& g);
/// Parity union-find over 4-cycle constraints; lexicographically smallest
/// consistent assignment (edge (u<v) prefers v -> u). Throws NotModular.
std::optional<std::vector<std::pair<Vertex, Vertex>>> find_admissible_orientation(const Graph& g);

/// Least gated superset (fixpoint of interval and common-neighbour closure).
/// Throws NotWeaklyModular.
VertexSet gated_hull(const Graph& g, const VertexSet& x);
bool is_gated(const Graph& g, const VertexSet& x);
/// Thickness on the induced subgraph.
bool is_thick(const Graph& g, const VertexSet& x);

/// All Boolean-gated sets, sorted. Oriented graphs use intervals [x,y] with
/// x ⊑ y; otherwise pair hulls filtered by thickness. Both are cross-checked
/// when the graph is oriented. Throws NotSwm.
std::vector<VertexSet> boolean_gated_sets(const Graph& g);

struct SubdivisionMap {
  Graph star;
  std::vector<VertexSet> sets;
  std::vector<Vertex> embed;
  /// Star vertex -> (x,y) with set = [x,y]; empty unless the base is oriented.
  std::vector<std::pair<Vertex, Vertex>> interval_repr;
};

struct SubdivisionOptions {
  bool check_swm = true;
  /// Isometry, half-sum formula, well-orientedness and polar filters.
  bool verify = true;
};

SubdivisionMap barycentric_subdivision(const Graph& g, const SubdivisionOptions& options = {});

/// Thickening G^Δ as adjacency plus its hop metric.
class Thickening {
 public:
  explicit Thickening(const Graph& g, bool check_swm = true);

  std::size_t size() const { return adj_.size(); }
  bool adjacent(Vertex u, Vertex v) const { return adj_bits_[u][v]; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int dist(Vertex u, Vertex v) const { return dist_[static_cast<std::size_t>(u) * size() + v]; }
  /// Ball B_r(x).
  VertexSet ball(Vertex x, int r) const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<VertexSet> adj_bits_;
  std::vector<int> dist_;
};

/// Δ-gate of y at x. Throws SameVertex; uniqueness asserted.
Vertex delta_gate(const Graph& g, const Thickening& t, Vertex x, Vertex y);

struct NormalPathOptions {
  /// Extra length allowed beyond d^Δ in the fallback search.
  int slack = 2;
  long long budget = 2'000'000;
};

/// The unique normal Δ-path from x to y. Searches Δ-geodesics first and falls
/// back to a bounded search over longer Δ-paths. Throws SearchBudgetExceeded.
std::vector<Vertex> normal_delta_path(const Graph& g, const Thickening& t,
                                      const std::vector<VertexSet>& boolean_sets, Vertex x,
                                      Vertex y, const NormalPathOptions& options = {});
/// All normal Δ-paths of Δ-length at most d^Δ(x,y) + slack (for uniqueness checks).
std::vector<std::vector<Vertex>> all_normal_delta_paths(const Graph& g, const Thickening& t,
                                                        const std::vector<VertexSet>& boolean_sets,
                                                        Vertex x, Vertex y, int slack,
                                                        long long budget);
bool is_normal_delta_path(const Graph& g, const std::vector<VertexSet>& boolean_sets,
                          const std::vector<Vertex>& path);

/// Sub-semilattice on the given vertices; reversed order when `reversed`.
struct VertexSemilattice {
  Semilattice lattice;
  std::vector<Vertex> members;  // lattice element i is members[i]
};

struct PrincipalSubstructures {
  VertexSemilattice ideal;
  VertexSemilattice filter;
  VertexSemilattice sq_ideal;
  VertexSemilattice sq_filter;
  /// I*_x: Boolean-gated intervals containing x, ordered by inclusion.
  Semilattice star_ideal;
  std::vector<std::pair<Vertex, Vertex>> star_members;
};

VertexSemilattice vertex_semilattice(const Graph& g, const std::vector<Vertex>& members,
                                     bool reversed);
/// Intervals [a,b] with a ⊑ b and a <= x <= b, ordered by inclusion (bottom {x}).
std::pair<Semilattice, std::vector<std::pair<Vertex, Vertex>>> star_ideal(const Graph& g,
                                                                          Vertex x);
/// Throws NotOrientedModular when the graph has no orientation.
PrincipalSubstructures principal_substructures(const Graph& g, Vertex x);

// Generators -----------------------------------------------------------------

enum class PathOrientation { kNone, kLinear, kAlternating };

/// Path on integers lo..hi. Linear: x+1 -> x. Alternating: even -> odd.
Graph path_graph(int lo, int hi, PathOrientation kind = PathOrientation::kNone);
/// Product of n paths over [lo,hi].
Graph grid_graph(int n, int lo, int hi, PathOrientation kind = PathOrientation::kNone);
Graph complete_graph(int k);
Graph complete_bipartite(int k, int l);
/// Q_n with the coordinatewise orientation (1 above 0).
Graph cube_graph(int n);
/// K_{1,k}; vertex 0 is the centre.
Graph star_graph(int k);
/// Cycle C_n (unoriented).
Graph cycle_graph(int n);

enum class TreeOrientation { kNone, kLinear, kZigzag, kRooted };

/// Tree on names/edges. kRooted orients root -> child (root maximal); kZigzag
/// makes even-depth vertices maximal; kLinear uses the larger id as the head.
Graph tree_graph(std::vector<std::string> names, const std::vector<std::pair<Vertex, Vertex>>& edges,
                 TreeOrientation kind = TreeOrientation::kNone, Vertex root = 0);

}  // namespace dca
