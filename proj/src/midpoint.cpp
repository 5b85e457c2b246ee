#include "dca/midpoint.hpp"

#include <sstream>

#include "dca/error.hpp"

namespace dca {

std::string_view to_string(TreeKind kind) {
  switch (kind) {
    case TreeKind::kLinear: return "linear";
    case TreeKind::kAlternating: return "alternating";
    case TreeKind::kRooted: return "rooted";
    case TreeKind::kZigzag: return "zigzag";
    case TreeKind::kCustom: return "custom";
  }
  return "?";
}

TreeSpec star_tree(int leaves) {
  if (leaves < 1) throw Error(ErrorCode::kBadBounds, "star needs a leaf");
  TreeSpec t;
  t.names.push_back("r");
  for (int i = 0; i < leaves; ++i) {
    t.names.push_back("l" + std::to_string(i));
    t.edges.emplace_back(0, i + 1);
  }
  return t;
}

std::pair<Vertex, Vertex> tree_midpoints(const Graph& tree, Vertex x, Vertex y) {
  if (!tree.oriented()) throw Error(ErrorCode::kBadInput, "tree has no orientation");
  // Walk the unique x-y path.
  std::vector<Vertex> path{x};
  while (path.back() != y) {
    for (Vertex w : tree.neighbors(path.back())) {
      if (tree.dist(w, y) < tree.dist(path.back(), y)) {
        path.push_back(w);
        break;
      }
    }
  }
  const std::size_t d = path.size() - 1;
  const Vertex u = path[d / 2];
  const Vertex v = path[(d + 1) / 2];
  if (u == v) return {u, u};
  return tree.arrow(u, v) ? std::pair{v, u} : std::pair{u, v};
}

OrientedTreeProduct::OrientedTreeProduct(std::vector<Graph> factors, std::vector<TreeKind> kinds)
    : space_(factors), kinds_(std::move(kinds)) {
  if (kinds_.size() != factors.size()) throw Error(ErrorCode::kBadInput, "one kind per factor");
  for (const Graph& t : factors) {
    if (t.edge_count() + 1 != t.size()) throw Error(ErrorCode::kBadInput, "factor is not a tree");
    if (!t.oriented()) throw Error(ErrorCode::kBadInput, "tree factor has no orientation");
    const auto n = static_cast<Vertex>(t.size());
    std::vector<std::pair<Vertex, Vertex>> table(static_cast<std::size_t>(n) * n);
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = 0; y < n; ++y) table[static_cast<std::size_t>(x) * n + y] = tree_midpoints(t, x, y);
    mids_.push_back(std::move(table));
  }
}

std::pair<Index, Index> OrientedTreeProduct::midpoints(Index x, Index y) const {
  std::vector<Vertex> lo(dimension()), hi(dimension());
  for (std::size_t i = 0; i < dimension(); ++i)
    std::tie(lo[i], hi[i]) = factor_midpoints(i, space_.coord(x, i), space_.coord(y, i));
  return {space_.index(lo), space_.index(hi)};
}

MidpointReport is_midpoint_convex(const OrientedTreeProduct& p, std::span<const ExtRat> g) {
  if (g.size() != p.space().size()) throw Error(ErrorCode::kBadInput, "function table size mismatch");
  MidpointReport r;
  for (Index x = 0; x < g.size(); ++x) {
    for (Index y = x + 1; y < g.size(); ++y) {
      const ExtRat lhs = g[x] + g[y];
      if (lhs.is_inf()) continue;
      auto [lo, hi] = p.midpoints(x, y);
      const ExtRat rhs = g[lo] + g[hi];
      if (rhs > lhs) {
        r.witness = {x, y};
        r.lhs = lhs;
        r.rhs = rhs;
        return r;
      }
    }
  }
  r.convex = true;
  return r;
}

namespace {

std::vector<Graph> trees_of(const std::vector<TreeSpec>& trees, TreeOrientation kind) {
  if (trees.empty()) throw Error(ErrorCode::kBadBounds, "no trees given");
  std::vector<Graph> out;
  for (const TreeSpec& t : trees) {
    if (t.root < 0 || static_cast<std::size_t>(t.root) >= t.names.size())
      throw Error(ErrorCode::kBadInput, "root outside the tree");
    out.push_back(tree_graph(t.names, t.edges, kind, t.root));
  }
  return out;
}

OrientedTreeProduct grid(int n, int lo, int hi, PathOrientation orient, TreeKind kind) {
  if (n < 1) throw Error(ErrorCode::kBadBounds, "grid dimension must be positive");
  if (lo > hi) throw Error(ErrorCode::kBadBounds, "empty bounds");
  Graph path = path_graph(lo, hi, orient);
  return OrientedTreeProduct(std::vector<Graph>(static_cast<std::size_t>(n), path),
                             std::vector<TreeKind>(static_cast<std::size_t>(n), kind));
}

}  // namespace

OrientedTreeProduct linear_grid(int n, int lo, int hi) {
  return grid(n, lo, hi, PathOrientation::kLinear, TreeKind::kLinear);
}

OrientedTreeProduct alternating_grid(int n, int lo, int hi) {
  OrientedTreeProduct p = grid(n, lo, hi, PathOrientation::kAlternating, TreeKind::kAlternating);
  const Graph& path = p.factor(0);
  for (Vertex v = 0; v < static_cast<Vertex>(path.size()); ++v) {
    const bool even = (lo + v) % 2 == 0;
    ensure(even ? path.upper_neighbors(v).empty() : path.lower_neighbors(v).empty(),
           "alternating orientation must make even vertices sources");
  }
  return p;
}

OrientedTreeProduct rooted_tree_product(const std::vector<TreeSpec>& trees) {
  return OrientedTreeProduct(trees_of(trees, TreeOrientation::kRooted),
                             std::vector<TreeKind>(trees.size(), TreeKind::kRooted));
}

OrientedTreeProduct zigzag_tree_product(const std::vector<TreeSpec>& trees) {
  return OrientedTreeProduct(trees_of(trees, TreeOrientation::kZigzag),
                             std::vector<TreeKind>(trees.size(), TreeKind::kZigzag));
}

EquivalenceChecker::EquivalenceChecker(OrientedTreeProduct p) : p_(std::move(p)), l_(p_.space()) {}

EquivalenceReport EquivalenceChecker::check(std::span<const ExtRat> g) const {
  EquivalenceReport r;
  MidpointReport m = is_midpoint_convex(p_, g);
  LConvexReport l = l_.check(g);
  r.midpoint_convex = m.convex;
  r.l_convex = l.l_convex;
  r.agree = m.convex == l.l_convex;
  if (!r.agree) {
    std::ostringstream os;
    if (m.witness) {
      auto [x, y] = *m.witness;
      auto [lo, hi] = p_.midpoints(x, y);
      const ProductSpace& s = p_.space();
      os << "midpoint inequality fails at x=" << s.name(x) << " y=" << s.name(y) << " floor=" << s.name(lo)
         << " ceil=" << s.name(hi) << ": " << m.lhs << " < " << m.rhs;
    } else {
      os << "L-convexity fails: " << l.reason;
    }
    r.detail = os.str();
  }
  return r;
}

EquivalenceReport equivalence_check(const OrientedTreeProduct& p, std::span<const ExtRat> g) {
  return EquivalenceChecker(p).check(g);
}

}  // namespace dca
