#include "dca/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "dca/error.hpp"

namespace dca {

std::vector<Vertex> to_list(const VertexSet& set) {
  std::vector<Vertex> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != VertexSet::npos; i = set.find_next(i)) {
    out.push_back(static_cast<Vertex>(i));
  }
  return out;
}

VertexSet to_set(std::size_t n, const std::vector<Vertex>& list) {
  VertexSet out(n);
  for (Vertex v : list) out.set(v);
  return out;
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::vector<std::string> names, const std::vector<std::pair<Vertex, Vertex>>& edges,
             Rational edge_length)
    : names_(std::move(names)), edge_length_(edge_length) {
  const auto n = static_cast<Vertex>(names_.size());
  if (n == 0) throw Error(ErrorCode::kBadInput, "graph has no vertices");
  if (edge_length_ <= 0) throw Error(ErrorCode::kBadInput, "edge length must be positive");
  adj_.assign(n, {});
  adj_bits_.assign(n, VertexSet(n));
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::kBadInput, "edge references an undeclared vertex");
    }
    if (u == v) throw Error(ErrorCode::kBadInput, "self-loop at " + names_[u]);
    if (adj_bits_[u][v]) continue;
    adj_bits_[u].set(v);
    adj_bits_[v].set(u);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
  compute_distances();
}

void Graph::compute_distances() {
  const auto n = static_cast<Vertex>(size());
  dist_.assign(static_cast<std::size_t>(n) * n, -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    int* row = dist_.data() + static_cast<std::size_t>(s) * n;
    queue.clear();
    queue.push_back(s);
    row[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex v = queue[head];
      for (Vertex w : adj_[v]) {
        if (row[w] < 0) {
          row[w] = row[v] + 1;
          queue.push_back(w);
        }
      }
    }
    if (static_cast<Vertex>(queue.size()) != n) {
      throw Error(ErrorCode::kNotConnected, "graph is not connected");
    }
  }
}

std::optional<Vertex> Graph::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Vertex>(i);
  }
  return std::nullopt;
}

Vertex Graph::at(std::string_view name) const {
  auto v = find(name);
  if (!v) throw Error(ErrorCode::kBadInput, "unknown vertex '" + std::string(name) + "'");
  return *v;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < static_cast<Vertex>(size()); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t m = 0;
  for (const auto& list : adj_) m += list.size();
  return m / 2;
}

int Graph::diameter() const { return *std::max_element(dist_.begin(), dist_.end()); }

VertexSet Graph::interval(Vertex u, Vertex v) const {
  const auto n = static_cast<Vertex>(size());
  VertexSet out(n);
  const int d = dist(u, v);
  for (Vertex w = 0; w < n; ++w) {
    if (dist(u, w) + dist(w, v) == d) out.set(w);
  }
  return out;
}

Graph Graph::with_orientation(const std::vector<std::pair<Vertex, Vertex>>& arcs) const {
  const auto n = static_cast<Vertex>(size());
  Graph g = *this;
  g.oriented_ = true;
  g.lower_.assign(n, {});
  g.upper_.assign(n, {});
  g.lower_bits_.assign(n, VertexSet(n));
  std::size_t count = 0;
  for (auto [u, v] : arcs) {
    if (u < 0 || v < 0 || u >= n || v >= n || !adjacent(u, v)) {
      throw Error(ErrorCode::kBadInput, "arc is not an edge of the graph");
    }
    if (g.lower_bits_[u][v] || g.lower_bits_[v][u]) {
      throw Error(ErrorCode::kBadInput,
                  "edge " + names_[u] + "-" + names_[v] + " oriented more than once");
    }
    g.lower_bits_[u].set(v);
    g.lower_[u].push_back(v);
    g.upper_[v].push_back(u);
    ++count;
  }
  if (count != edge_count()) throw Error(ErrorCode::kBadInput, "orientation misses some edges");
  for (auto& list : g.lower_) std::sort(list.begin(), list.end());
  for (auto& list : g.upper_) std::sort(list.begin(), list.end());
  g.compute_order();
  return g;
}

Graph Graph::without_orientation() const {
  Graph g = *this;
  g.oriented_ = false;
  g.lower_.clear();
  g.upper_.clear();
  g.lower_bits_.clear();
  g.up_.clear();
  g.down_.clear();
  g.sq_up_.clear();
  g.sq_down_.clear();
  return g;
}

Graph Graph::with_edge_length(Rational length) const {
  if (length <= 0) throw Error(ErrorCode::kBadInput, "edge length must be positive");
  Graph g = *this;
  g.edge_length_ = length;
  return g;
}

void Graph::compute_order() {
  const auto n = static_cast<Vertex>(size());
  // Kahn from the maximal vertices downwards.
  std::vector<int> pending(n);
  std::deque<Vertex> ready;
  for (Vertex v = 0; v < n; ++v) {
    pending[v] = static_cast<int>(upper_[v].size());
    if (pending[v] == 0) ready.push_back(v);
  }
  up_.assign(n, VertexSet(n));
  int processed = 0;
  while (!ready.empty()) {
    Vertex v = ready.front();
    ready.pop_front();
    ++processed;
    up_[v].set(v);
    for (Vertex u : upper_[v]) up_[v] |= up_[u];
    for (Vertex w : lower_[v]) {
      if (--pending[w] == 0) ready.push_back(w);
    }
  }
  if (processed != n) throw Error(ErrorCode::kCycleDetected, "orientation has a directed cycle");
  down_.assign(n, VertexSet(n));
  for (Vertex v = 0; v < n; ++v) {
    for (auto u = up_[v].find_first(); u != VertexSet::npos; u = up_[v].find_next(u)) {
      down_[u].set(v);
    }
  }
  sq_up_.assign(n, VertexSet(n));
  sq_down_.assign(n, VertexSet(n));
  std::vector<char> seen(n);
  std::vector<Vertex> queue;
  for (Vertex x = 0; x < n; ++x) {
    // x ⊑ y is inherited by subintervals, so failures need not be expanded.
    std::fill(seen.begin(), seen.end(), 0);
    queue.assign(1, x);
    seen[x] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex y = queue[head];
      if (!interval_complemented(x, y)) continue;
      sq_up_[x].set(y);
      sq_down_[y].set(x);
      for (Vertex z : upper_[y]) {
        if (!seen[z]) {
          seen[z] = 1;
          queue.push_back(z);
        }
      }
    }
  }
}

bool Graph::interval_complemented(Vertex x, Vertex y) const {
  if (x == y) return true;
  const VertexSet box = up_[x] & down_[y];
  Vertex acc = x;
  for (Vertex a : upper_[x]) {
    if (!box[a]) continue;
    VertexSet common = box & up_[acc] & up_[a];
    Vertex least = -1;
    for (auto c = common.find_first(); c != VertexSet::npos; c = common.find_next(c)) {
      if (common.is_subset_of(up_[c])) {
        least = static_cast<Vertex>(c);
        break;
      }
    }
    if (least < 0) return false;
    acc = least;
  }
  return acc == y;
}

std::vector<std::pair<Vertex, Vertex>> Graph::arcs() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  if (!oriented_) return out;
  for (Vertex u = 0; u < static_cast<Vertex>(size()); ++u) {
    for (Vertex v : lower_[u]) out.emplace_back(u, v);
  }
  return out;
}

std::optional<Vertex> Graph::meet(Vertex u, Vertex v) const {
  VertexSet common = down_[u] & down_[v];
  for (auto c = common.find_first(); c != VertexSet::npos; c = common.find_next(c)) {
    if (common.is_subset_of(down_[c])) return static_cast<Vertex>(c);
  }
  return std::nullopt;
}

std::optional<Vertex> Graph::join(Vertex u, Vertex v) const {
  VertexSet common = up_[u] & up_[v];
  for (auto c = common.find_first(); c != VertexSet::npos; c = common.find_next(c)) {
    if (common.is_subset_of(up_[c])) return static_cast<Vertex>(c);
  }
  return std::nullopt;
}

bool Graph::well_oriented() const {
  for (Vertex v = 0; v < static_cast<Vertex>(size()); ++v) {
    if (sq_up_[v] != up_[v]) return false;
  }
  return true;
}

Graph product(const Graph& g, const Graph& h) {
  if (g.edge_length() != h.edge_length()) {
    throw Error(ErrorCode::kBadInput, "product factors have different edge lengths");
  }
  const auto ng = static_cast<Vertex>(g.size());
  const auto nh = static_cast<Vertex>(h.size());
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(ng) * nh);
  for (Vertex a = 0; a < ng; ++a) {
    for (Vertex b = 0; b < nh; ++b) names.push_back(g.name(a) + "," + h.name(b));
  }
  std::vector<std::pair<Vertex, Vertex>> edges, arcs;
  for (Vertex a = 0; a < ng; ++a) {
    for (Vertex b = 0; b < nh; ++b) {
      for (Vertex a2 : g.neighbors(a)) {
        if (a < a2) edges.emplace_back(a * nh + b, a2 * nh + b);
      }
      for (Vertex b2 : h.neighbors(b)) {
        if (b < b2) edges.emplace_back(a * nh + b, a * nh + b2);
      }
      if (g.oriented() && h.oriented()) {
        for (Vertex a2 : g.lower_neighbors(a)) arcs.emplace_back(a * nh + b, a2 * nh + b);
        for (Vertex b2 : h.lower_neighbors(b)) arcs.emplace_back(a * nh + b, a * nh + b2);
      }
    }
  }
  Graph out(std::move(names), edges, g.edge_length());
  if (g.oriented() && h.oriented()) return out.with_orientation(arcs);
  return out;
}

Graph covering_graph(const Semilattice& L) {
  std::vector<std::pair<Vertex, Vertex>> edges, arcs;
  for (auto [child, parent] : L.poset().cover_pairs()) {
    edges.emplace_back(child, parent);
    arcs.emplace_back(parent, child);
  }
  return Graph(L.poset().names(), edges).with_orientation(arcs);
}

// ---------------------------------------------------------------------------
// Recognition

bool is_bipartite(const Graph& g) {
  for (auto [u, v] : g.edges()) {
    if ((g.dist(0, u) - g.dist(0, v)) % 2 == 0) return false;
  }
  return true;
}

GraphReport is_modular_graph(const Graph& g) {
  const auto n = static_cast<Vertex>(g.size());
  if (n > 400) throw Error(ErrorCode::kTooLarge, "modularity scan limited to 400 vertices");
  GraphReport report;
  std::vector<VertexSet> intervals(static_cast<std::size_t>(n) * n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u; v < n; ++v) {
      intervals[u * n + v] = g.interval(u, v);
      intervals[v * n + u] = intervals[u * n + v];
    }
  }
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      for (Vertex z = y + 1; z < n; ++z) {
        if (!(intervals[x * n + y] & intervals[y * n + z] & intervals[z * n + x]).any()) {
          report.witness = {x, y, z};
          report.reason = "triple without a median";
          return report;
        }
      }
    }
  }
  report.holds = true;
  return report;
}

namespace {

bool has_common_neighbor_closer(const Graph& g, Vertex x, Vertex y, Vertex z, int k) {
  for (Vertex u : g.neighbors(x)) {
    if (g.adjacent(u, y) && g.dist(u, z) == k - 1) return true;
  }
  return false;
}

}  // namespace

GraphReport is_weakly_modular(const Graph& g) {
  const auto n = static_cast<Vertex>(g.size());
  GraphReport report;
  for (Vertex z = 0; z < n; ++z) {
    // TC
    for (auto [x, y] : g.edges()) {
      int k = g.dist(x, z);
      if (k >= 1 && g.dist(y, z) == k && !has_common_neighbor_closer(g, x, y, z, k)) {
        report.witness = {x, y, z};
        report.reason = "triangle condition fails";
        return report;
      }
    }
    // QC
    for (Vertex w = 0; w < n; ++w) {
      const int k = g.dist(w, z) - 1;
      if (k < 1) continue;
      const auto& nb = g.neighbors(w);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
          Vertex x = nb[i], y = nb[j];
          if (g.dist(x, y) != 2 || g.dist(x, z) != k || g.dist(y, z) != k) continue;
          if (!has_common_neighbor_closer(g, x, y, z, k)) {
            report.witness = {x, y, w, z};
            report.reason = "quadrangle condition fails";
            return report;
          }
        }
      }
    }
  }
  report.holds = true;
  return report;
}

GraphReport is_swm(const Graph& g) {
  if (g.size() > 2000) throw Error(ErrorCode::kTooLarge, "swm scan limited to 2000 vertices");
  auto report = is_weakly_modular(g);
  if (!report.holds) return report;
  report.holds = false;
  // Induced K_4^-: two triangles on an edge whose apexes are non-adjacent.
  for (auto [a, b] : g.edges()) {
    VertexSet common(g.size());
    for (Vertex c : g.neighbors(a)) {
      if (g.adjacent(b, c)) common.set(c);
    }
    auto list = to_list(common);
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (!g.adjacent(list[i], list[j])) {
          report.witness = {a, b, list[i], list[j]};
          report.reason = "induced K4-";
          return report;
        }
      }
    }
  }
  // Isometric K_{3,3}^-: the missing edge a1 b1 is at distance 3.
  const auto n = static_cast<Vertex>(g.size());
  for (Vertex a1 = 0; a1 < n; ++a1) {
    for (Vertex b1 = 0; b1 < n; ++b1) {
      if (g.dist(a1, b1) != 3) continue;
      const auto& nb_a = g.neighbors(a1);
      const auto& nb_b = g.neighbors(b1);
      for (std::size_t i = 0; i < nb_a.size(); ++i) {
        for (std::size_t j = i + 1; j < nb_a.size(); ++j) {
          Vertex b2 = nb_a[i], b3 = nb_a[j];
          if (g.adjacent(b2, b3)) continue;
          for (std::size_t s = 0; s < nb_b.size(); ++s) {
            for (std::size_t t = s + 1; t < nb_b.size(); ++t) {
              Vertex a2 = nb_b[s], a3 = nb_b[t];
              if (g.adjacent(a2, a3)) continue;
              if (g.adjacent(a2, b2) && g.adjacent(a2, b3) && g.adjacent(a3, b2) &&
                  g.adjacent(a3, b3)) {
                report.witness = {a1, a2, a3, b1, b2, b3};
                report.reason = "isometric K33-";
                return report;
              }
            }
          }
        }
      }
    }
  }
  report.holds = true;
  report.reason.clear();
  return report;
}

namespace {

// Calls fn(x1,x2,x3,x4) for every 4-cycle in every rotation and direction.
template <typename Fn>
void for_each_four_cycle(const Graph& g, Fn fn) {
  const auto n = static_cast<Vertex>(g.size());
  for (Vertex x1 = 0; x1 < n; ++x1) {
    for (Vertex x2 : g.neighbors(x1)) {
      for (Vertex x4 : g.neighbors(x1)) {
        if (x2 == x4) continue;
        for (Vertex x3 : g.neighbors(x2)) {
          if (x3 == x1 || x3 == x4 || !g.adjacent(x3, x4)) continue;
          fn(x1, x2, x3, x4);
        }
      }
    }
  }
}

struct ParityUnionFind {
  std::vector<int> parent;
  std::vector<int> parity;  // parity relative to parent

  explicit ParityUnionFind(int n) : parent(n), parity(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, int> find(int x) {
    int p = 0;
    int root = x;
    while (parent[root] != root) {
      p ^= parity[root];
      root = parent[root];
    }
    // Path compression.
    int cur = x, acc = p;
    while (parent[cur] != cur) {
      int next = parent[cur];
      int next_acc = acc ^ parity[cur];
      parent[cur] = root;
      parity[cur] = acc;
      cur = next;
      acc = next_acc;
    }
    return {root, p};
  }
  // Requires value(a) xor value(b) == rel; false on conflict.
  bool unite(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    // Keep the smaller id as the root so the first edge of a class decides.
    if (rb < ra) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    parent[rb] = ra;
    parity[rb] = pa ^ pb ^ rel;
    return true;
  }
};

}  // namespace

GraphReport is_admissible_orientation(const Graph& g) {
  GraphReport report;
  if (!g.oriented()) {
    report.reason = "graph is not oriented";
    return report;
  }
  bool ok = true;
  for_each_four_cycle(g, [&](Vertex x1, Vertex x2, Vertex x3, Vertex x4) {
    if (ok && g.arrow(x1, x2) && !g.arrow(x4, x3)) {
      ok = false;
      report.witness = {x1, x2, x3, x4};
      report.reason = "4-cycle rule fails";
    }
  });
  report.holds = ok;
  return report;
}

std::optional<std::vector<std::pair<Vertex, Vertex>>> find_admissible_orientation(const Graph& g) {
  auto modular = is_modular_graph(g);
  if (!modular.holds) throw Error(ErrorCode::kNotModular, "graph is not modular");
  const auto edges = g.edges();
  std::map<std::pair<Vertex, Vertex>, int> index;
  for (std::size_t i = 0; i < edges.size(); ++i) index[edges[i]] = static_cast<int>(i);
  auto edge_id = [&](Vertex a, Vertex b) { return index.at({std::min(a, b), std::max(a, b)}); };
  // Variable value 1 means min -> max; [a -> b] = value xor (a > b).
  ParityUnionFind uf(static_cast<int>(edges.size()));
  bool consistent = true;
  for_each_four_cycle(g, [&](Vertex x1, Vertex x2, Vertex x3, Vertex x4) {
    if (!consistent) return;
    int rel = static_cast<int>(x1 > x2) ^ static_cast<int>(x4 > x3);
    if (!uf.unite(edge_id(x1, x2), edge_id(x4, x3), rel)) consistent = false;
  });
  if (!consistent) return std::nullopt;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [root, parity] = uf.find(static_cast<int>(i));
    (void)root;  // the class root takes value 0
    auto [a, b] = edges[i];
    if (parity == 1) {
      arcs.emplace_back(a, b);
    } else {
      arcs.emplace_back(b, a);
    }
  }
  Graph oriented = g.with_orientation(arcs);  // throws CycleDetected if cyclic
  ensure(is_admissible_orientation(oriented).holds, "constructed orientation is not admissible");
  return arcs;
}

// ---------------------------------------------------------------------------
// Gated sets

namespace detail {

VertexSet hull(const Graph& g, VertexSet x) {
  bool changed = true;
  while (changed) {
    changed = false;
    auto list = to_list(x);
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        Vertex u = list[i], v = list[j];
        VertexSet add = g.dist(u, v) == 1 ? VertexSet(g.size()) : g.interval(u, v);
        if (g.dist(u, v) <= 2) {
          for (Vertex w : g.neighbors(u)) {
            if (g.adjacent(w, v)) add.set(w);
          }
        }
        if (!add.is_subset_of(x)) {
          x |= add;
          changed = true;
        }
      }
    }
  }
  return x;
}

VertexSet pair_hull(const Graph& g, Vertex u, Vertex v) {
  VertexSet x(g.size());
  x.set(u);
  x.set(v);
  return hull(g, x);
}

std::vector<VertexSet> boolean_sets_unchecked(const Graph& g) {
  const auto n = static_cast<Vertex>(g.size());
  auto by_size = [](const VertexSet& a, const VertexSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return to_list(a) < to_list(b);
  };
  std::set<VertexSet, decltype(by_size)> found(by_size);
  if (g.oriented()) {
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y : to_list(g.sq_filter(x))) found.insert(g.order_interval(x, y));
    }
  } else {
    for (Vertex x = 0; x < n; ++x) {
      VertexSet single(n);
      single.set(x);
      found.insert(single);
      for (Vertex y = x + 1; y < n; ++y) {
        VertexSet h = pair_hull(g, x, y);
        if (is_thick(g, h)) found.insert(h);
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace detail

VertexSet gated_hull(const Graph& g, const VertexSet& x) {
  if (x.none()) throw Error(ErrorCode::kBadInput, "gated hull of the empty set");
  if (!is_weakly_modular(g).holds) throw Error(ErrorCode::kNotWeaklyModular, "graph is not weakly modular");
  return detail::hull(g, x);
}

bool is_gated(const Graph& g, const VertexSet& x) { return gated_hull(g, x) == x; }

bool is_thick(const Graph& g, const VertexSet& x) {
  auto list = to_list(x);
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      Vertex u = list[i], v = list[j];
      if (g.dist(u, v) != 2) continue;
      std::vector<Vertex> common;
      for (Vertex w : g.neighbors(u)) {
        if (x[w] && g.adjacent(w, v)) common.push_back(w);
      }
      bool found = false;
      for (std::size_t s = 0; s < common.size() && !found; ++s) {
        for (std::size_t t = s + 1; t < common.size(); ++t) {
          if (g.dist(common[s], common[t]) == 2) {
            found = true;
            break;
          }
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

std::vector<VertexSet> boolean_gated_sets(const Graph& g) {
  if (!is_swm(g).holds) throw Error(ErrorCode::kNotSwm, "graph is not an swm-graph");
  auto sets = detail::boolean_sets_unchecked(g);
  if (g.oriented() && g.size() <= 200) {
    auto by_hulls = detail::boolean_sets_unchecked(g.without_orientation());
    ensure(by_hulls == sets, "interval and pair-hull enumerations of Boolean-gated sets differ");
  }
  return sets;
}

// ---------------------------------------------------------------------------
// Barycentric subdivision

namespace {

std::string set_name(const Graph& g, const VertexSet& set) {
  std::string out = "{";
  bool first = true;
  for (Vertex v : to_list(set)) {
    if (!first) out += ";";
    out += g.name(v);
    first = false;
  }
  return out + "}";
}

}  // namespace

SubdivisionMap barycentric_subdivision(const Graph& g, const SubdivisionOptions& options) {
  if (options.check_swm && !is_swm(g).holds) {
    throw Error(ErrorCode::kNotSwm, "graph is not an swm-graph");
  }
  const auto n = static_cast<Vertex>(g.size());
  auto sets = detail::boolean_sets_unchecked(g);
  const auto m = static_cast<Vertex>(sets.size());
  std::vector<std::string> names(m);
  std::vector<Vertex> embed(n, -1);
  std::vector<std::pair<Vertex, Vertex>> repr;
  if (g.oriented()) repr.resize(m);
  for (Vertex s = 0; s < m; ++s) {
    auto members = to_list(sets[s]);
    if (members.size() == 1) {
      embed[members[0]] = s;
      names[s] = g.name(members[0]);
    } else {
      names[s] = set_name(g, sets[s]);
    }
    if (g.oriented()) {
      // Bottom and top of the interval.
      Vertex lo = -1, hi = -1;
      for (Vertex v : members) {
        if (sets[s].is_subset_of(g.up_set(v))) lo = v;
        if (sets[s].is_subset_of(g.down_set(v))) hi = v;
      }
      ensure(lo >= 0 && hi >= 0, "Boolean-gated set is not an interval");
      repr[s] = {lo, hi};
      if (members.size() > 1) names[s] = "[" + g.name(lo) + ";" + g.name(hi) + "]";
    }
  }
  // Reverse inclusion order; covers become edges, larger sets lower.
  Poset order = Poset::from_relation(names, [&](Elem a, Elem b) {
    return sets[b].is_subset_of(sets[a]);
  });
  std::vector<std::pair<Vertex, Vertex>> edges, arcs;
  for (auto [child, parent] : order.cover_pairs()) {
    edges.emplace_back(child, parent);
    arcs.emplace_back(parent, child);
  }
  Graph star = Graph(names, edges, g.edge_length() / 2).with_orientation(arcs);
  SubdivisionMap out{std::move(star), std::move(sets), std::move(embed), std::move(repr)};
  if (options.verify) {
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = 0; y < n; ++y) {
        ensure(out.star.metric(out.embed[x], out.embed[y]) == g.metric(x, y),
               "subdivision is not an isometric embedding");
      }
    }
    if (g.oriented()) {
      for (Vertex s = 0; s < m; ++s) {
        for (Vertex t = 0; t < m; ++t) {
          auto [p, q] = out.interval_repr[s];
          auto [p2, q2] = out.interval_repr[t];
          ensure(out.star.metric(s, t) == (g.metric(p, p2) + g.metric(q, q2)) / 2,
                 "half-sum distance formula fails");
        }
      }
    }
    ensure(out.star.well_oriented(), "subdivision is not well-oriented");
    for (Vertex s = 0; s < m; ++s) {
      auto filter = vertex_semilattice(out.star, to_list(out.star.up_set(s)), false);
      ensure(is_polar_space(filter.lattice).polar, "principal filter of the subdivision is not polar");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Thickening

Thickening::Thickening(const Graph& g, bool check_swm) {
  const auto n = static_cast<Vertex>(g.size());
  adj_.assign(n, {});
  adj_bits_.assign(n, VertexSet(n));
  if (g.oriented()) {
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = x + 1; y < n; ++y) {
        auto m = g.meet(x, y);
        if (!m) continue;
        auto j = g.join(x, y);
        if (j && g.sq(*m, *j)) {
          adj_bits_[x].set(y);
          adj_bits_[y].set(x);
        }
      }
    }
  }
  if (!g.oriented() || n <= 120) {
    if (check_swm && !is_swm(g).holds) throw Error(ErrorCode::kNotSwm, "graph is not an swm-graph");
    std::vector<VertexSet> by_sets(n, VertexSet(n));
    for (const auto& set : detail::boolean_sets_unchecked(g.without_orientation())) {
      for (Vertex x : to_list(set)) by_sets[x] |= set;
    }
    for (Vertex x = 0; x < n; ++x) by_sets[x].reset(x);
    if (g.oriented()) {
      ensure(by_sets == adj_bits_, "Δ-adjacency differs from the meet/join criterion");
    } else {
      adj_bits_ = std::move(by_sets);
    }
  }
  for (Vertex x = 0; x < n; ++x) adj_[x] = to_list(adj_bits_[x]);
  dist_.assign(static_cast<std::size_t>(n) * n, -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    int* row = dist_.data() + static_cast<std::size_t>(s) * n;
    queue.assign(1, s);
    row[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex v = queue[head];
      for (Vertex w : adj_[v]) {
        if (row[w] < 0) {
          row[w] = row[v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
}

VertexSet Thickening::ball(Vertex x, int r) const {
  VertexSet out(size());
  for (Vertex v = 0; v < static_cast<Vertex>(size()); ++v) {
    if (dist(x, v) <= r) out.set(v);
  }
  return out;
}

Vertex delta_gate(const Graph& g, const Thickening& t, Vertex x, Vertex y) {
  if (x == y) throw Error(ErrorCode::kSameVertex, "Δ-gate needs distinct vertices");
  const int k = t.dist(x, y);
  std::vector<Vertex> closer;
  for (Vertex v : t.neighbors(x)) {
    if (t.dist(v, y) == k - 1) closer.push_back(v);
  }
  std::vector<VertexSet> hulls;
  for (Vertex v : closer) hulls.push_back(detail::pair_hull(g, x, v));
  std::vector<Vertex> gates;
  for (Vertex u : closer) {
    bool ok = std::all_of(hulls.begin(), hulls.end(), [&](const VertexSet& h) { return h[u]; });
    if (ok) gates.push_back(u);
  }
  ensure(gates.size() == 1, "Δ-gate is not unique (" + std::to_string(gates.size()) + " found)");
  return gates[0];
}

// ---------------------------------------------------------------------------
// Normal Δ-paths

namespace {

class NormalSearch {
 public:
  NormalSearch(const Graph& g, const Thickening& t, const std::vector<VertexSet>& sets,
               long long budget)
      : g_(g), t_(t), sets_(sets), budget_(budget), hulls_(g.size() * g.size()) {}

  const VertexSet& hull(Vertex u, Vertex v) {
    auto& slot = hulls_[static_cast<std::size_t>(u) * g_.size() + v];
    if (!slot) slot = detail::pair_hull(g_, u, v);
    return *slot;
  }

  // Normality at the middle vertex of (a, b, c).
  bool normal_at(Vertex a, Vertex b, Vertex c) {
    const VertexSet& h1 = hull(a, b);
    const VertexSet& h2 = hull(b, c);
    for (const auto& set : sets_) {
      if (!h1.is_subset_of(set)) continue;
      VertexSet both = set & h2;
      if (both.count() != 1 || !both[b]) return false;
    }
    return true;
  }

  // All normal Δ-paths from x to y with at most max_len steps; geodesic_only
  // restricts steps to those decreasing d^Δ(., y).
  std::vector<std::vector<Vertex>> run(Vertex x, Vertex y, int max_len, bool geodesic_only) {
    std::vector<std::vector<Vertex>> found;
    std::vector<Vertex> path{x};
    std::vector<char> on_path(g_.size(), 0);
    on_path[x] = 1;
    std::function<void()> dfs = [&]() {
      if (--budget_ < 0) {
        throw Error(ErrorCode::kSearchBudgetExceeded, "normal Δ-path search budget exhausted");
      }
      Vertex cur = path.back();
      if (cur == y) {
        found.push_back(path);
        return;
      }
      const int steps = static_cast<int>(path.size()) - 1;
      if (steps + t_.dist(cur, y) > max_len) return;
      for (Vertex next : t_.neighbors(cur)) {
        if (on_path[next]) continue;
        if (geodesic_only && t_.dist(next, y) != t_.dist(cur, y) - 1) continue;
        if (path.size() >= 2 && !normal_at(path[path.size() - 2], cur, next)) continue;
        path.push_back(next);
        on_path[next] = 1;
        dfs();
        on_path[next] = 0;
        path.pop_back();
      }
    };
    dfs();
    return found;
  }

 private:
  const Graph& g_;
  const Thickening& t_;
  const std::vector<VertexSet>& sets_;
  long long budget_;
  std::vector<std::optional<VertexSet>> hulls_;
};

}  // namespace

bool is_normal_delta_path(const Graph& g, const std::vector<VertexSet>& sets,
                          const std::vector<Vertex>& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] == path[i + 1]) return false;
  }
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    VertexSet h1 = detail::pair_hull(g, path[i - 1], path[i]);
    VertexSet h2 = detail::pair_hull(g, path[i], path[i + 1]);
    for (const auto& set : sets) {
      if (!h1.is_subset_of(set)) continue;
      VertexSet both = set & h2;
      if (both.count() != 1 || !both[path[i]]) return false;
    }
  }
  return true;
}

std::vector<std::vector<Vertex>> all_normal_delta_paths(const Graph& g, const Thickening& t,
                                                        const std::vector<VertexSet>& sets,
                                                        Vertex x, Vertex y, int slack,
                                                        long long budget) {
  NormalSearch search(g, t, sets, budget);
  return search.run(x, y, t.dist(x, y) + slack, false);
}

std::vector<Vertex> normal_delta_path(const Graph& g, const Thickening& t,
                                      const std::vector<VertexSet>& sets, Vertex x, Vertex y,
                                      const NormalPathOptions& options) {
  if (x == y) return {x};
  NormalSearch search(g, t, sets, options.budget);
  auto found = search.run(x, y, t.dist(x, y), true);
  if (found.size() != 1) {
    found = search.run(x, y, t.dist(x, y) + options.slack, false);
  }
  ensure(found.size() == 1,
         "expected exactly one normal Δ-path, found " + std::to_string(found.size()));
  return found[0];
}

// ---------------------------------------------------------------------------
// Principal substructures

VertexSemilattice vertex_semilattice(const Graph& g, const std::vector<Vertex>& members,
                                     bool reversed) {
  std::vector<std::string> names;
  names.reserve(members.size());
  for (Vertex v : members) names.push_back(g.name(v));
  Poset poset = Poset::from_relation(std::move(names), [&](Elem a, Elem b) {
    return reversed ? g.leq(members[b], members[a]) : g.leq(members[a], members[b]);
  });
  return {Semilattice(std::move(poset)), members};
}

std::pair<Semilattice, std::vector<std::pair<Vertex, Vertex>>> star_ideal(const Graph& g,
                                                                          Vertex x) {
  std::vector<std::pair<Vertex, Vertex>> members;
  std::vector<std::string> names;
  for (Vertex a : to_list(g.down_set(x))) {
    for (Vertex b : to_list(g.sq_filter(a) & g.up_set(x))) {
      members.emplace_back(a, b);
      names.push_back(a == b ? g.name(a) : "[" + g.name(a) + ";" + g.name(b) + "]");
    }
  }
  Poset poset = Poset::from_relation(std::move(names), [&](Elem i, Elem j) {
    auto [a, b] = members[i];
    auto [a2, b2] = members[j];
    return g.leq(a2, a) && g.leq(b, b2);
  });
  return {Semilattice(std::move(poset)), std::move(members)};
}

PrincipalSubstructures principal_substructures(const Graph& g, Vertex x) {
  if (!g.oriented()) throw Error(ErrorCode::kNotOrientedModular, "graph has no orientation");
  auto star = star_ideal(g, x);
  PrincipalSubstructures out{
      vertex_semilattice(g, to_list(g.down_set(x)), true),
      vertex_semilattice(g, to_list(g.up_set(x)), false),
      vertex_semilattice(g, to_list(g.sq_ideal(x)), true),
      vertex_semilattice(g, to_list(g.sq_filter(x)), false),
      std::move(star.first),
      std::move(star.second),
  };
  ensure(is_modular_semilattice(out.ideal.lattice).modular, "principal ideal is not modular");
  ensure(is_modular_semilattice(out.filter.lattice).modular, "principal filter is not modular");
  ensure(is_complemented(out.sq_ideal.lattice), "principal ⊑-ideal is not complemented");
  ensure(is_complemented(out.sq_filter.lattice), "principal ⊑-filter is not complemented");
  ensure(is_complemented(out.star_ideal), "neighbourhood semilattice is not complemented");
  return out;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

int parity(int x) { return ((x % 2) + 2) % 2; }

}  // namespace

Graph path_graph(int lo, int hi, PathOrientation kind) {
  if (lo > hi) throw Error(ErrorCode::kBadBounds, "empty path bounds");
  std::vector<std::string> names;
  std::vector<std::pair<Vertex, Vertex>> edges, arcs;
  for (int x = lo; x <= hi; ++x) names.push_back(std::to_string(x));
  for (int i = 0; lo + i < hi; ++i) {
    edges.emplace_back(i, i + 1);
    const int x = lo + i;
    if (kind == PathOrientation::kLinear || (kind == PathOrientation::kAlternating && parity(x) == 1)) {
      arcs.emplace_back(i + 1, i);
    } else {
      arcs.emplace_back(i, i + 1);
    }
  }
  Graph g(std::move(names), edges);
  if (kind == PathOrientation::kNone) return g;
  return g.with_orientation(arcs);
}

Graph grid_graph(int n, int lo, int hi, PathOrientation kind) {
  if (n < 1) throw Error(ErrorCode::kBadBounds, "grid dimension must be positive");
  Graph base = path_graph(lo, hi, kind);
  Graph out = base;
  for (int i = 1; i < n; ++i) out = product(out, base);
  return out;
}

Graph complete_graph(int k) {
  if (k < 1) throw Error(ErrorCode::kBadInput, "K_k needs k >= 1");
  std::vector<std::string> names;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < k; ++i) {
    names.push_back(std::to_string(i));
    for (int j = 0; j < i; ++j) edges.emplace_back(j, i);
  }
  return Graph(std::move(names), edges);
}

Graph complete_bipartite(int k, int l) {
  if (k < 1 || l < 1) throw Error(ErrorCode::kBadInput, "K_{k,l} needs k,l >= 1");
  std::vector<std::string> names;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < k; ++i) names.push_back("a" + std::to_string(i));
  for (int j = 0; j < l; ++j) names.push_back("b" + std::to_string(j));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < l; ++j) edges.emplace_back(i, k + j);
  }
  return Graph(std::move(names), edges);
}

Graph cube_graph(int n) { return grid_graph(n, 0, 1, PathOrientation::kLinear); }

Graph star_graph(int k) {
  std::vector<std::string> names{"0"};
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 1; i <= k; ++i) {
    names.push_back(std::to_string(i));
    edges.emplace_back(0, i);
  }
  return Graph(std::move(names), edges);
}

Graph cycle_graph(int n) {
  if (n < 3) throw Error(ErrorCode::kBadInput, "cycle needs at least 3 vertices");
  std::vector<std::string> names;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    edges.emplace_back(i, (i + 1) % n);
  }
  return Graph(std::move(names), edges);
}

Graph tree_graph(std::vector<std::string> names, const std::vector<std::pair<Vertex, Vertex>>& edges,
                 TreeOrientation kind, Vertex root) {
  Graph g(std::move(names), edges);
  if (g.edge_count() + 1 != g.size()) throw Error(ErrorCode::kBadInput, "edges do not form a tree");
  if (kind == TreeOrientation::kNone) return g;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (auto [u, v] : g.edges()) {
    switch (kind) {
      case TreeOrientation::kLinear:
        arcs.emplace_back(v, u);
        break;
      case TreeOrientation::kRooted:
        // Parent (closer to the root) on top.
        if (g.dist(root, u) < g.dist(root, v)) {
          arcs.emplace_back(u, v);
        } else {
          arcs.emplace_back(v, u);
        }
        break;
      case TreeOrientation::kZigzag:
        if (g.dist(root, u) % 2 == 0) {
          arcs.emplace_back(u, v);
        } else {
          arcs.emplace_back(v, u);
        }
        break;
      case TreeOrientation::kNone:
        break;
    }
  }
  return g.with_orientation(arcs);
}

}  // namespace dca
