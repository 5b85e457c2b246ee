#pragma once

#include <functional>
#include <random>
#include <string_view>

#include "dca/error.hpp"
#include "dca/ext_rat.hpp"
#include "dca/graph.hpp"
#include "dca/poset.hpp"
#include "dca/submodular.hpp"

namespace testutil {

// Code of the dca::Error thrown by fn, or nullopt.
inline std::optional<dca::ErrorCode> thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const dca::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline dca::Elem elem(const dca::Semilattice& l, std::string_view name) {
  auto e = l.poset().find(name);
  if (!e) throw std::runtime_error("no element " + std::string(name));
  return *e;
}

inline dca::Vertex vert(const dca::Graph& g, std::string_view name) { return g.at(name); }

inline dca::FnTable random_table(std::size_t n, std::mt19937& rng, int lo = 0, int hi = 6) {
  std::uniform_int_distribution<int> dist(lo, hi);
  dca::FnTable f(n);
  for (auto& x : f) x = dist(rng);
  return f;
}

}  // namespace testutil

namespace testutil {

// Brute-force isomorphism of (optionally oriented) graphs via backtracking
// with degree and distance-profile pruning.
inline bool isomorphic(const dca::Graph& g, const dca::Graph& h, bool respect_orientation) {
  using dca::Vertex;
  const auto n = static_cast<Vertex>(g.size());
  if (h.size() != g.size() || g.edge_count() != h.edge_count()) return false;
  if (g.edge_length() != h.edge_length()) return false;
  auto profile = [](const dca::Graph& x, Vertex v) {
    std::vector<int> p(x.size() + 1, 0);
    for (Vertex w = 0; w < static_cast<Vertex>(x.size()); ++w) ++p[x.dist(v, w)];
    p.push_back(static_cast<int>(x.oriented() ? x.upper_neighbors(v).size() : 0));
    return p;
  };
  std::vector<std::vector<int>> pg(n), ph(n);
  for (Vertex v = 0; v < n; ++v) {
    pg[v] = profile(g, v);
    ph[v] = profile(h, v);
  }
  std::vector<Vertex> map(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(Vertex)> extend = [&](Vertex v) {
    if (v == n) return true;
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || pg[v] != ph[w]) continue;
      bool ok = true;
      for (Vertex u = 0; u < v && ok; ++u) {
        if (g.dist(u, v) != h.dist(map[u], w)) ok = false;
        if (ok && respect_orientation && g.adjacent(u, v) && g.arrow(u, v) != h.arrow(map[u], w)) {
          ok = false;
        }
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      if (extend(v + 1)) return true;
      used[w] = 0;
    }
    map[v] = -1;
    return false;
  };
  return extend(0);
}

}  // namespace testutil

#include "dca/lconvex.hpp"

namespace testutil {

inline dca::FnTable random_l_convex(const dca::ProductSpace& space, std::mt19937& rng,
                                    bool with_indicator = true) {
  std::mt19937_64 r(rng());
  return dca::random_l_convex(space, r, with_indicator);
}

// Smallest id in dom f.
inline dca::Index first_finite(const dca::FnTable& f) {
  for (dca::Index i = 0; i < f.size(); ++i)
    if (f[i].is_finite()) return i;
  throw std::runtime_error("empty domain");
}

}  // namespace testutil
