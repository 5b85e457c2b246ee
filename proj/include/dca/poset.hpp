#pragma once

#include <boost/dynamic_bitset.hpp>

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dca {

/// Dense element id inside a poset; names live in a side table.
using Elem = int;

/// Finite poset with cached order relation, Hasse diagram and ranks.
///
/// Ranks are the longest-chain heights from minimal elements; the poset is
/// reported graded when every cover raises the rank by exactly one.
class Poset {
 public:
  /// `covers` holds (child, parent) pairs meaning parent is above child.
  /// Redundant pairs are allowed; the Hasse diagram is recomputed.
  static Poset from_covers(std::vector<std::string> names,
                           const std::vector<std::pair<Elem, Elem>>& covers,
                           bool require_graded = false);
  /// Builds the poset of an order relation given by `leq` (must be a partial order).
  static Poset from_relation(std::vector<std::string> names,
                             const std::function<bool(Elem, Elem)>& leq);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Elem p) const { return names_[p]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Elem> find(std::string_view name) const;

  bool leq(Elem p, Elem q) const { return up_set_[p][q]; }
  bool less(Elem p, Elem q) const { return p != q && up_set_[p][q]; }
  bool comparable(Elem p, Elem q) const { return leq(p, q) || leq(q, p); }
  /// Bitset of all q with p <= q.
  const boost::dynamic_bitset<>& up_set(Elem p) const { return up_set_[p]; }
  /// Bitset of all q with q <= p.
  const boost::dynamic_bitset<>& down_set(Elem p) const { return down_set_[p]; }

  const std::vector<Elem>& upper_covers(Elem p) const { return upper_[p]; }
  const std::vector<Elem>& lower_covers(Elem p) const { return lower_[p]; }
  std::vector<std::pair<Elem, Elem>> cover_pairs() const;

  bool graded() const { return graded_; }
  int rank(Elem p) const { return rank_[p]; }
  int height() const;
  std::optional<Elem> minimum() const { return minimum_; }
  std::vector<Elem> maximal_elements() const;

  std::vector<Elem> interval(Elem p, Elem q) const;
  std::vector<Elem> principal_ideal(Elem p) const;
  std::vector<Elem> principal_filter(Elem p) const;

  /// Subposet on `elems` (result element i is elems[i]).
  Poset induced(const std::vector<Elem>& elems) const;
  Poset dual() const;

 private:
  Poset() = default;
  void finish(bool require_graded);

  std::vector<std::string> names_;
  std::vector<boost::dynamic_bitset<>> up_set_;
  std::vector<boost::dynamic_bitset<>> down_set_;
  std::vector<std::vector<Elem>> upper_;
  std::vector<std::vector<Elem>> lower_;
  std::vector<int> rank_;
  std::optional<Elem> minimum_;
  bool graded_ = false;
};

/// Meet-semilattice with tabulated meets and (partial) joins, plus the
/// covering-graph distance matrix.
class Semilattice {
 public:
  /// Throws NotSemilattice when a meet is missing or no minimum exists.
  explicit Semilattice(Poset poset);

  const Poset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  const std::string& name(Elem p) const { return poset_.name(p); }
  Elem bottom() const { return *poset_.minimum(); }
  bool leq(Elem p, Elem q) const { return poset_.leq(p, q); }
  int rank(Elem p) const { return poset_.rank(p); }

  Elem meet(Elem p, Elem q) const { return meet_[index(p, q)]; }
  std::optional<Elem> join(Elem p, Elem q) const {
    Elem j = join_[index(p, q)];
    if (j < 0) return std::nullopt;
    return j;
  }
  /// Covering-graph distance (hops).
  int dist(Elem p, Elem q) const { return dist_[index(p, q)]; }
  std::vector<Elem> atoms() const;

  friend Semilattice product(const Semilattice& a, const Semilattice& b);

 private:
  Semilattice(Poset poset, std::vector<Elem> meet, std::vector<Elem> join);
  std::size_t index(Elem p, Elem q) const { return static_cast<std::size_t>(p) * size() + q; }
  void compute_distances();

  Poset poset_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  std::vector<int> dist_;
};

struct ModularityReport {
  bool modular = false;
  /// Violating triple (x, y, z) when not modular.
  std::optional<std::array<Elem, 3>> witness;
  std::string reason;
};

/// Principal ideals are modular lattices, and pairwise joins of a triple imply
/// the triple join.
ModularityReport is_modular_semilattice(const Semilattice& lattice);

/// Every element is the join of the atoms below it.
bool is_complemented(const Semilattice& lattice);

/// A polar frame: subsemilattice isomorphic to S_2^n, given by n pairs of
/// opposite atoms. `elements[c]` is the element with sign code c, where
/// digit i of c in base 3 is 0 (absent), 1 (first atom of pair i) or 2 (second).
struct PolarFrame {
  std::vector<std::pair<Elem, Elem>> atom_pairs;
  std::vector<Elem> elements;

  std::vector<Elem> sorted_elements() const;
  bool contains(Elem p) const;
  /// Sign code of p inside the frame, or -1.
  int code_of(Elem p) const;
};

struct PolarReport {
  bool polar = false;
  std::vector<PolarFrame> frames;
  std::string reason;
};

struct PolarOptions {
  std::size_t max_elements = 200;
  int max_rank = 3;
};

/// Exhaustive check of axioms P0-P2. Throws TooLarge beyond the budget.
PolarReport is_polar_space(const Semilattice& lattice, const PolarOptions& options = {});

/// u in I(p,q) with its decomposition u = a v b, a = u ^ p, b = u ^ q.
struct IntervalMember {
  Elem u;
  Elem a;
  Elem b;
};

/// Metric interval in the covering graph of a modular semilattice.
std::vector<IntervalMember> metric_interval(const Semilattice& lattice, Elem p, Elem q);

Poset product(const Poset& a, const Poset& b);
Semilattice product(const Semilattice& a, const Semilattice& b);

// Families used throughout the tests and the CLI.
/// S_k: a bottom 0 with k atoms. For k = 2 the atoms are named "+" and "-".
Semilattice make_sk(int k);
/// S_k^n with componentwise order.
Semilattice make_sk_power(int k, int n);
/// S_{k,l}: polar space of rank 2 on S_k x S_l with the non-product order.
Semilattice make_skl(int k, int l);
Semilattice make_chain(int length);
Semilattice make_boolean(int n);
/// Pentagon lattice N_5 = {0, a, c, b, 1} with a < c.
Semilattice make_pentagon();
Semilattice power(const Semilattice& base, int n);

}  // namespace dca
