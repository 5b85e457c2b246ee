#include "dca/poset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "dca/error.hpp"

namespace dca {

namespace {

int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Poset

Poset Poset::from_covers(std::vector<std::string> names,
                         const std::vector<std::pair<Elem, Elem>>& covers, bool require_graded) {
  const auto n = static_cast<Elem>(names.size());
  std::vector<std::vector<Elem>> parents(n);
  std::vector<int> indeg(n, 0);  // number of parents not yet processed
  for (auto [child, parent] : covers) {
    if (child < 0 || child >= n || parent < 0 || parent >= n) {
      throw Error(ErrorCode::kBadInput, "cover pair references an undeclared element");
    }
    if (child == parent) throw Error(ErrorCode::kCycleDetected, "self-cover on " + names[child]);
    parents[child].push_back(parent);
  }
  // Kahn's algorithm from the top: an element is ready once all its parents are.
  std::vector<std::vector<Elem>> children(n);
  for (Elem c = 0; c < n; ++c) {
    for (Elem p : parents[c]) children[p].push_back(c);
    indeg[c] = static_cast<int>(parents[c].size());
  }
  std::deque<Elem> ready;
  for (Elem p = 0; p < n; ++p) {
    if (indeg[p] == 0) ready.push_back(p);
  }
  Poset poset;
  poset.names_ = std::move(names);
  poset.up_set_.assign(n, boost::dynamic_bitset<>(n));
  int processed = 0;
  while (!ready.empty()) {
    Elem p = ready.front();
    ready.pop_front();
    ++processed;
    poset.up_set_[p].set(p);
    for (Elem q : parents[p]) poset.up_set_[p] |= poset.up_set_[q];
    for (Elem c : children[p]) {
      if (--indeg[c] == 0) ready.push_back(c);
    }
  }
  if (processed != n) throw Error(ErrorCode::kCycleDetected, "cover relation contains a cycle");
  poset.finish(require_graded);
  return poset;
}

Poset Poset::from_relation(std::vector<std::string> names,
                           const std::function<bool(Elem, Elem)>& leq) {
  const auto n = static_cast<Elem>(names.size());
  Poset poset;
  poset.names_ = std::move(names);
  poset.up_set_.assign(n, boost::dynamic_bitset<>(n));
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = 0; q < n; ++q) {
      if (p == q || leq(p, q)) poset.up_set_[p].set(q);
    }
  }
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = p + 1; q < n; ++q) {
      if (poset.up_set_[p][q] && poset.up_set_[q][p]) {
        throw Error(ErrorCode::kCycleDetected, "relation is not antisymmetric");
      }
    }
  }
  poset.finish(false);
  return poset;
}

void Poset::finish(bool require_graded) {
  const auto n = static_cast<Elem>(names_.size());
  down_set_.assign(n, boost::dynamic_bitset<>(n));
  for (Elem p = 0; p < n; ++p) {
    for (auto q = up_set_[p].find_first(); q != boost::dynamic_bitset<>::npos;
         q = up_set_[p].find_next(q)) {
      down_set_[q].set(p);
    }
  }
  upper_.assign(n, {});
  lower_.assign(n, {});
  for (Elem p = 0; p < n; ++p) {
    // q covers p iff p < q and no r with p < r < q.
    for (auto q = up_set_[p].find_first(); q != boost::dynamic_bitset<>::npos;
         q = up_set_[p].find_next(q)) {
      if (static_cast<Elem>(q) == p) continue;
      auto between = up_set_[p] & down_set_[q];
      if (between.count() == 2) {
        upper_[p].push_back(static_cast<Elem>(q));
        lower_[q].push_back(p);
      }
    }
  }
  // Longest-chain rank, processed by size of down-set (a linear extension).
  std::vector<Elem> order(n);
  for (Elem p = 0; p < n; ++p) order[p] = p;
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    return down_set_[a].count() < down_set_[b].count();
  });
  rank_.assign(n, 0);
  for (Elem p : order) {
    for (Elem c : lower_[p]) rank_[p] = std::max(rank_[p], rank_[c] + 1);
  }
  graded_ = true;
  for (Elem p = 0; p < n; ++p) {
    for (Elem q : upper_[p]) {
      if (rank_[q] != rank_[p] + 1) graded_ = false;
    }
  }
  if (require_graded && !graded_) throw Error(ErrorCode::kNotGraded, "poset is not graded");
  minimum_.reset();
  for (Elem p = 0; p < n; ++p) {
    if (up_set_[p].count() == static_cast<std::size_t>(n)) minimum_ = p;
  }
}

std::optional<Elem> Poset::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Elem>(i);
  }
  return std::nullopt;
}

std::vector<std::pair<Elem, Elem>> Poset::cover_pairs() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem p = 0; p < static_cast<Elem>(size()); ++p) {
    for (Elem q : upper_[p]) out.emplace_back(p, q);
  }
  return out;
}

int Poset::height() const {
  int h = 0;
  for (int r : rank_) h = std::max(h, r);
  return h;
}

std::vector<Elem> Poset::maximal_elements() const {
  std::vector<Elem> out;
  for (Elem p = 0; p < static_cast<Elem>(size()); ++p) {
    if (upper_[p].empty()) out.push_back(p);
  }
  return out;
}

namespace {

std::vector<Elem> bits_to_list(const boost::dynamic_bitset<>& bits) {
  std::vector<Elem> out;
  for (auto i = bits.find_first(); i != boost::dynamic_bitset<>::npos; i = bits.find_next(i)) {
    out.push_back(static_cast<Elem>(i));
  }
  return out;
}

}  // namespace

std::vector<Elem> Poset::interval(Elem p, Elem q) const {
  return bits_to_list(up_set_[p] & down_set_[q]);
}
std::vector<Elem> Poset::principal_ideal(Elem p) const { return bits_to_list(down_set_[p]); }
std::vector<Elem> Poset::principal_filter(Elem p) const { return bits_to_list(up_set_[p]); }

Poset Poset::induced(const std::vector<Elem>& elems) const {
  std::vector<std::string> names;
  names.reserve(elems.size());
  for (Elem e : elems) names.push_back(names_[e]);
  return from_relation(std::move(names),
                       [&](Elem a, Elem b) { return leq(elems[a], elems[b]); });
}

Poset Poset::dual() const {
  return from_relation(names_, [&](Elem a, Elem b) { return leq(b, a); });
}

Poset product(const Poset& a, const Poset& b) {
  const auto nb = static_cast<Elem>(b.size());
  std::vector<std::string> names;
  for (Elem i = 0; i < static_cast<Elem>(a.size()); ++i) {
    for (Elem j = 0; j < nb; ++j) names.push_back(a.name(i) + "," + b.name(j));
  }
  std::vector<std::pair<Elem, Elem>> covers;
  for (Elem i = 0; i < static_cast<Elem>(a.size()); ++i) {
    for (Elem j = 0; j < nb; ++j) {
      for (Elem i2 : a.upper_covers(i)) covers.emplace_back(i * nb + j, i2 * nb + j);
      for (Elem j2 : b.upper_covers(j)) covers.emplace_back(i * nb + j, i * nb + j2);
    }
  }
  return Poset::from_covers(std::move(names), covers);
}

// ---------------------------------------------------------------------------
// Semilattice

Semilattice::Semilattice(Poset poset) : poset_(std::move(poset)) {
  const auto n = static_cast<Elem>(poset_.size());
  if (!poset_.minimum()) throw Error(ErrorCode::kNotSemilattice, "no minimum element");
  meet_.assign(static_cast<std::size_t>(n) * n, -1);
  join_.assign(static_cast<std::size_t>(n) * n, -1);
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = p; q < n; ++q) {
      // Greatest element of the common down-set, if it is unique.
      auto common = poset_.down_set(p) & poset_.down_set(q);
      Elem best = -1;
      for (auto c = common.find_first(); c != boost::dynamic_bitset<>::npos;
           c = common.find_next(c)) {
        if (common.is_subset_of(poset_.down_set(static_cast<Elem>(c)))) {
          best = static_cast<Elem>(c);
          break;
        }
      }
      if (best < 0) {
        throw Error(ErrorCode::kNotSemilattice,
                    "no meet for " + poset_.name(p) + " and " + poset_.name(q));
      }
      meet_[index(p, q)] = meet_[index(q, p)] = best;
      auto upper = poset_.up_set(p) & poset_.up_set(q);
      Elem least = -1;
      for (auto c = upper.find_first(); c != boost::dynamic_bitset<>::npos;
           c = upper.find_next(c)) {
        if (upper.is_subset_of(poset_.up_set(static_cast<Elem>(c)))) {
          least = static_cast<Elem>(c);
          break;
        }
      }
      join_[index(p, q)] = join_[index(q, p)] = least;
    }
  }
  compute_distances();
}

Semilattice::Semilattice(Poset poset, std::vector<Elem> meet, std::vector<Elem> join)
    : poset_(std::move(poset)), meet_(std::move(meet)), join_(std::move(join)) {
  compute_distances();
}

void Semilattice::compute_distances() {
  const auto n = static_cast<Elem>(size());
  dist_.assign(static_cast<std::size_t>(n) * n, -1);
  std::vector<Elem> queue;
  for (Elem s = 0; s < n; ++s) {
    queue.clear();
    queue.push_back(s);
    dist_[index(s, s)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Elem v = queue[head];
      int dv = dist_[index(s, v)];
      auto visit = [&](Elem w) {
        if (dist_[index(s, w)] < 0) {
          dist_[index(s, w)] = dv + 1;
          queue.push_back(w);
        }
      };
      for (Elem w : poset_.upper_covers(v)) visit(w);
      for (Elem w : poset_.lower_covers(v)) visit(w);
    }
  }
}

std::vector<Elem> Semilattice::atoms() const { return poset_.upper_covers(bottom()); }

Semilattice product(const Semilattice& a, const Semilattice& b) {
  Poset poset = product(a.poset(), b.poset());
  const auto na = static_cast<Elem>(a.size());
  const auto nb = static_cast<Elem>(b.size());
  const auto n = static_cast<std::size_t>(na) * nb;
  std::vector<Elem> meet(n * n), join(n * n);
  for (Elem i = 0; i < na; ++i) {
    for (Elem j = 0; j < nb; ++j) {
      for (Elem i2 = 0; i2 < na; ++i2) {
        for (Elem j2 = 0; j2 < nb; ++j2) {
          std::size_t idx = static_cast<std::size_t>(i * nb + j) * n + (i2 * nb + j2);
          meet[idx] = a.meet(i, i2) * nb + b.meet(j, j2);
          auto ja = a.join(i, i2);
          auto jb = b.join(j, j2);
          join[idx] = (ja && jb) ? *ja * nb + *jb : -1;
        }
      }
    }
  }
  return Semilattice(std::move(poset), std::move(meet), std::move(join));
}

Semilattice power(const Semilattice& base, int n) {
  if (n < 1) throw Error(ErrorCode::kBadInput, "power exponent must be positive");
  Semilattice out = base;
  for (int i = 1; i < n; ++i) out = product(out, base);
  return out;
}

// ---------------------------------------------------------------------------
// Structure recognition

ModularityReport is_modular_semilattice(const Semilattice& L) {
  const auto n = static_cast<Elem>(L.size());
  ModularityReport report;
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      auto xy = L.join(x, y);
      for (Elem z = 0; z < n; ++z) {
        // Modular law inside the principal ideal of x v y (z <= x).
        if (xy && L.leq(z, x)) {
          Elem lhs = L.meet(x, *L.join(y, z));
          Elem rhs = *L.join(L.meet(x, y), z);
          if (lhs != rhs) {
            report.witness = std::array<Elem, 3>{x, y, z};
            report.reason = "modular law fails in a principal ideal";
            return report;
          }
        }
        if (xy && L.join(y, z) && L.join(z, x) && !L.join(*xy, z)) {
          report.witness = std::array<Elem, 3>{x, y, z};
          report.reason = "pairwise joins exist but the triple join does not";
          return report;
        }
      }
    }
  }
  report.modular = true;
  return report;
}

bool is_complemented(const Semilattice& L) {
  const auto atoms = L.atoms();
  for (Elem p = 0; p < static_cast<Elem>(L.size()); ++p) {
    Elem acc = L.bottom();
    for (Elem a : atoms) {
      if (!L.leq(a, p)) continue;
      auto j = L.join(acc, a);
      if (!j) return false;
      acc = *j;
    }
    if (acc != p) return false;
  }
  return true;
}

std::vector<Elem> PolarFrame::sorted_elements() const {
  auto out = elements;
  std::sort(out.begin(), out.end());
  return out;
}

bool PolarFrame::contains(Elem p) const { return code_of(p) >= 0; }

int PolarFrame::code_of(Elem p) const {
  for (std::size_t c = 0; c < elements.size(); ++c) {
    if (elements[c] == p) return static_cast<int>(c);
  }
  return -1;
}

namespace {

// Digit i of sign code c (base 3).
int digit(int code, int i) {
  for (int k = 0; k < i; ++k) code /= 3;
  return code % 3;
}

std::optional<PolarFrame> build_frame(const Semilattice& L,
                                      const std::vector<std::pair<Elem, Elem>>& pairs) {
  const int n = static_cast<int>(pairs.size());
  const int count = ipow(3, n);
  PolarFrame frame;
  frame.atom_pairs = pairs;
  frame.elements.assign(count, -1);
  for (int c = 0; c < count; ++c) {
    Elem acc = L.bottom();
    for (int i = 0; i < n; ++i) {
      int d = digit(c, i);
      if (d == 0) continue;
      Elem atom = d == 1 ? pairs[i].first : pairs[i].second;
      auto j = L.join(acc, atom);
      if (!j) return std::nullopt;
      acc = *j;
    }
    frame.elements[c] = acc;
  }
  std::set<Elem> distinct(frame.elements.begin(), frame.elements.end());
  if (static_cast<int>(distinct.size()) != count) return std::nullopt;
  for (int s = 0; s < count; ++s) {
    for (int t = 0; t < count; ++t) {
      bool sub = true;
      int meet_code = 0;
      for (int i = n - 1; i >= 0; --i) {
        int ds = digit(s, i), dt = digit(t, i);
        if (ds != 0 && ds != dt) sub = false;
        meet_code = meet_code * 3 + (ds == dt ? ds : 0);
      }
      if (sub != L.leq(frame.elements[s], frame.elements[t])) return std::nullopt;
      if (L.meet(frame.elements[s], frame.elements[t]) != frame.elements[meet_code]) {
        return std::nullopt;
      }
    }
  }
  return frame;
}

void enumerate_pairings(const Semilattice& L, const std::vector<Elem>& atoms, int n,
                        std::vector<std::pair<Elem, Elem>>& chosen,
                        std::map<std::vector<Elem>, PolarFrame>& out) {
  if (static_cast<int>(chosen.size()) == n) {
    if (auto frame = build_frame(L, chosen)) out.emplace(frame->sorted_elements(), *frame);
    return;
  }
  const std::size_t start = 0;
  for (std::size_t i = start; i < atoms.size(); ++i) {
    Elem a = atoms[i];
    if (!chosen.empty() && a <= chosen.back().first) continue;
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      Elem b = atoms[j];
      if (L.join(a, b)) continue;
      bool ok = true;
      for (auto [c, d] : chosen) {
        if (c == a || c == b || d == a || d == b) ok = false;
        if (!L.join(a, c) || !L.join(a, d) || !L.join(b, c) || !L.join(b, d)) ok = false;
      }
      if (!ok) continue;
      chosen.emplace_back(a, b);
      enumerate_pairings(L, atoms, n, chosen, out);
      chosen.pop_back();
    }
  }
}

// Maximal chains of the subposet `members` (given as a membership mask).
std::vector<std::vector<Elem>> maximal_chains(const Poset& poset,
                                              const boost::dynamic_bitset<>& members) {
  std::vector<std::vector<Elem>> chains;
  const auto n = static_cast<Elem>(poset.size());
  auto covers_in = [&](Elem p) {
    // Elements of `members` covering p inside the subposet.
    std::vector<Elem> out;
    for (Elem q = 0; q < n; ++q) {
      if (!members[q] || !poset.less(p, q)) continue;
      bool direct = true;
      for (Elem r = 0; r < n && direct; ++r) {
        if (members[r] && poset.less(p, r) && poset.less(r, q)) direct = false;
      }
      if (direct) out.push_back(q);
    }
    return out;
  };
  std::vector<Elem> stack;
  std::function<void(Elem)> dfs = [&](Elem p) {
    stack.push_back(p);
    auto next = covers_in(p);
    if (next.empty()) chains.push_back(stack);
    for (Elem q : next) dfs(q);
    stack.pop_back();
  };
  for (Elem p = 0; p < n; ++p) {
    if (!members[p]) continue;
    bool minimal = true;
    for (Elem q = 0; q < n && minimal; ++q) {
      if (members[q] && poset.less(q, p)) minimal = false;
    }
    if (minimal) dfs(p);
  }
  return chains;
}

// All isomorphisms between two frames, as element maps (indexed by sign code).
std::vector<std::vector<std::pair<Elem, Elem>>> frame_isomorphisms(const PolarFrame& f,
                                                                   const PolarFrame& g) {
  const int n = static_cast<int>(f.atom_pairs.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::vector<std::pair<Elem, Elem>>> out;
  const int count = static_cast<int>(f.elements.size());
  do {
    for (int flips = 0; flips < (1 << n); ++flips) {
      std::vector<std::pair<Elem, Elem>> map;
      map.reserve(count);
      for (int c = 0; c < count; ++c) {
        std::vector<int> target(n, 0);
        for (int i = 0; i < n; ++i) {
          int d = digit(c, i);
          if (d != 0 && ((flips >> i) & 1)) d = 3 - d;
          target[perm[i]] = d;
        }
        int code = 0;
        for (int i = n - 1; i >= 0; --i) code = code * 3 + target[i];
        map.emplace_back(f.elements[c], g.elements[code]);
      }
      out.push_back(std::move(map));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

PolarReport is_polar_space(const Semilattice& L, const PolarOptions& options) {
  PolarReport report;
  const Poset& poset = L.poset();
  const int rank = poset.height();
  if (L.size() > options.max_elements || rank > options.max_rank) {
    throw Error(ErrorCode::kTooLarge, "polar-space check budget exceeded (" +
                                          std::to_string(L.size()) + " elements, rank " +
                                          std::to_string(rank) + ")");
  }
  if (!poset.graded()) {
    report.reason = "not graded";
    return report;
  }
  if (rank == 0) {
    PolarFrame trivial;
    trivial.elements = {L.bottom()};
    report.frames.push_back(trivial);
    report.polar = true;
    return report;
  }
  std::map<std::vector<Elem>, PolarFrame> found;
  std::vector<std::pair<Elem, Elem>> chosen;
  enumerate_pairings(L, L.atoms(), rank, chosen, found);
  for (auto& [key, frame] : found) report.frames.push_back(frame);
  if (report.frames.empty()) {
    report.reason = "no subsemilattice isomorphic to S_2^" + std::to_string(rank);
    return report;
  }
  const auto n = static_cast<Elem>(L.size());
  // P1 via maximal chains: any chain extends to one.
  boost::dynamic_bitset<> all(n);
  all.set();
  auto chains = maximal_chains(poset, all);
  const std::size_t nf = report.frames.size();
  std::vector<boost::dynamic_bitset<>> frames_of_chain(chains.size(), boost::dynamic_bitset<>(nf));
  for (std::size_t c = 0; c < chains.size(); ++c) {
    for (std::size_t f = 0; f < nf; ++f) {
      bool in = std::all_of(chains[c].begin(), chains[c].end(),
                            [&](Elem e) { return report.frames[f].contains(e); });
      if (in) frames_of_chain[c].set(f);
    }
  }
  for (std::size_t c = 0; c < chains.size(); ++c) {
    for (std::size_t d = c; d < chains.size(); ++d) {
      if (!frames_of_chain[c].intersects(frames_of_chain[d])) {
        report.reason = "P1 fails: two maximal chains share no polar frame";
        return report;
      }
    }
  }
  // P2: frames sharing chains are isomorphic over them. It suffices to test
  // pairs of maximal chains of the common part.
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t g = f + 1; g < nf; ++g) {
      boost::dynamic_bitset<> common(n);
      for (Elem e : report.frames[f].elements) {
        if (report.frames[g].contains(e)) common.set(e);
      }
      auto sub_chains = maximal_chains(poset, common);
      auto isos = frame_isomorphisms(report.frames[f], report.frames[g]);
      for (std::size_t c = 0; c < sub_chains.size(); ++c) {
        for (std::size_t d = c; d < sub_chains.size(); ++d) {
          std::set<Elem> fixed(sub_chains[c].begin(), sub_chains[c].end());
          fixed.insert(sub_chains[d].begin(), sub_chains[d].end());
          bool ok = std::any_of(isos.begin(), isos.end(), [&](const auto& map) {
            return std::all_of(map.begin(), map.end(), [&](auto pr) {
              return !fixed.count(pr.first) || pr.first == pr.second;
            });
          });
          if (!ok) {
            report.reason = "P2 fails: no frame isomorphism fixes two shared chains";
            return report;
          }
        }
      }
    }
  }
  report.polar = true;
  return report;
}

std::vector<IntervalMember> metric_interval(const Semilattice& L, Elem p, Elem q) {
  std::vector<IntervalMember> out;
  const int dpq = L.dist(p, q);
  for (Elem u = 0; u < static_cast<Elem>(L.size()); ++u) {
    if (L.dist(p, u) + L.dist(u, q) != dpq) continue;
    Elem a = L.meet(u, p);
    Elem b = L.meet(u, q);
    auto j = L.join(a, b);
    ensure(j && *j == u, "metric interval element is not (u^p) v (u^q); lattice not modular?");
    out.push_back({u, a, b});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Families

Semilattice make_sk(int k) {
  if (k < 0) throw Error(ErrorCode::kBadInput, "S_k needs k >= 0");
  std::vector<std::string> names{"0"};
  if (k == 2) {
    names.push_back("+");
    names.push_back("-");
  } else {
    for (int i = 1; i <= k; ++i) names.push_back(std::to_string(i));
  }
  std::vector<std::pair<Elem, Elem>> covers;
  for (int i = 1; i <= k; ++i) covers.emplace_back(0, i);
  return Semilattice(Poset::from_covers(std::move(names), covers, true));
}

Semilattice make_sk_power(int k, int n) { return power(make_sk(k), n); }

Semilattice make_skl(int k, int l) {
  // Not the product order: the pairs (a,b) with a,b != 0 are the atoms and
  // (a,0), (0,b) sit above them.
  const int nk = k + 1, nl = l + 1;
  Semilattice sk = make_sk(k), sl = make_sk(l);
  std::vector<std::string> names;
  for (int a = 0; a < nk; ++a) {
    for (int b = 0; b < nl; ++b) names.push_back(sk.name(a) + "," + sl.name(b));
  }
  auto id = [&](int a, int b) { return a * nl + b; };
  std::vector<std::pair<Elem, Elem>> covers;
  for (int a = 1; a < nk; ++a) {
    for (int b = 1; b < nl; ++b) {
      covers.emplace_back(id(0, 0), id(a, b));
      covers.emplace_back(id(a, b), id(a, 0));
      covers.emplace_back(id(a, b), id(0, b));
    }
  }
  return Semilattice(Poset::from_covers(std::move(names), covers, true));
}

Semilattice make_chain(int length) {
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> covers;
  for (int i = 0; i <= length; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) covers.emplace_back(i - 1, i);
  }
  return Semilattice(Poset::from_covers(std::move(names), covers, true));
}

Semilattice make_boolean(int n) { return make_sk_power(1, n); }

Semilattice make_pentagon() {
  std::vector<std::string> names{"0", "a", "c", "b", "1"};
  std::vector<std::pair<Elem, Elem>> covers{{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
  return Semilattice(Poset::from_covers(std::move(names), covers));
}

}  // namespace dca
