#include "dca/lconvex.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

#include "dca/error.hpp"

namespace dca {

// ---------------------------------------------------------------------------
// ProductSpace

ProductSpace::ProductSpace(const Graph& g) : ProductSpace(std::vector<Graph>{g}) {}

ProductSpace::ProductSpace(std::vector<Graph> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::kBadInput, "product space needs a factor");
  strides_.assign(factors_.size(), 1);
  for (std::size_t i = factors_.size(); i-- > 0;) {
    strides_[i] = size_;
    const std::size_t n = factors_[i].size();
    if (size_ > (std::size_t{1} << 62) / n) throw Error(ErrorCode::kTooLarge, "product space too large");
    size_ *= n;
  }
  thick_.resize(factors_.size());
}

ProductSpace ProductSpace::power(const Graph& g, int n) {
  if (n < 1) throw Error(ErrorCode::kBadInput, "power exponent must be positive");
  return ProductSpace(std::vector<Graph>(static_cast<std::size_t>(n), g));
}

bool ProductSpace::oriented() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const Graph& g) { return g.oriented(); });
}

bool ProductSpace::well_oriented() const {
  return oriented() &&
         std::all_of(factors_.begin(), factors_.end(), [](const Graph& g) { return g.well_oriented(); });
}

void ProductSpace::require_oriented() const {
  if (!oriented()) throw Error(ErrorCode::kNotOrientedModular, "product factor has no orientation");
}

std::vector<Vertex> ProductSpace::coords(Index id) const {
  std::vector<Vertex> out(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = coord(id, i);
  return out;
}

Index ProductSpace::index(std::span<const Vertex> c) const {
  if (c.size() != factors_.size()) throw Error(ErrorCode::kBadInput, "coordinate count mismatch");
  Index id = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0 || static_cast<std::size_t>(c[i]) >= factors_[i].size())
      throw Error(ErrorCode::kBadInput, "coordinate out of range");
    id += static_cast<Index>(c[i]) * strides_[i];
  }
  return id;
}

std::string ProductSpace::name(Index id) const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += ',';
    out += factors_[i].name(coord(id, i));
  }
  return out;
}

Index ProductSpace::find(std::string_view text) const {
  // Factor names may contain commas themselves, so match greedily with backtracking.
  std::vector<Vertex> picked(factors_.size());
  std::function<bool(std::size_t, std::size_t)> match = [&](std::size_t i, std::size_t pos) {
    if (i == factors_.size()) return pos == text.size() + 1;
    for (Vertex v = 0; v < static_cast<Vertex>(factors_[i].size()); ++v) {
      const std::string& nm = factors_[i].name(v);
      if (text.substr(pos, nm.size()) != nm) continue;
      std::size_t end = pos + nm.size();
      if (end != text.size() && text[end] != ',') continue;
      picked[i] = v;
      if (match(i + 1, end + 1)) return true;
    }
    return false;
  };
  if (!match(0, 0)) throw Error(ErrorCode::kBadInput, "unknown vertex '" + std::string(text) + "'");
  return index(picked);
}

int ProductSpace::dist(Index a, Index b) const {
  int d = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) d += factors_[i].dist(coord(a, i), coord(b, i));
  return d;
}

const Thickening& ProductSpace::thickening(std::size_t i) const {
  if (!thick_[i]) {
    // Identical factors share one thickening.
    for (std::size_t j = 0; j < i; ++j) {
      if (thick_[j] && factors_[j].names() == factors_[i].names() &&
          factors_[j].edges() == factors_[i].edges() && factors_[j].arcs() == factors_[i].arcs()) {
        thick_[i] = thick_[j];
        return *thick_[i];
      }
    }
    thick_[i] = std::make_shared<Thickening>(factors_[i]);
  }
  return *thick_[i];
}

int ProductSpace::delta_dist(Index a, Index b) const {
  int d = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    d = std::max(d, thickening(i).dist(coord(a, i), coord(b, i)));
  return d;
}

namespace {

// All ids of a product of per-coordinate vertex lists, increasing.
std::vector<Index> product_ids(const std::vector<std::vector<Vertex>>& lists,
                               const std::vector<std::size_t>& strides) {
  std::vector<Index> out{0};
  for (std::size_t i = 0; i < lists.size(); ++i) {
    std::vector<Index> next;
    next.reserve(out.size() * lists[i].size());
    for (Index base : out)
      for (Vertex v : lists[i]) next.push_back(base + static_cast<Index>(v) * strides[i]);
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<Index> ProductSpace::sq_filter(Index x) const {
  require_oriented();
  std::vector<std::vector<Vertex>> lists;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    lists.push_back(to_list(factors_[i].sq_filter(coord(x, i))));
  return product_ids(lists, strides_);
}

std::vector<Index> ProductSpace::sq_ideal(Index x) const {
  require_oriented();
  std::vector<std::vector<Vertex>> lists;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    lists.push_back(to_list(factors_[i].sq_ideal(coord(x, i))));
  return product_ids(lists, strides_);
}

std::size_t ProductSpace::sq_filter_size(Index x) const {
  require_oriented();
  std::size_t n = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) n *= factors_[i].sq_filter(coord(x, i)).count();
  return n;
}

std::size_t ProductSpace::sq_ideal_size(Index x) const {
  require_oriented();
  std::size_t n = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) n *= factors_[i].sq_ideal(coord(x, i)).count();
  return n;
}

bool ProductSpace::sq(Index a, Index b) const {
  require_oriented();
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!factors_[i].sq(coord(a, i), coord(b, i))) return false;
  return true;
}

Graph ProductSpace::materialize(std::size_t limit) const {
  if (size_ > limit) throw Error(ErrorCode::kTooLarge, "product has " + std::to_string(size_) + " vertices");
  Graph out = factors_[0];
  for (std::size_t i = 1; i < factors_.size(); ++i) out = product(out, factors_[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Subdivision of a product

Index StarSpace::embed(Index base_id, const ProductSpace& base) const {
  std::vector<Vertex> c(base.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = maps[i].embed[base.coord(base_id, i)];
  return space.index(c);
}

std::pair<Index, Index> StarSpace::endpoints(Index star_id, const ProductSpace& base) const {
  std::vector<Vertex> lo(base.dimension()), hi(base.dimension());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (maps[i].interval_repr.empty())
      throw Error(ErrorCode::kNotOrientedModular, "interval endpoints need an oriented base");
    std::tie(lo[i], hi[i]) = maps[i].interval_repr[space.coord(star_id, i)];
  }
  return {base.index(lo), base.index(hi)};
}

std::vector<std::vector<Vertex>> StarSpace::members(Index star_id) const {
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < maps.size(); ++i) out.push_back(to_list(maps[i].sets[space.coord(star_id, i)]));
  return out;
}

StarSpace subdivide(const ProductSpace& base, const SubdivisionOptions& options) {
  std::vector<SubdivisionMap> maps;
  std::vector<Graph> stars;
  for (std::size_t i = 0; i < base.dimension(); ++i) {
    bool reused = false;
    for (std::size_t j = 0; j < i && !reused; ++j) {
      if (base.factor(j).names() == base.factor(i).names() && base.factor(j).edges() == base.factor(i).edges() &&
          base.factor(j).arcs() == base.factor(i).arcs()) {
        maps.push_back(maps[j]);
        reused = true;
      }
    }
    if (!reused) maps.push_back(barycentric_subdivision(base.factor(i), options));
    stars.push_back(maps.back().star);
  }
  return StarSpace{ProductSpace(std::move(stars)), std::move(maps)};
}

FnTable lift_star(const ProductSpace& base, const StarSpace& star, std::span<const ExtRat> g) {
  if (g.size() != base.size()) throw Error(ErrorCode::kBadInput, "function table size mismatch");
  FnTable out(star.space.size());
  for (Index s = 0; s < out.size(); ++s) {
    auto [x, y] = star.endpoints(s, base);
    out[s] = (g[x] + g[y]) / Rational(2);
  }
  return out;
}

bool is_delta_prime_connected(const ProductSpace& space, const VertexSet& members) {
  if (members.size() != space.size()) throw Error(ErrorCode::kBadInput, "member set size mismatch");
  auto first = members.find_first();
  if (first == VertexSet::npos) return true;
  VertexSet seen(space.size());
  std::deque<Index> queue{first};
  seen.set(first);
  std::size_t count = 1;
  while (!queue.empty()) {
    Index x = queue.front();
    queue.pop_front();
    for (const auto& list : {space.sq_filter(x), space.sq_ideal(x)}) {
      for (Index y : list) {
        if (members[y] && !seen[y]) {
          seen.set(y);
          ++count;
          queue.push_back(y);
        }
      }
    }
  }
  return count == members.count();
}

// ---------------------------------------------------------------------------
// L-convexity

namespace {

constexpr std::size_t kNeighborhood = 0;
constexpr std::size_t kFilter = 1;
constexpr std::size_t kIdeal = 2;

// Local semilattice of one factor vertex; members are intervals (a,b), with
// a == b for the filter and ideal kinds.
struct FactorLocal {
  int cls = -1;
  std::vector<std::pair<Vertex, Vertex>> members;
};

std::string order_key(const Semilattice& lattice) {
  std::string key(lattice.size() * lattice.size(), '0');
  for (Elem p = 0; p < static_cast<Elem>(lattice.size()); ++p)
    for (Elem q = 0; q < static_cast<Elem>(lattice.size()); ++q)
      if (lattice.leq(p, q)) key[p * lattice.size() + q] = '1';
  return key;
}

}  // namespace

struct LConvexChecker::Local {
  std::shared_ptr<SubmodularChecker> checker;
  // Local element e -> (lower, upper) product ids of its interval.
  std::vector<std::pair<Index, Index>> members;
};

struct LConvexChecker::Cache {
  // [kind][factor][vertex]
  std::array<std::vector<std::vector<FactorLocal>>, 3> factor_locals;
  // [kind][factor] class -> lattice
  std::array<std::vector<std::vector<Semilattice>>, 3> classes;
  std::array<std::map<std::vector<int>, std::shared_ptr<SubmodularChecker>>, 3> checkers;
  // [kind][factor][class]
  std::array<std::vector<std::map<int, std::shared_ptr<SubmodularChecker>>>, 3> factor_checkers;
  std::array<std::vector<std::unique_ptr<Local>>, 3> locals;
  bool use_neighborhood = false;
  bool use_filter_ideal = false;
};

LConvexChecker::~LConvexChecker() = default;
LConvexChecker::LConvexChecker(LConvexChecker&&) noexcept = default;

LConvexChecker::LConvexChecker(ProductSpace space, LConvexMethod method)
    : space_(std::move(space)), method_(method), cache_(std::make_unique<Cache>()) {
  if (!space_.oriented()) throw Error(ErrorCode::kNotOrientedModular, "L-convexity needs an oriented space");
  const bool wo = space_.well_oriented();
  auto& c = *cache_;
  switch (method_) {
    case LConvexMethod::kNeighborhood:
      c.use_neighborhood = true;
      break;
    case LConvexMethod::kFilterIdeal:
      if (!wo) throw Error(ErrorCode::kBadInput, "filter/ideal criterion needs a well-oriented space");
      c.use_filter_ideal = true;
      break;
    case LConvexMethod::kBoth:
      if (!wo) throw Error(ErrorCode::kBadInput, "filter/ideal criterion needs a well-oriented space");
      c.use_neighborhood = c.use_filter_ideal = true;
      break;
    case LConvexMethod::kAuto:
      c.use_neighborhood = true;
      c.use_filter_ideal = wo;
      break;
  }

  const std::size_t n = space_.dimension();
  for (std::size_t kind = 0; kind < 3; ++kind) {
    c.factor_locals[kind].resize(n);
    c.classes[kind].resize(n);
    c.factor_checkers[kind].resize(n);
    c.locals[kind].resize(space_.size());
  }
  std::size_t max_star = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Graph& g = space_.factor(i);
    std::array<std::map<std::string, int>, 3> seen;
    for (std::size_t kind = 0; kind < 3; ++kind) c.factor_locals[kind][i].resize(g.size());
    std::size_t factor_max = 1;
    for (Vertex x = 0; x < static_cast<Vertex>(g.size()); ++x) {
      auto add = [&](std::size_t kind, Semilattice lattice, std::vector<std::pair<Vertex, Vertex>> members) {
        std::string key = order_key(lattice);
        auto [it, inserted] = seen[kind].emplace(key, static_cast<int>(c.classes[kind][i].size()));
        if (inserted) c.classes[kind][i].push_back(std::move(lattice));
        c.factor_locals[kind][i][x] = FactorLocal{it->second, std::move(members)};
      };
      if (c.use_neighborhood) {
        auto [lattice, members] = star_ideal(g, x);
        factor_max = std::max(factor_max, lattice.size());
        add(kNeighborhood, std::move(lattice), std::move(members));
      }
      if (c.use_filter_ideal) {
        for (std::size_t kind : {kFilter, kIdeal}) {
          auto vs = vertex_semilattice(g, to_list(kind == kFilter ? g.sq_filter(x) : g.sq_ideal(x)),
                                       kind == kIdeal);
          std::vector<std::pair<Vertex, Vertex>> members;
          for (Vertex v : vs.members) members.emplace_back(v, v);
          add(kind, std::move(vs.lattice), std::move(members));
        }
      }
    }
    max_star *= factor_max;
  }
  // The neighbourhood semilattices of big well-oriented products get
  // expensive; the filter/ideal criterion is equivalent there.
  if (method_ == LConvexMethod::kAuto && c.use_filter_ideal && max_star > 64) c.use_neighborhood = false;
}

const LConvexChecker::Local& LConvexChecker::local(std::size_t kind, Index x) const {
  auto& c = *cache_;
  auto& slot = c.locals[kind][x];
  if (slot) return *slot;
  const std::size_t n = space_.dimension();
  std::vector<int> key(n);
  std::vector<const FactorLocal*> parts(n);
  for (std::size_t i = 0; i < n; ++i) {
    parts[i] = &c.factor_locals[kind][i][space_.coord(x, i)];
    key[i] = parts[i]->cls;
  }
  auto& checker = c.checkers[kind][key];
  if (!checker) {
    // Factor checkers first; the product joins are assembled from theirs.
    std::vector<const SubmodularChecker*> parts(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& fc = c.factor_checkers[kind][i][key[i]];
      if (!fc) {
        const Semilattice& l = c.classes[kind][i][key[i]];
        fc = std::make_shared<SubmodularChecker>(l, rank_valuation(l));
      }
      parts[i] = fc.get();
    }
    checker = n == 1 ? c.factor_checkers[kind][0][key[0]]
                     : std::make_shared<SubmodularChecker>(SubmodularChecker::product(parts));
  }
  auto out = std::make_unique<Local>();
  out->checker = checker;
  // Left-nested product elements; the last coordinate varies fastest.
  std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> acc{{{}, {}}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> next;
    for (const auto& [lo, hi] : acc) {
      for (const auto& [a, b] : parts[i]->members) {
        auto lo2 = lo;
        auto hi2 = hi;
        lo2.push_back(a);
        hi2.push_back(b);
        next.emplace_back(std::move(lo2), std::move(hi2));
      }
    }
    acc = std::move(next);
  }
  for (const auto& [lo, hi] : acc) out->members.emplace_back(space_.index(lo), space_.index(hi));
  slot = std::move(out);
  return *slot;
}

LConvexReport LConvexChecker::check(std::span<const ExtRat> g) const {
  if (g.size() != space_.size()) throw Error(ErrorCode::kBadInput, "function table size mismatch");
  LConvexReport report;
  VertexSet dom(space_.size());
  for (Index x = 0; x < g.size(); ++x)
    if (g[x].is_finite()) dom.set(x);
  if (dom.none()) {
    report.reason = "empty domain";
    return report;
  }
  report.domain_connected = is_delta_prime_connected(space_, dom);
  if (!report.domain_connected) {
    report.reason = "domain is not Δ'-connected";
    if (cache_->use_neighborhood) report.by_neighborhood = false;
    if (cache_->use_filter_ideal) report.by_filter_ideal = false;
    return report;
  }

  auto run = [&](std::size_t kind) {
    for (Index x = 0; x < space_.size(); ++x) {
      const Local& loc = local(kind, x);
      FnTable f(loc.members.size());
      for (std::size_t e = 0; e < f.size(); ++e) {
        auto [lo, hi] = loc.members[e];
        f[e] = lo == hi ? g[lo] : (g[lo] + g[hi]) / Rational(2);
      }
      SubmodularReport r = loc.checker->check(f);
      if (!r.submodular) {
        if (!report.witness_vertex) {
          report.witness_vertex = x;
          auto [p, q] = *r.witness;
          auto describe = [&](Elem e) {
            auto [lo, hi] = loc.members[e];
            return lo == hi ? space_.name(lo) : "[" + space_.name(lo) + ";" + space_.name(hi) + "]";
          };
          if (kind != kNeighborhood) report.witness_pair = {loc.members[p].first, loc.members[q].first};
          static const char* kinds[] = {"neighbourhood semilattice", "⊑-filter", "⊑-ideal"};
          std::ostringstream os;
          os << "not submodular on the " << kinds[kind] << " of " << space_.name(x) << " at ("
             << describe(p) << ", " << describe(q) << "): " << r.lhs << " < " << r.rhs;
          report.reason = os.str();
        }
        return false;
      }
    }
    return true;
  };

  if (cache_->use_neighborhood) report.by_neighborhood = run(kNeighborhood);
  if (cache_->use_filter_ideal) report.by_filter_ideal = run(kFilter) && run(kIdeal);
  if (report.by_neighborhood && report.by_filter_ideal)
    ensure(*report.by_neighborhood == *report.by_filter_ideal,
           "neighbourhood and filter/ideal criteria disagree");
  report.l_convex = report.by_neighborhood ? *report.by_neighborhood : *report.by_filter_ideal;
  return report;
}

LConvexReport is_l_convex(const ProductSpace& space, std::span<const ExtRat> g, LConvexMethod method) {
  return LConvexChecker(space, method).check(g);
}

// ---------------------------------------------------------------------------
// Optimality and steepest descent

namespace {

// Visits F'_x then I'_x; stops early when visit returns false.
template <class Visit>
void for_each_local(const ProductSpace& space, Index x, std::size_t budget, Visit&& visit) {
  const std::size_t total = space.sq_filter_size(x) + space.sq_ideal_size(x);
  if (total > budget)
    throw Error(ErrorCode::kLocalBudgetExceeded,
                "neighbourhood of " + space.name(x) + " has " + std::to_string(total) + " candidates");
  for (Index y : space.sq_filter(x)) visit(y, true);
  for (Index y : space.sq_ideal(x)) visit(y, false);
}

}  // namespace

bool check_l_optimality(const ProductSpace& space, const Evaluator& g, Index x) {
  const ExtRat gx = g(x);
  bool optimal = true;
  for_each_local(space, x, std::numeric_limits<std::size_t>::max(), [&](Index y, bool) {
    if (g(y) < gx) optimal = false;
  });
  return optimal;
}

bool check_l_optimality(const ProductSpace& space, std::span<const ExtRat> g, Index x) {
  return check_l_optimality(space, [&](Index i) { return g[i]; }, x);
}

SDATrace sda_minimize(const ProductSpace& space, const Evaluator& g, Index x0, const SDAOptions& options) {
  if (x0 >= space.size()) throw Error(ErrorCode::kBadInput, "start vertex out of range");
  SDATrace trace;
  trace.start = x0;
  Index x = x0;
  ExtRat gx = g(x);
  if (gx.is_inf()) throw Error(ErrorCode::kBadInput, "start vertex " + space.name(x0) + " is outside dom g");
  trace.iterates.push_back(x);
  trace.values.push_back(gx);
  std::optional<std::mt19937_64> rng;
  if (options.tie_seed) rng.emplace(*options.tie_seed);

  for (;;) {
    ExtRat best = gx;
    std::vector<Index> ties;
    ExtRat min_filter = gx, min_ideal = gx;
    std::size_t local_size = 0;
    for_each_local(space, x, options.local_budget, [&](Index y, bool in_filter) {
      ++local_size;
      ExtRat v = g(y);
      if (in_filter) min_filter = std::min(min_filter, v);
      else min_ideal = std::min(min_ideal, v);
      if (v < best) {
        best = v;
        ties.assign(1, y);
      } else if (v == best && v < gx) {
        ties.push_back(y);
      }
    });
    if (trace.steps.empty()) trace.exact_precondition = min_filter == gx || min_ideal == gx;
    if (ties.empty()) {
      trace.steps.push_back({x, local_size, x, gx});
      break;
    }
    std::sort(ties.begin(), ties.end());
    ties.erase(std::unique(ties.begin(), ties.end()), ties.end());
    Index y = ties.front();
    if (rng) y = ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(*rng)];
    if (!(best < gx)) throw Error(ErrorCode::kNotLConvex, "descent step does not decrease g");
    trace.steps.push_back({x, local_size, y, best});
    x = y;
    gx = best;
    trace.iterates.push_back(x);
    trace.values.push_back(gx);
    if (static_cast<std::size_t>(++trace.iterations) > options.max_iterations)
      throw Error(ErrorCode::kLocalBudgetExceeded, "iteration limit reached");
  }
  trace.terminal = x;

  if (options.brute_force_limit && space.size() <= options.brute_force_limit) {
    ExtRat opt = ExtRat::infinity();
    std::vector<Index> argmins;
    for (Index i = 0; i < space.size(); ++i) {
      ExtRat v = g(i);
      if (v < opt) {
        opt = v;
        argmins.assign(1, i);
      } else if (v == opt) {
        argmins.push_back(i);
      }
    }
    if (opt < gx)
      throw Error(ErrorCode::kNotLConvex, "descent stopped at " + space.name(x) + " with g = " + gx.str() +
                                              " above the minimum " + opt.str());
    int d = std::numeric_limits<int>::max();
    for (Index o : argmins) d = std::min(d, space.delta_dist(x0, o));
    trace.certificate = d;
  }
  return trace;
}

SDATrace sda_minimize(const ProductSpace& space, std::span<const ExtRat> g, Index x0, const SDAOptions& options) {
  if (g.size() != space.size()) throw Error(ErrorCode::kBadInput, "function table size mismatch");
  return sda_minimize(space, [&](Index i) { return g[i]; }, x0, options);
}

IterationBoundReport iteration_bound_report(const SDATrace& trace, const ProductSpace& space, const Evaluator& g) {
  IterationBoundReport r;
  r.iterations = trace.iterations;
  r.well_oriented = space.well_oriented();
  if (trace.certificate) {
    r.d_delta = *trace.certificate;
  } else {
    ExtRat opt = ExtRat::infinity();
    for (Index i = 0; i < space.size(); ++i) opt = std::min(opt, g(i));
    int d = std::numeric_limits<int>::max();
    for (Index i = 0; i < space.size(); ++i)
      if (g(i) == opt) d = std::min(d, space.delta_dist(trace.start, i));
    r.d_delta = d;
  }
  r.bound_ok = r.iterations <= r.d_delta + 2;
  r.exact_case = trace.exact_precondition;
  r.exact_ok = r.iterations == r.d_delta;
  return r;
}

LiftedSDA sda_minimize_lifted(const ProductSpace& space, std::span<const ExtRat> g, Index x0,
                              const SDAOptions& options) {
  StarSpace star = subdivide(space);
  FnTable g_star = lift_star(space, star, g);
  SDATrace trace = sda_minimize(star.space, std::span<const ExtRat>(g_star), star.embed(x0, space), options);
  auto [lo, hi] = star.endpoints(trace.terminal, space);
  if (trace.certificate) ensure(g[lo] == g[hi], "endpoints of a minimizing interval differ in value");
  return LiftedSDA{std::move(star), std::move(g_star), std::move(trace), lo, hi};
}

// ---------------------------------------------------------------------------
// Relaxations

bool is_l_convex_relaxation(const ProductSpace& base, const StarSpace& star, std::span<const ExtRat> h,
                            std::span<const ExtRat> g, bool verify_l_convex) {
  if (h.size() != base.size() || g.size() != star.space.size())
    throw Error(ErrorCode::kBadInput, "function table size mismatch");
  for (Index x = 0; x < base.size(); ++x)
    if (g[star.embed(x, base)] != h[x]) return false;
  return !verify_l_convex || is_l_convex(star.space, g).l_convex;
}

bool relaxation_exact(std::span<const ExtRat> h, std::span<const ExtRat> g) {
  if (h.empty() || g.empty()) throw Error(ErrorCode::kBadInput, "empty function table");
  return *std::min_element(h.begin(), h.end()) == *std::min_element(g.begin(), g.end());
}

Index persistency_round(const ProductSpace& base, const StarSpace& star, const Evaluator& h, Index x_star,
                        std::size_t budget) {
  auto lists = star.members(x_star);
  std::size_t total = 1;
  for (const auto& l : lists) {
    if (total > budget / std::max<std::size_t>(l.size(), 1))
      throw Error(ErrorCode::kLocalBudgetExceeded, "persistency filter too large");
    total *= l.size();
  }
  std::vector<Vertex> c(lists.size());
  ExtRat best = ExtRat::infinity();
  Index best_id = 0;
  // Odometer over the coordinate lists; ids increase lexicographically.
  std::vector<std::size_t> pos(lists.size(), 0);
  for (std::size_t step = 0; step < total; ++step) {
    for (std::size_t i = 0; i < lists.size(); ++i) c[i] = lists[i][pos[i]];
    Index id = base.index(c);
    ExtRat v = h(id);
    if (v < best) {
      best = v;
      best_id = id;
    }
    for (std::size_t i = lists.size(); i-- > 0;) {
      if (++pos[i] < lists[i].size()) break;
      pos[i] = 0;
    }
  }
  if (best.is_inf()) throw Error(ErrorCode::kEmptyFilter, "no finite value in the filter of " + star.space.name(x_star));
  return best_id;
}

Index argmin(std::span<const ExtRat> f) {
  if (f.empty()) throw Error(ErrorCode::kBadInput, "empty function table");
  return static_cast<Index>(std::min_element(f.begin(), f.end()) - f.begin());
}

FnTable random_l_convex(const ProductSpace& space, std::mt19937_64& rng, bool with_indicator) {
  const std::size_t n = space.dimension();
  FnTable f(space.size(), ExtRat(0));
  std::uniform_int_distribution<int> coef(0, 3);
  std::uniform_int_distribution<Index> any(0, space.size() - 1);
  const int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    const int c = coef(rng);
    const Index v = any(rng);
    for (Index x = 0; x < space.size(); ++x) f[x] += Rational(c * space.dist(x, v));
  }
  bool same = true;
  for (std::size_t i = 1; i < n; ++i)
    same = same && space.factor(i).names() == space.factor(0).names() &&
           space.factor(i).arcs() == space.factor(0).arcs();
  if (n >= 2 && same && rng() % 2) {
    const std::size_t i = rng() % n;
    std::size_t j = rng() % (n - 1);
    if (j >= i) ++j;
    const int c = 1 + coef(rng);
    for (Index x = 0; x < space.size(); ++x)
      f[x] += Rational(c * space.factor(0).dist(space.coord(x, i), space.coord(x, j)));
  }
  if (with_indicator && rng() % 2) {
    std::vector<VertexSet> hulls;
    for (std::size_t i = 0; i < n; ++i) {
      const Graph& g = space.factor(i);
      std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(g.size()) - 1);
      VertexSet seed(g.size());
      seed.set(pick(rng));
      seed.set(pick(rng));
      hulls.push_back(gated_hull(g, seed));
    }
    for (Index x = 0; x < space.size(); ++x) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!hulls[i][space.coord(x, i)]) {
          f[x] = ExtRat::infinity();
          break;
        }
      }
    }
  }
  return f;
}

}  // namespace dca
