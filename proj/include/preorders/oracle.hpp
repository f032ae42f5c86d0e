#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monotones.hpp"
#include "preorder.hpp"
#include "separating.hpp"
#include "structure.hpp"

namespace preorders {

// Multi-utility kinds and realizer kinds coincide: a size-k multi-utility of
// a kind exists iff k weak orders of that kind (total preorders containing
// the relation; strict additionally preserves x < y strictly; injective means
// linear extensions of the quotient) intersect to the relation. Members
// induce weak orders through "v(x) <= v(y)", rank valuations invert.
using RealizerKind = MuKind;

struct WeakOrder {
  std::vector<int> level;  // per quotient class; a <=_W b iff level[a] <= level[b]
};

struct Realizer {
  std::vector<WeakOrder> members;
  MuKind kind = MuKind::plain;
};

struct SearchBudget {
  int max_k = 6;                          // largest family/realizer size tried
  int max_classes = 14;                   // largest quotient searched exactly
  std::uint64_t max_nodes = 50'000'000;   // cover-search node cap
  std::size_t max_pool = 2'000'000;       // weak-order enumeration cap
};

namespace detail {

struct RealizerPool {
  std::vector<std::pair<int, int>> requirements;  // class pairs (a,b) with not(a <= b)
  std::vector<Bits> coverage;                     // per member: requirements it breaks
  std::vector<std::vector<int>> levels;           // per member: level per class
  bool exceeded = false;
  std::size_t generated = 0;
};

// Depth-first enumeration of weak-order extensions of the quotient, built
// bottom level first. A level block must be, within the remaining classes: a
// non-empty down-set (plain), a non-empty set of minimal classes (strict), or
// a single minimal class (injective). Blocks are tried in ascending mask
// order, so the enumeration order is canonical; duplicates by broken-
// requirement mask keep their first (least) representative.
inline RealizerPool build_realizer_pool(const QuotientPoset& q, MuKind kind,
                                        const SearchBudget& budget) {
  RealizerPool pool;
  const int c = q.size();
  if (c > 31) {
    pool.exceeded = true;
    return pool;
  }
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b)
      if (a != b && !q.leq[a][b]) pool.requirements.emplace_back(a, b);
  const int m = static_cast<int>(pool.requirements.size());

  std::vector<std::uint32_t> strict_down(c, 0);
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b)
      if (q.less(b, a)) strict_down[a] |= std::uint32_t{1} << b;

  std::unordered_map<std::string, int> seen;
  std::vector<int> level(c, -1);

  auto emit = [&] {
    if (++pool.generated > budget.max_pool) {
      pool.exceeded = true;
      return;
    }
    Bits cover(m);
    for (int j = 0; j < m; ++j) {
      auto [a, b] = pool.requirements[j];
      if (level[b] < level[a]) cover.set(j);
    }
    std::string key;
    boost::to_string(cover, key);
    if (seen.emplace(std::move(key), static_cast<int>(pool.coverage.size())).second) {
      pool.coverage.push_back(std::move(cover));
      pool.levels.push_back(level);
    }
  };

  // A member whose broken-requirement set is strictly contained in another's
  // can always be swapped out of a cover, so only coverage-maximal members
  // matter. The quadratic sweep is skipped for very large pools.
  auto drop_dominated = [&] {
    const std::size_t total = pool.coverage.size();
    if (total == 0 || total > 16384) return;
    std::vector<char> keep(total, 1);
    for (std::size_t i = 0; i < total; ++i)
      for (std::size_t j = 0; j < total; ++j)
        if (j != i && pool.coverage[i].is_subset_of(pool.coverage[j])) {
          keep[i] = 0;  // masks are distinct, so subset means dominated
          break;
        }
    std::size_t next = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (!keep[i]) continue;
      if (next != i) {
        pool.coverage[next] = std::move(pool.coverage[i]);
        pool.levels[next] = std::move(pool.levels[i]);
      }
      ++next;
    }
    pool.coverage.resize(next);
    pool.levels.resize(next);
  };

  auto walk = [&](auto&& self, std::uint32_t rem, int depth) -> void {
    if (pool.exceeded) return;
    if (rem == 0) {
      emit();
      return;
    }
    std::uint32_t minimal = 0;
    for (int a = 0; a < c; ++a)
      if ((rem >> a & 1) && (strict_down[a] & rem) == 0) minimal |= std::uint32_t{1} << a;

    auto descend = [&](std::uint32_t block) {
      for (int a = 0; a < c; ++a)
        if (block >> a & 1) level[a] = depth;
      self(self, rem & ~block, depth + 1);
      for (int a = 0; a < c; ++a)
        if (block >> a & 1) level[a] = -1;
    };

    switch (kind) {
      case MuKind::injective:
        for (int a = 0; a < c; ++a)
          if (minimal >> a & 1) descend(std::uint32_t{1} << a);
        break;
      case MuKind::strict:
        // submasks of `minimal` in ascending numeric order
        for (std::uint32_t s = (0 - minimal) & minimal; s != 0; s = (s - minimal) & minimal)
          descend(s);
        break;
      case MuKind::plain:
        for (std::uint32_t s = (0 - rem) & rem; s != 0; s = (s - rem) & rem) {
          bool down_closed = true;
          for (int a = 0; a < c && down_closed; ++a)
            if ((s >> a & 1) && (strict_down[a] & rem & ~s) != 0) down_closed = false;
          if (down_closed) descend(s);
        }
        break;
    }
  };
  walk(walk, c == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << c) - 1, 0);
  if (!pool.exceeded) drop_dominated();
  return pool;
}

struct CoverSearch {
  const RealizerPool& pool;
  std::vector<std::vector<int>> candidates;  // per requirement: covering members
  std::vector<int> order;                    // requirements, fewest candidates first
  std::size_t max_cover = 0;
  std::uint64_t nodes = 0;
  std::uint64_t max_nodes = 0;
  bool exceeded = false;
  std::vector<int> chosen;

  explicit CoverSearch(const RealizerPool& p, std::uint64_t node_cap)
      : pool(p), candidates(p.requirements.size()), max_nodes(node_cap) {
    for (std::size_t i = 0; i < pool.coverage.size(); ++i) {
      max_cover = std::max(max_cover, pool.coverage[i].count());
      for (std::size_t j = 0; j < candidates.size(); ++j)
        if (pool.coverage[i][j]) candidates[j].push_back(static_cast<int>(i));
    }
    order.resize(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return candidates[a].size() < candidates[b].size();
    });
  }

  // Branches on the tightest unbroken requirement; every cover must contain
  // one of its candidates, so the enumeration is exhaustive.
  bool run(const Bits& uncovered, int slots) {
    if (exceeded || ++nodes > max_nodes) {
      exceeded = true;
      return false;
    }
    if (uncovered.none()) return true;
    if (slots == 0) return false;
    if (static_cast<std::size_t>(slots) * max_cover < uncovered.count()) return false;
    int j = -1;
    for (int req : order)
      if (uncovered[req]) {
        j = req;
        break;
      }
    for (int i : candidates[j]) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      chosen.push_back(i);
      if (run(uncovered - pool.coverage[i], slots - 1)) return true;
      chosen.pop_back();
      if (exceeded) return false;
    }
    return false;
  }
};

inline Realizer chosen_to_realizer(const RealizerPool& pool, const std::vector<int>& chosen,
                                   MuKind kind, int k) {
  Realizer r;
  r.kind = kind;
  for (int i : chosen) r.members.push_back(WeakOrder{pool.levels[i]});
  while (static_cast<int>(r.members.size()) < k)  // pad to the requested size
    r.members.push_back(WeakOrder{pool.levels[0]});
  return r;
}

}  // namespace detail

struct RealizerSearch {
  std::optional<Realizer> found;
  bool exceeded = false;  // node/pool budget hit: inconclusive
  std::uint64_t nodes = 0;
  std::size_t pool_size = 0;
};

inline RealizerSearch find_realizer(const Preorder& p, MuKind kind, int k,
                                    const SearchBudget& budget = {}) {
  if (k < 1) fail(errc::bad_argument, "realizer size must be >= 1");
  RealizerSearch out;
  QuotientPoset q = quotient(p);
  if (q.size() > budget.max_classes) {
    out.exceeded = true;
    return out;
  }
  detail::RealizerPool pool = detail::build_realizer_pool(q, kind, budget);
  out.pool_size = pool.coverage.size();
  if (pool.exceeded) {
    out.exceeded = true;
    return out;
  }
  detail::CoverSearch search(pool, budget.max_nodes);
  Bits all(pool.requirements.size());
  all.set();
  bool hit = search.run(all, k);
  out.nodes = search.nodes;
  out.exceeded = search.exceeded;
  if (hit) out.found = detail::chosen_to_realizer(pool, search.chosen, kind, k);
  return out;
}

struct MinSizeResult {
  std::optional<int> size;          // smallest realizer size, when within budget
  std::optional<Realizer> witness;  // realizer of that size
  bool exceeded = false;            // true: search inconclusive (caps hit)
  int refuted_below = 0;            // sizes < refuted_below exhaustively ruled out
  std::uint64_t nodes = 0;
  std::size_t pool_size = 0;
};

// Exact minimum multi-utility size of the kind, by iterative deepening over
// the realizer size. size empty + exceeded false means the minimum is
// certified to exceed max_k.
inline MinSizeResult min_multi_utility_size(const Preorder& p, MuKind kind,
                                            const SearchBudget& budget = {}) {
  if (budget.max_k < 1) fail(errc::bad_argument, "budget must be >= 1");
  MinSizeResult out;
  QuotientPoset q = quotient(p);
  if (q.size() > budget.max_classes) {
    out.exceeded = true;
    return out;
  }
  detail::RealizerPool pool = detail::build_realizer_pool(q, kind, budget);
  out.pool_size = pool.coverage.size();
  if (pool.exceeded) {
    out.exceeded = true;
    return out;
  }
  detail::CoverSearch search(pool, budget.max_nodes);
  Bits all(pool.requirements.size());
  all.set();
  for (int k = 1; k <= budget.max_k; ++k) {
    search.chosen.clear();
    bool hit = search.run(all, k);
    out.nodes = search.nodes;
    if (search.exceeded) {
      out.exceeded = true;
      return out;
    }
    if (hit) {
      out.size = k;
      out.refuted_below = k;
      out.witness = detail::chosen_to_realizer(pool, search.chosen, kind, k);
      return out;
    }
    out.refuted_below = k + 1;
  }
  return out;  // certified: minimum exceeds max_k
}

struct UtilityCheck {
  bool exists = false;
  std::optional<std::pair<int, int>> witness;  // incomparable pair when false
};

// Finite preorders admit a utility exactly when the quotient is total.
inline UtilityCheck exists_utility(const Preorder& p) {
  QuotientPoset q = quotient(p);
  for (int a = 0; a < q.size(); ++a)
    for (int b = a + 1; b < q.size(); ++b)
      if (!q.leq[a][b] && !q.leq[b][a])
        return {false, std::make_pair(q.representative(a), q.representative(b))};
  return {true, std::nullopt};
}

inline MultiUtility realizer_to_multi_utility(const Preorder& p, const Realizer& r) {
  QuotientPoset q = quotient(p);
  MultiUtility v;
  v.kind = r.kind;
  for (const WeakOrder& w : r.members) {
    if (w.level.size() != static_cast<std::size_t>(q.size()))
      fail(errc::size_mismatch, "weak order has wrong class count");
    MonotoneFn f;
    f.values.reserve(p.size());
    for (int x = 0; x < p.size(); ++x) f.values.push_back(Rat(w.level[q.class_of[x]]));
    v.members.push_back(std::move(f));
  }
  return v;
}

// Value orderings of the members; inverse of realizer_to_multi_utility up to
// level renumbering.
inline Realizer multi_utility_to_realizer(const Preorder& p, const MultiUtility& v) {
  QuotientPoset q = quotient(p);
  Realizer r;
  r.kind = v.kind;
  for (const MonotoneFn& f : v.members) {
    detail::require_sized(p, f);
    std::vector<Rat> values;
    values.reserve(q.size());
    for (int a = 0; a < q.size(); ++a) values.push_back(f(q.representative(a)));
    std::vector<Rat> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    WeakOrder w;
    w.level.reserve(q.size());
    for (const Rat& val : values)
      w.level.push_back(static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), val) - sorted.begin()));
    r.members.push_back(std::move(w));
  }
  return r;
}

struct ClassificationReport {
  int quotient_size = 0;
  int width = 0;
  bool has_utility = false;
  std::optional<int> min_mu_plain, min_mu_strict, min_mu_injective;
  std::optional<int> min_sep_i, min_sep_ii, min_sep_iii;
  std::optional<int> debreu_dense_min, debreu_upper_min;

  std::optional<int>& min_mu(MuKind k) {
    return k == MuKind::plain ? min_mu_plain
                              : (k == MuKind::strict ? min_mu_strict : min_mu_injective);
  }
  std::optional<int>& min_sep(SepKind k) {
    return k == SepKind::I ? min_sep_i : (k == SepKind::II ? min_sep_ii : min_sep_iii);
  }
};

// Field selection for cross_check; everything on by default. Deselected
// fields stay unset in the report and are listed as skipped.
struct CrossCheckOptions {
  bool mu_kind[3] = {true, true, true};    // by MuKind
  bool sep_kind[3] = {true, true, true};   // by SepKind
  bool debreu_dense = true;
  bool debreu_upper = true;
};

struct CrossCheckResult {
  ClassificationReport report;
  std::vector<std::string> discrepancies;  // MUST stay empty
  std::vector<std::string> exceeded;       // report fields beyond budget
  std::vector<std::string> skipped;        // report fields deselected by options

  std::vector<int> width_antichain;  // ground representatives
  std::optional<std::pair<int, int>> no_utility_witness;
  std::optional<SeparatingFamily> sep_family[3];     // by SepKind
  std::optional<Realizer> mu_realizer[3];            // by MuKind
  std::optional<std::vector<int>> debreu_dense_subset, debreu_upper_subset;
};

// Runs every classifier, then validates the constructions against each other.
// Any discrepancy is a bug somewhere; the list is meant to be empty.
inline CrossCheckResult cross_check(const Preorder& p, const SearchBudget& budget = {},
                                    const CrossCheckOptions& options = {}) {
  CrossCheckResult r;
  QuotientPoset q = quotient(p);
  r.report.quotient_size = q.size();

  WidthResult by_cover = width_chain_cover(p);
  r.report.width = by_cover.width;
  r.width_antichain = by_cover.antichain;
  if (q.size() <= 20) {
    WidthResult by_antichain = width_independent_set(p);
    if (by_antichain.width != by_cover.width)
      r.discrepancies.push_back("width disagreement: independent-set " +
                                std::to_string(by_antichain.width) + " vs chain-cover " +
                                std::to_string(by_cover.width));
    r.width_antichain = by_antichain.antichain;  // lexicographically least witness
  }
  for (int x : r.width_antichain)
    for (int y : r.width_antichain)
      if (x < y && !p.incomparable(x, y))
        r.discrepancies.push_back("width witness not an antichain at " + p.pair_text(x, y));

  UtilityCheck u = exists_utility(p);
  r.report.has_utility = u.exists;
  r.no_utility_witness = u.witness;

  for (MuKind kind : {MuKind::plain, MuKind::strict, MuKind::injective}) {
    std::string field = std::string("min_mu_") + mu_kind_name(kind);
    if (!options.mu_kind[static_cast<int>(kind)]) {
      r.skipped.push_back(field);
      continue;
    }
    MinSizeResult m = min_multi_utility_size(p, kind, budget);
    if (m.size) {
      r.report.min_mu(kind) = m.size;
      r.mu_realizer[static_cast<int>(kind)] = m.witness;
    } else {
      r.exceeded.push_back(field);
    }
  }
  for (SepKind kind : {SepKind::I, SepKind::II, SepKind::III}) {
    std::string name = sep_kind_name(kind);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    std::string field = "min_sep_" + name;
    if (!options.sep_kind[static_cast<int>(kind)]) {
      r.skipped.push_back(field);
      continue;
    }
    MinFamilyResult m = min_separating_family(p, kind, budget.max_k);
    if (m.family) {
      r.report.min_sep(kind) = static_cast<int>(m.family->sets.size());
      r.sep_family[static_cast<int>(kind)] = std::move(m.family);
    } else {
      r.exceeded.push_back(field);
    }
  }
  for (DebreuMode mode : {DebreuMode::dense, DebreuMode::upper}) {
    bool wanted = mode == DebreuMode::dense ? options.debreu_dense : options.debreu_upper;
    std::string field = std::string("debreu_") + debreu_mode_name(mode) + "_min";
    if (!wanted) {
      r.skipped.push_back(field);
      continue;
    }
    if (q.size() > budget.max_classes) {
      r.exceeded.push_back(field);
      continue;
    }
    MinDebreuResult m = min_debreu_subset(p, mode);
    if (mode == DebreuMode::dense) {
      r.report.debreu_dense_min = static_cast<int>(m.subset.size());
      r.debreu_dense_subset = m.subset;
    } else {
      r.report.debreu_upper_min = static_cast<int>(m.subset.size());
      r.debreu_upper_subset = m.subset;
    }
  }

  auto& rep = r.report;

  // (a) indicators of the minimum kind-I family form a plain multi-utility
  if (const auto& fam = r.sep_family[static_cast<int>(SepKind::I)]) {
    MultiUtility ind;
    ind.kind = MuKind::plain;
    for (const UpSet& s : fam->sets) {
      MonotoneFn f;
      f.values.reserve(p.size());
      for (int x = 0; x < p.size(); ++x) f.values.push_back(s.members[x] ? Rat(1) : Rat(0));
      ind.members.push_back(std::move(f));
    }
    if (!ind.members.empty() && !verify_multi_utility(p, ind).ok)
      r.discrepancies.push_back("indicators of min kind-I family fail multi-utility verify");
    PowersetBoundReport bound = powerset_bound_check(p, fam->sets);
    if (!bound.ok)
      r.discrepancies.push_back("kind-I family violates the power-set cardinality bound");
  }

  // (b) monotones built from the minimum kind-II / kind-III families
  if (const auto& fam = r.sep_family[static_cast<int>(SepKind::II)]) {
    MonotoneFn f = monotone_from_family(p, fam->sets, FamilyMode::strict);
    if (!classify_function(p, f).strict)
      r.discrepancies.push_back("monotone from min kind-II family is not strict");
  }
  if (const auto& fam = r.sep_family[static_cast<int>(SepKind::III)]) {
    MonotoneFn f = monotone_from_family(p, fam->sets, FamilyMode::injective);
    if (!classify_function(p, f).injective)
      r.discrepancies.push_back("monotone from min kind-III family is not injective");
  }

  // (c) collision splitting keeps size and reaches injective
  {
    MultiUtility ind = indicator_multi_utility(p);
    MultiUtility inj = injectivize(p, ind);
    if (inj.members.size() != ind.members.size())
      r.discrepancies.push_back("injectivize changed the member count");
    if (!verify_multi_utility(p, inj).ok)
      r.discrepancies.push_back("injectivize output fails injective verify");
  }

  // (d) minimum multi-utility never beats the kind-I family bound.
  // The kind-I minimum can be 0 (single quotient class, nothing to separate)
  // while a multi-utility needs at least one member, hence the floor of 1.
  if (rep.min_mu_plain && rep.min_sep_i &&
      *rep.min_mu_plain > std::max(*rep.min_sep_i, 1))
    r.discrepancies.push_back("min_mu(plain) exceeds min_sep(I)");

  // (e) invariant chains of the report
  if (rep.min_mu_plain && rep.min_mu_strict && *rep.min_mu_plain > *rep.min_mu_strict)
    r.discrepancies.push_back("min_mu(plain) > min_mu(strict)");
  if (rep.min_mu_strict && rep.min_mu_injective && *rep.min_mu_strict > *rep.min_mu_injective)
    r.discrepancies.push_back("min_mu(strict) > min_mu(injective)");
  if (rep.min_sep_ii && rep.min_sep_iii && *rep.min_sep_ii > *rep.min_sep_iii)
    r.discrepancies.push_back("min_sep(II) > min_sep(III)");
  if (rep.min_sep_iii && rep.min_sep_i && *rep.min_sep_iii > *rep.min_sep_i)
    r.discrepancies.push_back("min_sep(III) > min_sep(I)");
  if (rep.min_mu_plain && (rep.has_utility != (*rep.min_mu_plain == 1)))
    r.discrepancies.push_back("has_utility does not match min_mu(plain) == 1");

  // realizer round trips: rank valuations must verify at the realizer's kind
  for (MuKind kind : {MuKind::plain, MuKind::strict, MuKind::injective})
    if (const auto& real = r.mu_realizer[static_cast<int>(kind)]) {
      MultiUtility v = realizer_to_multi_utility(p, *real);
      if (!verify_multi_utility(p, v).ok)
        r.discrepancies.push_back(std::string("realizer for kind ") + mu_kind_name(kind) +
                                  " fails verify after rank valuation");
    }

  // Debreu subsets actually qualify, and the upper-dense power-set bound holds
  auto debreu_mask = [&](const std::vector<int>& subset) {
    Bits mask(p.size());
    for (int x : subset) mask.set(x);
    return mask;
  };
  if (r.debreu_dense_subset &&
      debreu_check(p, debreu_mask(*r.debreu_dense_subset), DebreuMode::dense))
    r.discrepancies.push_back("minimum dense subset fails debreu_check");
  if (r.debreu_upper_subset) {
    if (debreu_check(p, debreu_mask(*r.debreu_upper_subset), DebreuMode::upper))
      r.discrepancies.push_back("minimum upper-dense subset fails debreu_check");
    int z = static_cast<int>(r.debreu_upper_subset->size());
    bool bound = z >= 31 || (1u << z) >= static_cast<unsigned>(rep.width);
    if (!bound)
      r.discrepancies.push_back("upper-dense subset violates the width power-set bound");
  }
  if (rep.min_sep_i) {
    int k = *rep.min_sep_i;
    bool bound = k >= 31 || (1u << k) >= static_cast<unsigned>(rep.quotient_size);
    if (!bound)
      r.discrepancies.push_back("2^min_sep(I) < quotient size");
  }

  return r;
}

}  // namespace preorders
