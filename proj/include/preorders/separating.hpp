#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "preorder.hpp"

namespace preorders {

// Increasing subset of the ground set, stored as a membership mask.
struct UpSet {
  Bits members;
};

inline bool is_increasing(const Preorder& p, const Bits& set,
                          std::pair<int, int>* witness = nullptr) {
  for (int x = static_cast<int>(set.find_first()); x != -1;
       x = static_cast<int>(set.find_next(x))) {
    if (p.up_row(x).is_subset_of(set)) continue;
    if (witness) {
      Bits missing = p.up_row(x) - set;
      *witness = {x, static_cast<int>(missing.find_first())};
    }
    return false;
  }
  return true;
}

constexpr std::size_t default_upset_cap = std::size_t{1} << 20;

// All increasing subsets, empty set and full ground set included, sorted in
// canonical order (mask read as a binary number, ground index i contributing
// 2^i). Increasing sets are unions of equivalence classes, so the walk runs
// over quotient classes from maximal to minimal: a class may join only when
// everything strictly above it is already in.
inline std::vector<UpSet> enumerate_upsets(const Preorder& p,
                                           std::size_t cap = default_upset_cap) {
  QuotientPoset q = quotient(p);
  const int c = q.size();
  std::vector<int> topo = quotient_topological_order(q);
  std::vector<Bits> class_mask(c, Bits(p.size()));
  for (int a = 0; a < c; ++a)
    for (int x : q.classes[a]) class_mask[a].set(x);

  std::vector<UpSet> out;
  std::vector<bool> in(c, false);
  auto walk = [&](auto&& self, int step, const Bits& mask) -> void {
    if (step < 0) {
      if (out.size() >= cap)
        fail(errc::size_overflow, "more than " + std::to_string(out.size()) +
                                      " up-sets (cap " + std::to_string(cap) + ")");
      out.push_back(UpSet{mask});
      return;
    }
    int a = topo[step];
    in[a] = false;
    self(self, step - 1, mask);
    bool closed = true;
    for (int b = 0; b < c && closed; ++b)
      if (q.less(a, b) && !in[b]) closed = false;
    if (closed) {
      in[a] = true;
      self(self, step - 1, mask | class_mask[a]);
      in[a] = false;
    }
  };
  walk(walk, c - 1, Bits(p.size()));
  std::sort(out.begin(), out.end(),
            [](const UpSet& l, const UpSet& r) { return l.members < r.members; });
  return out;
}

enum class SepKind { I, II, III };

inline const char* sep_kind_name(SepKind k) {
  switch (k) {
    case SepKind::I: return "I";
    case SepKind::II: return "II";
    case SepKind::III: return "III";
  }
  return "?";
}

struct SeparatingFamily {
  std::vector<UpSet> sets;
  SepKind kind = SepKind::I;
};

// "Separating x from y" means some member contains y but not x. A demand
// records one required separation; `either` marks the relaxed form where the
// swapped direction is also acceptable (incomparable pairs under kind III).
// from/to are ground indices of class representatives.
struct SeparationDemand {
  int from = -1;
  int to = -1;
  bool either = false;
};

namespace detail {

inline std::vector<SeparationDemand> separation_demands(const QuotientPoset& q, SepKind kind) {
  std::vector<SeparationDemand> demands;
  const int c = q.size();
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b) {
      if (a == b) continue;
      int x = q.representative(a), y = q.representative(b);
      if (q.less(a, b)) {
        demands.push_back({x, y, false});
      } else if (!q.less(b, a)) {  // incomparable classes
        switch (kind) {
          case SepKind::I:
            demands.push_back({x, y, false});
            break;
          case SepKind::II:
            break;
          case SepKind::III:
            if (a < b) demands.push_back({x, y, true});
            break;
        }
      }
    }
  return demands;
}

inline bool demand_met(const SeparationDemand& d, const Bits& set) {
  if (set[d.to] && !set[d.from]) return true;
  return d.either && set[d.from] && !set[d.to];
}

inline void require_increasing(const Preorder& p, const std::vector<UpSet>& sets) {
  std::pair<int, int> w;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (static_cast<int>(sets[i].members.size()) != p.size())
      fail(errc::size_mismatch, "up-set mask size does not match ground set");
    if (!is_increasing(p, sets[i].members, &w))
      fail(errc::not_increasing, "set #" + std::to_string(i) + " contains " + p.label(w.first) +
                                     " but not " + p.label(w.second) + " above it");
  }
}

}  // namespace detail

// Unmet demands of the given kind, in canonical pair order. Empty result
// means the family satisfies the separation condition.
inline std::vector<SeparationDemand> separation_deficit(const Preorder& p,
                                                        const std::vector<UpSet>& sets,
                                                        SepKind kind) {
  detail::require_increasing(p, sets);
  QuotientPoset q = quotient(p);
  std::vector<SeparationDemand> unmet;
  for (const SeparationDemand& d : detail::separation_demands(q, kind)) {
    bool met = false;
    for (const UpSet& s : sets)
      if (detail::demand_met(d, s.members)) {
        met = true;
        break;
      }
    if (!met) unmet.push_back(d);
  }
  return unmet;
}

struct MinFamilyResult {
  std::optional<SeparatingFamily> family;  // empty when the budget was exhausted
  int budget = 0;
  int refuted_below = 0;      // every size < refuted_below was exhaustively ruled out
  std::uint64_t nodes = 0;    // search tree size, the certificate of exhaustiveness
};

// Exact minimum separating family of the given kind. Searches sizes
// 0..budget; within a size, combinations of candidate up-sets are explored in
// ascending canonical order, so the first hit is the lexicographically least
// optimal family. The trivial sets (empty, full) can never separate and are
// dropped from the candidate pool.
inline MinFamilyResult min_separating_family(const Preorder& p, SepKind kind, int budget = 6,
                                             std::size_t upset_cap = default_upset_cap) {
  if (budget < 0) fail(errc::bad_argument, "budget must be >= 0");
  MinFamilyResult result;
  result.budget = budget;

  QuotientPoset q = quotient(p);
  std::vector<SeparationDemand> atoms = detail::separation_demands(q, kind);
  std::vector<UpSet> pool;
  for (UpSet& s : enumerate_upsets(p, upset_cap))
    if (s.members.any() && !s.members.all()) pool.push_back(std::move(s));

  const int m = static_cast<int>(atoms.size());
  const int psize = static_cast<int>(pool.size());
  std::vector<Bits> covers(psize, Bits(m));  // covers[i][j]: pool[i] meets atoms[j]
  std::vector<int> last_candidate(m, -1);
  for (int i = 0; i < psize; ++i)
    for (int j = 0; j < m; ++j)
      if (detail::demand_met(atoms[j], pool[i].members)) {
        covers[i].set(j);
        last_candidate[j] = i;
      }
  std::vector<std::size_t> suffix_max_cover(psize + 1, 0);
  for (int i = psize - 1; i >= 0; --i)
    suffix_max_cover[i] = std::max(suffix_max_cover[i + 1], covers[i].count());

  std::vector<int> chosen;
  Bits all_atoms(m);
  all_atoms.set();

  auto dfs = [&](auto&& self, int start, int slots, const Bits& covered) -> bool {
    ++result.nodes;
    if (covered.all() || m == 0) return true;
    if (slots == 0) return false;
    std::size_t uncovered = m - covered.count();
    if (static_cast<std::size_t>(slots) * suffix_max_cover[start] < uncovered) return false;
    for (int j = 0; j < m; ++j)
      if (!covered[j] && last_candidate[j] < start) return false;
    for (int i = start; i < psize; ++i) {
      if (covers[i].is_subset_of(covered)) continue;  // nothing new
      chosen.push_back(i);
      if (self(self, i + 1, slots - 1, covered | covers[i])) return true;
      chosen.pop_back();
    }
    return false;
  };

  for (int size = 0; size <= budget; ++size) {
    chosen.clear();
    if (dfs(dfs, 0, size, Bits(m))) {
      SeparatingFamily family;
      family.kind = kind;
      for (int i : chosen) family.sets.push_back(pool[i]);
      result.family = std::move(family);
      result.refuted_below = size;
      return result;
    }
    result.refuted_below = size + 1;
  }
  return result;  // family empty: every size <= budget refuted
}

}  // namespace preorders
