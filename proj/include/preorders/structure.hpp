#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "preorder.hpp"
#include "separating.hpp"

namespace preorders {

struct WidthResult {
  int width = 0;
  std::vector<int> antichain;  // ground representatives, ascending
};

namespace detail {

inline std::vector<Bits> comparability(const QuotientPoset& q) {
  const int c = q.size();
  std::vector<Bits> adj(c, Bits(c));
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b)
      if (a != b && (q.leq[a][b] || q.leq[b][a])) adj[a].set(b);
  return adj;
}

inline std::vector<int> reps_of(const QuotientPoset& q, const std::vector<int>& classes) {
  std::vector<int> reps;
  reps.reserve(classes.size());
  for (int a : classes) reps.push_back(q.representative(a));
  return reps;
}

}  // namespace detail

// Exact maximum antichain by branch-and-bound over the comparability graph,
// then a second pass that extracts the lexicographically least antichain of
// that size. Exponential in the number of classes; meant for small quotients.
inline WidthResult width_independent_set(const Preorder& p) {
  QuotientPoset q = quotient(p);
  const int c = q.size();
  std::vector<Bits> adj = detail::comparability(q);

  int best = 0;
  auto grow = [&](auto&& self, int next, int count, const Bits& blocked) -> void {
    best = std::max(best, count);
    if (count + (c - next) <= best) return;
    for (int a = next; a < c; ++a)
      if (!blocked[a]) self(self, a + 1, count + 1, blocked | adj[a]);
  };
  grow(grow, 0, 0, Bits(c));

  std::vector<int> chosen, witness;
  auto pick = [&](auto&& self, int next, const Bits& blocked) -> bool {
    if (static_cast<int>(chosen.size()) == best) {
      witness = chosen;
      return true;
    }
    int need = best - static_cast<int>(chosen.size());
    for (int a = next; a + need <= c; ++a) {
      if (blocked[a]) continue;
      chosen.push_back(a);
      if (self(self, a + 1, blocked | adj[a])) return true;
      chosen.pop_back();
    }
    return false;
  };
  pick(pick, 0, Bits(c));

  return WidthResult{best, detail::reps_of(q, witness)};
}

// Dilworth route: minimum chain cover of the quotient equals classes minus a
// maximum bipartite matching on the strict relation; the antichain witness
// comes out of the Koenig vertex cover construction.
inline WidthResult width_chain_cover(const Preorder& p) {
  QuotientPoset q = quotient(p);
  const int c = q.size();
  std::vector<int> match_right(c, -1), match_left(c, -1);

  std::vector<char> visited(c);
  auto augment = [&](auto&& self, int a) -> bool {
    for (int b = 0; b < c; ++b) {
      if (!q.less(a, b) || visited[b]) continue;
      visited[b] = 1;
      if (match_right[b] == -1 || self(self, match_right[b])) {
        match_right[b] = a;
        match_left[a] = b;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int a = 0; a < c; ++a) {
    std::fill(visited.begin(), visited.end(), 0);
    if (augment(augment, a)) ++matched;
  }

  // Alternating reachability from unmatched left vertices.
  std::vector<char> left_seen(c, 0), right_seen(c, 0);
  std::vector<int> stack;
  for (int a = 0; a < c; ++a)
    if (match_left[a] == -1) {
      left_seen[a] = 1;
      stack.push_back(a);
    }
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int b = 0; b < c; ++b) {
      if (!q.less(a, b) || right_seen[b] || match_left[a] == b) continue;
      right_seen[b] = 1;
      int back = match_right[b];
      if (back != -1 && !left_seen[back]) {
        left_seen[back] = 1;
        stack.push_back(back);
      }
    }
  }

  // Vertex cover is (left not reached) + (right reached); classes outside it
  // form a maximum antichain.
  std::vector<int> witness;
  for (int a = 0; a < c; ++a)
    if (left_seen[a] && !right_seen[a]) witness.push_back(a);

  return WidthResult{c - matched, detail::reps_of(q, witness)};
}

inline WidthResult width(const Preorder& p) {
  return quotient(p).size() <= 20 ? width_independent_set(p) : width_chain_cover(p);
}

struct LinearExtension {
  std::vector<int> class_order;  // quotient class indices, bottom to top
};

inline LinearExtension linear_extension(const Preorder& p,
                                        const std::vector<int>* seed_ground_order = nullptr) {
  QuotientPoset q = quotient(p);
  return LinearExtension{quotient_topological_order(q, seed_ground_order)};
}

enum class DebreuMode { dense, upper, both };

inline const char* debreu_mode_name(DebreuMode m) {
  switch (m) {
    case DebreuMode::dense: return "dense";
    case DebreuMode::upper: return "upper";
    case DebreuMode::both: return "both";
  }
  return "?";
}

namespace detail {

struct DebreuAtoms {
  // atom i is the pair (from[i], to[i]) of class indices; candidates[i] are
  // the classes whose presence in Z discharges it.
  std::vector<std::pair<int, int>> pairs;
  std::vector<Bits> candidates;
};

inline DebreuAtoms debreu_atoms(const QuotientPoset& q, DebreuMode mode) {
  DebreuAtoms atoms;
  const int c = q.size();
  auto add_dense = [&] {
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b) {
        if (!q.less(a, b)) continue;
        Bits cand(c);
        for (int z = 0; z < c; ++z)
          if (q.leq[a][z] && q.leq[z][b]) cand.set(z);
        atoms.pairs.emplace_back(a, b);
        atoms.candidates.push_back(std::move(cand));
      }
  };
  auto add_upper = [&] {
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b) {
        if (a == b || q.leq[a][b] || q.leq[b][a]) continue;
        Bits cand(c);
        for (int z = 0; z < c; ++z)
          if (!q.leq[a][z] && !q.leq[z][a] && q.leq[z][b]) cand.set(z);
        atoms.pairs.emplace_back(a, b);
        atoms.candidates.push_back(std::move(cand));
      }
  };
  if (mode == DebreuMode::dense || mode == DebreuMode::both) add_dense();
  if (mode == DebreuMode::upper || mode == DebreuMode::both) add_upper();
  return atoms;
}

}  // namespace detail

// Dense: every strict pair x < y admits z in Z with x <= z <= y.
// Upper: every incomparable ordered pair (x, y) admits z in Z incomparable
// with x and below-or-equal y. Returns the first failing pair (ground
// representatives) or nothing when Z qualifies.
inline std::optional<std::pair<int, int>> debreu_check(const Preorder& p, const Bits& z_mask,
                                                       DebreuMode mode) {
  if (static_cast<int>(z_mask.size()) != p.size())
    fail(errc::size_mismatch, "subset mask size does not match ground set");
  QuotientPoset q = quotient(p);
  Bits z_classes(q.size());
  for (int x = static_cast<int>(z_mask.find_first()); x != -1;
       x = static_cast<int>(z_mask.find_next(x)))
    z_classes.set(q.class_of[x]);
  detail::DebreuAtoms atoms = detail::debreu_atoms(q, mode);
  for (std::size_t i = 0; i < atoms.pairs.size(); ++i)
    if (!atoms.candidates[i].intersects(z_classes))
      return std::make_pair(q.representative(atoms.pairs[i].first),
                            q.representative(atoms.pairs[i].second));
  return std::nullopt;
}

struct MinDebreuResult {
  std::vector<int> subset;  // ground representatives, ascending
  std::uint64_t nodes = 0;
};

// Smallest Z satisfying the chosen condition(s); exact hitting-set search by
// increasing cardinality, lexicographically least optimum. Z = X always
// works, so the search terminates.
inline MinDebreuResult min_debreu_subset(const Preorder& p, DebreuMode mode) {
  QuotientPoset q = quotient(p);
  const int c = q.size();
  detail::DebreuAtoms atoms = detail::debreu_atoms(q, mode);
  const int m = static_cast<int>(atoms.pairs.size());

  std::vector<int> last_candidate(m, -1);
  for (int j = 0; j < m; ++j)
    for (int z = 0; z < c; ++z)
      if (atoms.candidates[j][z]) last_candidate[j] = z;

  MinDebreuResult result;
  std::vector<int> chosen;
  auto dfs = [&](auto&& self, int start, int slots, const Bits& hit) -> bool {
    ++result.nodes;
    if (hit.count() == static_cast<std::size_t>(m)) return true;
    if (slots == 0) return false;
    for (int j = 0; j < m; ++j)
      if (!hit[j] && last_candidate[j] < start) return false;
    for (int z = start; z < c; ++z) {
      Bits gained(m);
      for (int j = 0; j < m; ++j)
        if (!hit[j] && atoms.candidates[j][z]) gained.set(j);
      if (m > 0 && gained.none()) continue;
      chosen.push_back(z);
      if (self(self, z + 1, slots - 1, hit | gained)) return true;
      chosen.pop_back();
    }
    return false;
  };

  for (int size = 0; size <= c; ++size) {
    chosen.clear();
    if (dfs(dfs, 0, size, Bits(m))) break;
  }
  result.subset = detail::reps_of(q, chosen);
  return result;
}

struct PowersetBoundReport {
  bool ok = false;
  int quotient_size = 0;
  int family_size = 0;
  std::optional<std::pair<int, int>> collision;  // two classes sharing a signature
};

// A kind-I separating family makes class -> membership signature injective,
// so the quotient cannot outgrow the power set of the family.
inline PowersetBoundReport powerset_bound_check(const Preorder& p,
                                                const std::vector<UpSet>& sets) {
  auto unmet = separation_deficit(p, sets, SepKind::I);
  if (!unmet.empty())
    fail(errc::not_separating_family, "kind I unmet for pair " +
                                          p.pair_text(unmet[0].from, unmet[0].to));
  QuotientPoset q = quotient(p);
  PowersetBoundReport report;
  report.quotient_size = q.size();
  report.family_size = static_cast<int>(sets.size());

  std::map<std::vector<bool>, int> seen;
  for (int a = 0; a < q.size(); ++a) {
    std::vector<bool> sig;
    sig.reserve(sets.size());
    for (const UpSet& s : sets) sig.push_back(s.members[q.representative(a)]);
    auto [it, fresh] = seen.emplace(std::move(sig), a);
    if (!fresh) {
      report.collision = {q.representative(it->second), q.representative(a)};
      break;
    }
  }
  bool bound_holds = report.family_size >= 31 ||
                     (1u << report.family_size) >= static_cast<unsigned>(report.quotient_size);
  report.ok = !report.collision && bound_holds;
  return report;
}

}  // namespace preorders
