#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "preorder.hpp"
#include "rational.hpp"
#include "separating.hpp"

namespace preorders {

// Real-valued function on the ground set, one exact rational per element.
struct MonotoneFn {
  std::vector<Rat> values;

  const Rat& operator()(int x) const { return values[x]; }
};

enum class MuKind { plain, strict, injective };

inline const char* mu_kind_name(MuKind k) {
  switch (k) {
    case MuKind::plain: return "plain";
    case MuKind::strict: return "strict";
    case MuKind::injective: return "injective";
  }
  return "?";
}

struct MultiUtility {
  std::vector<MonotoneFn> members;
  MuKind kind = MuKind::plain;
};

namespace detail {
inline void require_sized(const Preorder& p, const MonotoneFn& f) {
  if (f.values.size() != static_cast<std::size_t>(p.size()))
    fail(errc::size_mismatch, "function has " + std::to_string(f.values.size()) +
                                  " values for " + std::to_string(p.size()) + " elements");
}
}  // namespace detail

// Which of the four character classes f falls into, with a witness pair for
// every "false". strict/injective/utility all presuppose monotonicity.
struct FunctionClassification {
  bool monotone = false;
  bool strict = false;
  bool injective = false;
  bool utility = false;
  std::optional<std::pair<int, int>> monotone_witness;   // x <= y yet f(x) > f(y)
  std::optional<std::pair<int, int>> strict_witness;     // x < y yet f(x) >= f(y)
  std::optional<std::pair<int, int>> injective_witness;  // f(x) = f(y) yet x !~ y
  std::optional<std::pair<int, int>> utility_witness;    // not(x <= y) yet f(x) <= f(y)
};

inline FunctionClassification classify_function(const Preorder& p, const MonotoneFn& f) {
  detail::require_sized(p, f);
  FunctionClassification r;
  const int n = p.size();
  for (int x = 0; x < n && !r.monotone_witness; ++x)
    for (int y = 0; y < n; ++y)
      if (p.leq(x, y) && f(x) > f(y)) {
        r.monotone_witness = {x, y};
        break;
      }
  r.monotone = !r.monotone_witness;

  for (int x = 0; x < n && !r.strict_witness; ++x)
    for (int y = 0; y < n; ++y)
      if (p.strictly_less(x, y) && f(x) >= f(y)) {
        r.strict_witness = {x, y};
        break;
      }
  if (!r.strict_witness && !r.monotone) r.strict_witness = r.monotone_witness;
  r.strict = r.monotone && !r.strict_witness;

  for (int x = 0; x < n && !r.injective_witness; ++x)
    for (int y = x + 1; y < n; ++y)
      if (f(x) == f(y) && !p.equivalent(x, y)) {
        r.injective_witness = {x, y};
        break;
      }
  if (!r.injective_witness && !r.monotone) r.injective_witness = r.monotone_witness;
  r.injective = r.monotone && !r.injective_witness;

  for (int x = 0; x < n && !r.utility_witness; ++x)
    for (int y = 0; y < n; ++y)
      if (!p.leq(x, y) && f(x) <= f(y)) {
        r.utility_witness = {x, y};
        break;
      }
  r.utility = r.monotone && !r.utility_witness;
  return r;
}

// Verification of the multi-utility property (x <= y iff every member agrees)
// plus the per-member requirement of the declared kind.
struct MuVerification {
  enum class Fail { none, empty_family, forward, backward, member_kind };
  bool ok = false;
  Fail fail = Fail::none;
  int member = -1;                    // offending member for forward/member_kind
  std::pair<int, int> pair{-1, -1};   // offending element pair
};

inline MuVerification verify_multi_utility(const Preorder& p, const MultiUtility& v) {
  MuVerification r;
  if (v.members.empty()) {
    r.fail = MuVerification::Fail::empty_family;
    return r;
  }
  for (const MonotoneFn& f : v.members) detail::require_sized(p, f);
  const int n = p.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      if (p.leq(x, y)) {
        for (std::size_t i = 0; i < v.members.size(); ++i)
          if (v.members[i](x) > v.members[i](y)) {
            r.fail = MuVerification::Fail::forward;
            r.member = static_cast<int>(i);
            r.pair = {x, y};
            return r;
          }
      } else {
        bool broken = false;
        for (const MonotoneFn& f : v.members)
          if (f(x) > f(y)) {
            broken = true;
            break;
          }
        if (!broken) {
          r.fail = MuVerification::Fail::backward;
          r.pair = {x, y};
          return r;
        }
      }
    }
  for (std::size_t i = 0; i < v.members.size(); ++i) {
    FunctionClassification c = classify_function(p, v.members[i]);
    if (v.kind == MuKind::strict && !c.strict) {
      r.fail = MuVerification::Fail::member_kind;
      r.member = static_cast<int>(i);
      r.pair = *c.strict_witness;
      return r;
    }
    if (v.kind == MuKind::injective && !c.injective) {
      r.fail = MuVerification::Fail::member_kind;
      r.member = static_cast<int>(i);
      r.pair = *c.injective_witness;
      return r;
    }
  }
  r.ok = true;
  return r;
}

// One indicator per quotient class: member a is the characteristic function
// of the principal up-set of class a. Always a plain multi-utility.
inline MultiUtility indicator_multi_utility(const Preorder& p) {
  QuotientPoset q = quotient(p);
  MultiUtility v;
  v.kind = MuKind::plain;
  const int n = p.size();
  for (int a = 0; a < q.size(); ++a) {
    MonotoneFn f;
    f.values.reserve(n);
    int rep = q.representative(a);
    for (int x = 0; x < n; ++x) f.values.push_back(p.leq(rep, x) ? Rat(1) : Rat(0));
    v.members.push_back(std::move(f));
  }
  return v;
}

enum class FamilyMode { strict, injective };

// f = sum_k 2^-(k+1) * indicator(A_k). The dyadic weights make the value a
// positional code of the membership signature, so distinct signatures give
// distinct values. Requires the family to satisfy the separation condition
// matching the mode (kind II for strict, kind III for injective).
inline MonotoneFn monotone_from_family(const Preorder& p, const std::vector<UpSet>& sets,
                                       FamilyMode mode) {
  SepKind need = mode == FamilyMode::strict ? SepKind::II : SepKind::III;
  auto unmet = separation_deficit(p, sets, need);  // also rejects non-increasing sets
  if (!unmet.empty())
    fail(errc::family_does_not_separate,
         "kind " + std::string(sep_kind_name(need)) + " unmet for pair " +
             p.pair_text(unmet[0].from, unmet[0].to));
  MonotoneFn f;
  f.values.assign(p.size(), Rat(0));
  Rat weight(1, 2);
  for (const UpSet& s : sets) {
    for (int x = static_cast<int>(s.members.find_first()); x != -1;
         x = static_cast<int>(s.members.find_next(x)))
      f.values[x] += weight;
    weight /= 2;
  }
  return f;
}

// Injective strict monotone from a linear extension of the quotient: class at
// position k of the extension gets value scale*(k+1)/(c+1), landing every
// value strictly inside (0, scale).
inline MonotoneFn rank_injective_monotone(const Preorder& p, const Rat& scale = Rat(1)) {
  if (scale <= 0) fail(errc::bad_argument, "scale must be positive");
  QuotientPoset q = quotient(p);
  std::vector<int> topo = quotient_topological_order(q);
  const int c = q.size();
  std::vector<Rat> class_value(c);
  for (int k = 0; k < c; ++k) class_value[topo[k]] = scale * Rat(k + 1, c + 1);
  MonotoneFn f;
  f.values.reserve(p.size());
  for (int x = 0; x < p.size(); ++x) f.values.push_back(class_value[q.class_of[x]]);
  return f;
}

// members u_i + alpha_n * v over the cartesian product of V's members and the
// alphas. Small alphas keep every strict breach of "x <= y" that u_i provides
// while v adds strictness; too coarse a grid loses a breach, reported as
// AlphasInsufficient so the caller can densify.
inline MultiUtility combine_strict_mu(const Preorder& p, const MultiUtility& big,
                                      const MonotoneFn& v, const std::vector<Rat>& alphas) {
  {
    MultiUtility plain_view{big.members, MuKind::plain};
    MuVerification check = verify_multi_utility(p, plain_view);
    if (!check.ok)
      fail(errc::kind_violation, "V does not verify as a plain multi-utility");
  }
  FunctionClassification cv = classify_function(p, v);
  if (!cv.strict) {
    auto w = cv.strict_witness ? *cv.strict_witness : std::pair<int, int>{-1, -1};
    fail(errc::kind_violation,
         "v is not a strict monotone (witness " + p.pair_text(w.first, w.second) + ")");
  }
  if (alphas.empty()) fail(errc::bad_argument, "alphas must be non-empty");
  for (const Rat& a : alphas)
    if (a <= 0) fail(errc::bad_argument, "alphas must be positive");

  MultiUtility out;
  out.kind = MuKind::strict;
  for (const MonotoneFn& u : big.members)
    for (const Rat& a : alphas) {
      MonotoneFn m;
      m.values.reserve(p.size());
      for (int x = 0; x < p.size(); ++x) m.values.push_back(u(x) + a * v(x));
      out.members.push_back(std::move(m));
    }
  MuVerification check = verify_multi_utility(p, out);
  if (!check.ok)
    fail(errc::alphas_insufficient, "no member breaks " +
                                        p.pair_text(check.pair.first, check.pair.second) +
                                        "; densify alphas");
  return out;
}

namespace detail {

// Values taken by at least two non-equivalent elements, ascending.
inline std::vector<Rat> collision_values(const Preorder& p, const MonotoneFn& f) {
  std::map<Rat, std::vector<int>> fibers;
  for (int x = 0; x < p.size(); ++x) fibers[f(x)].push_back(x);
  std::vector<Rat> out;
  for (const auto& [value, fiber] : fibers)
    for (std::size_t i = 1; i < fiber.size(); ++i)
      if (!p.equivalent(fiber[0], fiber[i])) {
        out.push_back(value);
        break;
      }
  return out;
}

}  // namespace detail

// Collision-splitting iteration. Step n (0-based) picks the smallest value r
// still shared by non-equivalent elements, spreads its fiber by an injective
// monotone with values in (0, 2^-n) and shifts everything above r up by
// 2^-n. Each step removes exactly one collision value, keeps monotonicity and
// preserves strict value order. Returns the whole chain starting with the
// input; back() is the injective result.
inline std::vector<MonotoneFn> injectivize_trace(const Preorder& p, const MonotoneFn& start) {
  detail::require_sized(p, start);
  std::vector<MonotoneFn> chain{start};
  for (int n = 0;; ++n) {
    const MonotoneFn& w = chain.back();
    std::vector<Rat> collisions = detail::collision_values(p, w);
    if (collisions.empty()) break;
    const Rat r = collisions.front();
    Rat bump = Rat(1, BigInt(1) << n);
    MonotoneFn spread = rank_injective_monotone(p, bump);
    MonotoneFn next;
    next.values.reserve(p.size());
    for (int x = 0; x < p.size(); ++x) {
      if (w(x) < r)
        next.values.push_back(w(x));
      else if (w(x) == r)
        next.values.push_back(w(x) + spread(x));
      else
        next.values.push_back(w(x) + bump);
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

// Member-wise collision splitting; turns a verified plain multi-utility into
// an injective one of the same size.
inline MultiUtility injectivize(const Preorder& p, const MultiUtility& v) {
  MultiUtility plain_view{v.members, MuKind::plain};
  MuVerification check = verify_multi_utility(p, plain_view);
  if (!check.ok) fail(errc::kind_violation, "input does not verify as a plain multi-utility");
  MultiUtility out;
  out.kind = MuKind::injective;
  for (const MonotoneFn& u : v.members) out.members.push_back(injectivize_trace(p, u).back());
  return out;
}

// Threshold up-sets of a monotone function, one per gap between consecutive
// attained values ({x : f(x) >= v} for each attained value v except the
// lowest). With the flag the trivial cuts (full set, then empty set) are
// appended at their threshold positions.
inline std::vector<UpSet> upsets_from_monotone(const Preorder& p, const MonotoneFn& f,
                                               bool include_trivial = false) {
  FunctionClassification c = classify_function(p, f);
  if (!c.monotone) {
    auto w = *c.monotone_witness;
    fail(errc::kind_violation,
         "function is not monotone (witness " + p.pair_text(w.first, w.second) + ")");
  }
  std::vector<Rat> values(f.values);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<UpSet> out;
  auto cut_at = [&](const Rat& v) {
    Bits mask(p.size());
    for (int x = 0; x < p.size(); ++x)
      if (f(x) >= v) mask.set(x);
    out.push_back(UpSet{mask});
  };
  if (include_trivial) cut_at(values.front());  // the full set
  for (std::size_t i = 1; i < values.size(); ++i) cut_at(values[i]);
  if (include_trivial) out.push_back(UpSet{Bits(p.size())});
  return out;
}

}  // namespace preorders
