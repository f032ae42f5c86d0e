#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "monotones.hpp"
#include "preorder.hpp"
#include "rational.hpp"

namespace preorders {

struct GenLimits {
  int element_cap = 512;
};

namespace detail {

inline void check_cap(long long n, const GenLimits& limits, const std::string& what) {
  if (n > limits.element_cap)
    fail(errc::size_overflow, what + " would have " + std::to_string(n) +
                                  " elements (cap " + std::to_string(limits.element_cap) + ")");
}

inline void require_positive(int n, const std::string& name) {
  if (n < 1) fail(errc::bad_argument, name + " must be >= 1");
}

inline std::string subset_label(unsigned mask, int m) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < m; ++i)
    if (mask >> i & 1) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
  return s + "}";
}

// Label for the grid point j/(den) + off, reduced.
inline std::string grid_label(int j, int den, int off) {
  Rat v = Rat(j, den) + off;
  return rat_to_string(v);
}

}  // namespace detail

inline Preorder gen_chain(int n, const GenLimits& limits = {}) {
  detail::require_positive(n, "n");
  detail::check_cap(n, limits, "chain");
  GroundSet g;
  std::vector<Bits> rows(n, Bits(n));
  for (int i = 0; i < n; ++i) {
    g.labels.push_back("x" + std::to_string(i));
    for (int j = i; j < n; ++j) rows[i].set(j);
  }
  return Preorder(std::move(g), std::move(rows));
}

inline Preorder gen_antichain(int n, const GenLimits& limits = {}) {
  detail::require_positive(n, "n");
  detail::check_cap(n, limits, "antichain");
  GroundSet g;
  std::vector<Bits> rows(n, Bits(n));
  for (int i = 0; i < n; ++i) {
    g.labels.push_back("x" + std::to_string(i));
    rows[i].set(i);
  }
  return Preorder(std::move(g), std::move(rows));
}

namespace detail {

inline std::vector<std::vector<int>> compositions(int omega, int denom) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(omega, 0);
  auto walk = [&](auto&& self, int pos, int left) -> void {
    if (pos == omega - 1) {
      current[pos] = left;
      out.push_back(current);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      current[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  walk(walk, 0, denom);
  return out;
}

// Partial sums of the decreasingly sorted vector, positions 1..omega-1.
inline std::vector<int> top_sums(const std::vector<int>& v) {
  std::vector<int> sorted(v);
  std::sort(sorted.begin(), sorted.end(), std::greater<int>());
  std::vector<int> sums(sorted.size() - 1);
  int acc = 0;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    acc += sorted[i];
    sums[i] = acc;
  }
  return sums;
}

}  // namespace detail

// Probability vectors with omega outcomes and a fixed denominator, ordered by
// majorization read uncertainty-wise: p <= q iff every top-i partial sum of p
// is at least that of q (deterministic vectors at the bottom, uniform at the
// top). Elements are the compositions of denom into omega parts, ascending
// lexicographically; labels like "(4,1,1)/6".
inline Preorder gen_majorization(int omega, int denom, const GenLimits& limits = {}) {
  if (omega < 2) fail(errc::bad_argument, "omega must be >= 2");
  detail::require_positive(denom, "denom");
  auto vectors = detail::compositions(omega, denom);
  detail::check_cap(static_cast<long long>(vectors.size()), limits, "majorization");
  const int n = static_cast<int>(vectors.size());
  GroundSet g;
  for (const auto& v : vectors) {
    std::string label = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
      label += (i ? "," : "") + std::to_string(v[i]);
    g.labels.push_back(label + ")/" + std::to_string(denom));
  }
  std::vector<std::vector<int>> sums;
  sums.reserve(n);
  for (const auto& v : vectors) sums.push_back(detail::top_sums(v));
  std::vector<Bits> rows(n, Bits(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      bool le = true;
      for (int i = 0; i < omega - 1 && le; ++i)
        if (sums[x][i] < sums[y][i]) le = false;
      if (le) rows[x].set(y);
    }
  return Preorder(std::move(g), std::move(rows));
}

// The omega-1 canonical monotones u_i(p) = -(top-i partial sum of p); a plain
// multi-utility for gen_majorization with the same parameters.
inline MultiUtility majorization_multi_utility(int omega, int denom) {
  if (omega < 2) fail(errc::bad_argument, "omega must be >= 2");
  detail::require_positive(denom, "denom");
  auto vectors = detail::compositions(omega, denom);
  MultiUtility v;
  v.kind = MuKind::plain;
  for (int i = 0; i + 1 < omega; ++i) {
    MonotoneFn f;
    f.values.reserve(vectors.size());
    for (const auto& vec : vectors)
      f.values.push_back(Rat(-detail::top_sums(vec)[i], denom));
    v.members.push_back(std::move(f));
  }
  return v;
}

// Ground {1..n} with {-1..-n}; i <= -j for positive i != j, nothing else
// besides reflexivity. The classic n-dimensional "standard example".
inline Preorder gen_standard_example(int n, const GenLimits& limits = {}) {
  detail::require_positive(n, "n");
  detail::check_cap(2LL * n, limits, "standard example");
  GroundSet g;
  for (int i = 1; i <= n; ++i) g.labels.push_back(std::to_string(i));
  for (int i = 1; i <= n; ++i) g.labels.push_back(std::to_string(-i));
  std::vector<Bits> rows(2 * n, Bits(2 * n));
  for (int x = 0; x < 2 * n; ++x) rows[x].set(x);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) rows[i].set(n + j);
  return Preorder(std::move(g), std::move(rows));
}

enum class BridgeVariant { incomparable, strict };

// Two copies of an n-point grid on [0,1] and [2,3]. Inside a copy the usual
// order; from the low copy x reaches high-copy y when x+2 < y (incomparable
// variant) or x+2 <= y (strict variant); from the high copy x reaches y when
// x-2 < y. In the incomparable variant each grid point is incomparable with
// its shifted twin; the strict variant relates them and collapses to a chain.
inline Preorder gen_bridge(int n, BridgeVariant variant, const GenLimits& limits = {}) {
  if (n < 2) fail(errc::bad_argument, "n must be >= 2");
  detail::check_cap(2LL * n, limits, "bridge");
  GroundSet g;
  for (int j = 0; j < n; ++j) g.labels.push_back(detail::grid_label(j, n - 1, 0));
  for (int j = 0; j < n; ++j) g.labels.push_back(detail::grid_label(j, n - 1, 2));
  std::vector<Bits> rows(2 * n, Bits(2 * n));
  auto low = [&](int j) { return j; };
  auto high = [&](int j) { return n + j; };
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j <= k) {
        rows[low(j)].set(low(k));
        rows[high(j)].set(high(k));
      }
      bool cross_up = variant == BridgeVariant::strict ? j <= k : j < k;
      if (cross_up) rows[low(j)].set(high(k));
      if (j < k) rows[high(j)].set(low(k));
    }
  return Preorder(std::move(g), std::move(rows));
}

// Two wings A and B, each a copy of {-n..-1, 1..n} with integer order inside;
// across wings only negative -> positive comparisons hold. Labels "A:-2" etc.
inline Preorder gen_two_wings(int n, const GenLimits& limits = {}) {
  detail::require_positive(n, "n");
  detail::check_cap(4LL * n, limits, "two wings");
  std::vector<int> values;
  for (int v = -n; v <= n; ++v)
    if (v != 0) values.push_back(v);
  GroundSet g;
  for (int v : values) g.labels.push_back("A:" + std::to_string(v));
  for (int v : values) g.labels.push_back("B:" + std::to_string(v));
  const int wing = static_cast<int>(values.size());
  std::vector<Bits> rows(2 * wing, Bits(2 * wing));
  for (int i = 0; i < 2 * wing; ++i)
    for (int j = 0; j < 2 * wing; ++j) {
      int vi = values[i % wing], vj = values[j % wing];
      bool same_wing = (i < wing) == (j < wing);
      if (same_wing ? vi <= vj : (vi < 0 && vj > 0)) rows[i].set(j);
    }
  return Preorder(std::move(g), std::move(rows));
}

// Size-2 strict multi-utility for gen_two_wings(n), in exact rationals. Each
// valuation squeezes one wing's values into (-1,1) via x/(n+1) and keeps the
// other wing outside via x-1 / x+1, preserving exactly the comparisons the
// construction needs.
inline MultiUtility two_wings_multi_utility(int n) {
  detail::require_positive(n, "n");
  std::vector<int> values;
  for (int v = -n; v <= n; ++v)
    if (v != 0) values.push_back(v);
  const int wing = static_cast<int>(values.size());
  auto build = [&](bool squeeze_b) {
    MonotoneFn f;
    f.values.reserve(2 * wing);
    for (int i = 0; i < 2 * wing; ++i) {
      int v = values[i % wing];
      bool in_b = i >= wing;
      if (in_b == squeeze_b)
        f.values.push_back(Rat(v, n + 1));
      else
        f.values.push_back(v < 0 ? Rat(v - 1) : Rat(v + 1));
    }
    return f;
  };
  MultiUtility mu;
  mu.kind = MuKind::strict;
  mu.members.push_back(build(true));
  mu.members.push_back(build(false));
  return mu;
}

// Two copies B and C of the power set of {0..m-1}, both carrying a fixed
// linear extension of inclusion (order by the subset bitmask read as a
// number). B_s sits below C_t when s <= t in that order, C_s below B_t when
// s < t, so the copies interleave: B_s < C_s < B_t for s < t. At finite scale
// this is a chain; what survives of the original construction is the lower bound
// that any kind-II family needs one set per B-element (see the tests).
inline Preorder gen_double_powerset(int m, const GenLimits& limits = {}) {
  if (m < 1 || m > 4) fail(errc::bad_argument, "m must be between 1 and 4");
  const int half = 1 << m;
  detail::check_cap(2LL * half, limits, "double power set");
  GroundSet g;
  for (int s = 0; s < half; ++s)
    g.labels.push_back("B:" + detail::subset_label(static_cast<unsigned>(s), m));
  for (int s = 0; s < half; ++s)
    g.labels.push_back("C:" + detail::subset_label(static_cast<unsigned>(s), m));
  std::vector<Bits> rows(2 * half, Bits(2 * half));
  for (int i = 0; i < 2 * half; ++i)
    for (int j = 0; j < 2 * half; ++j) {
      int ri = i % half, rj = j % half;
      bool bi = i < half, bj = j < half;
      bool le;
      if (bi == bj)
        le = ri <= rj;
      else if (bi)  // B -> C
        le = ri <= rj;
      else  // C -> B
        le = ri < rj;
      if (le) rows[i].set(j);
    }
  return Preorder(std::move(g), std::move(rows));
}

// Numbers 0..m-1 next to all subsets of size >= min_size; a number sits below
// exactly the sets containing it. With min_size=2 every set y has a number
// n_y outside it (m > size is not needed: any proper set misses a number),
// and the pair (y ∪ {n_y}, y) forces y into every upper-dense subset.
inline Preorder gen_nat_vs_sets(int m, int min_size, const GenLimits& limits = {}) {
  if (min_size < 2) fail(errc::bad_argument, "min_size must be >= 2");
  if (m < min_size) fail(errc::bad_argument, "m must be >= min_size");
  if (m > 5) fail(errc::bad_argument, "m must be <= 5");
  std::vector<unsigned> sets;
  for (unsigned mask = 0; mask < (1u << m); ++mask)
    if (__builtin_popcount(mask) >= min_size) sets.push_back(mask);
  const int n = m + static_cast<int>(sets.size());
  detail::check_cap(n, limits, "nat vs sets");
  GroundSet g;
  for (int i = 0; i < m; ++i) g.labels.push_back(std::to_string(i));
  for (unsigned mask : sets) g.labels.push_back(detail::subset_label(mask, m));
  std::vector<Bits> rows(n, Bits(n));
  for (int x = 0; x < n; ++x) rows[x].set(x);
  for (int i = 0; i < m; ++i)
    for (std::size_t s = 0; s < sets.size(); ++s)
      if (sets[s] >> i & 1) rows[i].set(m + static_cast<int>(s));
  return Preorder(std::move(g), std::move(rows));
}

// Every preorder on n labeled elements (n <= 4), by filtering all off-
// diagonal relation masks for transitivity. Deterministic order: ascending
// mask, bits indexed by ordered pairs in lexicographic order.
inline std::vector<Preorder> enumerate_preorders(int n) {
  detail::require_positive(n, "n");
  if (n > 4) fail(errc::size_overflow, "enumeration supported for n <= 4");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<int, int>> slots;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) slots.emplace_back(x, y);

  std::vector<Preorder> out;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) leq[x][y] = x == y;
    for (std::size_t b = 0; b < slots.size(); ++b)
      if (mask >> b & 1) leq[slots[b].first][slots[b].second] = true;
    bool transitive = true;
    for (int x = 0; x < n && transitive; ++x)
      for (int y = 0; y < n && transitive; ++y)
        for (int z = 0; z < n; ++z)
          if (leq[x][y] && leq[y][z] && !leq[x][z]) {
            transitive = false;
            break;
          }
    if (!transitive) continue;
    std::vector<Bits> rows(n, Bits(n));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (leq[x][y]) rows[x].set(y);
    out.emplace_back(GroundSet{labels}, std::move(rows));
  }
  return out;
}

// Reflexive-transitive closure of a random arc set. Each ordered pair joins
// independently with the given probability; the draw-to-density comparison is
// exact, so runs are reproducible across platforms for a fixed seed.
inline Preorder gen_random_preorder(int n, const Rat& density, std::uint64_t seed,
                                    const GenLimits& limits = {}) {
  detail::require_positive(n, "n");
  detail::check_cap(n, limits, "random preorder");
  if (density < 0 || density > 1) fail(errc::bad_argument, "density must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<Bits> rows(n, Bits(n));
  const BigInt scale = BigInt(1) << 64;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      BigInt draw(rng());
      if (draw * denominator(density) < numerator(density) * scale) rows[x].set(y);
    }
  detail::close_reflexive_transitive(rows);
  GroundSet g;
  for (int i = 0; i < n; ++i) g.labels.push_back("x" + std::to_string(i));
  return Preorder(std::move(g), std::move(rows));
}

}  // namespace preorders
