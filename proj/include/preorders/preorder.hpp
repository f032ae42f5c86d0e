#pragma once

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace preorders {

using Bits = boost::dynamic_bitset<>;

struct GroundSet {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }
};

enum class ClosureMode { as_given, reflexive_transitive_closure };

// Finite preorder over a labeled ground set. Row x of the relation matrix is
// the principal up-set {y : x <= y}. Reflexivity and transitivity are
// validated on construction, so a Preorder value is always a real preorder.
class Preorder {
 public:
  Preorder(GroundSet ground, std::vector<Bits> up_rows)
      : ground_(std::move(ground)), up_(std::move(up_rows)) {
    const int n = ground_.size();
    if (n == 0) fail(errc::bad_argument, "ground set must be non-empty");
    if (static_cast<int>(up_.size()) != n)
      fail(errc::size_mismatch, "relation has " + std::to_string(up_.size()) +
                                    " rows for " + std::to_string(n) + " elements");
    for (const Bits& row : up_)
      if (static_cast<int>(row.size()) != n)
        fail(errc::size_mismatch, "relation rows must have one bit per element");
    for (int x = 0; x < n; ++x)
      if (!up_[x][x]) fail(errc::not_reflexive, "missing " + pair_text(x, x));
    for (int x = 0; x < n; ++x)
      for (int k = static_cast<int>(up_[x].find_first()); k != -1;
           k = static_cast<int>(up_[x].find_next(k))) {
        if (up_[k].is_subset_of(up_[x])) continue;
        Bits missing = up_[k] - up_[x];
        int y = static_cast<int>(missing.find_first());
        fail(errc::not_transitive, pair_text(x, k) + " and " + pair_text(k, y) +
                                       " hold but " + pair_text(x, y) + " does not");
      }
  }

  int size() const { return ground_.size(); }
  const GroundSet& ground() const { return ground_; }
  const std::string& label(int x) const { return ground_.labels[x]; }

  bool leq(int x, int y) const { return up_[x][y]; }
  bool equivalent(int x, int y) const { return up_[x][y] && up_[y][x]; }
  bool strictly_less(int x, int y) const { return up_[x][y] && !up_[y][x]; }
  bool incomparable(int x, int y) const { return !up_[x][y] && !up_[y][x]; }

  // {y : x <= y}
  const Bits& up_row(int x) const { return up_[x]; }

  bool same_relation(const Preorder& other) const {
    return ground_.labels == other.ground_.labels && up_ == other.up_;
  }

  std::string pair_text(int x, int y) const {
    return "(" + ground_.labels[x] + ", " + ground_.labels[y] + ")";
  }

 private:
  GroundSet ground_;
  std::vector<Bits> up_;
};

namespace detail {

inline std::unordered_map<std::string, int> label_index(const std::vector<std::string>& labels) {
  std::unordered_map<std::string, int> index;
  index.reserve(labels.size());
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    auto [it, fresh] = index.emplace(labels[i], i);
    if (!fresh) fail(errc::duplicate_label, "'" + labels[i] + "'");
  }
  return index;
}

// Smallest reflexive-transitive superset, as a fixed point of row absorption
// (Warshall on bit rows).
inline void close_reflexive_transitive(std::vector<Bits>& rows) {
  const int n = static_cast<int>(rows.size());
  for (int x = 0; x < n; ++x) rows[x].set(x);
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      if (rows[x][k]) rows[x] |= rows[k];
}

}  // namespace detail

inline Preorder build_preorder(const std::vector<std::string>& labels,
                               const std::vector<std::pair<std::string, std::string>>& pairs,
                               ClosureMode mode) {
  if (labels.empty()) fail(errc::bad_argument, "ground set must be non-empty");
  auto index = detail::label_index(labels);
  const int n = static_cast<int>(labels.size());
  std::vector<Bits> rows(n, Bits(n));
  for (const auto& [from, to] : pairs) {
    auto f = index.find(from);
    if (f == index.end()) fail(errc::unknown_label, "'" + from + "'");
    auto t = index.find(to);
    if (t == index.end()) fail(errc::unknown_label, "'" + to + "'");
    rows[f->second].set(t->second);
  }
  if (mode == ClosureMode::reflexive_transitive_closure)
    detail::close_reflexive_transitive(rows);
  return Preorder(GroundSet{labels}, std::move(rows));
}

struct RelationParts {
  std::vector<std::pair<int, int>> strict;        // all ordered pairs x < y
  std::vector<std::pair<int, int>> incomparable;  // unordered, stored with first < second
};

inline RelationParts strict_and_incomparable(const Preorder& p) {
  RelationParts parts;
  const int n = p.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      if (p.strictly_less(x, y)) parts.strict.emplace_back(x, y);
      if (x < y && p.incomparable(x, y)) parts.incomparable.emplace_back(x, y);
    }
  return parts;
}

// Partial order on equivalence classes. Classes are listed by their smallest
// ground index, members sorted ascending; row a of leq is {b : a <= b}.
struct QuotientPoset {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  std::vector<Bits> leq;

  int size() const { return static_cast<int>(classes.size()); }
  int representative(int a) const { return classes[a][0]; }
  bool less(int a, int b) const { return a != b && leq[a][b]; }
};

inline QuotientPoset quotient(const Preorder& p) {
  const int n = p.size();
  QuotientPoset q;
  q.class_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (q.class_of[x] != -1) continue;
    int id = q.size();
    q.classes.emplace_back();
    for (int y = x; y < n; ++y)
      if (q.class_of[y] == -1 && p.equivalent(x, y)) {
        q.class_of[y] = id;
        q.classes.back().push_back(y);
      }
  }
  const int c = q.size();
  q.leq.assign(c, Bits(c));
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b)
      if (p.leq(q.representative(a), q.representative(b))) q.leq[a].set(b);
  return q;
}

inline Preorder induced_subpreorder(const Preorder& p, const std::vector<int>& subset) {
  if (subset.empty()) fail(errc::empty_subset, "induced subpreorder needs elements");
  std::vector<bool> seen(p.size(), false);
  GroundSet ground;
  for (int x : subset) {
    if (x < 0 || x >= p.size())
      fail(errc::unknown_label, "element index " + std::to_string(x) + " out of range");
    if (seen[x]) fail(errc::duplicate_label, "'" + p.label(x) + "' repeated in subset");
    seen[x] = true;
    ground.labels.push_back(p.label(x));
  }
  const int m = static_cast<int>(subset.size());
  std::vector<Bits> rows(m, Bits(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (p.leq(subset[i], subset[j])) rows[i].set(j);
  return Preorder(std::move(ground), std::move(rows));
}

inline Preorder induced_subpreorder(const Preorder& p, const std::vector<std::string>& subset) {
  auto index = detail::label_index(p.ground().labels);
  std::vector<int> ids;
  ids.reserve(subset.size());
  for (const auto& label : subset) {
    auto it = index.find(label);
    if (it == index.end()) fail(errc::unknown_label, "'" + label + "'");
    ids.push_back(it->second);
  }
  return induced_subpreorder(p, ids);
}

// Linear extension of the quotient, Kahn style: repeatedly place the minimal
// class with the smallest priority. Priority of a class is the earliest
// position of one of its members in the seed permutation (ground order when
// no seed is given), which makes the result deterministic.
inline std::vector<int> quotient_topological_order(const QuotientPoset& q,
                                                   const std::vector<int>* seed_ground_order = nullptr) {
  const int c = q.size();
  int n = static_cast<int>(q.class_of.size());
  std::vector<int> position(n, 0);
  if (seed_ground_order) {
    if (static_cast<int>(seed_ground_order->size()) != n)
      fail(errc::size_mismatch, "seed order must be a permutation of the ground set");
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      int x = (*seed_ground_order)[i];
      if (x < 0 || x >= n || seen[x])
        fail(errc::bad_argument, "seed order must be a permutation of the ground set");
      seen[x] = true;
      position[x] = i;
    }
  } else {
    for (int i = 0; i < n; ++i) position[i] = i;
  }
  std::vector<int> priority(c, n);
  for (int a = 0; a < c; ++a)
    for (int x : q.classes[a]) priority[a] = std::min(priority[a], position[x]);

  std::vector<int> order;
  order.reserve(c);
  std::vector<bool> placed(c, false);
  for (int step = 0; step < c; ++step) {
    int pick = -1;
    for (int a = 0; a < c; ++a) {
      if (placed[a]) continue;
      bool minimal = true;
      for (int b = 0; b < c && minimal; ++b)
        if (!placed[b] && q.less(b, a)) minimal = false;
      if (minimal && (pick == -1 || priority[a] < priority[pick])) pick = a;
    }
    placed[pick] = true;
    order.push_back(pick);
  }
  return order;
}

}  // namespace preorders
