// Shared test utilities. The oracles here are deliberately naive and
// independent of the library's algorithms: plain bool matrices, fixed-point
// loops, exhaustive filters.
#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "preorders/errors.hpp"
#include "preorders/preorder.hpp"

namespace testutil {

using BoolMatrix = std::vector<std::vector<bool>>;

// Reference closure: add the diagonal, then compose one step at a time until
// nothing changes.
inline BoolMatrix closure_oracle(BoolMatrix m) {
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) m[i][i] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (m[x][y]) continue;
        for (int k = 0; k < n; ++k)
          if (m[x][k] && m[k][y]) {
            m[x][y] = true;
            changed = true;
            break;
          }
      }
  }
  return m;
}

inline bool is_reflexive(const BoolMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!m[i][i]) return false;
  return true;
}

inline bool is_transitive(const BoolMatrix& m) {
  const int n = static_cast<int>(m.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (m[x][y] && m[y][z] && !m[x][z]) return false;
  return true;
}

inline BoolMatrix matrix_of(const preorders::Preorder& p) {
  const int n = p.size();
  BoolMatrix m(n, std::vector<bool>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m[x][y] = p.leq(x, y);
  return m;
}

inline std::vector<std::string> numbered_labels(int n, const std::string& prefix = "e") {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

// Random arc set plus its label/pair form, for feeding build_preorder.
struct ArcSample {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  BoolMatrix arcs;
};

inline ArcSample sample_arcs(std::mt19937& rng, int max_n = 7, int denom = 4) {
  ArcSample s;
  const int n = 1 + static_cast<int>(rng() % max_n);
  s.labels = numbered_labels(n);
  s.arcs.assign(n, std::vector<bool>(n, false));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (static_cast<int>(rng() % denom) == 0) {
        s.arcs[x][y] = true;
        s.pairs.emplace_back(s.labels[x], s.labels[y]);
      }
  return s;
}

inline std::optional<preorders::errc> thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const preorders::error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testutil
