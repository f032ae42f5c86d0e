#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "preorders/preorder.hpp"

using namespace preorders;
using testutil::thrown_code;

namespace {

Preorder from_pairs(const std::vector<std::string>& labels,
                    const std::vector<std::pair<std::string, std::string>>& pairs,
                    ClosureMode mode = ClosureMode::reflexive_transitive_closure) {
  return build_preorder(labels, pairs, mode);
}

}  // namespace

TEST_CASE("closure mode reproduces the fixed-point oracle on random arc sets") {
  std::mt19937 rng(901);
  for (int trial = 0; trial < 300; ++trial) {
    testutil::ArcSample s = testutil::sample_arcs(rng);
    testutil::BoolMatrix expect = testutil::closure_oracle(s.arcs);
    Preorder p = from_pairs(s.labels, s.pairs);
    CAPTURE(trial, s.labels.size());
    REQUIRE(testutil::matrix_of(p) == expect);
  }
}

TEST_CASE("singleton with no pairs is the one-point preorder") {
  Preorder p = from_pairs({"a"}, {});
  CHECK(p.size() == 1);
  CHECK(p.leq(0, 0));
}

TEST_CASE("closure infers the composite pair") {
  Preorder p = from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(p.leq(0, 2));
  CHECK_FALSE(p.leq(2, 0));
}

TEST_CASE("symmetric pair collapses to one class") {
  Preorder p = from_pairs({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  CHECK(p.equivalent(0, 1));
  CHECK(quotient(p).size() == 1);
}

TEST_CASE("as-given mode validates instead of repairing") {
  std::vector<std::string> ab = {"a", "b"};

  SECTION("missing reflexive pair") {
    auto code = thrown_code([&] { from_pairs(ab, {{"a", "a"}}, ClosureMode::as_given); });
    REQUIRE(code == errc::not_reflexive);
  }
  SECTION("missing composite pair, witness in message") {
    try {
      from_pairs({"a", "b", "c"},
                 {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "c"}},
                 ClosureMode::as_given);
      FAIL("expected NotTransitive");
    } catch (const error& e) {
      CHECK(e.code() == errc::not_transitive);
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("(a, b)") &&
                               Catch::Matchers::ContainsSubstring("(b, c)") &&
                               Catch::Matchers::ContainsSubstring("(a, c)"));
    }
  }
  SECTION("complete as-given relation passes") {
    Preorder p = from_pairs({"a", "b"}, {{"a", "a"}, {"b", "b"}, {"a", "b"}},
                            ClosureMode::as_given);
    CHECK(p.strictly_less(0, 1));
  }
}

TEST_CASE("label validation") {
  CHECK(thrown_code([] { from_pairs({"a", "a"}, {}); }) == errc::duplicate_label);
  CHECK(thrown_code([] { from_pairs({"a"}, {{"a", "z"}}); }) == errc::unknown_label);
  CHECK(thrown_code([] { from_pairs({}, {}); }) == errc::bad_argument);
}

TEST_CASE("every ordered pair falls in exactly one relation bucket") {
  std::mt19937 rng(902);
  for (int trial = 0; trial < 100; ++trial) {
    testutil::ArcSample s = testutil::sample_arcs(rng);
    Preorder p = from_pairs(s.labels, s.pairs);
    for (int x = 0; x < p.size(); ++x)
      for (int y = 0; y < p.size(); ++y) {
        int buckets = (p.equivalent(x, y) ? 1 : 0) + (p.strictly_less(x, y) ? 1 : 0) +
                      (p.strictly_less(y, x) ? 1 : 0) + (p.incomparable(x, y) ? 1 : 0);
        CAPTURE(trial, x, y);
        REQUIRE(buckets == 1);
        if (x == y) REQUIRE(p.equivalent(x, y));
      }
  }
}

TEST_CASE("strict and incomparable parts match a direct scan") {
  std::mt19937 rng(903);
  for (int trial = 0; trial < 100; ++trial) {
    testutil::ArcSample s = testutil::sample_arcs(rng);
    Preorder p = from_pairs(s.labels, s.pairs);
    RelationParts parts = strict_and_incomparable(p);
    std::vector<std::pair<int, int>> strict, incomp;
    for (int x = 0; x < p.size(); ++x)
      for (int y = 0; y < p.size(); ++y) {
        if (p.leq(x, y) && !p.leq(y, x)) strict.emplace_back(x, y);
        if (x < y && !p.leq(x, y) && !p.leq(y, x)) incomp.emplace_back(x, y);
      }
    REQUIRE(parts.strict == strict);
    REQUIRE(parts.incomparable == incomp);
  }
}

TEST_CASE("quotient on a hand-built preorder") {
  // a ~ b below c ~ d, with e off to the side.
  Preorder p = from_pairs({"a", "b", "c", "d", "e"},
                          {{"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"}, {"a", "c"}});
  QuotientPoset q = quotient(p);
  REQUIRE(q.classes == std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4}});
  CHECK(q.class_of == std::vector<int>{0, 0, 1, 1, 2});
  CHECK(q.representative(1) == 2);
  CHECK(q.less(0, 1));
  CHECK_FALSE(q.less(1, 0));
  CHECK_FALSE(q.less(0, 2));
  CHECK_FALSE(q.less(2, 0));
}

TEST_CASE("quotient is an antisymmetric lift of the relation") {
  std::mt19937 rng(904);
  for (int trial = 0; trial < 100; ++trial) {
    testutil::ArcSample s = testutil::sample_arcs(rng, 7, 2);  // dense: many equivalences
    Preorder p = from_pairs(s.labels, s.pairs);
    QuotientPoset q = quotient(p);
    CAPTURE(trial);
    for (int a = 0; a < q.size(); ++a)
      for (int b = 0; b < q.size(); ++b)
        if (a != b) REQUIRE(!(q.leq[a][b] && q.leq[b][a]));
    for (int x = 0; x < p.size(); ++x)
      for (int y = 0; y < p.size(); ++y)
        REQUIRE(p.leq(x, y) == bool(q.leq[q.class_of[x]][q.class_of[y]]));
    for (int a = 0; a < q.size(); ++a) {
      REQUIRE(!q.classes[a].empty());
      for (int x : q.classes[a]) {
        REQUIRE(q.class_of[x] == a);
        REQUIRE(p.equivalent(x, q.representative(a)));
      }
      REQUIRE(q.representative(a) == q.classes[a][0]);
      if (a > 0) REQUIRE(q.representative(a - 1) < q.representative(a));
    }
  }
}

TEST_CASE("induced subpreorder restricts the relation") {
  Preorder p = from_pairs({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
  Preorder sub = induced_subpreorder(p, std::vector<int>{0, 2, 3});
  REQUIRE(sub.size() == 3);
  CHECK(sub.label(0) == "a");
  CHECK(sub.label(1) == "c");
  CHECK(sub.leq(0, 1));
  CHECK(sub.leq(1, 2));
  CHECK(sub.leq(0, 2));
  CHECK_FALSE(sub.leq(2, 0));

  Preorder by_label = induced_subpreorder(p, std::vector<std::string>{"a", "c", "d"});
  CHECK(by_label.same_relation(sub));
}

TEST_CASE("induced subpreorder rejects bad subsets") {
  Preorder p = from_pairs({"a", "b"}, {{"a", "b"}});
  CHECK(thrown_code([&] { induced_subpreorder(p, std::vector<int>{}); }) == errc::empty_subset);
  CHECK(thrown_code([&] { induced_subpreorder(p, std::vector<int>{0, 0}); }) ==
        errc::duplicate_label);
  CHECK(thrown_code([&] { induced_subpreorder(p, std::vector<int>{5}); }) == errc::unknown_label);
  CHECK(thrown_code([&] { induced_subpreorder(p, std::vector<std::string>{"z"}); }) ==
        errc::unknown_label);
}

TEST_CASE("topological order of the quotient") {
  std::mt19937 rng(905);
  for (int trial = 0; trial < 100; ++trial) {
    testutil::ArcSample s = testutil::sample_arcs(rng);
    Preorder p = from_pairs(s.labels, s.pairs);
    QuotientPoset q = quotient(p);
    std::vector<int> order = quotient_topological_order(q);
    REQUIRE(static_cast<int>(order.size()) == q.size());
    std::vector<int> pos(q.size(), -1);
    for (int i = 0; i < q.size(); ++i) {
      REQUIRE(order[i] >= 0);
      REQUIRE(order[i] < q.size());
      REQUIRE(pos[order[i]] == -1);  // permutation
      pos[order[i]] = i;
    }
    for (int a = 0; a < q.size(); ++a)
      for (int b = 0; b < q.size(); ++b)
        if (q.less(a, b)) REQUIRE(pos[a] < pos[b]);
  }
}

TEST_CASE("topological order follows the seed where the order leaves slack") {
  Preorder p = from_pairs({"a", "b", "c"}, {});  // antichain: any order is valid
  QuotientPoset q = quotient(p);
  std::vector<int> seed = {2, 0, 1};
  CHECK(quotient_topological_order(q, &seed) == std::vector<int>{2, 0, 1});
  CHECK(quotient_topological_order(q) == std::vector<int>{0, 1, 2});
}
