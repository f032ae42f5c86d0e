#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "helpers.hpp"
#include "preorders/generators.hpp"
#include "preorders/io.hpp"
#include "preorders/monotones.hpp"
#include "preorders/separating.hpp"
#include "preorders/structure.hpp"

using namespace preorders;
using testutil::thrown_code;

namespace {

std::unordered_map<std::string, int> index_of(const Preorder& p) {
  std::unordered_map<std::string, int> m;
  for (int x = 0; x < p.size(); ++x) m[p.label(x)] = x;
  return m;
}

Bits mask_of(const Preorder& p, const Json& labels) {
  auto idx = index_of(p);
  Bits mask(p.size());
  for (const Json& l : labels) mask.set(idx.at(l.get<std::string>()));
  return mask;
}

std::vector<Preorder> round_trip_cases() {
  std::vector<Preorder> out = enumerate_preorders(3);
  out.push_back(gen_chain(5));
  out.push_back(gen_antichain(4));
  out.push_back(gen_standard_example(3));
  out.push_back(gen_majorization(3, 5));
  out.push_back(gen_two_wings(2));
  out.push_back(gen_bridge(2, BridgeVariant::incomparable));
  out.push_back(gen_nat_vs_sets(3, 2));
  std::mt19937_64 rng(20260815);
  for (int i = 0; i < 30; ++i) {
    auto density = Rat(1 + static_cast<int>(rng() % 4), 4);
    out.push_back(gen_random_preorder(2 + static_cast<int>(rng() % 6), density, rng()));
  }
  return out;
}

}  // namespace

TEST_CASE("documents survive a write/parse round trip") {
  for (const Preorder& p : round_trip_cases()) {
    PreorderDocument doc = to_document(p);
    std::string text = write_document(doc);
    PreorderDocument back = parse_document(text);
    Preorder rebuilt = to_preorder(back);
    REQUIRE(rebuilt.same_relation(p));
    // a second pass produces the same bytes
    REQUIRE(write_document(to_document(rebuilt)) == text);
  }
}

TEST_CASE("written documents have a fixed JSON shape") {
  std::string text = write_document(to_document(gen_chain(3)));
  Json j = Json::parse(text);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  REQUIRE(keys == std::vector<std::string>{"elements", "pairs", "closure"});
  REQUIRE(j["elements"] == Json::array({"x0", "x1", "x2"}));
  REQUIRE(j["closure"] == "reflexive-transitive-closure");
  // non-reflexive related pairs in ground order: closure output, so all three
  REQUIRE(j["pairs"] == Json::array({Json::array({"x0", "x1"}), Json::array({"x0", "x2"}),
                                     Json::array({"x1", "x2"})}));
  REQUIRE(text.back() == '\n');
}

TEST_CASE("closure mode names round trip") {
  for (ClosureMode m : {ClosureMode::as_given, ClosureMode::reflexive_transitive_closure})
    CHECK(parse_closure_mode(closure_mode_name(m)) == m);
  CHECK(thrown_code([] { parse_closure_mode("transitive"); }) == errc::bad_document);
}

TEST_CASE("parse rejects malformed documents with BadDocument") {
  auto rejects = [](const std::string& text) {
    return thrown_code([&] { parse_document(text); }) == errc::bad_document;
  };
  CHECK(rejects("not json at all"));
  CHECK(rejects("[1, 2]"));
  CHECK(rejects(R"({"pairs": [], "closure": "as-given"})"));
  CHECK(rejects(R"({"elements": [], "closure": "as-given"})"));
  CHECK(rejects(R"({"elements": [], "pairs": []})"));
  CHECK(rejects(R"({"elements": "a", "pairs": [], "closure": "as-given"})"));
  CHECK(rejects(R"({"elements": [1], "pairs": [], "closure": "as-given"})"));
  CHECK(rejects(R"({"elements": ["a"], "pairs": {}, "closure": "as-given"})"));
  CHECK(rejects(R"({"elements": ["a"], "pairs": [["a"]], "closure": "as-given"})"));
  CHECK(rejects(R"({"elements": ["a"], "pairs": [["a", "a", "a"]], "closure": "as-given"})"));
  CHECK(rejects(R"({"elements": ["a"], "pairs": [["a", 3]], "closure": "as-given"})"));
  CHECK(rejects(R"({"elements": ["a"], "pairs": [], "closure": 7})"));
  CHECK(rejects(R"({"elements": ["a"], "pairs": [], "closure": "partial"})"));

  try {
    parse_document(R"({"elements": [], "closure": "as-given"})");
    FAIL("expected BadDocument");
  } catch (const error& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("pairs"));
  }
}

TEST_CASE("semantic faults surface when the document becomes a preorder") {
  auto build_code = [](const std::string& text) {
    return thrown_code([&] { to_preorder(parse_document(text)); });
  };
  CHECK(build_code(R"({"elements": ["a", "a"], "pairs": [],
                       "closure": "reflexive-transitive-closure"})") == errc::duplicate_label);
  CHECK(build_code(R"({"elements": ["a"], "pairs": [["a", "b"]],
                       "closure": "reflexive-transitive-closure"})") == errc::unknown_label);
  CHECK(build_code(R"({"elements": ["a", "b"], "pairs": [["a", "b"]],
                       "closure": "as-given"})") == errc::not_reflexive);
  CHECK(build_code(R"({"elements": ["a", "b", "c"],
                       "pairs": [["a", "a"], ["b", "b"], ["c", "c"], ["a", "b"], ["b", "c"]],
                       "closure": "as-given"})") == errc::not_transitive);
  // the same relation with the closing pair added is accepted as given
  Preorder p = to_preorder(parse_document(
      R"({"elements": ["a", "b", "c"],
          "pairs": [["a", "a"], ["b", "b"], ["c", "c"], ["a", "b"], ["b", "c"], ["a", "c"]],
          "closure": "as-given"})"));
  Preorder closed = build_preorder({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}},
                                   ClosureMode::reflexive_transitive_closure);
  CHECK(p.same_relation(closed));
}

TEST_CASE("analysis reports are byte-deterministic and echo the report") {
  Preorder p = gen_standard_example(2);
  SearchBudget budget;
  CrossCheckResult r = cross_check(p, budget);
  std::string s1 = write_report(p, r, budget);
  std::string s2 = write_report(p, cross_check(p, budget), budget);
  REQUIRE(s1 == s2);

  Json j = Json::parse(s1);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  REQUIRE(keys == std::vector<std::string>{"version", "quotient_size", "width", "has_utility",
                                           "min_mu_plain", "min_mu_strict", "min_mu_injective",
                                           "min_sep_i", "min_sep_ii", "min_sep_iii",
                                           "debreu_dense_min", "debreu_upper_min", "budgets",
                                           "witnesses"});
  CHECK(j["version"] == tool_version);
  CHECK(j["quotient_size"] == r.report.quotient_size);
  CHECK(j["width"] == r.report.width);
  CHECK(j["has_utility"] == r.report.has_utility);
  CHECK(j["min_mu_plain"] == *r.report.min_mu_plain);
  CHECK(j["min_sep_i"] == *r.report.min_sep_i);
  CHECK(j["budgets"]["budget_k"] == budget.max_k);
  CHECK(j["budgets"]["max_classes"] == budget.max_classes);
  CHECK(j["budgets"]["max_nodes"] == budget.max_nodes);
  CHECK(j["budgets"]["max_pool"] == budget.max_pool);
  CHECK(j["witnesses"]["discrepancies"] == Json::array());
  CHECK(j["witnesses"]["exceeded"] == Json::array());
  CHECK(j["witnesses"]["skipped"] == Json::array());
}

TEST_CASE("report witnesses reconstruct and re-verify") {
  Preorder p = gen_standard_example(2);
  SearchBudget budget;
  CrossCheckResult r = cross_check(p, budget);
  Json j = Json::parse(write_report(p, r, budget));
  Json w = j["witnesses"];

  // classes partition the ground set
  REQUIRE(w["classes"].size() == static_cast<std::size_t>(j["quotient_size"].get<int>()));
  std::vector<std::string> flattened;
  for (const Json& cls : w["classes"])
    for (const Json& l : cls) flattened.push_back(l.get<std::string>());
  REQUIRE(flattened.size() == static_cast<std::size_t>(p.size()));

  // width witness is an antichain of the reported size
  Bits anti = mask_of(p, w["width_antichain"]);
  REQUIRE(static_cast<int>(anti.count()) == j["width"].get<int>());
  auto idx = index_of(p);
  std::vector<int> members;
  for (const Json& l : w["width_antichain"]) members.push_back(idx.at(l.get<std::string>()));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t k = i + 1; k < members.size(); ++k)
      CHECK(p.incomparable(members[i], members[k]));

  // the no-utility witness really is incomparable
  REQUIRE(!w["no_utility"].is_null());
  CHECK(p.incomparable(idx.at(w["no_utility"][0].get<std::string>()),
                       idx.at(w["no_utility"][1].get<std::string>())));

  // separating families satisfy their kind at the reported size
  const SepKind kinds[3] = {SepKind::I, SepKind::II, SepKind::III};
  const char* names[3] = {"i", "ii", "iii"};
  const Json mins[3] = {j["min_sep_i"], j["min_sep_ii"], j["min_sep_iii"]};
  for (int k = 0; k < 3; ++k) {
    Json fam = w["min_sep_families"][names[k]];
    REQUIRE(!fam.is_null());
    REQUIRE(fam.size() == static_cast<std::size_t>(mins[k].get<int>()));
    std::vector<UpSet> sets;
    for (const Json& s : fam) sets.push_back(UpSet{mask_of(p, s)});
    CHECK(separation_deficit(p, sets, kinds[k]).empty());
  }

  // realizers rebuild into verified multi-utilities of the reported size
  const MuKind mu_kinds[3] = {MuKind::plain, MuKind::strict, MuKind::injective};
  const char* mu_names[3] = {"plain", "strict", "injective"};
  const Json mu_mins[3] = {j["min_mu_plain"], j["min_mu_strict"], j["min_mu_injective"]};
  for (int k = 0; k < 3; ++k) {
    Json real = w["min_mu_realizers"][mu_names[k]];
    REQUIRE(!real.is_null());
    REQUIRE(real.size() == static_cast<std::size_t>(mu_mins[k].get<int>()));
    Realizer rebuilt;
    rebuilt.kind = mu_kinds[k];
    for (const Json& lv : real) rebuilt.members.push_back(WeakOrder{lv.get<std::vector<int>>()});
    MultiUtility v = realizer_to_multi_utility(p, rebuilt);
    CHECK(verify_multi_utility(p, v).ok);
  }

  // density subsets pass the checks they were minimized for
  REQUIRE(!w["debreu_dense_subset"].is_null());
  REQUIRE(w["debreu_dense_subset"].size() ==
          static_cast<std::size_t>(j["debreu_dense_min"].get<int>()));
  CHECK(!debreu_check(p, mask_of(p, w["debreu_dense_subset"]), DebreuMode::dense));
  REQUIRE(!w["debreu_upper_subset"].is_null());
  REQUIRE(w["debreu_upper_subset"].size() ==
          static_cast<std::size_t>(j["debreu_upper_min"].get<int>()));
  CHECK(!debreu_check(p, mask_of(p, w["debreu_upper_subset"]), DebreuMode::upper));
}

TEST_CASE("reports carry nulls for skipped and budget-starved fields") {
  Preorder p = gen_standard_example(3);

  CrossCheckOptions opts;
  opts.mu_kind[static_cast<int>(MuKind::strict)] = false;
  opts.sep_kind[static_cast<int>(SepKind::III)] = false;
  opts.debreu_upper = false;
  SearchBudget budget;
  CrossCheckResult partial = cross_check(p, budget, opts);
  Json j = Json::parse(write_report(p, partial, budget));
  CHECK(j["min_mu_strict"].is_null());
  CHECK(j["min_sep_iii"].is_null());
  CHECK(j["debreu_upper_min"].is_null());
  CHECK(!j["min_mu_plain"].is_null());
  CHECK(j["witnesses"]["min_mu_realizers"]["strict"].is_null());
  CHECK(j["witnesses"]["min_sep_families"]["iii"].is_null());
  CHECK(j["witnesses"]["debreu_upper_subset"].is_null());
  Json skipped = j["witnesses"]["skipped"];
  CHECK(std::find(skipped.begin(), skipped.end(), Json("min_mu_strict")) != skipped.end());
  CHECK(std::find(skipped.begin(), skipped.end(), Json("min_sep_iii")) != skipped.end());
  CHECK(std::find(skipped.begin(), skipped.end(), Json("debreu_upper_min")) != skipped.end());

  SearchBudget tight;
  tight.max_k = 2;  // standard example needs 3
  CrossCheckResult starved = cross_check(p, tight);
  Json js = Json::parse(write_report(p, starved, tight));
  CHECK(js["min_mu_plain"].is_null());
  CHECK(js["witnesses"]["min_mu_realizers"]["plain"].is_null());
  Json exceeded = js["witnesses"]["exceeded"];
  CHECK(std::find(exceeded.begin(), exceeded.end(), Json("min_mu_plain")) != exceeded.end());
  CHECK(!js["min_sep_ii"].is_null());  // within budget, still reported
  REQUIRE(write_report(p, starved, tight) == js.dump(2) + "\n");
}

TEST_CASE("dot export lists quotient classes and covering edges") {
  CHECK(export_dot(gen_chain(3)) ==
        "digraph quotient {\n"
        "  \"x0\";\n"
        "  \"x1\";\n"
        "  \"x2\";\n"
        "  \"x0\" -> \"x1\";\n"
        "  \"x1\" -> \"x2\";\n"
        "}\n");

  std::string anti = export_dot(gen_antichain(3));
  CHECK(anti.find("->") == std::string::npos);
  CHECK(anti.find("\"x2\";") != std::string::npos);

  Preorder merged = build_preorder({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"b", "c"}},
                                   ClosureMode::reflexive_transitive_closure);
  CHECK(export_dot(merged) ==
        "digraph quotient {\n"
        "  \"a\" [label=\"a ~ b\"];\n"
        "  \"c\";\n"
        "  \"a\" -> \"c\";\n"
        "}\n");

  // diamond: the long diagonal is implied, not drawn
  Preorder diamond = build_preorder(
      {"bot", "l", "r", "top"},
      {{"bot", "l"}, {"bot", "r"}, {"l", "top"}, {"r", "top"}},
      ClosureMode::reflexive_transitive_closure);
  std::string dot = export_dot(diamond);
  std::size_t edges = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 1))
    ++edges;
  CHECK(edges == 4);
  CHECK(dot.find("\"bot\" -> \"top\"") == std::string::npos);

  Preorder quoted = build_preorder({"q\"x", "b\\s"}, {{"q\"x", "b\\s"}},
                                   ClosureMode::reflexive_transitive_closure);
  std::string esc = export_dot(quoted);
  CHECK(esc.find("q\\\"x") != std::string::npos);
  CHECK(esc.find("b\\\\s") != std::string::npos);
}

TEST_CASE("atomic file writes land whole and leave no temp files") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "preorders-io-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path target = dir / "report.json";

  atomic_write_file(target.string(), "first\n");
  {
    std::ifstream in(target);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "first\n");
  }
  CHECK(!fs::exists(target.string() + ".tmp"));

  atomic_write_file(target.string(), "second\n");
  {
    std::ifstream in(target);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "second\n");
  }
  CHECK(!fs::exists(target.string() + ".tmp"));

  fs::path missing = dir / "no-such-dir" / "report.json";
  CHECK(thrown_code([&] { atomic_write_file(missing.string(), "x"); }) == errc::bad_argument);
  fs::remove_all(dir);
}

TEST_CASE("tool version is a dotted release number") {
  std::string v = tool_version;
  int dots = 0;
  for (char c : v) {
    if (c == '.') {
      ++dots;
      continue;
    }
    CHECK(std::isdigit(static_cast<unsigned char>(c)));
  }
  CHECK(dots == 2);
  CHECK(v.front() != '.');
  CHECK(v.back() != '.');
}
