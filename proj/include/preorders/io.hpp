#pragma once

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "preorder.hpp"

namespace preorders {

using Json = nlohmann::ordered_json;  // insertion order = serialized order

inline const char* closure_mode_name(ClosureMode m) {
  return m == ClosureMode::as_given ? "as-given" : "reflexive-transitive-closure";
}

inline ClosureMode parse_closure_mode(const std::string& s) {
  if (s == "as-given") return ClosureMode::as_given;
  if (s == "reflexive-transitive-closure") return ClosureMode::reflexive_transitive_closure;
  fail(errc::bad_document, "unknown closure mode '" + s + "'");
}

struct PreorderDocument {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> pairs;
  ClosureMode closure = ClosureMode::reflexive_transitive_closure;
};

// Document for an existing preorder: every non-reflexive related pair in
// ground order, closure mode set so rebuilding only restores the diagonal.
inline PreorderDocument to_document(const Preorder& p) {
  PreorderDocument doc;
  doc.elements = p.ground().labels;
  doc.closure = ClosureMode::reflexive_transitive_closure;
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (x != y && p.leq(x, y)) doc.pairs.emplace_back(p.label(x), p.label(y));
  return doc;
}

inline Preorder to_preorder(const PreorderDocument& doc) {
  return build_preorder(doc.elements, doc.pairs, doc.closure);
}

inline std::string write_document(const PreorderDocument& doc) {
  Json j;
  j["elements"] = doc.elements;
  Json pairs = Json::array();
  for (const auto& [from, to] : doc.pairs) pairs.push_back(Json::array({from, to}));
  j["pairs"] = std::move(pairs);
  j["closure"] = closure_mode_name(doc.closure);
  return j.dump(2) + "\n";
}

inline PreorderDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(errc::bad_document, e.what());
  }
  if (!j.is_object()) fail(errc::bad_document, "top level must be an object");
  for (const char* key : {"elements", "pairs", "closure"})
    if (!j.contains(key)) fail(errc::bad_document, std::string("missing key '") + key + "'");

  PreorderDocument doc;
  if (!j["elements"].is_array()) fail(errc::bad_document, "'elements' must be an array");
  for (const Json& e : j["elements"]) {
    if (!e.is_string()) fail(errc::bad_document, "'elements' entries must be strings");
    doc.elements.push_back(e.get<std::string>());
  }
  if (!j["pairs"].is_array()) fail(errc::bad_document, "'pairs' must be an array");
  for (const Json& e : j["pairs"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      fail(errc::bad_document, "'pairs' entries must be [from, to] label pairs");
    doc.pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  if (!j["closure"].is_string()) fail(errc::bad_document, "'closure' must be a string");
  doc.closure = parse_closure_mode(j["closure"].get<std::string>());
  return doc;
}

inline constexpr const char* tool_version = "1.0.0";

namespace detail {

inline Json labels_of(const Preorder& p, const std::vector<int>& indices) {
  Json out = Json::array();
  for (int x : indices) out.push_back(p.label(x));
  return out;
}

inline Json labels_of_mask(const Preorder& p, const Bits& mask) {
  Json out = Json::array();
  for (int x = static_cast<int>(mask.find_first()); x != -1;
       x = static_cast<int>(mask.find_next(x)))
    out.push_back(p.label(x));
  return out;
}

inline Json opt_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace detail

// Flat report document: classification fields in fixed order, then the
// budgets in force and a witnesses object. Byte-deterministic for a fixed
// input, version and budget set.
inline std::string write_report(const Preorder& p, const CrossCheckResult& r,
                                const SearchBudget& budget) {
  QuotientPoset q = quotient(p);
  Json j;
  j["version"] = tool_version;
  j["quotient_size"] = r.report.quotient_size;
  j["width"] = r.report.width;
  j["has_utility"] = r.report.has_utility;
  j["min_mu_plain"] = detail::opt_int(r.report.min_mu_plain);
  j["min_mu_strict"] = detail::opt_int(r.report.min_mu_strict);
  j["min_mu_injective"] = detail::opt_int(r.report.min_mu_injective);
  j["min_sep_i"] = detail::opt_int(r.report.min_sep_i);
  j["min_sep_ii"] = detail::opt_int(r.report.min_sep_ii);
  j["min_sep_iii"] = detail::opt_int(r.report.min_sep_iii);
  j["debreu_dense_min"] = detail::opt_int(r.report.debreu_dense_min);
  j["debreu_upper_min"] = detail::opt_int(r.report.debreu_upper_min);

  Json budgets;
  budgets["budget_k"] = budget.max_k;
  budgets["max_classes"] = budget.max_classes;
  budgets["max_nodes"] = budget.max_nodes;
  budgets["max_pool"] = budget.max_pool;
  j["budgets"] = std::move(budgets);

  Json w;
  Json classes = Json::array();
  for (int a = 0; a < q.size(); ++a) classes.push_back(detail::labels_of(p, q.classes[a]));
  w["classes"] = std::move(classes);
  w["width_antichain"] = detail::labels_of(p, r.width_antichain);
  w["no_utility"] = r.no_utility_witness
                        ? Json::array({p.label(r.no_utility_witness->first),
                                       p.label(r.no_utility_witness->second)})
                        : Json(nullptr);
  Json families;
  const char* sep_names[3] = {"i", "ii", "iii"};
  for (int k = 0; k < 3; ++k) {
    if (r.sep_family[k]) {
      Json fam = Json::array();
      for (const UpSet& s : r.sep_family[k]->sets)
        fam.push_back(detail::labels_of_mask(p, s.members));
      families[sep_names[k]] = std::move(fam);
    } else {
      families[sep_names[k]] = nullptr;
    }
  }
  w["min_sep_families"] = std::move(families);
  Json realizers;
  const char* mu_names[3] = {"plain", "strict", "injective"};
  for (int k = 0; k < 3; ++k) {
    if (r.mu_realizer[k]) {
      Json members = Json::array();
      for (const WeakOrder& m : r.mu_realizer[k]->members) members.push_back(m.level);
      realizers[mu_names[k]] = std::move(members);
    } else {
      realizers[mu_names[k]] = nullptr;
    }
  }
  w["min_mu_realizers"] = std::move(realizers);
  w["debreu_dense_subset"] =
      r.debreu_dense_subset ? detail::labels_of(p, *r.debreu_dense_subset) : Json(nullptr);
  w["debreu_upper_subset"] =
      r.debreu_upper_subset ? detail::labels_of(p, *r.debreu_upper_subset) : Json(nullptr);
  w["exceeded"] = r.exceeded;
  w["skipped"] = r.skipped;
  w["discrepancies"] = r.discrepancies;
  j["witnesses"] = std::move(w);
  return j.dump(2) + "\n";
}

namespace detail {
inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace detail

// Quotient Hasse diagram: one node per class (id = representative label,
// extra members shown in the node label), one edge per covering pair.
inline std::string export_dot(const Preorder& p) {
  QuotientPoset q = quotient(p);
  const int c = q.size();
  std::string out = "digraph quotient {\n";
  for (int a = 0; a < c; ++a) {
    out += "  \"" + detail::dot_escape(p.label(q.representative(a))) + "\"";
    if (q.classes[a].size() > 1) {
      std::string text;
      for (int x : q.classes[a]) {
        if (!text.empty()) text += " ~ ";
        text += p.label(x);
      }
      out += " [label=\"" + detail::dot_escape(text) + "\"]";
    }
    out += ";\n";
  }
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b) {
      if (!q.less(a, b)) continue;
      bool covering = true;
      for (int mid = 0; mid < c && covering; ++mid)
        if (q.less(a, mid) && q.less(mid, b)) covering = false;
      if (covering)
        out += "  \"" + detail::dot_escape(p.label(q.representative(a))) + "\" -> \"" +
               detail::dot_escape(p.label(q.representative(b))) + "\";\n";
    }
  out += "}\n";
  return out;
}

// Write to a sibling temp file, then rename into place.
inline void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::bad_argument, "cannot open '" + tmp.string() + "' for writing");
    out << content;
    if (!out.flush()) fail(errc::bad_argument, "failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace preorders
