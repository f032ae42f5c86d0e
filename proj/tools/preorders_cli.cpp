// Command-line front end: generate example preorders, classify documents,
// export quotient Hasse diagrams.
//
// Exit codes: 0 success, 1 invalid input document, 2 bad arguments,
// 3 budget exceeded.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "preorders/generators.hpp"
#include "preorders/io.hpp"
#include "preorders/oracle.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid_input = 1;
constexpr int exit_bad_args = 2;
constexpr int exit_budget = 3;

int exit_code_for(preorders::errc code) {
  switch (code) {
    case preorders::errc::bad_argument:
    case preorders::errc::size_overflow:
      return exit_bad_args;
    case preorders::errc::budget_exceeded:
      return exit_budget;
    default:
      return exit_invalid_input;
  }
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    preorders::atomic_write_file(out_path, content);
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) preorders::fail(preorders::errc::bad_document, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GenerateArgs {
  std::string name;
  std::string out;
  int n = 3;
  int omega = 3;
  int denom = 6;
  std::string variant = "incomparable";
  int m = 2;
  int min_size = 2;
  std::string density = "1/2";
  std::uint64_t seed = 0;
  int element_cap = 512;
};

preorders::Preorder run_generator(const GenerateArgs& a) {
  using namespace preorders;
  GenLimits limits{a.element_cap};
  if (a.name == "chain") return gen_chain(a.n, limits);
  if (a.name == "antichain") return gen_antichain(a.n, limits);
  if (a.name == "standard-example") return gen_standard_example(a.n, limits);
  if (a.name == "majorization") return gen_majorization(a.omega, a.denom, limits);
  if (a.name == "bridge") {
    if (a.variant != "incomparable" && a.variant != "strict")
      fail(errc::bad_argument, "variant must be 'incomparable' or 'strict'");
    return gen_bridge(a.n,
                      a.variant == "strict" ? BridgeVariant::strict : BridgeVariant::incomparable,
                      limits);
  }
  if (a.name == "two-wings") return gen_two_wings(a.n, limits);
  if (a.name == "double-powerset") return gen_double_powerset(a.m, limits);
  if (a.name == "nat-vs-sets") return gen_nat_vs_sets(a.m, a.min_size, limits);
  if (a.name == "random") return gen_random_preorder(a.n, parse_rat(a.density), a.seed, limits);
  fail(errc::bad_argument,
       "unknown generator '" + a.name +
           "' (expected chain, antichain, standard-example, majorization, bridge, "
           "two-wings, double-powerset, nat-vs-sets or random)");
}

struct AnalyzeArgs {
  std::string in;
  std::string out;
  int budget_k = 6;
  int element_cap = 512;
  std::string kind = "all";
  std::string sep_kind = "all";
  std::string mode = "both";
};

std::string plural(std::size_t n, const char* word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

void print_summary(const preorders::Preorder& p, const preorders::CrossCheckResult& r) {
  const auto& rep = r.report;
  auto show = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string("exceeded");
  };
  std::ostream& os = std::cerr;
  os << "ground elements:      " << p.size() << "\n";
  os << "quotient classes:     " << rep.quotient_size << "\n";
  os << "width:                " << rep.width << "\n";
  os << "has utility:          " << (rep.has_utility ? "yes" : "no");
  if (r.no_utility_witness)
    os << "  (incomparable: " << p.label(r.no_utility_witness->first) << " vs "
       << p.label(r.no_utility_witness->second) << ")";
  os << "\n";
  os << "min multi-utility:    plain " << show(rep.min_mu_plain) << ", strict "
     << show(rep.min_mu_strict) << ", injective " << show(rep.min_mu_injective) << "\n";
  os << "min separating family: kind I " << show(rep.min_sep_i) << ", kind II "
     << show(rep.min_sep_ii) << ", kind III " << show(rep.min_sep_iii) << "\n";
  os << "min dense subset:     " << show(rep.debreu_dense_min) << "\n";
  os << "min upper-dense subset: " << show(rep.debreu_upper_min) << "\n";
  if (!r.skipped.empty()) os << "skipped fields:       " << plural(r.skipped.size(), "field") << "\n";
  if (!r.discrepancies.empty()) {
    os << "DISCREPANCIES (" << r.discrepancies.size() << "):\n";
    for (const auto& d : r.discrepancies) os << "  - " << d << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Classification toolkit for finite preorders"};
  app.set_version_flag("--version", preorders::tool_version);
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Write an example preorder document");
  generate->add_option("name", gen.name, "Generator id")->required();
  generate->add_option("--n", gen.n, "Size parameter");
  generate->add_option("--omega", gen.omega, "Number of outcomes (majorization)");
  generate->add_option("--denom", gen.denom, "Probability denominator (majorization)");
  generate->add_option("--variant", gen.variant, "Bridge variant: incomparable|strict");
  generate->add_option("--m", gen.m, "Base set size (double-powerset, nat-vs-sets)");
  generate->add_option("--min-size", gen.min_size, "Smallest set size (nat-vs-sets)");
  generate->add_option("--density", gen.density, "Arc probability, rational (random)");
  generate->add_option("--seed", gen.seed, "RNG seed (random)");
  generate->add_option("--element-cap", gen.element_cap, "Refuse larger ground sets");
  generate->add_option("-o,--out", gen.out, "Output path (stdout when absent)");

  AnalyzeArgs an;
  CLI::App* analyze = app.add_subcommand("analyze", "Classify a preorder document");
  analyze->add_option("input", an.in, "Document path or '-' for stdin")->required();
  analyze->add_option("-o,--out", an.out, "Report path (stdout when absent)");
  analyze->add_option("--budget-k", an.budget_k, "Largest family/realizer size searched")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--element-cap", an.element_cap, "Refuse larger ground sets");
  analyze->add_option("--kind", an.kind, "Multi-utility kinds: plain|strict|injective|all");
  analyze->add_option("--sep-kind", an.sep_kind, "Separation kinds: i|ii|iii|all");
  analyze->add_option("--mode", an.mode, "Density modes: dense|upper|both");

  std::string dot_in, dot_out;
  CLI::App* export_dot_cmd = app.add_subcommand("export-dot", "Quotient Hasse diagram as DOT");
  export_dot_cmd->add_option("input", dot_in, "Document path or '-' for stdin")->required();
  export_dot_cmd->add_option("-o,--out", dot_out, "Output path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_bad_args;
  }

  if (generate->parsed()) {
    preorders::Preorder p = run_generator(gen);
    emit(preorders::write_document(preorders::to_document(p)), gen.out);
    return exit_ok;
  }

  if (analyze->parsed()) {
    preorders::CrossCheckOptions options;
    if (an.kind != "all") {
      bool p = an.kind == "plain", s = an.kind == "strict", i = an.kind == "injective";
      if (!p && !s && !i)
        preorders::fail(preorders::errc::bad_argument,
                        "--kind must be plain, strict, injective or all");
      options.mu_kind[0] = p;
      options.mu_kind[1] = s;
      options.mu_kind[2] = i;
    }
    if (an.sep_kind != "all") {
      bool i = an.sep_kind == "i", ii = an.sep_kind == "ii", iii = an.sep_kind == "iii";
      if (!i && !ii && !iii)
        preorders::fail(preorders::errc::bad_argument, "--sep-kind must be i, ii, iii or all");
      options.sep_kind[0] = i;
      options.sep_kind[1] = ii;
      options.sep_kind[2] = iii;
    }
    if (an.mode == "dense")
      options.debreu_upper = false;
    else if (an.mode == "upper")
      options.debreu_dense = false;
    else if (an.mode != "both")
      preorders::fail(preorders::errc::bad_argument, "--mode must be dense, upper or both");

    preorders::Preorder p = preorders::to_preorder(preorders::parse_document(slurp(an.in)));
    if (p.size() > an.element_cap)
      preorders::fail(preorders::errc::budget_exceeded,
                      "document has " + std::to_string(p.size()) + " elements (cap " +
                          std::to_string(an.element_cap) + ")");
    preorders::SearchBudget budget;
    budget.max_k = an.budget_k;
    preorders::CrossCheckResult r = preorders::cross_check(p, budget, options);
    emit(preorders::write_report(p, r, budget), an.out);
    print_summary(p, r);
    return r.exceeded.empty() ? exit_ok : exit_budget;
  }

  preorders::Preorder p = preorders::to_preorder(preorders::parse_document(slurp(dot_in)));
  emit(preorders::export_dot(p), dot_out);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const preorders::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid_input;
  }
}
