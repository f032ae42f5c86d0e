#pragma once

#include <stdexcept>
#include <string>

namespace preorders {

// Every contract violation carries a code so callers (in particular the CLI)
// can map failures to exit codes without parsing messages.
enum class errc {
  duplicate_label,
  unknown_label,
  not_reflexive,
  not_transitive,
  empty_subset,
  size_overflow,
  size_mismatch,
  family_does_not_separate,
  kind_violation,
  alphas_insufficient,
  not_increasing,
  not_separating_family,
  budget_exceeded,
  bad_argument,
  bad_document,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::duplicate_label: return "DuplicateLabel";
    case errc::unknown_label: return "UnknownLabel";
    case errc::not_reflexive: return "NotReflexive";
    case errc::not_transitive: return "NotTransitive";
    case errc::empty_subset: return "EmptySubset";
    case errc::size_overflow: return "SizeOverflow";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::family_does_not_separate: return "FamilyDoesNotSeparate";
    case errc::kind_violation: return "KindViolation";
    case errc::alphas_insufficient: return "AlphasInsufficient";
    case errc::not_increasing: return "NotIncreasing";
    case errc::not_separating_family: return "NotSeparatingFamily";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::bad_argument: return "BadArgument";
    case errc::bad_document: return "BadDocument";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace preorders
