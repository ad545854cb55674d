#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "wordlogic/theorems.hpp"

namespace wordlogic::theorems {

/// In-process spot checks of the library invariants: circular
/// squarefreeness vs unbordered conjugates, agreement of the three
/// constructions of c, repetition-freeness of prefixes, padding closure,
/// minimization, De Morgan and quantifier duality on compiled predicates.
VerificationReport property_suite(const std::filesystem::path& corpus_dir);

struct AcceptanceOptions {
  RunOptions run;
  CorpusOptions corpus;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  std::vector<VerificationReport> reports;
  bool gating = true;
  bool passed = true;
};

/// Criteria 1 to 12 with the parameters fixed by the acceptance list.
/// `progress` sees each criterion as soon as it is decided.
std::vector<CriterionResult> acceptance_suite(const AcceptanceOptions& opt,
                                              const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace wordlogic::theorems
