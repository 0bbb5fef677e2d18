#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dcenter/gentle.hpp"

namespace dcenter::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;      // counts and first failure, deterministic
  double seconds = 0;
  double budget_seconds = 0;  // 0: no runtime bound
};

/// Parameter triples with n <= max_n, 1 <= r <= n, m <= max_m.
std::vector<OmegaParams> grid(int max_n, int max_m);

struct AssociativityStats {
  std::size_t triples = 0;         // composable generator triples with total degree <= 2
  std::size_t vanishing = 0;       // triples whose total degree exceeds 2 (both sides zero)
  std::size_t violations = 0;
  std::size_t sigma_pairs = 0;     // (source, target, degree) checks of Σ on arrows
  std::size_t sigma_violations = 0;
  std::size_t morphism_pairs = 0;  // composable pairs checked with real morphisms
  std::string first_violation;
};

/// Associativity of composition and functoriality of Σ on one window.
AssociativityStats check_associativity(const OmegaParams& params, int window);

CriterionResult gentle_grid();
CriterionResult model_consistency();
CriterionResult hom_oracle();
CriterionResult generator_membership();
CriterionResult center_vs_theorems();
CriterionResult window_stabilization();
CriterionResult products();
CriterionResult tau_sigma();
CriterionResult determinism();

/// All criteria in order, each timed.
std::vector<std::function<CriterionResult()>> criteria();

/// One line: "[PASS] 3 hom oracle: ..." with an optional runtime suffix.
std::string format_result(const CriterionResult& r, bool with_time);

}  // namespace dcenter::acceptance
