#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcenter/center.hpp"

namespace dcenter::ring {

/// A copy of F^N placed in degree `shift`. `truncation` bounds the displayed
/// coordinates 0..Q and is not part of the ring itself.
struct SocleItem {
  int shift = 0;
  std::optional<int> truncation;
  bool operator==(const SocleItem& o) const { return shift == o.shift; }
};

/// F (poly_degree = 0) or F[X^k] (poly_degree = k, generator in degree k),
/// optionally extended trivially by a direct sum of shifted copies of F^N.
struct RingPresentation {
  int poly_degree = 0;
  std::vector<SocleItem> socle;

  bool is_field() const { return poly_degree == 0; }
  bool operator==(const RingPresentation&) const = default;
};

/// Canonical text: `F`, `F[X]`, `F[X^6]`, `T(F, F^N[-3])`, `T(F, F^N + F^N[-2])`.
std::string to_string(const RingPresentation& r);

/// The row of the center theorem that applies to (params, char).
RingPresentation theorem_case(const OmegaParams& params, unsigned characteristic,
                              center::Variant variant);

struct ReducedNil {
  RingPresentation reduced;  // the base ring
  RingPresentation nil;      // socle part, printed as a module ("0" when empty)
  bool nil_nonzero = false;
};

ReducedNil reduced_and_nil(const RingPresentation& r);
/// The nilpotent part as module text: `0`, `F^N`, `F^N + F^N[-2]`.
std::string nil_to_string(const ReducedNil& rn);

/// Predicted solver output in one degree.
struct Expectation {
  std::size_t global = 0;          // contribution of the base ring
  std::size_t per_class = 0;       // socle copies sitting in this degree
  std::optional<model::Family> class_family;
};

Expectation expected_component(const OmegaParams& params, const RingPresentation& r, int p);

struct DegreeCheck {
  int degree = 0;
  Expectation expected;
  center::ComponentSolution solution;
  std::size_t visible_classes = 0;
  bool match = false;
  std::string detail;
};

struct ReconcileReport {
  OmegaParams params;
  unsigned characteristic = 0;
  center::Variant variant = center::Variant::Graded;
  RingPresentation presentation;
  std::vector<DegreeCheck> degrees;
  bool ok() const;
};

/// Solves every degree 0..degree_bound and compares with the theorem row.
/// Without a window each degree uses its default inner window plus margin;
/// with one, the inner window is window - margin(p). Degrees run in parallel.
ReconcileReport reconcile(const OmegaParams& params, gf::PrimeField field, center::Variant variant,
                          int degree_bound, std::optional<model::Window> window = std::nullopt);

std::string format_report(const ReconcileReport& report);

}  // namespace dcenter::ring
