#include "dcenter/ring.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>
#include <thread>

namespace dcenter::ring {

namespace {

std::string base_text(int k) {
  if (k == 0) return "F";
  if (k == 1) return "F[X]";
  return "F[X^" + std::to_string(k) + "]";
}

std::string socle_text(const std::vector<SocleItem>& socle) {
  if (socle.empty()) return "0";
  std::string out;
  for (const auto& item : socle) {
    if (!out.empty()) out += " + ";
    out += "F^N";
    if (item.shift != 0) out += "[-" + std::to_string(item.shift) + "]";
  }
  return out;
}

}  // namespace

std::string to_string(const RingPresentation& r) {
  if (r.socle.empty()) return base_text(r.poly_degree);
  return "T(" + base_text(r.poly_degree) + ", " + socle_text(r.socle) + ")";
}

RingPresentation theorem_case(const OmegaParams& params, unsigned characteristic,
                              center::Variant variant) {
  params.validate();
  const auto [r, n, m] = params;
  const bool graded = variant == center::Variant::Graded;
  RingPresentation out;
  if (r == 1 && n == 1 && m == 0) {
    out.poly_degree = (!graded || characteristic == 2) ? 1 : 2;
    out.socle = {SocleItem{0, {}}};
  } else if (r == n) {
    const bool even = (static_cast<long>(n) * characteristic) % 2 == 0;
    out.poly_degree = (!graded || even) ? n : 2 * n;
  } else if (r == 1 && n == 2 && m == 0) {
    out.socle = {SocleItem{0, {}}, SocleItem{n, {}}};
  } else if (r == n - 1) {
    out.socle = {SocleItem{n, {}}};
  } else if (r == 1 && m == 0) {
    out.socle = {SocleItem{0, {}}};
  }
  return out;
}

ReducedNil reduced_and_nil(const RingPresentation& r) {
  ReducedNil out;
  out.reduced.poly_degree = r.poly_degree;
  out.nil.socle = r.socle;
  out.nil_nonzero = !r.socle.empty();
  return out;
}

std::string nil_to_string(const ReducedNil& rn) { return socle_text(rn.nil.socle); }

Expectation expected_component(const OmegaParams& params, const RingPresentation& r, int p) {
  Expectation e;
  if (p == 0)
    e.global = 1;
  else if (r.poly_degree > 0 && p % r.poly_degree == 0)
    e.global = 1;
  for (const auto& item : r.socle)
    if (item.shift == p) ++e.per_class;
  // Degree-zero socle lives on X-classes; shifted socle on Y-classes.
  if (e.per_class > 0) e.class_family = (p == 0 || params.r == params.n) ? model::Family::X
                                                                           : model::Family::Y;
  return e;
}

bool ReconcileReport::ok() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeCheck& d) { return d.match; });
}

namespace {

std::set<center::ClassKey> visible_classes(const model::Model& m, model::Family family,
                                           model::Window inner) {
  std::set<center::ClassKey> out;
  for (const auto& v : m.enumerate_vertices(inner))
    if (v.family == family)
      if (auto key = center::class_of(m, v); key && key->q >= 0) out.insert(*key);
  return out;
}

DegreeCheck check_degree(const model::Model& m, const RingPresentation& pres, gf::PrimeField field,
                         center::Variant variant, int p, std::optional<model::Window> window) {
  const auto& params = m.params();
  model::Window outer, inner;
  if (window) {
    outer = *window;
    inner = model::Window{window->half_width - center::margin(params, p)};
  } else {
    inner = center::default_inner_window(params, p);
    outer = model::Window{inner.half_width + center::margin(params, p)};
  }
  DegreeCheck d;
  d.degree = p;
  d.expected = expected_component(params, pres, p);
  d.solution = center::solve_component(m, p, variant, field, outer, inner);

  std::ostringstream why;
  bool ok = d.solution.global_dimension == d.expected.global;
  if (!ok) why << "global " << d.solution.global_dimension << " != " << d.expected.global << "; ";
  std::set<center::ClassKey> expected_keys;
  if (d.expected.class_family) expected_keys = visible_classes(m, *d.expected.class_family, inner);
  d.visible_classes = expected_keys.size();
  std::set<center::ClassKey> seen;
  for (const auto& c : d.solution.classes) {
    seen.insert(c.key);
    if (!expected_keys.count(c.key) || c.dimension != d.expected.per_class) {
      ok = false;
      why << "class " << center::to_string(c.key) << " has dimension " << c.dimension << "; ";
    }
  }
  for (const auto& k : expected_keys)
    if (!seen.count(k)) {
      ok = false;
      why << "class " << center::to_string(k) << " missing; ";
    }
  d.match = ok;
  d.detail = why.str();
  if (!d.detail.empty()) d.detail.resize(d.detail.size() - 2);
  return d;
}

}  // namespace

ReconcileReport reconcile(const OmegaParams& params, gf::PrimeField field, center::Variant variant,
                          int degree_bound, std::optional<model::Window> window) {
  params.validate();
  if (degree_bound < 0) throw InvalidInput("negative degree bound");
  ReconcileReport report;
  report.params = params;
  report.characteristic = field.characteristic();
  report.variant = variant;
  report.presentation = theorem_case(params, field.characteristic(), variant);
  if (window)
    for (int p = 0; p <= degree_bound; ++p)
      if (window->half_width - center::margin(params, p) < 0)
        throw center::WindowError("window " + std::to_string(window->half_width) +
                                  " is smaller than the margin " +
                                  std::to_string(center::margin(params, p)) + " at degree " +
                                  std::to_string(p));

  const model::Model m(params);
  report.degrees.resize(static_cast<std::size_t>(degree_bound) + 1);
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1) {
    for (int p = 0; p <= degree_bound; ++p)
      report.degrees[static_cast<std::size_t>(p)] =
          check_degree(m, report.presentation, field, variant, p, window);
    return report;
  }
  std::vector<std::future<DegreeCheck>> tasks;
  for (int p = 0; p <= degree_bound; ++p)
    tasks.push_back(std::async(std::launch::async, check_degree, std::cref(m),
                               std::cref(report.presentation), field, variant, p, window));
  for (std::size_t k = 0; k < tasks.size(); ++k) report.degrees[k] = tasks[k].get();
  return report;
}

std::string format_report(const ReconcileReport& report) {
  std::ostringstream out;
  out << "params " << to_string(report.params) << " variant " << center::to_string(report.variant)
      << " char " << report.characteristic << "\n";
  out << "presentation " << to_string(report.presentation) << "\n";
  for (const auto& d : report.degrees) {
    out << "p=" << d.degree << " inner=" << d.solution.inner.half_width
        << " global=" << d.solution.global_dimension << "/" << d.expected.global
        << " classes=" << d.solution.classes.size() << "/" << d.visible_classes
        << " per_class=" << d.expected.per_class << " " << (d.match ? "match" : "MISMATCH");
    if (!d.detail.empty()) out << " (" << d.detail << ")";
    out << "\n";
  }
  out << (report.ok() ? "reconcile: ok" : "reconcile: FAILED") << "\n";
  return out.str();
}

}  // namespace dcenter::ring
