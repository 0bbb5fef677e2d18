#include "dcenter/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

#include "dcenter/acceptance.hpp"
#include "dcenter/center.hpp"
#include "dcenter/dot.hpp"
#include "dcenter/gentle.hpp"
#include "dcenter/hom.hpp"
#include "dcenter/ring.hpp"

namespace dcenter::cli {

namespace {

using model::Window;

struct ParamFlags {
  int r = 0, n = 0, m = -1;
  void add(CLI::App* app) {
    app->add_option("--r", r, "relation count r (1 <= r <= n)")->required();
    app->add_option("--n", n, "cycle length n (n >= 1)")->required();
    app->add_option("--m", m, "tail length m (m >= 0)")->required();
  }
  OmegaParams get() const {
    OmegaParams p{r, n, m};
    p.validate();
    return p;
  }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string arrow_names(const gentle::GentleQuiver& q, const std::vector<std::size_t>& ids) {
  if (ids.empty()) return "-";
  std::vector<std::string> names;
  for (auto id : ids) names.push_back(q.arrows()[id].name);
  std::sort(names.begin(), names.end());
  std::string out;
  for (const auto& s : names) out += (out.empty() ? "" : " ") + s;
  return out;
}

/// Prints the validation report; returns false when the quiver is not gentle.
bool report_quiver(const gentle::GentleQuiver& q, std::ostream& out) {
  const auto report = gentle::check_gentle(q);
  if (!report.gentle) {
    out << "gentle: no, one-cycle: n/a, clock condition: n/a\n";
    for (const auto& v : report.violations)
      out << "violation: axiom " << v.axiom << " at " << v.where << ": " << v.message << "\n";
    return false;
  }
  const bool one_cycle = gentle::is_one_cycle(q);
  if (!one_cycle) {
    out << "gentle: yes, one-cycle: no, clock condition: n/a\n";
    return true;
  }
  const auto counts = gentle::clock_counts(q);
  out << "gentle: yes, one-cycle: yes, clock condition: "
      << (counts.clockwise == counts.anticlockwise ? "satisfied" : "fails") << "\n";
  const auto arrows = gentle::cycle_arrows(q);
  out << "clockwise: " << arrow_names(q, arrows.clockwise) << "\n";
  out << "anticlockwise: " << arrow_names(q, arrows.anticlockwise) << "\n";
  out << "non-cycle: " << arrow_names(q, arrows.non_cycle) << "\n";
  out << "relations on clockwise arrows: " << counts.clockwise
      << ", on anticlockwise arrows: " << counts.anticlockwise << "\n";
  return true;
}

model::Family parse_family(const std::string& s) {
  if (s == "X") return model::Family::X;
  if (s == "Y") return model::Family::Y;
  if (s == "Z") return model::Family::Z;
  throw InvalidInput("unknown family '" + s + "' (expected X, Y or Z)");
}

center::GeneratorSpec parse_generator(const std::string& s) {
  const auto colon = s.find(':');
  const std::string name = s.substr(0, colon);
  int index = 0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      index = std::stoi(s.substr(colon + 1), &used);
      if (used != s.size() - colon - 1) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw InvalidInput("bad generator index in '" + s + "'");
    }
  }
  using N = center::GeneratorSpec::Name;
  if (name == "identity") return {N::Identity, index};
  if (name == "eta_prime") return {N::EtaPrime, index};
  if (name == "eta_dprime") return {N::EtaDPrime, index};
  if (name == "eta_zero") return {N::EtaZero, index};
  if (name == "eta_power") return {N::EtaPower, index};
  throw InvalidInput("unknown generator '" + name +
                     "' (expected identity, eta_prime, eta_dprime, eta_zero or eta_power)");
}

int cmd_lambda(const OmegaParams& p, std::ostream& out) {
  const auto q = gentle::build_lambda(p);
  out << "# Lambda" << to_string(p) << "\n" << gentle::format_quiver(q);
  report_quiver(q, out);
  const model::Model m(p);
  out << "global dimension: " << (p.r == p.n ? "infinite" : "finite") << "\n";
  if (auto w = m.tau_sigma_witness())
    out << "tau-sigma periodic: yes (" << model::family_letter(w->family) << ", p=" << w->p << ")\n";
  else
    out << "tau-sigma periodic: no\n";
  return kSuccess;
}

int cmd_hom(const OmegaParams& p, const std::string& family, int i, int a, int b, int deg,
            std::ostream& out) {
  const model::Model m(p);
  const model::Vertex v{parse_family(family), i, {a, b}};
  if (!m.vertex_exists(v.family, v.i, v.coord))
    throw InvalidInput(model::to_string(v) + " is not a vertex of the model");
  const auto space = hom::hom_basis(m, v, deg);
  const int closed = hom::hom_dim_closed_form(p, v, deg);
  out << "vertex " << model::to_string(v) << " p " << deg << " target "
      << model::to_string(space.target) << "\n";
  out << "basis";
  if (space.basis.empty()) out << " -";
  for (const auto& e : space.basis) out << " " << (e.is_identity() ? "id" : model::kind_name(*e.kind));
  out << "\n";
  out << "dimension " << space.dimension() << "\n";
  out << "closed form " << closed << "\n";
  if (static_cast<int>(space.dimension()) != closed) {
    out << "MISMATCH between the arrow model and the closed form\n";
    return kConsistencyFailure;
  }
  return kSuccess;
}

int cmd_center(const OmegaParams& p, int deg, const std::string& variant_name, unsigned field_char,
               int window, int inner_override, const std::string& generator, std::ostream& out) {
  const auto variant = center::parse_variant(variant_name);
  const gf::PrimeField field(field_char);
  const model::Model m(p);
  const int margin = center::margin(p, deg);
  const Window outer{window};
  const Window inner{inner_override >= 0 ? inner_override : window - margin};
  if (window < 0 || inner.half_width < 0 || inner.half_width + margin > window)
    throw center::WindowError("window " + std::to_string(window) + " cannot hold inner window " +
                              std::to_string(inner.half_width) + " plus margin " + std::to_string(margin) +
                              " at degree " + std::to_string(deg));
  out << "params " << to_string(p) << " degree " << deg << " variant " << center::to_string(variant)
      << " field " << field_char << "\n";
  out << "window " << window << " inner " << inner.half_width << " margin " << margin << "\n";

  if (!generator.empty()) {
    const auto spec = parse_generator(generator);
    if (center::generator_degree(p, spec) != deg && center::admissible(p, spec))
      throw InvalidInput(center::to_string(spec) + " has degree " +
                         std::to_string(center::generator_degree(p, spec)) + ", not " +
                         std::to_string(deg));
    const auto el = center::make_generator(m, spec, outer, field);
    const auto res = center::check_membership(m, el, variant, outer, inner);
    out << "generator " << center::to_string(spec) << " support " << el.values.size() << "\n";
    out << "naturality checks " << res.naturality_checks << " sign checks " << res.sign_checks << "\n";
    out << "member: " << yes_no(res.ok) << "\n";
    if (!res.ok) out << "violation: " << res.violation << "\n";
    return kSuccess;
  }

  const auto sol = center::solve_component(m, deg, variant, field, outer, inner);
  out << "unknowns " << sol.unknowns << " equations " << sol.equations << " rank " << sol.rank << "\n";
  out << "dimension " << sol.dimension << "\n";
  out << "global " << sol.global_dimension << "\n";
  for (const auto& c : sol.classes) out << "class " << center::to_string(c.key) << " " << c.dimension << "\n";
  return kSuccess;
}

int cmd_ring(const OmegaParams& p, unsigned field_char, const std::string& variant_name, bool do_reconcile,
             int bound, int window, std::ostream& out) {
  const auto variant = center::parse_variant(variant_name);
  const gf::PrimeField field(field_char);
  const auto pres = ring::theorem_case(p, field_char, variant);
  const auto rn = ring::reduced_and_nil(pres);
  out << ring::to_string(pres) << "\n";
  out << "reduced: " << ring::to_string(rn.reduced) << "\n";
  out << "nilpotent: " << ring::nil_to_string(rn) << "\n";
  if (!do_reconcile) return kSuccess;
  if (bound < 0) bound = 2 * p.n;
  if (bound < 2 * p.n)
    throw InvalidInput("degree bound " + std::to_string(bound) + " is below 2n = " + std::to_string(2 * p.n));
  std::optional<Window> w;
  if (window >= 0) w = Window{window};
  const auto report = ring::reconcile(p, field, variant, bound, w);
  out << ring::format_report(report);
  return report.ok() ? kSuccess : kConsistencyFailure;
}

int cmd_check_params(const OmegaParams& p, unsigned field_char, std::ostream& out) {
  const gf::PrimeField field(field_char);
  const model::Model m(p);
  bool ok = true;

  const auto q = gentle::build_lambda(p);
  const bool quiver_ok = gentle::is_gentle(q) && gentle::is_one_cycle(q) && !gentle::clock_condition(q);
  out << "quiver: " << (quiver_ok ? "ok" : "FAILED") << "\n";
  ok = ok && quiver_ok;

  const auto assoc = acceptance::check_associativity(p, 3);
  const bool assoc_ok = assoc.violations == 0 && assoc.sigma_violations == 0;
  out << "composition: " << assoc.triples << " triples, " << assoc.violations + assoc.sigma_violations
      << " violations\n";
  ok = ok && assoc_ok;

  std::size_t hom_bad = 0, hom_total = 0;
  for (const auto& v : m.enumerate_vertices(Window{4}))
    for (int d = 0; d <= 2 * p.n + 2; ++d, ++hom_total)
      if (static_cast<int>(hom::hom_basis(m, v, d).dimension()) != hom::hom_dim_closed_form(p, v, d))
        ++hom_bad;
  out << "hom oracle: " << hom_total << " spaces, " << hom_bad << " mismatches\n";
  ok = ok && hom_bad == 0;

  const bool periodic = m.tau_sigma_periodic();
  const bool ts_ok = periodic == m.tau_sigma_periodic_closed_form();
  out << "tau-sigma periodic: " << yes_no(periodic) << (ts_ok ? "" : " (closed form disagrees)") << "\n";
  ok = ok && ts_ok;

  for (auto variant : {center::Variant::Graded, center::Variant::Commutative}) {
    const auto report = ring::reconcile(p, field, variant, 2 * p.n);
    const auto rn = ring::reduced_and_nil(report.presentation);
    const bool agree = rn.nil_nonzero == periodic && (!rn.reduced.is_field()) == (p.r == p.n);
    out << center::to_string(variant) << ": " << ring::to_string(report.presentation) << ", "
        << report.degrees.size() << " degrees " << (report.ok() ? "match" : "MISMATCH")
        << (agree ? "" : ", reduced/nilpotent parts disagree") << "\n";
    if (!report.ok()) out << ring::format_report(report);
    ok = ok && report.ok() && agree;
  }
  out << "check: " << (ok ? "ok" : "FAILED") << "\n";
  return ok ? kSuccess : kConsistencyFailure;
}

int cmd_check_grid(std::ostream& out) {
  std::size_t passed = 0, total = 0;
  for (const auto& criterion : acceptance::criteria()) {
    const auto res = criterion();
    ++total;
    passed += res.passed ? 1 : 0;
    out << acceptance::format_result(res, false) << "\n";
    out.flush();
  }
  out << "acceptance: " << passed << "/" << total << " passed\n";
  return passed == total ? kSuccess : kConsistencyFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded centers of derived discrete algebras Lambda(r,n,m)", "dcenter"};
  app.require_subcommand(1);

  std::string quiver_path;
  auto* validate = app.add_subcommand("validate", "check a quiver file for gentleness and the clock condition");
  validate->add_option("file", quiver_path, "quiver file")->required();

  ParamFlags lambda_p;
  auto* lambda = app.add_subcommand("lambda", "print the quiver of Lambda(r,n,m) and its invariants");
  lambda_p.add(lambda);

  ParamFlags hom_p;
  std::string family = "X";
  int hom_i = 0, hom_a = 0, hom_b = 0, hom_deg = 0;
  auto* homc = app.add_subcommand("hom", "basis of Hom(v, S^p v) and its closed-form dimension");
  hom_p.add(homc);
  homc->add_option("--family", family, "X, Y or Z")->capture_default_str();
  homc->add_option("--i", hom_i, "cyclic index")->capture_default_str();
  homc->add_option("--a", hom_a, "first coordinate")->required();
  homc->add_option("--b", hom_b, "second coordinate")->required();
  homc->add_option("--p", hom_deg, "degree p >= 0")->required();

  ParamFlags center_p;
  int center_deg = 0, window = 10, inner = -1;
  unsigned field_char = 3;
  std::string variant = "graded", generator;
  auto* centerc = app.add_subcommand("center", "solve for the degree-p component of the center");
  center_p.add(centerc);
  centerc->add_option("--p", center_deg, "degree p >= 0")->required();
  centerc->add_option("--variant", variant, "graded or commutative")->capture_default_str();
  centerc->add_option("--field", field_char, "prime characteristic")->capture_default_str();
  centerc->add_option("--window", window, "outer window half-width")->capture_default_str();
  centerc->add_option("--inner", inner, "inner window (default: window minus margin)");
  centerc->add_option("--generator", generator,
                      "check membership of NAME[:INDEX] instead of solving "
                      "(identity, eta_prime, eta_dprime, eta_zero, eta_power)");

  ParamFlags ring_p;
  unsigned ring_char = 3;
  std::string ring_variant = "graded";
  bool do_reconcile = false;
  int bound = -1, ring_window = -1;
  auto* ringc = app.add_subcommand("ring", "ring presentation of the center from the theorem tables");
  ring_p.add(ringc);
  ringc->add_option("--char,--field", ring_char, "prime characteristic")->capture_default_str();
  ringc->add_option("--variant", ring_variant, "graded or commutative")->capture_default_str();
  ringc->add_flag("--reconcile", do_reconcile, "compare with the solver in degrees 0..bound");
  ringc->add_option("--bound", bound, "degree bound for --reconcile (default 2n)");
  ringc->add_option("--window", ring_window, "outer window for --reconcile (default: per degree)");

  bool grid = false;
  int check_r = 0, check_n = 0, check_m = -1;
  unsigned check_char = 3;
  auto* check = app.add_subcommand("check", "consistency checks for one algebra, or the full acceptance grid");
  check->add_flag("--grid", grid, "run every acceptance criterion");
  auto* cr = check->add_option("--r", check_r, "relation count r");
  auto* cn = check->add_option("--n", check_n, "cycle length n");
  auto* cm = check->add_option("--m", check_m, "tail length m");
  check->add_option("--field", check_char, "prime characteristic")->capture_default_str();

  ParamFlags ar_p;
  int ar_window = 2;
  auto* ar = app.add_subcommand("ar", "dot diagram of the window-truncated arrow graph");
  ar_p.add(ar);
  ar->add_option("--window", ar_window, "window half-width (at most 8)")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  try {
    if (*validate) {
      const auto q = gentle::load_quiver(quiver_path);
      return report_quiver(q, out) ? kSuccess : kInvalidInput;
    }
    if (*lambda) return cmd_lambda(lambda_p.get(), out);
    if (*homc) return cmd_hom(hom_p.get(), family, hom_i, hom_a, hom_b, hom_deg, out);
    if (*centerc)
      return cmd_center(center_p.get(), center_deg, variant, field_char, window, inner, generator, out);
    if (*ringc) return cmd_ring(ring_p.get(), ring_char, ring_variant, do_reconcile, bound, ring_window, out);
    if (*check) {
      const bool any_params = cr->count() + cn->count() + cm->count() > 0;
      if (grid) {
        if (any_params) throw InvalidInput("--grid does not take --r/--n/--m");
        return cmd_check_grid(out);
      }
      if (cr->count() == 0 || cn->count() == 0 || cm->count() == 0)
        throw InvalidInput("check needs --grid or all of --r, --n, --m");
      const OmegaParams params{check_r, check_n, check_m};
      params.validate();
      return cmd_check_params(params, check_char, out);
    }
    if (*ar) {
      const model::Model m(ar_p.get());
      out << dot::emit_ar_dot(m, Window{ar_window});
      return kSuccess;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const gf::FieldError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kConsistencyFailure;
  }
  return kInvalidInput;
}

}  // namespace dcenter::cli
