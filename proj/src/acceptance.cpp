#include "dcenter/acceptance.hpp"

#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "dcenter/center.hpp"
#include "dcenter/cli.hpp"
#include "dcenter/hom.hpp"
#include "dcenter/ring.hpp"

namespace dcenter::acceptance {

using center::GeneratorSpec;
using center::Variant;
using model::Model;
using model::Vertex;
using model::Window;

std::vector<OmegaParams> grid(int max_n, int max_m) {
  std::vector<OmegaParams> out;
  for (int n = 1; n <= max_n; ++n)
    for (int r = 1; r <= n; ++r)
      for (int m = 0; m <= max_m; ++m) out.push_back({r, n, m});
  return out;
}

namespace {

/// Target sets per (vertex, degree) as bitsets over the window's dense ids.
class Adjacency {
public:
  Adjacency(const Model& m, const model::WindowIndex& index) : words_((index.size() + 63) / 64) {
    const auto& vs = index.vertices();
    bits_.assign(vs.size() * 3 * words_, 0);
    out_.resize(vs.size());
    for (std::size_t x = 0; x < vs.size(); ++x)
      for (const auto& a : m.arrows_from(vs[x], index.window())) {
        const auto y = static_cast<std::size_t>(index.id(a.target));
        const int d = a.degree();
        row(x, d)[y / 64] |= std::uint64_t{1} << (y % 64);
        out_[x].push_back({y, d});
      }
  }
  std::uint64_t* row(std::size_t x, int d) { return &bits_[(x * 3 + static_cast<std::size_t>(d)) * words_]; }
  const std::uint64_t* row(std::size_t x, int d) const {
    return &bits_[(x * 3 + static_cast<std::size_t>(d)) * words_];
  }
  bool has(std::size_t x, int d, std::size_t y) const { return (row(x, d)[y / 64] >> (y % 64)) & 1; }
  std::size_t words() const { return words_; }
  struct Edge {
    std::size_t target;
    int degree;
  };
  const std::vector<Edge>& out(std::size_t x) const { return out_[x]; }

private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::vector<Edge>> out_;
};

std::size_t popcount_row(const std::uint64_t* r, std::size_t words) {
  std::size_t c = 0;
  for (std::size_t k = 0; k < words; ++k) c += static_cast<std::size_t>(std::popcount(r[k]));
  return c;
}

}  // namespace

AssociativityStats check_associativity(const OmegaParams& params, int window) {
  const Model m(params);
  const Window w{window};
  const model::WindowIndex index(m, w);
  const Adjacency adj(m, index);
  const auto& vs = index.vertices();
  const std::size_t words = adj.words();
  AssociativityStats st;
  auto note = [&](const std::string& s) {
    if (st.first_violation.empty()) st.first_violation = s;
  };

  // Composition of generators is the generator of the summed degree when it
  // exists and zero otherwise, so h(gf) and (hg)f agree exactly when, for
  // every w reached by an arrow x -> w of the total degree, the inner
  // composites gf and hg are either both nonzero or both zero.
  std::vector<std::uint64_t> bad(words);
  for (std::size_t x = 0; x < vs.size(); ++x)
    for (const auto& f : adj.out(x))
      for (const auto& g : adj.out(f.target)) {
        const int pq = f.degree + g.degree;
        if (pq > 2) {
          for (int s = 0; s <= 2; ++s) st.vanishing += popcount_row(adj.row(g.target, s), words);
          continue;
        }
        const bool gf = adj.has(x, pq, g.target);
        for (int s = 0; s <= 2; ++s) {
          const auto* h = adj.row(g.target, s);
          if (pq + s > 2) {
            st.vanishing += popcount_row(h, words);
            continue;
          }
          const auto* total = adj.row(x, pq + s);
          const auto* hg = adj.row(f.target, g.degree + s);
          std::size_t count = 0;
          for (std::size_t k = 0; k < words; ++k) {
            bad[k] = h[k] & total[k] & (gf ? ~hg[k] : hg[k]);
            count += static_cast<std::size_t>(std::popcount(bad[k]));
          }
          st.triples += popcount_row(h, words);
          if (count > 0) {
            st.violations += count;
            for (std::size_t k = 0; k < words; ++k)
              if (bad[k]) {
                const auto wid = k * 64 + static_cast<std::size_t>(std::countr_zero(bad[k]));
                note("associativity " + model::to_string(vs[x]) + " -> " +
                     model::to_string(vs[f.target]) + " -> " + model::to_string(vs[g.target]) +
                     " -> " + model::to_string(vs[wid]));
                break;
              }
          }
        }
      }

  // Σ carries the arrows of each degree out of x bijectively onto the arrows
  // out of Σx, kind by kind, so it preserves every composite.
  const int reach = params.n + params.m + 1;
  const Window wide{window + reach};
  for (std::size_t x = 0; x < vs.size(); ++x) {
    const auto sx = m.sigma(vs[x]);
    if (!m.exists(sx)) {
      ++st.sigma_violations;
      note("sigma leaves the model at " + model::to_string(vs[x]));
      continue;
    }
    if (m.sigma(sx, -1) != vs[x]) {
      ++st.sigma_violations;
      note("sigma is not invertible at " + model::to_string(vs[x]));
    }
    std::vector<std::vector<char>> image(3, std::vector<char>(vs.size(), 0));
    for (const auto& a : m.arrows_from(sx, wide)) {
      const long y = index.id(m.sigma(a.target, -1));
      if (y >= 0) image[static_cast<std::size_t>(a.degree())][static_cast<std::size_t>(y)] = 1;
    }
    for (int d = 0; d <= 2; ++d)
      for (std::size_t y = 0; y < vs.size(); ++y) {
        const bool here = adj.has(x, d, y);
        if (!here && !image[static_cast<std::size_t>(d)][y]) continue;
        ++st.sigma_pairs;
        const auto a = m.arrow(vs[x], vs[y], d);
        const auto b = m.arrow(sx, m.sigma(vs[y]), d);
        if (a.has_value() != b.has_value() || (a && (a->kind != b->kind || m.sigma(*a) != *b))) {
          ++st.sigma_violations;
          note("sigma on arrows " + model::to_string(vs[x]) + " -> " + model::to_string(vs[y]));
        }
      }
  }

  // The same laws on actual morphisms, for pairs starting near the centre.
  const gf::PrimeField field(3);
  const Window core{std::min(window, 1)};
  for (std::size_t x = 0; x < vs.size(); ++x) {
    if (!core.contains(vs[x].coord)) continue;
    for (const auto& f : adj.out(x)) {
      const auto fm = model::Morphism::arrow(*m.arrow(vs[x], vs[f.target], f.degree), field);
      for (const auto& g : adj.out(f.target)) {
        const auto gm =
            model::Morphism::arrow(*m.arrow(vs[f.target], vs[g.target], g.degree), field);
        ++st.morphism_pairs;
        const auto gf = m.compose(gm, fm);
        if (!(m.sigma(gf) == m.compose(m.sigma(gm), m.sigma(fm)))) {
          ++st.sigma_violations;
          note("sigma(g f) != sigma(g) sigma(f) at " + model::to_string(vs[x]));
        }
        const bool expect = f.degree + g.degree <= 2 && adj.has(x, f.degree + g.degree, g.target);
        if (gf.is_zero() == expect) {
          ++st.violations;
          note("composite disagrees with the arrow table at " + model::to_string(vs[x]));
        }
      }
    }
  }
  return st;
}

namespace {

template <class... Args>
std::string cat(const Args&... args) {
  std::ostringstream out;
  (out << ... << args);
  return out.str();
}

CriterionResult make(int id, std::string name, double budget) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.budget_seconds = budget;
  return r;
}

/// Runs f over items, in parallel when more than one hardware thread exists.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F f) {
  using R = decltype(f(items.front()));
  std::vector<R> out(items.size());
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1) {
    for (std::size_t k = 0; k < items.size(); ++k) out[k] = f(items[k]);
    return out;
  }
  std::vector<std::future<R>> tasks;
  for (const auto& item : items) tasks.push_back(std::async(std::launch::async, f, std::cref(item)));
  for (std::size_t k = 0; k < items.size(); ++k) out[k] = tasks[k].get();
  return out;
}

}  // namespace

CriterionResult gentle_grid() {
  auto r = make(1, "gentle grid", 1.0);
  std::size_t checked = 0;
  for (const auto& p : grid(5, 3)) {
    const auto q = gentle::build_lambda(p);
    ++checked;
    std::string why;
    if (!gentle::is_gentle(q))
      why = "not gentle";
    else if (!gentle::is_one_cycle(q))
      why = "not one-cycle";
    else if (gentle::clock_condition(q))
      why = "satisfies the clock condition";
    if (!why.empty()) {
      r.detail = cat("Lambda", to_string(p), " ", why);
      return r;
    }
  }
  r.passed = true;
  r.detail = cat(checked, " quivers gentle, one-cycle, clock condition fails");
  return r;
}

CriterionResult model_consistency() {
  auto r = make(2, "model consistency", 30.0);
  AssociativityStats total;
  const auto params = grid(4, 2);
  const auto stats = parallel_map(params, [](const OmegaParams& p) { return check_associativity(p, 5); });
  for (const auto& s : stats) {
    total.triples += s.triples;
    total.vanishing += s.vanishing;
    total.violations += s.violations;
    total.sigma_pairs += s.sigma_pairs;
    total.sigma_violations += s.sigma_violations;
    total.morphism_pairs += s.morphism_pairs;
    if (total.first_violation.empty()) total.first_violation = s.first_violation;
  }
  r.passed = total.violations == 0 && total.sigma_violations == 0;
  r.detail = cat(total.triples, " triples (+", total.vanishing, " vanishing by degree), ",
                 total.sigma_pairs, " sigma arrow checks, ", total.morphism_pairs,
                 " morphism pairs, ", total.violations + total.sigma_violations, " violations");
  if (!r.passed) r.detail += "; first: " + total.first_violation;
  return r;
}

CriterionResult hom_oracle() {
  auto r = make(3, "hom oracle", 60.0);
  std::size_t checked = 0, mismatches = 0;
  std::string first;
  for (const auto& p : grid(4, 2)) {
    const Model m(p);
    for (const auto& v : m.enumerate_vertices(Window{6}))
      for (int d = 0; d <= 2 * p.n + 2; ++d) {
        ++checked;
        const auto got = hom::hom_basis(m, v, d).dimension();
        const auto want = static_cast<std::size_t>(hom::hom_dim_closed_form(p, v, d));
        if (got != want) {
          ++mismatches;
          if (first.empty())
            first = cat(to_string(p), " ", model::to_string(v), " p=", d, ": ", got, " vs ", want);
        }
      }
  }
  r.passed = mismatches == 0;
  r.detail = cat(checked, " Hom spaces, ", mismatches, " mismatches");
  if (!first.empty()) r.detail += "; first: " + first;
  return r;
}

CriterionResult generator_membership() {
  auto r = make(4, "generator membership", 0);
  constexpr int kWindow = 12;
  std::size_t checks = 0, expected_failures = 0, failures = 0;
  std::string first;
  for (const auto& p : grid(4, 2)) {
    const Model m(p);
    std::vector<GeneratorSpec> specs;
    for (int q = 0; q <= 3; ++q) {
      specs.push_back({GeneratorSpec::Name::EtaPrime, q});
      specs.push_back({GeneratorSpec::Name::EtaDPrime, q});
      specs.push_back({GeneratorSpec::Name::EtaZero, q});
      if (q >= 1) specs.push_back({GeneratorSpec::Name::EtaPower, q});
    }
    for (unsigned c : {2u, 3u}) {
      const gf::PrimeField field(c);
      for (const auto& spec : specs) {
        if (!center::admissible(p, spec)) continue;
        const auto el = center::make_generator(m, spec, Window{kWindow}, field);
        const int deg = el.degree;
        for (auto variant : {Variant::Graded, Variant::Commutative}) {
          // Sign laws differ only in odd degree and odd characteristic.
          const bool laws_differ = deg % 2 != 0 && c != 2;
          bool predicted = true;
          if (laws_differ && spec.name == GeneratorSpec::Name::EtaPrime)
            predicted = variant == Variant::Graded;
          if (laws_differ && (spec.name == GeneratorSpec::Name::EtaDPrime ||
                              spec.name == GeneratorSpec::Name::EtaPower))
            predicted = variant == Variant::Commutative;
          ++checks;
          if (!predicted) ++expected_failures;
          const auto res = center::check_membership(m, el, variant, Window{kWindow});
          const bool vacuous = el.is_zero() || res.naturality_checks == 0;
          if (res.ok != predicted || vacuous) {
            ++failures;
            if (first.empty())
              first = cat(to_string(p), " ", center::to_string(spec), " ", center::to_string(variant),
                          " char ", c, ": ", vacuous ? "no support in window" : res.violation);
          }
        }
      }
    }
  }
  r.passed = failures == 0;
  r.detail = cat(checks, " membership checks (", expected_failures,
                 " predicted sign-law failures), ", failures, " disagreements");
  if (!first.empty()) r.detail += "; first: " + first;
  return r;
}

CriterionResult center_vs_theorems() {
  auto r = make(5, "center vs theorems", 600.0);
  struct Task {
    OmegaParams params;
    unsigned characteristic;
    Variant variant;
  };
  std::vector<Task> tasks;
  for (const auto& p : grid(4, 2))
    for (unsigned c : {2u, 3u})
      for (auto v : {Variant::Graded, Variant::Commutative}) tasks.push_back({p, c, v});
  const auto reports = parallel_map(tasks, [](const Task& t) {
    return ring::reconcile(t.params, gf::PrimeField(t.characteristic), t.variant, 2 * t.params.n);
  });
  std::size_t solves = 0, bad = 0;
  std::string first;
  for (const auto& rep : reports) {
    solves += rep.degrees.size();
    for (const auto& d : rep.degrees)
      if (!d.match) {
        ++bad;
        if (first.empty())
          first = cat(to_string(rep.params), " ", center::to_string(rep.variant), " char ",
                      rep.characteristic, " p=", d.degree, ": ", d.detail);
      }
  }
  r.passed = bad == 0;
  r.detail = cat(reports.size(), " reconciliations, ", solves, " component solves, ", bad,
                 " mismatches");
  if (!first.empty()) r.detail += "; first: " + first;
  return r;
}

CriterionResult window_stabilization() {
  auto r = make(6, "window stabilization", 0);
  std::size_t compared = 0, changed = 0;
  std::string first;
  for (const OmegaParams p : {OmegaParams{1, 2, 0}, OmegaParams{2, 3, 0}, OmegaParams{2, 2, 0}}) {
    const Model m(p);
    for (int deg = 0; deg <= 2 * p.n; ++deg)
      for (auto variant : {Variant::Graded, Variant::Commutative})
        for (unsigned c : {2u, 3u}) {
          const gf::PrimeField field(c);
          const auto inner = center::default_inner_window(p, deg);
          const Window outer{inner.half_width + center::margin(p, deg)};
          const auto a = center::solve_component(m, deg, variant, field, outer, inner);
          const auto b =
              center::solve_component(m, deg, variant, field, Window{outer.half_width + 2}, inner);
          ++compared;
          bool same = a.dimension == b.dimension && a.global_dimension == b.global_dimension &&
                      a.classes.size() == b.classes.size();
          for (std::size_t k = 0; same && k < a.classes.size(); ++k)
            same = a.classes[k].key == b.classes[k].key &&
                   a.classes[k].dimension == b.classes[k].dimension;
          for (std::size_t k = 0; same && k < a.basis.size(); ++k)
            same = center::equal_on(m, a.basis[k], b.basis[k], inner);
          if (!same) {
            ++changed;
            if (first.empty())
              first = cat(to_string(p), " p=", deg, " ", center::to_string(variant), " char ", c,
                          ": dimension ", a.dimension, " -> ", b.dimension);
          }
        }
  }
  r.passed = changed == 0;
  r.detail = cat(compared, " window pairs, ", changed, " changed");
  if (!first.empty()) r.detail += "; first: " + first;
  return r;
}

CriterionResult products() {
  auto r = make(7, "products", 0);
  constexpr int kWindow = 10;
  const gf::PrimeField field(3);
  std::size_t checks = 0, failures = 0;
  std::string first;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (first.empty()) first = what;
    }
  };
  auto gen = [&](const Model& m, GeneratorSpec::Name name, int index) {
    return center::make_generator(m, {name, index}, Window{kWindow}, field);
  };
  using N = GeneratorSpec::Name;

  for (const OmegaParams p : {OmegaParams{1, 2, 0}, OmegaParams{2, 3, 0}, OmegaParams{2, 3, 1},
                              OmegaParams{3, 4, 0}}) {
    const Model m(p);
    for (int q1 = 0; q1 <= 3; ++q1)
      for (int q2 = 0; q2 <= 3; ++q2) {
        expect(center::multiply(m, gen(m, N::EtaPrime, q1), gen(m, N::EtaPrime, q2)).is_zero(),
               cat(to_string(p), " eta'(", q1, ") eta'(", q2, ") != 0"));
        expect(center::multiply(m, gen(m, N::EtaDPrime, q1), gen(m, N::EtaDPrime, q2)).is_zero(),
               cat(to_string(p), " eta''(", q1, ") eta''(", q2, ") != 0"));
      }
  }
  for (const OmegaParams p : {OmegaParams{1, 1, 0}, OmegaParams{1, 2, 0}, OmegaParams{1, 3, 0}}) {
    const Model m(p);
    for (int q1 = 0; q1 <= 3; ++q1)
      for (int q2 = 0; q2 <= 3; ++q2)
        expect(center::multiply(m, gen(m, N::EtaZero, q1), gen(m, N::EtaZero, q2)).is_zero(),
               cat(to_string(p), " eta(", q1, ") eta(", q2, ") != 0"));
  }
  {
    const Model m({1, 2, 0});
    for (int q1 = 0; q1 <= 3; ++q1)
      for (int q2 = 0; q2 <= 3; ++q2)
        for (N other : {N::EtaPrime, N::EtaDPrime}) {
          const auto a = gen(m, N::EtaZero, q1), b = gen(m, other, q2);
          expect(center::multiply(m, a, b).is_zero() && center::multiply(m, b, a).is_zero(),
                 cat("(1,2,0) mixed product with eta(", q1, ") != 0"));
        }
  }
  {
    const Model m({1, 1, 0});
    const auto eta = gen(m, N::EtaPower, 1);
    for (int q = 0; q <= 3; ++q) {
      const auto s = gen(m, N::EtaZero, q);
      expect(center::multiply(m, eta, s).is_zero() && center::multiply(m, s, eta).is_zero(),
             cat("(1,1,0) eta * eta(", q, ") != 0"));
    }
  }
  for (const OmegaParams p : {OmegaParams{1, 1, 0}, OmegaParams{1, 1, 2}, OmegaParams{2, 2, 0},
                              OmegaParams{3, 3, 1}}) {
    const Model m(p);
    const auto eta = gen(m, N::EtaPower, 1);
    auto power = eta;
    for (int k = 2; k <= 4; ++k) {
      power = center::multiply(m, eta, power);
      const auto direct = gen(m, N::EtaPower, k);
      expect(!power.is_zero() && center::equal_on(m, power, direct, Window{kWindow}),
             cat(to_string(p), " eta^", k, " is zero or differs from the direct power"));
    }
  }
  r.passed = failures == 0;
  r.detail = cat(checks, " product identities, ", failures, " failures");
  if (!first.empty()) r.detail += "; first: " + first;
  return r;
}

CriterionResult tau_sigma() {
  auto r = make(8, "tau-sigma periodicity", 0);
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (const auto& p : grid(4, 2)) {
    const Model m(p);
    const bool periodic = m.tau_sigma_periodic();
    bool ok = periodic == m.tau_sigma_periodic_closed_form();
    for (unsigned c : {2u, 3u})
      for (auto v : {Variant::Graded, Variant::Commutative}) {
        const auto rn = ring::reduced_and_nil(ring::theorem_case(p, c, v));
        ok = ok && rn.nil_nonzero == periodic && (!rn.reduced.is_field()) == (p.r == p.n);
      }
    ++checked;
    if (!ok) {
      ++bad;
      if (first.empty()) first = to_string(p);
    }
  }
  r.passed = bad == 0;
  r.detail = cat(checked, " parameter triples, ", bad, " disagreements");
  if (!first.empty()) r.detail += "; first: " + first;
  return r;
}

CriterionResult determinism() {
  auto r = make(9, "determinism", 0);
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "dcenter_determinism.quiver";
  {
    std::ofstream f(path);
    f << gentle::format_quiver(gentle::build_lambda({2, 3, 1}));
  }
  const std::vector<std::vector<std::string>> commands = {
      {"validate", path.string()},
      {"validate", (fs::temp_directory_path() / "dcenter_missing.quiver").string()},
      {"lambda", "--r", "2", "--n", "3", "--m", "1"},
      {"hom", "--r", "1", "--n", "2", "--m", "0", "--family", "Y", "--a", "0", "--b", "2", "--p", "2"},
      {"center", "--r", "1", "--n", "2", "--m", "0", "--p", "2", "--variant", "graded", "--field",
       "3", "--window", "10"},
      {"center", "--r", "2", "--n", "2", "--m", "0", "--p", "2", "--variant", "commutative"},
      {"ring", "--r", "1", "--n", "1", "--m", "0", "--char", "2"},
      {"ring", "--r", "3", "--n", "3", "--m", "1", "--char", "3", "--reconcile"},
      {"check", "--r", "1", "--n", "2", "--m", "0"},
      {"ar", "--r", "1", "--n", "1", "--m", "0", "--window", "1"},
      {"ar", "--r", "2", "--n", "3", "--m", "0", "--window", "0"},
      {"ring", "--r", "3", "--n", "2", "--m", "0"},
  };
  std::size_t differing = 0;
  std::string first;
  for (const auto& cmd : commands) {
    std::string outs[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      std::ostringstream out, err;
      codes[k] = cli::run(cmd, out, err);
      outs[k] = out.str() + "\x1f" + err.str();
    }
    if (outs[0] != outs[1] || codes[0] != codes[1]) {
      ++differing;
      if (first.empty()) first = cmd.front();
    }
  }
  fs::remove(path);
  r.passed = differing == 0;
  r.detail = cat(commands.size(), " invocations run twice, ", differing, " differ");
  if (!first.empty()) r.detail += "; first: " + first;
  return r;
}

std::vector<std::function<CriterionResult()>> criteria() {
  const std::vector<CriterionResult (*)()> fns = {
      gentle_grid, model_consistency,    hom_oracle, generator_membership, center_vs_theorems,
      window_stabilization, products,    tau_sigma,  determinism};
  std::vector<std::function<CriterionResult()>> out;
  for (auto* fn : fns)
    out.emplace_back([fn] {
      const auto t0 = std::chrono::steady_clock::now();
      auto res = fn();
      res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (res.budget_seconds > 0 && res.seconds > res.budget_seconds) {
        res.passed = false;
        res.detail += "; over the runtime budget";
      }
      return res;
    });
  return out;
}

std::string format_result(const CriterionResult& r, bool with_time) {
  std::ostringstream out;
  out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail;
  if (with_time) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2fs", r.seconds);
    out << buf;
    if (r.budget_seconds > 0) {
      std::snprintf(buf, sizeof buf, ", budget %.0fs", r.budget_seconds);
      out << buf;
    }
    out << ")";
  }
  return out.str();
}

}  // namespace dcenter::acceptance
