#include <doctest.h>

#include <map>

#include "dcenter/center.hpp"
#include "support.hpp"

using namespace dcenter;
using namespace dcenter::center;
using model::Family;
using model::Model;
using model::Vertex;
using model::Window;
using N = GeneratorSpec::Name;

namespace {

const gf::PrimeField F2(2), F3(3);

/// ε by walking the Σ-orbit of the base vertex one step at a time.
int epsilon_oracle(const Model& m, const Vertex& v) {
  const int n = m.params().n;
  const int q = v.coord.b - v.coord.a - (v.i == 0 ? n : 0);
  const Vertex base{Family::Y, 0, {0, n + q}};
  Vertex fwd = base, back = base;
  for (int p = 0; p < 500; ++p) {
    if (fwd == v) return (n * p) % 2 == 0 ? 1 : -1;
    if (back == v) return (n * p) % 2 == 0 ? 1 : -1;  // p steps backwards: same parity
    fwd = m.sigma(fwd);
    back = m.sigma(back, -1);
  }
  FAIL("vertex not in the orbit");
  return 0;
}

/// Coordinates of an element over (vertex, basis element) slots of a window.
std::vector<std::uint32_t> flatten(const Model& m, const CenterElement& el, Window w,
                                   std::map<std::pair<Vertex, int>, std::size_t>& slots) {
  std::vector<std::uint32_t> out(slots.size(), 0);
  for (const auto& [v, f] : el.values) {
    if (!w.contains(v.coord)) continue;
    for (const auto& [e, c] : f.terms()) {
      auto key = std::make_pair(v, e.order_key());
      auto it = slots.find(key);
      if (it == slots.end()) {
        it = slots.emplace(key, slots.size()).first;
        out.push_back(0);
      }
      out[it->second] = c;
    }
  }
  (void)m;
  return out;
}

bool in_span(const Model& m, const std::vector<CenterElement>& basis, const CenterElement& x, Window w,
             const gf::PrimeField& f) {
  std::map<std::pair<Vertex, int>, std::size_t> slots;
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& b : basis) rows.push_back(flatten(m, b, w, slots));
  auto xr = flatten(m, x, w, slots);
  for (auto& r : rows) r.resize(slots.size(), 0);
  xr.resize(slots.size(), 0);
  const auto before = gf::dense_rank(rows, f);
  rows.push_back(xr);
  return gf::dense_rank(rows, f) == before;
}

CenterElement restrict_to(const CenterElement& el, Window w) {
  CenterElement out = el;
  out.domain = w;
  out.values.clear();
  for (const auto& [v, f] : el.values)
    if (w.contains(v.coord)) out.values.emplace(v, f);
  return out;
}

std::vector<GeneratorSpec> admissible_specs(const OmegaParams& p) {
  std::vector<GeneratorSpec> out;
  for (N name : {N::Identity, N::EtaPrime, N::EtaDPrime, N::EtaZero, N::EtaPower})
    for (int k = 0; k <= 2; ++k)
      if (admissible(p, {name, k}) && !(name == N::Identity && k > 0)) out.push_back({name, k});
  return out;
}

}  // namespace

TEST_CASE("variant names") {
  CHECK(parse_variant("graded") == Variant::Graded);
  CHECK(parse_variant("commutative") == Variant::Commutative);
  CHECK_THROWS_AS(parse_variant("both"), InvalidInput);
  CHECK(to_string(Variant::Commutative) == "commutative");
}

TEST_CASE("margins") {
  CHECK(margin({1, 2, 0}, 2) == 6);
  CHECK(default_inner_window({1, 2, 0}, 2).half_width == 4);
  CHECK(margin({3, 3, 1}, 6) == 8);
  CHECK(margin({2, 4, 1}, 0) == 7);
}

TEST_CASE("generator examples") {
  const Model m120({1, 2, 0});
  const auto eta = make_generator(m120, {N::EtaPrime, 0}, Window{5}, F3);
  CHECK(eta.degree == 2);
  REQUIRE_FALSE(eta.values.empty());
  for (const auto& [v, f] : eta.values) {
    CHECK(v.family == Family::Y);
    CHECK(v.coord.b - v.coord.a == 2);
    CHECK(f.target() == Vertex{Family::Y, 0, {v.coord.a - 2, v.coord.a}});
    REQUIRE(f.terms().size() == 1);
    CHECK(f.terms()[0].first.kind == model::ArrowKind::EDPrime);
  }

  const Model m110({1, 1, 0});
  const auto soc = make_generator(m110, {N::EtaZero, 3}, Window{4}, F3);
  CHECK(soc.degree == 0);
  CHECK(soc.values.size() == 6);  // X(a, a+3) with a in [-4, 1]
  const auto at = soc.at(m110, Vertex{Family::X, 0, {0, 3}});
  REQUIRE(at.terms().size() == 1);
  CHECK(at.terms()[0].first.kind == model::ArrowKind::EPrime);
  CHECK(at.target() == at.source());
  CHECK(soc.at(m110, Vertex{Family::X, 0, {0, 2}}).is_zero());

  const Model m220({2, 2, 0});
  const auto pw = make_generator(m220, {N::EtaPower, 1}, Window{8}, F3);
  const auto f = pw.at(m220, Vertex{Family::X, 0, {0, 5}});
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms()[0].first.kind == model::ArrowKind::FPrime);
  CHECK(f.target() == Vertex{Family::X, 0, {2, 7}});
  CHECK(pw.at(m220, Vertex{Family::X, 0, {0, 1}}).is_zero());
}

TEST_CASE("inadmissible generators are rejected") {
  const Model m({2, 4, 1});
  CHECK_THROWS_AS(make_generator(m, {N::EtaPrime, 0}, Window{3}, F3), InvalidInput);
  CHECK_THROWS_AS(make_generator(m, {N::EtaPower, 1}, Window{3}, F3), InvalidInput);
  CHECK_THROWS_AS(make_generator(Model({1, 1, 1}), {N::EtaZero, 0}, Window{3}, F3), InvalidInput);
  CHECK_FALSE(admissible({1, 2, 0}, {N::EtaZero, -1}));
}

TEST_CASE("epsilon signs follow the suspension orbit") {
  for (const OmegaParams p : {OmegaParams{1, 2, 0}, OmegaParams{2, 3, 0}, OmegaParams{2, 3, 2},
                              OmegaParams{3, 4, 1}, OmegaParams{4, 5, 0}}) {
    const Model m(p);
    for (const auto& v : m.enumerate_vertices(Window{5}))
      if (v.family == Family::Y) CHECK(epsilon_sign(m, v) == epsilon_oracle(m, v));
  }
  CHECK_THROWS_AS(epsilon_sign(Model({1, 3, 0}), Vertex{Family::Y, 0, {0, 5}}), InvalidInput);
}

TEST_CASE("membership examples") {
  const Model m120({1, 2, 0});
  const auto ep = make_generator(m120, {N::EtaPrime, 0}, Window{10}, F3);
  CHECK(check_membership(m120, ep, Variant::Graded, Window{10}, Window{4}).ok);

  // n = 3 is odd: the two sign laws differ in degree 3 over F3
  const Model m230({2, 3, 0});
  const auto edp = make_generator(m230, {N::EtaDPrime, 0}, Window{11}, F3);
  const auto bad = check_membership(m230, edp, Variant::Graded, Window{11}, Window{4});
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation.find("sign law") == 0);
  CHECK(check_membership(m230, edp, Variant::Commutative, Window{11}, Window{4}).ok);
  const auto epr = make_generator(m230, {N::EtaPrime, 0}, Window{11}, F3);
  CHECK(check_membership(m230, epr, Variant::Graded, Window{11}).ok);
  CHECK_FALSE(check_membership(m230, epr, Variant::Commutative, Window{11}).ok);

  // over F2 both laws coincide
  const auto edp2 = make_generator(m230, {N::EtaDPrime, 0}, Window{11}, F2);
  CHECK(check_membership(m230, edp2, Variant::Graded, Window{11}).ok);

  // n even: ε is constant, so both generators satisfy both laws
  const auto edp120 = make_generator(m120, {N::EtaDPrime, 1}, Window{10}, F3);
  CHECK(check_membership(m120, edp120, Variant::Graded, Window{10}).ok);

  CenterElement zero;
  zero.degree = 3;
  zero.field = F3;
  zero.domain = Window{6};
  CHECK(check_membership(m230, zero, Variant::Graded, Window{6}).ok);

  CHECK_THROWS_AS(check_membership(m120, ep, Variant::Graded, Window{10}, Window{5}), WindowError);
  CHECK_THROWS_AS(check_membership(m120, ep, Variant::Graded, Window{11}), WindowError);
}

TEST_CASE("a non-natural assignment is caught") {
  const Model m({2, 3, 0});
  auto el = make_generator(m, {N::EtaDPrime, 1}, Window{8}, F3);
  // drop one value in the middle of the support
  for (auto it = el.values.begin(); it != el.values.end(); ++it)
    if (Window{1}.contains(it->first.coord)) {
      el.values.erase(it);
      break;
    }
  const auto res = check_membership(m, el, Variant::Commutative, Window{8});
  CHECK_FALSE(res.ok);
}

TEST_CASE("solver examples") {
  const auto s = solve_component(Model({1, 2, 0}), 2, Variant::Graded, F3, Window{10}, Window{4});
  CHECK(s.global_dimension == 0);
  REQUIRE(s.classes.size() == 7);
  for (std::size_t k = 0; k < s.classes.size(); ++k) {
    CHECK(s.classes[k].key == ClassKey{Family::Y, static_cast<int>(k)});
    CHECK(s.classes[k].dimension == 1);
  }

  const Model m241({2, 4, 1});
  for (int p = 1; p <= 4; ++p) {
    const auto inner = default_inner_window(m241.params(), p);
    CHECK(solve_component(m241, p, Variant::Graded, F3, Window{inner.half_width + margin(m241.params(), p)}, inner)
              .dimension == 0);
  }

  const Model m110({1, 1, 0});
  auto dim = [&](Variant v, const gf::PrimeField& f) {
    return solve_component(m110, 1, v, f, Window{8}, Window{4}).dimension;
  };
  CHECK(dim(Variant::Graded, F2) == 1);
  CHECK(dim(Variant::Graded, F3) == 0);
  CHECK(dim(Variant::Commutative, F3) == 1);

  CHECK_THROWS_AS(solve_component(Model({1, 2, 0}), 2, Variant::Graded, F3, Window{9}, Window{4}), WindowError);
  CHECK_THROWS_AS(solve_component(Model({1, 2, 0}), -1, Variant::Graded, F3, Window{9}, Window{1}), InvalidInput);
}

TEST_CASE("degree zero: the identity and the socle classes") {
  const auto s = solve_component(Model({1, 3, 0}), 0, Variant::Graded, F3, Window{9}, Window{4});
  CHECK(s.global_dimension == 1);
  CHECK(s.classes.size() == 9);
  const auto t = solve_component(Model({1, 3, 1}), 0, Variant::Graded, F3, Window{10}, Window{4});
  CHECK(t.dimension == 1);
  CHECK(t.classes.empty());
}

TEST_CASE("solver solutions are spanned by the explicit generators") {
  for (const OmegaParams p : {OmegaParams{1, 2, 0}, OmegaParams{2, 3, 0}}) {
    const Model m(p);
    const auto inner = default_inner_window(p, p.n);
    const Window outer{inner.half_width + margin(p, p.n)};
    for (auto variant : {Variant::Graded, Variant::Commutative}) {
      const auto s = solve_component(m, p.n, variant, F3, outer, inner);
      const N name = variant == Variant::Graded ? N::EtaPrime : N::EtaDPrime;
      for (int q = 0; q <= 4; ++q) {
        const auto g = restrict_to(make_generator(m, {name, q}, outer, F3), inner);
        CHECK(in_span(m, s.basis, g, inner, F3));
      }
    }
  }
  const Model m({2, 2, 0});
  const auto s = solve_component(m, 2, Variant::Commutative, F3, Window{9}, Window{4});
  REQUIRE(s.basis.size() == 1);
  CHECK(in_span(m, s.basis, restrict_to(make_generator(m, {N::EtaPower, 1}, Window{9}, F3), Window{4}),
                Window{4}, F3));
}

TEST_CASE("property: solver basis elements satisfy the membership conditions") {
  support::Rng rng(51);
  for (int trial = 0; trial < 25; ++trial) {
    const auto p = support::random_params(rng, 3, 1);
    const int deg = rng.uniform(0, 2 * p.n);
    const auto variant = rng.coin() ? Variant::Graded : Variant::Commutative;
    const gf::PrimeField f(rng.coin() ? 2 : 3);
    const Model m(p);
    const auto inner = default_inner_window(p, deg);
    const auto s = solve_component(m, deg, variant, f, Window{inner.half_width + margin(p, deg)}, inner);
    for (const auto& b : s.basis) {
      CHECK_FALSE(b.is_zero());
      CHECK(check_membership(m, b, variant, inner).ok);
    }
  }
}

TEST_CASE("property: characteristic matters only for r = n, graded, n p odd") {
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= n; ++r)
      for (int mm = 0; mm <= 1; ++mm) {
        const OmegaParams p{r, n, mm};
        const Model m(p);
        for (int deg = 0; deg <= 2 * n; ++deg)
          for (auto variant : {Variant::Graded, Variant::Commutative}) {
            const auto inner = default_inner_window(p, deg);
            const Window outer{inner.half_width + margin(p, deg)};
            const auto a = solve_component(m, deg, variant, F2, outer, inner);
            const auto b = solve_component(m, deg, variant, F3, outer, inner);
            const bool may_differ = r == n && variant == Variant::Graded && (n * deg) % 2 == 1;
            if (!may_differ) CHECK(a.dimension == b.dimension);
            if (may_differ && deg % n == 0) CHECK(a.dimension != b.dimension);
          }
      }
}

TEST_CASE("property: enlarging the outer window leaves the inner answer unchanged") {
  support::Rng rng(52);
  for (int trial = 0; trial < 12; ++trial) {
    const auto p = support::random_params(rng, 3, 2);
    const int deg = rng.uniform(0, 2 * p.n);
    const Model m(p);
    const auto inner = default_inner_window(p, deg);
    const int w = inner.half_width + margin(p, deg);
    const auto a = solve_component(m, deg, Variant::Graded, F3, Window{w}, inner);
    const auto b = solve_component(m, deg, Variant::Graded, F3, Window{w + 2}, inner);
    CHECK(a.dimension == b.dimension);
    CHECK(a.global_dimension == b.global_dimension);
    CHECK(a.classes.size() == b.classes.size());
  }
}

TEST_CASE("property: generators lie in their declared variant") {
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= n; ++r)
      for (int mm = 0; mm <= 2; ++mm) {
        const OmegaParams p{r, n, mm};
        const Model m(p);
        for (const auto& spec : admissible_specs(p))
          for (const auto& f : {F2, F3}) {
            const auto el = make_generator(m, spec, Window{8}, f);
            CHECK(check_membership(m, el, generator_variant(spec), Window{8}).ok);
          }
      }
}

TEST_CASE("property: products commute up to the sign of the variant and the identity is neutral") {
  for (const OmegaParams p : {OmegaParams{1, 1, 0}, OmegaParams{1, 2, 0}, OmegaParams{2, 3, 0},
                              OmegaParams{2, 2, 0}, OmegaParams{3, 3, 1}, OmegaParams{1, 3, 0}}) {
    const Model m(p);
    const Window w{7};
    std::vector<CenterElement> gens;
    for (const auto& spec : admissible_specs(p)) gens.push_back(make_generator(m, spec, w, F3));
    const auto id = make_generator(m, {N::Identity, 0}, w, F3);
    for (const auto& a : gens) {
      CHECK(equal_on(m, multiply(m, id, a), a, w));
      CHECK(equal_on(m, multiply(m, a, id), a, w));
      for (const auto& b : gens) {
        const auto ab = multiply(m, a, b);
        auto ba = multiply(m, b, a);
        const bool koszul = a.variant == Variant::Graded && b.variant == Variant::Graded;
        if (koszul && (a.degree * b.degree) % 2 != 0)
          for (auto& [v, f] : ba.values) f = f.scaled(F3.neg(1));
        CHECK(equal_on(m, ab, ba, w));
      }
    }
  }
}

TEST_CASE("property: positive-degree solutions square to zero unless r = n") {
  for (const OmegaParams p : {OmegaParams{1, 2, 0}, OmegaParams{2, 3, 0}, OmegaParams{3, 4, 0},
                              OmegaParams{2, 2, 0}, OmegaParams{1, 1, 0}, OmegaParams{3, 3, 0}}) {
    const Model m(p);
    const int deg = p.n;
    const auto inner = default_inner_window(p, deg);
    const auto s = solve_component(m, deg, Variant::Commutative, F3, Window{inner.half_width + margin(p, deg)}, inner);
    REQUIRE_FALSE(s.basis.empty());
    for (const auto& b : s.basis) {
      const auto sq = multiply(m, b, b);
      if (p.r == p.n)
        CHECK_FALSE(sq.is_zero());
      else
        CHECK(sq.is_zero());
    }
  }
}
