#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "dcenter/gentle.hpp"
#include "support.hpp"

using namespace dcenter;
using namespace dcenter::gentle;

using Names = std::set<std::pair<std::string, std::string>>;

namespace {

GentleQuiver kronecker() {
  return parse_quiver("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n");
}

/// Direct enumeration of the gentleness axioms.
bool gentle_oracle(const GentleQuiver& q) {
  const auto& arrows = q.arrows();
  for (std::size_t v = 0; v < q.vertices().size(); ++v) {
    int in = 0, out = 0;
    for (const auto& a : arrows) {
      in += a.target == v;
      out += a.source == v;
    }
    if (in > 2 || out > 2) return false;
  }
  for (std::size_t x = 0; x < arrows.size(); ++x) {
    int before_rel = 0, before_free = 0, after_rel = 0, after_free = 0;
    for (std::size_t y = 0; y < arrows.size(); ++y) {
      if (arrows[y].target == arrows[x].source) (q.has_relation(x, y) ? before_rel : before_free)++;
      if (arrows[x].target == arrows[y].source) (q.has_relation(y, x) ? after_rel : after_free)++;
    }
    if (before_rel > 1 || before_free > 1 || after_rel > 1 || after_free > 1) return false;
  }
  return true;
}

std::set<std::pair<std::string, std::string>> relation_names(const GentleQuiver& q) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& r : q.relations()) out.insert({q.arrows()[r.beta].name, q.arrows()[r.alpha].name});
  return out;
}

/// Rebuilds q with shuffled vertex and arrow order and fresh names.
GentleQuiver relabel(const GentleQuiver& q, support::Rng& rng) {
  std::vector<std::size_t> vperm(q.vertices().size()), aperm(q.arrows().size());
  for (std::size_t k = 0; k < vperm.size(); ++k) vperm[k] = k;
  for (std::size_t k = 0; k < aperm.size(); ++k) aperm[k] = k;
  std::shuffle(vperm.begin(), vperm.end(), rng.engine());
  std::shuffle(aperm.begin(), aperm.end(), rng.engine());
  GentleQuiver out;
  std::vector<std::size_t> vnew(vperm.size()), anew(aperm.size());
  for (auto v : vperm) vnew[v] = out.add_vertex("v" + std::to_string(rng.uniform(0, 999)) + "_" + std::to_string(v));
  for (auto a : aperm)
    anew[a] = out.add_arrow("x" + std::to_string(rng.uniform(0, 999)) + "_" + std::to_string(a),
                            vnew[q.arrows()[a].source], vnew[q.arrows()[a].target]);
  for (const auto& r : q.relations()) out.add_relation(anew[r.beta], anew[r.alpha]);
  return out;
}

}  // namespace

TEST_CASE("parameters must lie in Omega") {
  CHECK(OmegaParams{1, 1, 0}.in_omega());
  CHECK_FALSE(OmegaParams{2, 1, 0}.in_omega());
  CHECK_FALSE(OmegaParams{0, 1, 0}.in_omega());
  CHECK_FALSE(OmegaParams{1, 2, -1}.in_omega());
  const OmegaParams bad{3, 2, 0};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  CHECK(to_string(OmegaParams{2, 3, 1}) == "(2,3,1)");
}

TEST_CASE("build_lambda examples") {
  const auto loop = build_lambda({1, 1, 0});
  REQUIRE(loop.arrows().size() == 1);
  CHECK((loop.arrows()[0].source == loop.arrows()[0].target));
  CHECK((relation_names(loop) == Names{{"a0", "a0"}}));

  const auto q = build_lambda({2, 3, 1});
  CHECK(q.vertices().size() == 4);
  CHECK((q.arrows().size() == 4));
  CHECK((relation_names(q) == Names{{"a2", "a1"}, {"a0", "a2"}}));

  CHECK((relation_names(build_lambda({3, 3, 0})) ==
        Names{{"a1", "a0"}, {"a2", "a1"}, {"a0", "a2"}}));
  CHECK_THROWS_AS(build_lambda({4, 3, 0}), InvalidInput);
}

TEST_CASE("gentleness examples") {
  CHECK(is_gentle(build_lambda({1, 2, 1})));
  CHECK(is_gentle(kronecker()));
  CHECK(gentle_oracle(kronecker()));
  const auto star = parse_quiver(
      "vertices: c x y z\narrow p: c -> x\narrow q: c -> y\narrow s: c -> z\n");
  const auto report = check_gentle(star);
  CHECK_FALSE(report.gentle);
  REQUIRE_FALSE(report.violations.empty());
  CHECK(report.violations[0].axiom == 1);
}

TEST_CASE("relation axioms are detected") {
  // Two arrows into 2, both composing with c without a relation: axiom 3 fails at c.
  const auto q = parse_quiver(
      "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 3 -> 2\narrow c: 2 -> 4\n");
  CHECK_FALSE(is_gentle(q));
  CHECK_FALSE(gentle_oracle(q));
  const auto fixed = parse_quiver(
      "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 3 -> 2\narrow c: 2 -> 4\nrelation: c a\n");
  CHECK(is_gentle(fixed));
  // Both continuations of a in relations: axiom 4 fails.
  const auto q4 = parse_quiver(
      "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 2 -> 4\n"
      "relation: b a\nrelation: c a\n");
  CHECK_FALSE(is_gentle(q4));
  CHECK_FALSE(gentle_oracle(q4));
}

TEST_CASE("one-cycle examples") {
  CHECK(is_one_cycle(build_lambda({2, 3, 2})));
  CHECK(build_lambda({2, 3, 2}).vertices().size() == 5);
  CHECK_FALSE(is_one_cycle(parse_quiver("vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n")));
  CHECK(is_one_cycle(kronecker()));
  CHECK_FALSE(is_one_cycle(parse_quiver("vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 1\n"
                                        "arrow c: 3 -> 4\narrow d: 4 -> 3\n")));
}

TEST_CASE("cycle arrow classification") {
  const auto cyc = cycle_arrows(build_lambda({1, 2, 0}));
  CHECK(cyc.non_cycle.empty());
  CHECK((cyc.clockwise.size() == 2 || cyc.anticlockwise.size() == 2));

  const auto tail = build_lambda({1, 2, 1});
  const auto t = cycle_arrows(tail);
  REQUIRE(t.non_cycle.size() == 1);
  CHECK(tail.arrows()[t.non_cycle[0]].name == "a-1");

  const auto k = cycle_arrows(kronecker());
  CHECK(k.clockwise.size() == 1);
  CHECK(k.anticlockwise.size() == 1);
  CHECK(k.non_cycle.empty());

  const auto loop = cycle_arrows(build_lambda({1, 1, 0}));
  CHECK(loop.clockwise.size() == 1);
  CHECK_THROWS_AS(cycle_arrows(parse_quiver("vertices: 1 2\narrow a: 1 -> 2\n")), InvalidInput);
}

TEST_CASE("clock condition examples") {
  CHECK_FALSE(clock_condition(build_lambda({1, 2, 0})));
  CHECK(clock_condition(kronecker()));
  CHECK_FALSE(clock_condition(build_lambda({2, 3, 1})));
  const auto counts = clock_counts(build_lambda({1, 1, 0}));
  CHECK(counts.clockwise + counts.anticlockwise == 1);
  // a triangle without relations has counts (0, 0)
  CHECK(clock_condition(parse_quiver("vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n"
                                     "arrow c: 1 -> 3\n")));
}

TEST_CASE("property: every algebra in the grid is gentle, one-cycle and fails the clock condition") {
  for (int n = 1; n <= 5; ++n)
    for (int r = 1; r <= n; ++r)
      for (int m = 0; m <= 3; ++m) {
        const auto q = build_lambda({r, n, m});
        CHECK(is_gentle(q));
        CHECK(gentle_oracle(q));
        CHECK(is_one_cycle(q));
        CHECK_FALSE(clock_condition(q));
        CHECK(q.relations().size() == static_cast<std::size_t>(r));
      }
}

TEST_CASE("property: cycle arrows are exactly the arrows whose removal keeps the quiver connected") {
  support::Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto q = relabel(build_lambda(support::random_params(rng, 5, 3)), rng);
    const auto cyc = cycle_arrows(q);
    for (auto a : cyc.non_cycle) CHECK_FALSE(q.connected(a));
    for (auto a : cyc.clockwise) CHECK(q.connected(a));
    for (auto a : cyc.anticlockwise) CHECK(q.connected(a));
    CHECK(cyc.non_cycle.size() + cyc.clockwise.size() + cyc.anticlockwise.size() == q.arrows().size());
  }
}

TEST_CASE("property: clock condition is invariant under relabelling") {
  support::Rng rng(22);
  std::vector<GentleQuiver> bases = {kronecker()};
  for (int trial = 0; trial < 20; ++trial) bases.push_back(build_lambda(support::random_params(rng, 5, 3)));
  for (const auto& base : bases) {
    const auto c0 = clock_counts(base);
    for (int k = 0; k < 5; ++k) {
      const auto q = relabel(base, rng);
      CHECK(is_gentle(q) == is_gentle(base));
      CHECK(clock_condition(q) == clock_condition(base));
      const auto c = clock_counts(q);
      // the walk direction may flip, which swaps the two counts
      CHECK((std::minmax(c.clockwise, c.anticlockwise) == std::minmax(c0.clockwise, c0.anticlockwise)));
    }
  }
}

TEST_CASE("parser") {
  const auto q = parse_quiver("# comment\n\nvertices: 0 1  # trailing\narrow x: 0 -> 1\narrow y: 1 -> 0\nrelation: y x\n");
  CHECK(q.vertices().size() == 2);
  CHECK(q.has_relation(*q.find_arrow("y"), *q.find_arrow("x")));

  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_quiver(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("vertices: 1\nfrobnicate\n") == 2);
  CHECK(line_of("vertices: 1 2\narrow a: 1 -> 3\n") == 2);
  CHECK(line_of("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\nrelation: b a\n") == 4);
  CHECK(line_of("vertices: 1 2\narrow a: 1 -> 2\nrelation: a\n") == 3);
  CHECK(line_of("vertices: 1 2\narrow a: 2 -> 1\narrow b: 1 -> 2\nrelation: a b a\n") == 4);
  CHECK(line_of("vertices: 1 1\n") == 1);
  CHECK_THROWS_AS(load_quiver("/nonexistent/file.quiver"), InvalidInput);
}

TEST_CASE("property: format and parse round trip") {
  support::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto q = build_lambda(support::random_params(rng, 5, 3));
    const auto back = parse_quiver(format_quiver(q));
    CHECK(back.vertices() == q.vertices());
    CHECK(relation_names(back) == relation_names(q));
    CHECK(format_quiver(back) == format_quiver(q));
  }
}
