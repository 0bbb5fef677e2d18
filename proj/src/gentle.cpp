#include "dcenter/gentle.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace dcenter {

void OmegaParams::validate() const {
  if (!in_omega())
    throw InvalidInput("parameters " + to_string(*this) +
                       " outside Omega (need n >= 1, m >= 0, 1 <= r <= n)");
}

std::string to_string(const OmegaParams& p) {
  return "(" + std::to_string(p.r) + "," + std::to_string(p.n) + "," + std::to_string(p.m) + ")";
}

namespace gentle {

std::size_t GentleQuiver::add_vertex(std::string name) {
  if (find_vertex(name)) throw InvalidInput("duplicate vertex '" + name + "'");
  vertices_.push_back(std::move(name));
  return vertices_.size() - 1;
}

std::size_t GentleQuiver::add_arrow(std::string name, std::size_t source, std::size_t target) {
  if (find_arrow(name)) throw InvalidInput("duplicate arrow '" + name + "'");
  if (source >= vertices_.size() || target >= vertices_.size())
    throw InvalidInput("arrow '" + name + "' has an unknown endpoint");
  arrows_.push_back({std::move(name), source, target});
  return arrows_.size() - 1;
}

void GentleQuiver::add_relation(std::size_t beta, std::size_t alpha) {
  if (beta >= arrows_.size() || alpha >= arrows_.size())
    throw InvalidInput("relation refers to an unknown arrow");
  if (arrows_[alpha].target != arrows_[beta].source)
    throw InvalidInput("relation " + arrows_[beta].name + " " + arrows_[alpha].name +
                       " is not composable");
  if (has_relation(beta, alpha))
    throw InvalidInput("duplicate relation " + arrows_[beta].name + " " + arrows_[alpha].name);
  relations_.push_back({beta, alpha});
}

std::optional<std::size_t> GentleQuiver::find_vertex(std::string_view name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> GentleQuiver::find_arrow(std::string_view name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return i;
  return std::nullopt;
}

bool GentleQuiver::has_relation(std::size_t beta, std::size_t alpha) const {
  return std::any_of(relations_.begin(), relations_.end(),
                     [&](const Relation& r) { return r.beta == beta && r.alpha == alpha; });
}

bool GentleQuiver::connected(std::optional<std::size_t> without_arrow) const {
  if (vertices_.empty()) return true;
  std::vector<std::size_t> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = vertices_.size();
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    if (without_arrow && *without_arrow == a) continue;
    auto x = find(arrows_[a].source), y = find(arrows_[a].target);
    if (x != y) {
      parent[x] = y;
      --components;
    }
  }
  return components == 1;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokens(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

GentleQuiver parse_quiver(std::string_view text) {
  GentleQuiver q;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    try {
      if (line.rfind("vertices:", 0) == 0) {
        for (auto& name : tokens(std::string_view(line).substr(9))) q.add_vertex(name);
      } else if (line.rfind("arrow ", 0) == 0) {
        auto colon = line.find(':');
        auto arrow_pos = line.find("->");
        if (colon == std::string::npos || arrow_pos == std::string::npos || arrow_pos < colon)
          throw ParseError(line_no, "expected 'arrow NAME: SRC -> TGT'");
        auto name = tokens(std::string_view(line).substr(6, colon - 6));
        auto src = tokens(std::string_view(line).substr(colon + 1, arrow_pos - colon - 1));
        auto tgt = tokens(std::string_view(line).substr(arrow_pos + 2));
        if (name.size() != 1 || src.size() != 1 || tgt.size() != 1)
          throw ParseError(line_no, "expected 'arrow NAME: SRC -> TGT'");
        auto s = q.find_vertex(src[0]);
        auto t = q.find_vertex(tgt[0]);
        if (!s) throw ParseError(line_no, "unknown vertex '" + src[0] + "'");
        if (!t) throw ParseError(line_no, "unknown vertex '" + tgt[0] + "'");
        q.add_arrow(name[0], *s, *t);
      } else if (line.rfind("relation:", 0) == 0) {
        auto names = tokens(std::string_view(line).substr(9));
        if (names.size() != 2)
          throw ParseError(line_no, "relations must be paths of length 2 (got " +
                                        std::to_string(names.size()) + " arrows)");
        auto beta = q.find_arrow(names[0]);
        auto alpha = q.find_arrow(names[1]);
        if (!beta) throw ParseError(line_no, "unknown arrow '" + names[0] + "'");
        if (!alpha) throw ParseError(line_no, "unknown arrow '" + names[1] + "'");
        q.add_relation(*beta, *alpha);
      } else {
        throw ParseError(line_no, "unknown directive '" + tokens(line).front() + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (q.vertices().empty()) throw ParseError(line_no, "quiver has no vertices");
  return q;
}

GentleQuiver load_quiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open quiver file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_quiver(buffer.str());
}

std::string format_quiver(const GentleQuiver& q) {
  std::ostringstream out;
  out << "vertices:";
  for (const auto& v : q.vertices()) out << ' ' << v;
  out << '\n';
  for (const auto& a : q.arrows())
    out << "arrow " << a.name << ": " << q.vertices()[a.source] << " -> "
        << q.vertices()[a.target] << '\n';
  for (const auto& r : q.relations())
    out << "relation: " << q.arrows()[r.beta].name << ' ' << q.arrows()[r.alpha].name << '\n';
  return out.str();
}

GentleReport check_gentle(const GentleQuiver& q) {
  GentleReport report;
  const auto& arrows = q.arrows();
  const auto& names = q.vertices();
  auto fail = [&](int axiom, std::string where, std::string message) {
    report.gentle = false;
    report.violations.push_back({axiom, std::move(where), std::move(message)});
  };

  for (std::size_t x = 0; x < names.size(); ++x) {
    auto out = std::count_if(arrows.begin(), arrows.end(), [&](auto& a) { return a.source == x; });
    auto in = std::count_if(arrows.begin(), arrows.end(), [&](auto& a) { return a.target == x; });
    if (out > 2) fail(1, "vertex " + names[x], std::to_string(out) + " arrows start here");
    if (in > 2) fail(1, "vertex " + names[x], std::to_string(in) + " arrows end here");
  }

  for (std::size_t a = 0; a < arrows.size(); ++a) {
    int after_free = 0, after_rel = 0, before_free = 0, before_rel = 0;
    for (std::size_t b = 0; b < arrows.size(); ++b) {
      if (arrows[b].source == arrows[a].target) (q.has_relation(b, a) ? after_rel : after_free)++;
      if (arrows[b].target == arrows[a].source) (q.has_relation(a, b) ? before_rel : before_free)++;
    }
    const auto where = "arrow " + arrows[a].name;
    if (after_free > 1) fail(3, where, "several continuations outside the relations");
    if (before_free > 1) fail(3, where, "several predecessors outside the relations");
    if (after_rel > 1) fail(4, where, "several continuations inside the relations");
    if (before_rel > 1) fail(4, where, "several predecessors inside the relations");
  }
  return report;
}

bool is_one_cycle(const GentleQuiver& q) {
  return q.arrows().size() == q.vertices().size() && q.connected();
}

CycleArrows cycle_arrows(const GentleQuiver& q) {
  if (!is_one_cycle(q)) throw InvalidInput("quiver is not one-cycle");
  const auto& arrows = q.arrows();
  const auto& names = q.vertices();

  CycleArrows result;
  std::vector<std::size_t> cycle;
  for (std::size_t a = 0; a < arrows.size(); ++a)
    (q.connected(a) ? cycle : result.non_cycle).push_back(a);

  if (cycle.size() == 1) {
    result.clockwise = cycle;
    return result;
  }

  std::vector<std::size_t> cycle_vertices;
  for (auto a : cycle) {
    cycle_vertices.push_back(arrows[a].source);
    cycle_vertices.push_back(arrows[a].target);
  }
  auto start = *std::min_element(cycle_vertices.begin(), cycle_vertices.end(),
                                 [&](auto x, auto y) { return names[x] < names[y]; });

  auto other_end = [&](std::size_t a, std::size_t v) {
    return arrows[a].source == v ? arrows[a].target : arrows[a].source;
  };

  std::vector<char> used(arrows.size(), 0);
  std::size_t current = start;
  for (std::size_t step = 0; step < cycle.size(); ++step) {
    std::optional<std::size_t> next;
    for (auto a : cycle) {
      if (used[a] || (arrows[a].source != current && arrows[a].target != current)) continue;
      if (!next) {
        next = a;
        continue;
      }
      const auto& na = names[other_end(a, current)];
      const auto& nb = names[other_end(*next, current)];
      if (na < nb || (na == nb && arrows[a].name < arrows[*next].name)) next = a;
    }
    used[*next] = 1;
    (arrows[*next].source == current ? result.clockwise : result.anticlockwise).push_back(*next);
    current = other_end(*next, current);
  }
  std::sort(result.clockwise.begin(), result.clockwise.end());
  std::sort(result.anticlockwise.begin(), result.anticlockwise.end());
  return result;
}

ClockCounts clock_counts(const GentleQuiver& q) {
  const auto cycle = cycle_arrows(q);
  auto in = [](const std::vector<std::size_t>& set, std::size_t a) {
    return std::binary_search(set.begin(), set.end(), a);
  };
  ClockCounts counts;
  for (const auto& r : q.relations()) {
    if (in(cycle.clockwise, r.alpha) && in(cycle.clockwise, r.beta)) ++counts.clockwise;
    if (in(cycle.anticlockwise, r.alpha) && in(cycle.anticlockwise, r.beta)) ++counts.anticlockwise;
  }
  return counts;
}

bool clock_condition(const GentleQuiver& q) {
  const auto counts = clock_counts(q);
  return counts.clockwise == counts.anticlockwise;
}

GentleQuiver build_lambda(const OmegaParams& params) {
  params.validate();
  const int n = params.n, m = params.m, r = params.r;
  GentleQuiver q;
  for (int v = -m; v < n; ++v) q.add_vertex(std::to_string(v));
  auto vertex = [&](int v) { return static_cast<std::size_t>(v + m); };
  for (int j = -m; j < 0; ++j) q.add_arrow("a" + std::to_string(j), vertex(j), vertex(j + 1));
  auto cycle_arrow = [&](int i) { return static_cast<std::size_t>(m + ((i % n) + n) % n); };
  for (int i = 0; i < n; ++i) q.add_arrow("a" + std::to_string(i), vertex(i), vertex((i + 1) % n));
  for (int i = n - r; i <= n - 2; ++i) q.add_relation(cycle_arrow(i + 1), cycle_arrow(i));
  q.add_relation(cycle_arrow(0), cycle_arrow(n - 1));
  return q;
}

}  // namespace gentle
}  // namespace dcenter
