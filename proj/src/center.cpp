#include "dcenter/center.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dcenter::center {

using model::ArrowKind;
using model::BasisElement;
using model::Family;
using model::Model;
using model::Morphism;
using model::Vertex;
using model::Window;

std::string to_string(Variant v) { return v == Variant::Graded ? "graded" : "commutative"; }

Variant parse_variant(const std::string& s) {
  if (s == "graded") return Variant::Graded;
  if (s == "commutative") return Variant::Commutative;
  throw InvalidInput("unknown variant '" + s + "' (expected graded or commutative)");
}

Morphism CenterElement::at(const Model& m, const Vertex& v) const {
  if (auto it = values.find(v); it != values.end()) return it->second;
  return Morphism(v, m.sigma(v, degree), field);
}

void CenterElement::set(const Vertex& v, const Morphism& f) {
  if (f.is_zero())
    values.erase(v);
  else
    values.insert_or_assign(v, f);
}

std::string to_string(const CenterElement& el) {
  std::ostringstream out;
  out << "degree " << el.degree << ", " << el.values.size() << " nonzero values";
  for (const auto& [v, f] : el.values) out << "\n  " << model::to_string(v) << " -> " << to_string(f);
  return out.str();
}

std::string to_string(const GeneratorSpec& s) {
  switch (s.name) {
    case GeneratorSpec::Name::Identity: return "identity";
    case GeneratorSpec::Name::EtaPrime: return "eta_prime(" + std::to_string(s.index) + ")";
    case GeneratorSpec::Name::EtaDPrime: return "eta_dprime(" + std::to_string(s.index) + ")";
    case GeneratorSpec::Name::EtaZero: return "eta_zero(" + std::to_string(s.index) + ")";
    case GeneratorSpec::Name::EtaPower: return "eta_power(" + std::to_string(s.index) + ")";
  }
  return "?";
}

bool admissible(const OmegaParams& params, const GeneratorSpec& spec) {
  const auto [r, n, m] = params;
  if (spec.index < 0) return false;
  switch (spec.name) {
    case GeneratorSpec::Name::Identity: return true;
    case GeneratorSpec::Name::EtaPrime:
    case GeneratorSpec::Name::EtaDPrime: return r == n - 1;
    case GeneratorSpec::Name::EtaZero: return r == 1 && m == 0;
    case GeneratorSpec::Name::EtaPower: return r == n;
  }
  return false;
}

int generator_degree(const OmegaParams& params, const GeneratorSpec& spec) {
  switch (spec.name) {
    case GeneratorSpec::Name::EtaPrime:
    case GeneratorSpec::Name::EtaDPrime: return params.n;
    case GeneratorSpec::Name::EtaPower: return spec.index * params.n;
    default: return 0;
  }
}

Variant generator_variant(const GeneratorSpec& spec) {
  switch (spec.name) {
    case GeneratorSpec::Name::EtaDPrime:
    case GeneratorSpec::Name::EtaPower: return Variant::Commutative;
    default: return Variant::Graded;
  }
}

int epsilon_sign(const Model& m, const Vertex& v) {
  const auto [r, n, mm] = m.params();
  (void)mm;
  if (r != n - 1 || v.family != Family::Y || !m.exists(v))
    throw InvalidInput("epsilon is defined on Y-vertices for r = n - 1");
  const int q = v.coord.b - v.coord.a - m.delta0(v.i) * n;
  const Vertex base{Family::Y, 0, {0, n + q}};
  // Y_v^(i) = Σ^{k r + i} base, and Σ^r translates by the period shift.
  const auto partial = m.sigma(base, v.i);
  const auto shift = m.sigma_period_shift(Family::Y);
  const int da = v.coord.a - partial.coord.a, db = v.coord.b - partial.coord.b;
  if (shift.a == 0 || da % shift.a != 0 || da / shift.a * shift.b != db)
    throw std::logic_error("vertex " + model::to_string(v) + " is not in the orbit of " +
                           model::to_string(base));
  const long p = static_cast<long>(da / shift.a) * r + v.i;
  return (static_cast<long>(n) * p) % 2 == 0 ? 1 : -1;
}

CenterElement make_generator(const Model& m, const GeneratorSpec& spec, Window domain,
                             gf::PrimeField field) {
  const auto& params = m.params();
  if (!admissible(params, spec))
    throw InvalidInput(to_string(spec) + " is not admissible for " + to_string(params));
  CenterElement el;
  el.degree = generator_degree(params, spec);
  el.variant = generator_variant(spec);
  el.field = field;
  el.domain = domain;
  const auto [r, n, mm] = params;
  const int q = spec.index;

  for (const auto& v : m.enumerate_vertices(domain)) {
    const int a = v.coord.a, b = v.coord.b;
    const auto target = m.sigma(v, el.degree);
    Morphism value(v, target, field);
    switch (spec.name) {
      case GeneratorSpec::Name::Identity:
        value = Morphism::identity(v, field);
        break;
      case GeneratorSpec::Name::EtaPrime:
      case GeneratorSpec::Name::EtaDPrime:
        if (v.family == Family::Y && b - a == q + m.delta0(v.i) * n) {
          auto arrow = m.arrow(v, target, 2);
          if (!arrow || arrow->kind != ArrowKind::EDPrime)
            throw std::logic_error("missing e'' at " + model::to_string(v));
          std::uint32_t coeff = 1;
          if (spec.name == GeneratorSpec::Name::EtaPrime && epsilon_sign(m, v) < 0)
            coeff = field.neg(1);
          value.add_term(BasisElement{arrow->kind}, coeff);
        }
        break;
      case GeneratorSpec::Name::EtaZero:
        if (v.family == Family::X && v.i == 0 && b - a == q) {
          auto arrow = m.arrow(v, v, 2);
          if (!arrow) throw std::logic_error("missing e'_{v,v} at " + model::to_string(v));
          value.add_term(BasisElement{arrow->kind}, 1);
        }
        break;
      case GeneratorSpec::Name::EtaPower:
        if (v.family == Family::X && q * (n + mm) <= b + m.delta0(v.i) * mm - a) {
          if (q == 0) {
            value = Morphism::identity(v, field);
          } else {
            auto arrow = m.arrow(v, target, 0);
            if (!arrow || target.coord != model::Coord{a + q * (n + mm), b + q * (n + mm)})
              throw std::logic_error("missing f' at " + model::to_string(v));
            value.add_term(BasisElement{arrow->kind}, 1);
          }
        }
        break;
    }
    (void)r;
    el.set(v, value);
  }
  return el;
}

int margin(const OmegaParams& params, int p) {
  const int period = params.r < params.n ? params.r : params.n;
  return (p + period - 1) / period + params.n + params.m + 2;
}

Window default_inner_window(const OmegaParams& params, int p) {
  const int period = params.r < params.n ? params.r : params.n;
  const int k = (p + period - 1) / period;
  const int reach = k * (params.n + params.m) - params.m;
  return Window{std::max(4, (reach + 1) / 2 + 2)};
}

namespace {

bool inside(Window inner, Window outer) { return inner.half_width <= outer.half_width; }

}  // namespace

MembershipResult check_membership(const Model& m, const CenterElement& el, Variant variant,
                                  Window inner) {
  if (!inside(inner, el.domain) || inner.half_width < 0)
    throw WindowError("inner window " + std::to_string(inner.half_width) +
                      " exceeds the element's domain " + std::to_string(el.domain.half_width));
  MembershipResult result;
  const auto& field = el.field;
  const int p = el.degree;
  const std::uint32_t sign = (variant == Variant::Graded && p % 2 != 0) ? field.neg(1) : 1;

  auto nonzero = [&](const Vertex& v) { return el.values.count(v) != 0; };
  for (const auto& v : m.enumerate_vertices(inner)) {
    for (const auto& arrow : m.arrows_from(v, inner)) {
      if (!nonzero(v) && !nonzero(arrow.target)) continue;
      ++result.naturality_checks;
      const auto phi = Morphism::arrow(arrow, field);
      const auto lhs = m.compose(m.sigma(phi, p), el.at(m, v));
      const auto rhs = m.compose(el.at(m, arrow.target), phi);
      if (!(lhs == rhs)) {
        result.ok = false;
        result.violation = "naturality along " + model::to_string(arrow) + ": " + to_string(lhs) +
                           " != " + to_string(rhs);
        return result;
      }
    }
    const auto sv = m.sigma(v);
    if (!inner.contains(sv.coord) || (!nonzero(v) && !nonzero(sv))) continue;
    ++result.sign_checks;
    const auto lhs = el.at(m, sv);
    const auto rhs = m.sigma(el.at(m, v)).scaled(sign);
    if (!(lhs == rhs)) {
      result.ok = false;
      result.violation = "sign law at " + model::to_string(v) + ": " + to_string(lhs) +
                         " != " + to_string(rhs);
      return result;
    }
  }
  return result;
}

MembershipResult check_membership(const Model& m, const CenterElement& el, Variant variant,
                                  Window window, Window inner) {
  if (inner.half_width + margin(m.params(), el.degree) > window.half_width)
    throw WindowError("inner window " + std::to_string(inner.half_width) + " plus margin " +
                      std::to_string(margin(m.params(), el.degree)) + " exceeds window " +
                      std::to_string(window.half_width));
  if (!inside(window, el.domain))
    throw WindowError("window exceeds the element's domain");
  return check_membership(m, el, variant, inner);
}

std::optional<ClassKey> class_of(const Model& m, const Vertex& v) {
  const int a = v.coord.a, b = v.coord.b;
  switch (v.family) {
    case Family::X: return ClassKey{Family::X, b - a + m.delta0(v.i) * m.params().m};
    case Family::Y: return ClassKey{Family::Y, b - a - m.delta0(v.i) * m.params().n};
    case Family::Z: return std::nullopt;
  }
  return std::nullopt;
}

std::string to_string(const ClassKey& k) {
  return std::string(1, model::family_letter(k.family)) + ":q=" + std::to_string(k.q);
}

namespace {

/// Reduced echelon rows of a dense matrix (zero rows dropped).
std::vector<std::vector<std::uint32_t>> echelon(std::vector<std::vector<std::uint32_t>> rows,
                                                const gf::PrimeField& field) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const auto scale = field.inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = field.mul(x, scale);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const auto factor = rows[r][c];
      for (std::size_t k = c; k < cols; ++k)
        rows[r][k] = field.sub(rows[r][k], field.mul(factor, rows[rank][k]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

}  // namespace

ComponentSolution solve_component(const Model& m, int p, Variant variant, gf::PrimeField field,
                                  Window window, Window inner) {
  if (p < 0) throw InvalidInput("negative degree " + std::to_string(p));
  if (inner.half_width < 0 || inner.half_width + margin(m.params(), p) > window.half_width)
    throw WindowError("window " + std::to_string(window.half_width) + " too small for inner window " +
                      std::to_string(inner.half_width) + " at degree " + std::to_string(p) +
                      " (margin " + std::to_string(margin(m.params(), p)) + ")");

  ComponentSolution sol;
  sol.params = m.params();
  sol.degree = p;
  sol.variant = variant;
  sol.characteristic = field.characteristic();
  sol.window = window;
  sol.inner = inner;

  const model::WindowIndex index(m, window);
  const auto& vertices = index.vertices();
  const std::size_t count = vertices.size();

  // Unknowns: coefficients of η_v over the basis of Hom(v, Σ^p v).
  std::vector<std::vector<BasisElement>> bases(count);
  std::vector<std::size_t> offset(count + 1, 0);
  std::vector<Vertex> shifted(count);
  std::vector<long> with_unknowns;
  for (std::size_t k = 0; k < count; ++k) {
    bases[k] = hom::hom_basis(m, vertices[k], p).basis;
    shifted[k] = m.sigma(vertices[k], p);
    offset[k + 1] = offset[k] + bases[k].size();
    if (!bases[k].empty()) with_unknowns.push_back(static_cast<long>(k));
  }
  sol.unknowns = offset[count];
  gf::Eliminator elim(sol.unknowns, field);

  const std::uint32_t minus_one = field.neg(1);
  gf::SparseVector by_degree[3];
  auto naturality = [&](std::size_t vk, const model::ArrowGen& arrow, std::size_t wk) {
    for (auto& eq : by_degree) eq.clear();
    const BasisElement phi{arrow.kind};
    const auto& far = shifted[wk];  // Σ^p w
    for (std::size_t j = 0; j < bases[vk].size(); ++j)
      if (auto e = m.compose_basis(phi, bases[vk][j], vertices[vk], far))
        by_degree[e->degree()].emplace_back(offset[vk] + j, 1);
    for (std::size_t j = 0; j < bases[wk].size(); ++j)
      if (auto e = m.compose_basis(bases[wk][j], phi, vertices[vk], far))
        by_degree[e->degree()].emplace_back(offset[wk] + j, minus_one);
    for (const auto& eq : by_degree) {
      if (eq.empty()) continue;
      ++sol.equations;
      elim.add_row(eq);
    }
  };

  const auto rect = window.rect();
  for (std::size_t vk = 0; vk < count; ++vk) {
    const auto& v = vertices[vk];
    if (!bases[vk].empty()) {
      for (const auto& arrow : m.arrows_from(v, window))
        naturality(vk, arrow, static_cast<std::size_t>(index.id(arrow.target)));
      continue;
    }
    // v carries no unknowns: only arrows into vertices with unknowns matter.
    long scan_cost = 0;
    std::vector<model::TargetSet> sets;
    for (int d = 0; d <= 2; ++d)
      for (auto& s : m.target_sets(v, d)) {
        const auto box = s.rect.intersect(rect);
        if (!box.empty())
          scan_cost += static_cast<long>(box.a_hi - box.a_lo + 1) * (box.b_hi - box.b_lo + 1);
        sets.push_back(s);
      }
    if (scan_cost <= static_cast<long>(with_unknowns.size())) {
      for (const auto& arrow : m.arrows_from(v, window)) {
        const auto wk = static_cast<std::size_t>(index.id(arrow.target));
        if (!bases[wk].empty()) naturality(vk, arrow, wk);
      }
    } else {
      for (auto wk : with_unknowns)
        for (const auto& s : sets)
          if (s.contains(vertices[static_cast<std::size_t>(wk)]))
            naturality(vk, {s.kind, v, vertices[static_cast<std::size_t>(wk)]},
                       static_cast<std::size_t>(wk));
    }
  }

  // Sign law along (v, Σv).
  const std::uint32_t sign = (variant == Variant::Graded && p % 2 != 0) ? minus_one : 1;
  for (auto vk_signed : with_unknowns) {
    const auto vk = static_cast<std::size_t>(vk_signed);
    const long sk_signed = index.id(m.sigma(vertices[vk]));
    if (sk_signed < 0) continue;
    const auto sk = static_cast<std::size_t>(sk_signed);
    for (std::size_t j = 0; j < bases[vk].size(); ++j) {
      auto it = std::find(bases[sk].begin(), bases[sk].end(), bases[vk][j]);
      if (it == bases[sk].end())
        throw std::logic_error("suspension does not preserve the Hom basis at " +
                               model::to_string(vertices[vk]));
      const auto jj = static_cast<std::size_t>(it - bases[sk].begin());
      ++sol.equations;
      elim.add_row({{offset[sk] + jj, 1}, {offset[vk] + j, field.neg(sign)}});
    }
  }
  sol.rank = elim.rank();

  // Restrict the null space to the inner window.
  std::vector<std::size_t> inner_cols;
  for (std::size_t k = 0; k < count; ++k)
    if (inner.contains(vertices[k].coord))
      for (std::size_t j = 0; j < bases[k].size(); ++j) inner_cols.push_back(offset[k] + j);
  std::vector<std::vector<std::uint32_t>> restricted;
  for (const auto& v : elim.null_space()) {
    std::vector<std::uint32_t> row(inner_cols.size());
    bool any = false;
    for (std::size_t c = 0; c < inner_cols.size(); ++c) {
      row[c] = v[inner_cols[c]];
      any = any || row[c] != 0;
    }
    if (any) restricted.push_back(std::move(row));
  }
  const auto rows = echelon(std::move(restricted), field);
  sol.dimension = rows.size();

  // Column owners for the class decomposition.
  std::vector<std::size_t> owner(inner_cols.size());
  std::vector<std::size_t> basis_slot(inner_cols.size());
  {
    std::size_t c = 0;
    for (std::size_t k = 0; k < count; ++k)
      if (inner.contains(vertices[k].coord))
        for (std::size_t j = 0; j < bases[k].size(); ++j, ++c) {
          owner[c] = k;
          basis_slot[c] = j;
        }
  }
  std::map<ClassKey, std::vector<std::size_t>> class_cols;
  for (std::size_t c = 0; c < inner_cols.size(); ++c)
    if (auto key = class_of(m, vertices[owner[c]])) class_cols[*key].push_back(c);

  std::size_t class_total = 0;
  for (const auto& [key, cols] : class_cols) {
    std::vector<char> in_class(inner_cols.size(), 0);
    for (auto c : cols) in_class[c] = 1;
    bool touches = false;
    for (const auto& row : rows)
      for (auto c : cols) touches = touches || row[c] != 0;
    if (!touches) continue;
    std::vector<std::vector<std::uint32_t>> outside;
    for (const auto& row : rows) {
      std::vector<std::uint32_t> rest;
      for (std::size_t c = 0; c < row.size(); ++c)
        if (!in_class[c]) rest.push_back(row[c]);
      outside.push_back(std::move(rest));
    }
    const auto dim = sol.dimension - gf::dense_rank(std::move(outside), field);
    if (dim > 0) {
      sol.classes.push_back({key, dim});
      class_total += dim;
    }
  }
  sol.global_dimension = sol.dimension - class_total;

  for (const auto& row : rows) {
    CenterElement el;
    el.degree = p;
    el.variant = variant;
    el.field = field;
    el.domain = inner;
    std::map<std::size_t, Morphism> values;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] == 0) continue;
      const auto k = owner[c];
      auto it = values.try_emplace(k, vertices[k], shifted[k], field).first;
      it->second.add_term(bases[k][basis_slot[c]], row[c]);
    }
    for (const auto& [k, f] : values) el.set(vertices[k], f);
    sol.basis.push_back(std::move(el));
  }
  return sol;
}

CenterElement multiply(const Model& m, const CenterElement& a, const CenterElement& b) {
  if (a.field != b.field) throw InvalidInput("multiplying elements over different fields");
  CenterElement out;
  out.degree = a.degree + b.degree;
  out.field = a.field;
  out.domain = Window{std::min(a.domain.half_width, b.domain.half_width)};
  if (a.degree == 0)
    out.variant = b.variant;
  else if (b.degree == 0 || a.variant == b.variant)
    out.variant = a.variant;
  else
    out.variant = Variant::Graded;
  for (const auto& [v, bv] : b.values) {
    if (!out.domain.contains(v.coord)) continue;
    auto it = a.values.find(v);
    if (it == a.values.end()) continue;
    out.set(v, m.compose(m.sigma(it->second, b.degree), bv));
  }
  return out;
}

bool equal_on(const Model& m, const CenterElement& a, const CenterElement& b, Window w) {
  if (a.degree != b.degree) return false;
  for (const auto* el : {&a, &b})
    for (const auto& [v, f] : el->values) {
      (void)f;
      if (w.contains(v.coord) && !(a.at(m, v) == b.at(m, v))) return false;
    }
  return true;
}

}  // namespace dcenter::center
