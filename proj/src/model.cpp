#include "dcenter/model.hpp"

#include <algorithm>

namespace dcenter::model {

char family_letter(Family f) {
  switch (f) {
    case Family::X: return 'X';
    case Family::Y: return 'Y';
    case Family::Z: return 'Z';
  }
  return '?';
}

std::string to_string(const Vertex& v) {
  return std::string(1, family_letter(v.family)) + "[" + std::to_string(v.i) + "](" +
         std::to_string(v.coord.a) + "," + std::to_string(v.coord.b) + ")";
}

std::string kind_name(ArrowKind k) {
  switch (k) {
    case ArrowKind::FPrime: return "f'";
    case ArrowKind::GPrime: return "g'";
    case ArrowKind::EPrime: return "e'";
    case ArrowKind::FDPrime: return "f''";
    case ArrowKind::GDPrime: return "g''";
    case ArrowKind::EDPrime: return "e''";
    case ArrowKind::F: return "f";
    case ArrowKind::HPrime: return "h'";
    case ArrowKind::HDPrime: return "h''";
    case ArrowKind::EZ: return "eZ";
  }
  return "?";
}

int kind_degree(ArrowKind k) {
  switch (k) {
    case ArrowKind::FPrime:
    case ArrowKind::FDPrime:
    case ArrowKind::F: return 0;
    case ArrowKind::GPrime:
    case ArrowKind::GDPrime:
    case ArrowKind::HPrime:
    case ArrowKind::HDPrime: return 1;
    case ArrowKind::EPrime:
    case ArrowKind::EDPrime:
    case ArrowKind::EZ: return 2;
  }
  return -1;
}

namespace {

Family source_family(ArrowKind k) {
  switch (k) {
    case ArrowKind::FPrime:
    case ArrowKind::GPrime:
    case ArrowKind::EPrime: return Family::X;
    case ArrowKind::FDPrime:
    case ArrowKind::GDPrime:
    case ArrowKind::EDPrime: return Family::Y;
    default: return Family::Z;
  }
}

Family target_family(ArrowKind k) {
  switch (k) {
    case ArrowKind::FPrime:
    case ArrowKind::EPrime:
    case ArrowKind::HPrime: return Family::X;
    case ArrowKind::FDPrime:
    case ArrowKind::EDPrime:
    case ArrowKind::HDPrime: return Family::Y;
    default: return Family::Z;
  }
}

int index_step(ArrowKind k) {
  switch (k) {
    case ArrowKind::EPrime:
    case ArrowKind::EDPrime:
    case ArrowKind::HPrime:
    case ArrowKind::HDPrime:
    case ArrowKind::EZ: return 1;
    default: return 0;
  }
}

constexpr ArrowKind kAllKinds[] = {
    ArrowKind::FPrime,  ArrowKind::GPrime, ArrowKind::EPrime, ArrowKind::FDPrime,
    ArrowKind::GDPrime, ArrowKind::EDPrime, ArrowKind::F,     ArrowKind::HPrime,
    ArrowKind::HDPrime, ArrowKind::EZ};

}  // namespace

std::string to_string(const ArrowGen& a) {
  return kind_name(a.kind) + ":" + to_string(a.source) + "->" + to_string(a.target) + " deg " +
         std::to_string(a.degree());
}

std::string to_string(const BasisElement& e, const Vertex& source, const Vertex& target) {
  if (e.is_identity()) return "id_" + to_string(source);
  return to_string(ArrowGen{*e.kind, source, target});
}

Morphism::Morphism(Vertex source, Vertex target, gf::PrimeField field)
    : source_(source), target_(target), field_(field) {}

Morphism Morphism::identity(const Vertex& v, gf::PrimeField field) {
  Morphism m(v, v, field);
  m.add_term(BasisElement{}, 1);
  return m;
}

Morphism Morphism::arrow(const ArrowGen& a, gf::PrimeField field) {
  Morphism m(a.source, a.target, field);
  m.add_term(BasisElement{a.kind}, 1);
  return m;
}

void Morphism::add_term(BasisElement e, std::uint32_t coeff) {
  if (e.is_identity() && source_ != target_)
    throw InvalidInput("identity term between distinct vertices " + to_string(source_) + " and " +
                       to_string(target_));
  coeff = field_.reduce(coeff);
  if (coeff == 0) return;
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [&](const Term& t) { return t.first.order_key() >= e.order_key(); });
  if (it != terms_.end() && it->first.order_key() == e.order_key()) {
    it->second = field_.add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {e, coeff});
  }
}

std::uint32_t Morphism::coefficient(const BasisElement& e) const {
  for (const auto& [elem, c] : terms_)
    if (elem == e) return c;
  return 0;
}

Morphism Morphism::scaled(std::uint32_t c) const {
  Morphism out(source_, target_, field_);
  for (const auto& [e, v] : terms_) out.add_term(e, field_.mul(v, field_.reduce(c)));
  return out;
}

Morphism Morphism::operator+(const Morphism& other) const {
  if (other.source_ != source_ || other.target_ != target_ || other.field_ != field_)
    throw InvalidInput("adding morphisms with different endpoints");
  Morphism out = *this;
  for (const auto& [e, v] : other.terms_) out.add_term(e, v);
  return out;
}

Morphism Morphism::operator-(const Morphism& other) const {
  return *this + other.scaled(field_.neg(1));
}

bool Morphism::operator==(const Morphism& other) const {
  return source_ == other.source_ && target_ == other.target_ && field_ == other.field_ &&
         terms_ == other.terms_;
}

std::string to_string(const Morphism& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += std::to_string(c) + "*" + to_string(e, f.source(), f.target());
  }
  return out;
}

Rect Rect::intersect(const Rect& o) const {
  return {std::max(a_lo, o.a_lo), std::min(a_hi, o.a_hi), std::max(b_lo, o.b_lo),
          std::min(b_hi, o.b_hi)};
}

Model::Model(OmegaParams params) : params_(params) {
  params_.validate();
  period_ = params_.r < params_.n ? params_.r : params_.n;
}

void Model::require_index(int i) const {
  if (i < 0 || i >= period_)
    throw InvalidInput("index " + std::to_string(i) + " outside [0, " +
                       std::to_string(period_ - 1) + "]");
}

bool Model::vertex_exists(Family f, int i, Coord c) const {
  require_index(i);
  const int m = params_.m, n = params_.n;
  switch (f) {
    case Family::X: return c.a <= c.b + delta0(i) * m;
    case Family::Y: return has_yz() && c.a + delta0(i) * n <= c.b;
    case Family::Z: return has_yz();
  }
  return false;
}

bool Model::exists(const Vertex& v) const {
  if (v.i < 0 || v.i >= period_) return false;
  return vertex_exists(v.family, v.i, v.coord);
}

std::vector<Family> Model::families() const {
  if (has_yz()) return {Family::X, Family::Y, Family::Z};
  return {Family::X};
}

std::optional<ArrowKind> Model::kind_for(Family from, Family to, int degree) const {
  for (auto k : kAllKinds)
    if (source_family(k) == from && target_family(k) == to && kind_degree(k) == degree)
      return k;
  return std::nullopt;
}

Rect Model::region(ArrowKind kind, const Vertex& v) const {
  const int m = params_.m, n = params_.n;
  const int a = v.coord.a, b = v.coord.b;
  const int d0 = delta0(v.i), dl = delta_last(v.i);
  constexpr int lo = Rect::kNegInf, hi = Rect::kPosInf;
  switch (kind) {
    case ArrowKind::FPrime: return {a, b + d0 * m, b, hi};
    case ArrowKind::GPrime: return {a, b + d0 * m, lo, hi};
    case ArrowKind::EPrime: return {lo, a + dl * m, a, b + d0 * m};
    case ArrowKind::FDPrime: return {a, b - d0 * n, b, hi};
    case ArrowKind::GDPrime: return {lo, hi, a, b - d0 * n};
    case ArrowKind::EDPrime: return {lo, a - dl * n, a, b - d0 * n};
    case ArrowKind::F: return {a, hi, b, hi};
    case ArrowKind::HPrime: return {lo, a + dl * m, a, hi};
    case ArrowKind::HDPrime: return {lo, b - dl * n, b, hi};
    case ArrowKind::EZ: return {lo, a + dl * m, lo, b - dl * n};
  }
  return {};
}

std::vector<TargetSet> Model::target_sets(const Vertex& v, int degree) const {
  std::vector<TargetSet> out;
  for (auto kind : kAllKinds) {
    if (source_family(kind) != v.family || kind_degree(kind) != degree) continue;
    if (target_family(kind) != Family::X && !has_yz()) continue;
    out.push_back({kind, v, target_family(kind), next_index(v.i, index_step(kind)), region(kind, v)});
  }
  return out;
}

std::optional<ArrowGen> Model::arrow(const Vertex& v, const Vertex& w, int degree) const {
  auto kind = kind_for(v.family, w.family, degree);
  if (!kind || !exists(v) || !exists(w)) return std::nullopt;
  if (target_family(*kind) != Family::X && !has_yz()) return std::nullopt;
  if (w.i != next_index(v.i, index_step(*kind))) return std::nullopt;
  if (degree == 0 && v == w) return std::nullopt;
  if (!region(*kind, v).contains(w.coord)) return std::nullopt;
  return ArrowGen{*kind, v, w};
}

std::vector<ArrowGen> Model::arrows_between(const Vertex& v, const Vertex& w) const {
  std::vector<ArrowGen> out;
  for (int d = 0; d <= 2; ++d)
    if (auto a = arrow(v, w, d)) out.push_back(*a);
  return out;
}

std::vector<ArrowGen> Model::arrows_from(const Vertex& v, Window w) const {
  std::vector<ArrowGen> out;
  if (!exists(v)) return out;
  for (int degree = 0; degree <= 2; ++degree)
    for (const auto& set : target_sets(v, degree)) {
      const auto box = set.rect.intersect(w.rect());
      if (box.empty()) continue;
      for (int a = box.a_lo; a <= box.a_hi; ++a)
        for (int b = box.b_lo; b <= box.b_hi; ++b) {
          Vertex u{set.family, set.index, {a, b}};
          if (degree == 0 && u == v) continue;
          if (!exists(u)) continue;
          out.push_back({set.kind, v, u});
        }
    }
  std::sort(out.begin(), out.end(), [](const ArrowGen& x, const ArrowGen& y) {
    if (x.target != y.target) return x.target < y.target;
    return x.degree() < y.degree();
  });
  return out;
}

std::optional<BasisElement> Model::compose_basis(const BasisElement& g, const BasisElement& f,
                                                 const Vertex& source, const Vertex& target) const {
  if (f.is_identity()) return g;
  if (g.is_identity()) return f;
  if (auto a = arrow(source, target, f.degree() + g.degree())) return BasisElement{a->kind};
  return std::nullopt;
}

Morphism Model::compose(const Morphism& g, const Morphism& f) const {
  if (g.source() != f.target())
    throw InvalidInput("cannot compose: " + to_string(f.target()) + " != " + to_string(g.source()));
  const auto& field = f.field();
  if (g.field() != field) throw InvalidInput("cannot compose morphisms over different fields");
  Morphism out(f.source(), g.target(), field);
  for (const auto& [ge, gc] : g.terms())
    for (const auto& [fe, fc] : f.terms())
      if (auto h = compose_basis(ge, fe, f.source(), g.target()))
        out.add_term(*h, field.mul(gc, fc));
  return out;
}

Coord Model::sigma_step(Family f, int i) const {
  const int m = params_.m, n = params_.n;
  const int d0 = delta0(i), dl = delta_last(i);
  switch (f) {
    case Family::X: return {1 + dl * m, 1 + d0 * m};
    case Family::Y: return {1 - dl * n, 1 - d0 * n};
    case Family::Z: return {1 + dl * m, 1 - dl * n};
  }
  return {};
}

Coord Model::sigma_period_shift(Family f) const {
  Coord total;
  for (int i = 0; i < period_; ++i) {
    auto s = sigma_step(f, i);
    total.a += s.a;
    total.b += s.b;
  }
  return total;
}

Vertex Model::sigma(const Vertex& v, int times) const {
  Vertex out = v;
  // floor division so the remainder is in [0, period)
  int full = times >= 0 ? times / period_ : -((-times + period_ - 1) / period_);
  int rest = times - full * period_;
  const auto shift = sigma_period_shift(v.family);
  out.coord.a += full * shift.a;
  out.coord.b += full * shift.b;
  for (int k = 0; k < rest; ++k) {
    auto s = sigma_step(out.family, out.i);
    out.coord.a += s.a;
    out.coord.b += s.b;
    out.i = next_index(out.i);
  }
  return out;
}

ArrowGen Model::sigma(const ArrowGen& a, int times) const {
  return {a.kind, sigma(a.source, times), sigma(a.target, times)};
}

Morphism Model::sigma(const Morphism& f, int times) const {
  Morphism out(sigma(f.source(), times), sigma(f.target(), times), f.field());
  for (const auto& [e, c] : f.terms()) out.add_term(e, c);
  return out;
}

Vertex Model::tau(const Vertex& v) const {
  return {v.family, v.i, {v.coord.a - 1, v.coord.b - 1}};
}

std::optional<TauSigmaWitness> Model::tau_sigma_witness() const {
  const int bound = 2 * (params_.n + params_.m) + 2;
  for (auto f : families()) {
    for (int i = 0; i < period_; ++i) {
      Vertex v{f, i, {0, bound + params_.n + params_.m}};
      if (!exists(v)) continue;
      const auto target = tau(v);
      for (int p = -bound; p <= bound; ++p)
        if (sigma(v, p) == target) return TauSigmaWitness{f, p};
    }
  }
  return std::nullopt;
}

bool Model::tau_sigma_periodic_closed_form() const {
  const auto [r, n, m] = params_;
  if (r < n) return r == n - 1 || (r == 1 && m == 0);
  return n == 1 && m == 0;
}

std::vector<Vertex> Model::enumerate_vertices(Window w) const {
  std::vector<Vertex> out;
  for (auto f : families())
    for (int i = 0; i < period_; ++i)
      for (int a = -w.half_width; a <= w.half_width; ++a)
        for (int b = -w.half_width; b <= w.half_width; ++b)
          if (vertex_exists(f, i, {a, b})) out.push_back({f, i, {a, b}});
  return out;
}

std::vector<ArrowGen> Model::enumerate_arrows(Window w) const {
  std::vector<ArrowGen> out;
  for (const auto& v : enumerate_vertices(w)) {
    auto from = arrows_from(v, w);
    out.insert(out.end(), from.begin(), from.end());
  }
  return out;
}

WindowIndex::WindowIndex(const Model& model, Window w)
    : window_(w), period_(model.index_count()), vertices_(model.enumerate_vertices(w)) {
  const long side = 2L * w.half_width + 1;
  slots_.assign(static_cast<std::size_t>(3 * period_ * side * side), -1);
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    const auto& v = vertices_[k];
    const long slot = ((static_cast<long>(v.family) * period_ + v.i) * side +
                       (v.coord.a + w.half_width)) * side + (v.coord.b + w.half_width);
    slots_[static_cast<std::size_t>(slot)] = static_cast<long>(k);
  }
}

long WindowIndex::id(const Vertex& v) const {
  if (!window_.contains(v.coord) || v.i < 0 || v.i >= period_) return -1;
  const long side = 2L * window_.half_width + 1;
  const long slot = ((static_cast<long>(v.family) * period_ + v.i) * side +
                     (v.coord.a + window_.half_width)) * side + (v.coord.b + window_.half_width);
  return slots_[static_cast<std::size_t>(slot)];
}

}  // namespace dcenter::model
