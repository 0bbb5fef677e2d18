#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcenter/gentle.hpp"
#include "dcenter/gf.hpp"

namespace dcenter::model {

enum class Family : std::uint8_t { X, Y, Z };

char family_letter(Family f);

struct Coord {
  int a = 0;
  int b = 0;
  auto operator<=>(const Coord&) const = default;
};

/// An indecomposable object: family, cyclic index and planar coordinate.
/// Ordered lexicographically by (family, i, a, b).
struct Vertex {
  Family family = Family::X;
  int i = 0;
  Coord coord;
  auto operator<=>(const Vertex&) const = default;
};

std::string to_string(const Vertex& v);

/// Generator arrow kinds. The Z-family degree-two arrow is `EZ`.
enum class ArrowKind : std::uint8_t {
  FPrime,   // X -> X, degree 0
  GPrime,   // X -> Z, degree 1
  EPrime,   // X -> X (index + 1), degree 2
  FDPrime,  // Y -> Y, degree 0
  GDPrime,  // Y -> Z, degree 1
  EDPrime,  // Y -> Y (index + 1), degree 2
  F,        // Z -> Z, degree 0
  HPrime,   // Z -> X (index + 1), degree 1
  HDPrime,  // Z -> Y (index + 1), degree 1
  EZ,       // Z -> Z (index + 1), degree 2
};

std::string kind_name(ArrowKind k);
int kind_degree(ArrowKind k);

struct ArrowGen {
  ArrowKind kind;
  Vertex source;
  Vertex target;
  int degree() const { return kind_degree(kind); }
  auto operator<=>(const ArrowGen&) const = default;
};

std::string to_string(const ArrowGen& a);

/// A basis element of a morphism space: the identity or the generator arrow of
/// a given degree (there is at most one per degree between two vertices).
struct BasisElement {
  std::optional<ArrowKind> kind;  // empty: identity

  bool is_identity() const { return !kind.has_value(); }
  int degree() const { return kind ? kind_degree(*kind) : 0; }
  /// Sort key: identity first, then by degree.
  int order_key() const { return kind ? kind_degree(*kind) : -1; }
  bool operator==(const BasisElement&) const = default;
};

std::string to_string(const BasisElement& e, const Vertex& source, const Vertex& target);

/// A linear combination of basis elements between two fixed vertices.
class Morphism {
public:
  using Term = std::pair<BasisElement, std::uint32_t>;

  Morphism(Vertex source, Vertex target, gf::PrimeField field);
  static Morphism identity(const Vertex& v, gf::PrimeField field);
  static Morphism arrow(const ArrowGen& a, gf::PrimeField field);

  const Vertex& source() const { return source_; }
  const Vertex& target() const { return target_; }
  const gf::PrimeField& field() const { return field_; }
  /// Terms sorted by BasisElement::order_key, nonzero coefficients only.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeff * e. Identity terms are only allowed when source == target.
  void add_term(BasisElement e, std::uint32_t coeff);
  std::uint32_t coefficient(const BasisElement& e) const;

  Morphism scaled(std::uint32_t c) const;
  Morphism operator+(const Morphism& other) const;
  Morphism operator-(const Morphism& other) const;
  bool operator==(const Morphism& other) const;

private:
  Vertex source_;
  Vertex target_;
  gf::PrimeField field_;
  std::vector<Term> terms_;
};

std::string to_string(const Morphism& f);

/// Closed coordinate rectangle; unbounded sides use the sentinels kNegInf/kPosInf.
struct Rect {
  static constexpr int kNegInf = -(1 << 29);
  static constexpr int kPosInf = 1 << 29;
  int a_lo = kNegInf, a_hi = kPosInf, b_lo = kNegInf, b_hi = kPosInf;

  bool contains(Coord c) const { return a_lo <= c.a && c.a <= a_hi && b_lo <= c.b && c.b <= b_hi; }
  Rect intersect(const Rect& o) const;
  bool empty() const { return a_lo > a_hi || b_lo > b_hi; }
};

/// Truncation box [-half_width, half_width]^2 for enumeration.
struct Window {
  int half_width = 0;
  bool contains(Coord c) const {
    return -half_width <= c.a && c.a <= half_width && -half_width <= c.b && c.b <= half_width;
  }
  Rect rect() const { return {-half_width, half_width, -half_width, half_width}; }
};

/// Targets of the arrows of one kind out of a fixed source vertex.
struct TargetSet {
  ArrowKind kind;
  Vertex source;
  Family family;
  int index;
  Rect rect;

  /// Membership for an existing vertex w (existence is not rechecked).
  bool contains(const Vertex& w) const {
    return w.family == family && w.i == index && rect.contains(w.coord) &&
           !(kind_degree(kind) == 0 && w == source);
  }
};

class Model;

/// Dense numbering of the vertices inside a window, in enumeration order.
class WindowIndex {
public:
  WindowIndex(const Model& model, Window w);

  Window window() const { return window_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  /// Dense id, or -1 when v is outside the window or does not exist.
  long id(const Vertex& v) const;

private:
  Window window_;
  int period_;
  std::vector<Vertex> vertices_;
  std::vector<long> slots_;
};

struct TauSigmaWitness {
  Family family;
  int p;
};

/// The combinatorial model of the indecomposable perfect complexes over
/// Lambda(r, n, m). For r < n there are X, Y and Z families indexed by
/// i in [0, r-1]; for r = n only X, indexed by i in [0, n-1].
class Model {
public:
  explicit Model(OmegaParams params);

  const OmegaParams& params() const { return params_; }
  /// Number of cyclic indices: r when r < n, n when r = n.
  int index_count() const { return period_; }
  bool has_yz() const { return params_.r < params_.n; }

  /// Throws InvalidInput when i is outside [0, index_count()).
  bool vertex_exists(Family f, int i, Coord c) const;
  bool exists(const Vertex& v) const;

  /// The rectangle of targets of arrows of this kind out of v (ignoring the
  /// u != v exclusion of degree-zero arrows). Precondition: v's family
  /// matches the kind's source family.
  Rect region(ArrowKind kind, const Vertex& v) const;

  /// Target sets of the arrows of the given degree out of an existing vertex v
  /// (at most two kinds share a source family and degree).
  std::vector<TargetSet> target_sets(const Vertex& v, int degree) const;

  /// The generator arrow of the given degree from v to w, if any.
  std::optional<ArrowGen> arrow(const Vertex& v, const Vertex& w, int degree) const;
  /// All generator arrows from v to w, ordered by degree.
  std::vector<ArrowGen> arrows_between(const Vertex& v, const Vertex& w) const;
  /// All generator arrows out of v whose target lies in the window.
  std::vector<ArrowGen> arrows_from(const Vertex& v, Window w) const;

  /// Bilinear composition g∘f. Throws InvalidInput unless source(g) == target(f).
  Morphism compose(const Morphism& g, const Morphism& f) const;
  /// Composite of two basis elements as a basis element, or nullopt for zero.
  std::optional<BasisElement> compose_basis(const BasisElement& g, const BasisElement& f,
                                            const Vertex& source, const Vertex& target) const;

  /// Suspension Σ^times (times may be negative).
  Vertex sigma(const Vertex& v, int times = 1) const;
  ArrowGen sigma(const ArrowGen& a, int times = 1) const;
  Morphism sigma(const Morphism& f, int times = 1) const;
  /// Translation by Σ^period on coordinates (same index).
  Coord sigma_period_shift(Family f) const;

  /// Auslander-Reiten translation on vertices.
  Vertex tau(const Vertex& v) const;

  /// Searches tau v = Σ^p v over all families and |p| <= 2(n+m)+2.
  std::optional<TauSigmaWitness> tau_sigma_witness() const;
  bool tau_sigma_periodic() const { return tau_sigma_witness().has_value(); }
  /// Closed form: r = n-1, or r = 1 and m = 0 (r < n); n = 1 and m = 0 (r = n).
  bool tau_sigma_periodic_closed_form() const;

  std::vector<Family> families() const;
  /// All vertices with coordinates in the window, ordered by (family, i, a, b).
  std::vector<Vertex> enumerate_vertices(Window w) const;
  /// All generator arrows with both endpoints in the window, ordered by
  /// (source, target, degree).
  std::vector<ArrowGen> enumerate_arrows(Window w) const;

  int delta0(int i) const { return i == 0 ? 1 : 0; }
  int delta_last(int i) const { return i == period_ - 1 ? 1 : 0; }
  int next_index(int i, int step = 1) const { return ((i + step) % period_ + period_) % period_; }

private:
  std::optional<ArrowKind> kind_for(Family from, Family to, int degree) const;
  Coord sigma_step(Family f, int i) const;
  void require_index(int i) const;

  OmegaParams params_;
  int period_;
};

}  // namespace dcenter::model
