#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcenter/hom.hpp"
#include "dcenter/model.hpp"

namespace dcenter::center {

/// Graded: η_{Σv} = (-1)^p Σ(η_v). Commutative: η_{Σv} = Σ(η_v).
enum class Variant { Graded, Commutative };

std::string to_string(Variant v);
/// Accepts "graded" and "commutative"; throws InvalidInput otherwise.
Variant parse_variant(const std::string& s);

/// Window too small for the requested degree.
class WindowError : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// A candidate natural transformation Id -> Σ^p known on a window. Only
/// nonzero values are stored; vertices in the domain without an entry map to 0.
struct CenterElement {
  int degree = 0;
  Variant variant = Variant::Graded;
  gf::PrimeField field{2};
  model::Window domain;
  std::map<model::Vertex, model::Morphism> values;

  /// The value at v, or the zero morphism v -> Σ^p v.
  model::Morphism at(const model::Model& m, const model::Vertex& v) const;
  bool is_zero() const { return values.empty(); }
  void set(const model::Vertex& v, const model::Morphism& f);
};

std::string to_string(const CenterElement& el);

/// Explicit central elements.
///   Identity     : Id, degree 0
///   EtaPrime(q)  : ε(i,v)·e'' on the Y-class q, degree n (r = n-1)
///   EtaDPrime(q) : e'' on the Y-class q, degree n (r = n-1)
///   EtaZero(q)   : e'_{v,v} on X^(0)_v with b-a = q, degree 0 (r = 1, m = 0)
///   EtaPower(k)  : f'_{v, v+k(n+m,n+m)} where defined, degree kn (r = n)
struct GeneratorSpec {
  enum class Name { Identity, EtaPrime, EtaDPrime, EtaZero, EtaPower };
  Name name = Name::Identity;
  int index = 0;
};

std::string to_string(const GeneratorSpec& s);
bool admissible(const OmegaParams& params, const GeneratorSpec& spec);
int generator_degree(const OmegaParams& params, const GeneratorSpec& spec);
/// The variant a generator is asserted to belong to. EtaPower(k) is listed as
/// commutative; it is also graded exactly when kn is even or the field has
/// characteristic 2.
Variant generator_variant(const GeneratorSpec& spec);

/// The sign ε(i, v) = (-1)^{n·p} where Y_v^(i) = Σ^p Y_{(0, n+q)}^(0). Requires r = n-1.
int epsilon_sign(const model::Model& m, const model::Vertex& v);

CenterElement make_generator(const model::Model& m, const GeneratorSpec& spec, model::Window domain,
                             gf::PrimeField field);

/// Outer/inner window separation required for degree p: ⌈p/period⌉ + n + m + 2.
int margin(const OmegaParams& params, int p);
/// Smallest inner window on which the degree-p answer is fully visible (at least 4).
model::Window default_inner_window(const OmegaParams& params, int p);

struct MembershipResult {
  bool ok = true;
  std::string violation;  // first violated equation, empty when ok
  std::size_t naturality_checks = 0;
  std::size_t sign_checks = 0;
};

/// Checks naturality against every generator arrow with both endpoints in
/// `inner` and the sign law of `variant` on every pair (v, Σv) inside `inner`.
/// Throws WindowError unless inner lies within the element's domain.
MembershipResult check_membership(const model::Model& m, const CenterElement& el, Variant variant,
                                  model::Window inner);
/// As above, additionally requiring inner + margin(p) <= window <= domain.
MembershipResult check_membership(const model::Model& m, const CenterElement& el, Variant variant,
                                  model::Window window, model::Window inner);

/// Σ-orbit class of a vertex: q = b - a + δ_{i,0}·m on X, q = b - a - δ_{i,0}·n on Y.
struct ClassKey {
  model::Family family;
  int q;
  auto operator<=>(const ClassKey&) const = default;
};

std::optional<ClassKey> class_of(const model::Model& m, const model::Vertex& v);
std::string to_string(const ClassKey& k);

struct ClassDimension {
  ClassKey key;
  std::size_t dimension;
};

struct ComponentSolution {
  OmegaParams params;
  int degree = 0;
  Variant variant = Variant::Graded;
  std::uint32_t characteristic = 2;
  model::Window window;
  model::Window inner;

  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  /// Dimension of the solution space restricted to the inner window.
  std::size_t dimension = 0;
  /// Dimension of the part supported inside a single class, for every class
  /// where it is nonzero.
  std::vector<ClassDimension> classes;
  /// dimension minus the class-supported dimensions.
  std::size_t global_dimension = 0;
  /// A basis of the restricted solution space (reduced echelon order).
  std::vector<CenterElement> basis;
};

/// Solves for the degree-p component on the outer window: unknowns are the
/// coefficients of η_v over Hom(v, Σ^p v) for every vertex of the window,
/// equations are naturality along every arrow inside the window and the sign
/// law along every pair (v, Σv) inside the window. The null space is reported
/// restricted to `inner`. Throws WindowError when inner + margin(p) > window.
ComponentSolution solve_component(const model::Model& m, int p, Variant variant,
                                  gf::PrimeField field, model::Window window, model::Window inner);

/// (a·b)_v = Σ^{deg b}(a_v) ∘ b_v on the intersection of the domains.
CenterElement multiply(const model::Model& m, const CenterElement& a, const CenterElement& b);

/// Equality on a window (values outside it are ignored).
bool equal_on(const model::Model& m, const CenterElement& a, const CenterElement& b,
              model::Window w);

}  // namespace dcenter::center
