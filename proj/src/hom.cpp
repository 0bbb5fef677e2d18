#include "dcenter/hom.hpp"

namespace dcenter::hom {

using model::BasisElement;
using model::Family;

HomSpace hom_basis(const model::Model& model, const model::Vertex& v, int p) {
  if (p < 0) throw InvalidInput("negative degree " + std::to_string(p));
  if (!model.exists(v)) throw InvalidInput("vertex " + to_string(v) + " does not exist");
  HomSpace space{v, model.sigma(v, p), p, {}};
  if (p == 0) space.basis.push_back(BasisElement{});
  for (const auto& a : model.arrows_between(v, space.target))
    space.basis.push_back(BasisElement{a.kind});
  return space;
}

int hom_dim_closed_form(const OmegaParams& params, const model::Vertex& v, int p) {
  params.validate();
  if (p < 0) throw InvalidInput("negative degree " + std::to_string(p));
  const auto [r, n, m] = params;
  const int a = v.coord.a, b = v.coord.b;
  const int d0 = v.i == 0 ? 1 : 0;
  // X-vertices obey the same formula for r < n and r = n, with period r resp. n.
  const int period = r < n ? r : n;

  switch (v.family) {
    case Family::Z:
      return p == 0 ? 1 : 0;
    case Family::X: {
      if (p == 0) return (period == 1 && a <= b) ? 2 : 1;
      if (p % period != 0) return 0;
      const long long k = p / period;
      return k * (period + m) <= b + d0 * m - a ? 1 : 0;
    }
    case Family::Y: {
      if (p == 0) return 1;
      if ((p - 1) % r != 0) return 0;
      const long long k = (p - 1) / r;
      // 1/(n-r) <= k <= (b + 1 - a - d0 n)/(n-r), with n - r > 0
      return (k * (n - r) >= 1 && k * (n - r) <= b + 1 - a - d0 * n) ? 1 : 0;
    }
  }
  return 0;
}

}  // namespace dcenter::hom
