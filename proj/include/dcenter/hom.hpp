#pragma once

#include <vector>

#include "dcenter/model.hpp"

namespace dcenter::hom {

/// Hom(v, Σ^p v) with its basis: the identity (p = 0) followed by the
/// generator arrows ordered by degree.
struct HomSpace {
  model::Vertex source;
  model::Vertex target;
  int p = 0;
  std::vector<model::BasisElement> basis;

  std::size_t dimension() const { return basis.size(); }
};

/// Throws InvalidInput for p < 0 or a vertex outside the model.
HomSpace hom_basis(const model::Model& model, const model::Vertex& v, int p);

/// dim Hom(v, Σ^p v) evaluated from the closed-form case formulas for the
/// Z, X and Y families, without consulting the arrow model.
int hom_dim_closed_form(const OmegaParams& params, const model::Vertex& v, int p);

}  // namespace dcenter::hom
