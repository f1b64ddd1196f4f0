#pragma once

#include <cstdint>

#include "contactkit/fields.hpp"

namespace contactkit {

// Gradient of a scalar field contracted as a covector at p.
Eigen::VectorXd exterior_derivative(const ScalarField& field, const ChartPoint& p);

// The exact 1-form df. Requires second-order evaluation of `field`.
OneForm d(const ScalarField& field);

// The exterior derivative of a 1-form, antisymmetric by construction.
TwoForm d(const OneForm& form);

// d(form)(u, v) at p for constant-extended u, v.
double d_oneform(const OneForm& form, const ChartPoint& p, const TangentVector& u,
                 const TangentVector& v);

// Cartan formula: (i_X d(form) + d(form(X)))(u) at p.
double lie_derivative(const OneForm& form, const VectorField& X, const ChartPoint& p,
                      const TangentVector& u);

// (map^* form)(u) = form(map(p))(J u).
double pullback(const SmoothMap& map, const OneForm& form, const ChartPoint& p,
                const TangentVector& u);

// Orthonormal (Euclidean) basis of ker(d field) at an on-level-set point.
// Gram-Schmidt seeded from the coordinate basis in index order (seed 0) or
// from a seeded random orthogonal remix of it. The basis is oriented so that
// (gradient, basis...) is positively oriented in chart coordinates.
std::vector<TangentVector> level_set_tangent_basis(const ScalarField& field, const ChartPoint& p,
                                                   double on_surface_tol = 1e-8,
                                                   std::uint64_t seed = 0);

}  // namespace contactkit
