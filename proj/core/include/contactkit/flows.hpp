#pragma once

#include "contactkit/ode.hpp"
#include "contactkit/weinstein.hpp"

namespace contactkit {

// X_t = (f1 - f0) / d f_t^D(Z^D) * Z^D with f_t = t f1 + (1-t) f0; f0, f1 are
// regular equations on the base chart. Throws SingularDenominatorError when
// |d f_t^D(Z^D)| < 1e-8 at an evaluation point.
TimeDependentField double_equiv_field(const ScalarField& f0, const ScalarField& f1,
                                      const DoubledSpace& ds);

// Time-1 map {f1^D = 0} -> {f0^D = 0}: the flow of the reversed-time field
// tau -> X_{1 - tau} over tau in [0, 1].
SmoothMap double_equiv_map(const DoubledSpace& ds, const ScalarField& f0, const ScalarField& f1,
                           OdeTol tol = {});

// Generator of the S^1-family rotating the last C factor: d/dphi in
// Cartesian components (-y, x).
VectorField rotation_generator(const DoubledSpace& ds);

// h_theta = lambda(X_theta), evaluated, never hardcoded.
ScalarField rotation_momentum(const DoubledSpace& ds);

// lambda_t^D = lambda + (2 s + t h) dtheta.
OneForm lambda_t(const DoubledSpace& ds, const ScalarField& h, double t);

// Gray field Y = h / (2 d f^D(Z^D)) * (2 s Z - d f(Z) d/ds); tangent to
// {f^D = 0} and with no d/dtheta component.
TimeDependentField gray_field(const DoubledSpace& ds, const ScalarField& h);

// (q, z, s, theta) -> (q, e^{i theta} z, s, theta) with analytic Jacobian
// (including the dtheta coupling column).
SmoothMap psi_rotation(const DoubledSpace& ds);

// (rotation o time-1 Gray flow)^k with composed Jacobians. Drift is
// monitored against |f^D|; exceeding 10x the surface tolerance raises
// FlowEscapeError.
FlowResult psi_c(const DoubledSpace& ds, const ChartPoint& p, int k, OdeTol tol = {});
SmoothMap psi_c_map(const DoubledSpace& ds, int k, OdeTol tol = {});

struct ConformalityResult {
    double factor = 0.0;    // best scalar lambda^D(map .) ~ factor * lambda^D(.)
    double residual = 0.0;  // max deviation, relative to the matched scale
    bool coorientation_preserved = false;
};

// Compares map^* lambda^D against lambda^D on the oriented level-set tangent
// basis at p. Both p and map(p) must be on a surface: p on {f^D = 0}, the
// image on {image_equation = 0} (defaults to f^D; pass the target equation
// when the map carries one hypersurface to another).
ConformalityResult conformality_residual(const SmoothMap& map, const DoubledSpace& ds,
                                         const ChartPoint& p,
                                         const ScalarField* image_equation = nullptr);

}  // namespace contactkit
