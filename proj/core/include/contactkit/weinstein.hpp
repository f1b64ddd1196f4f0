#pragma once

#include <functional>
#include <string>

#include "contactkit/cutoff.hpp"
#include "contactkit/exterior.hpp"
#include "contactkit/fields.hpp"

namespace contactkit {

// A Liouville/Weinstein model on W = F x C (the stabilizing C factor is
// always the last coordinate pair). Everything downstream is derived from
// (lambda, Z) by automatic differentiation, so only internal consistency of
// the normalization matters; built-in models use lambda = sum(x dy - y dx),
// Z = (1/2) r d/dr, psi = sum r^2, for which lambda = -(1/2) d(psi) o J,
// i.e. the almost-Stein normalization constant kappa below is 1/2.
struct WeinsteinModel {
    std::string name;
    ChartPtr chart;       // F x C
    OneForm lambda;       // Liouville form
    VectorField Z;        // Liouville vector field
    ScalarField psi;      // exhausting function psi_F + |z|^2
    ScalarField psi_F;    // F part only
    double min_psi_F = 0.0;
    double c = 1.0;       // regular value cutting out W
    int n = 1;            // complex dimension of F x C
    double kappa = 0.5;   // lambda = kappa * (-d psi o J)
    std::function<Eigen::MatrixXd(const ChartPoint&)> J;  // almost complex structure
    // Complex frame of (TF, J_F): n-1 sections, returned as real component
    // vectors on the F x C chart (J applied gives the imaginary directions).
    std::function<std::vector<Eigen::VectorXd>(const ChartPoint&)> frame;
    Eigen::VectorXd q0;   // F coordinates of the psi_F minimum (a zero of Z_F)
    // Ambient sampling box for randomized checks.
    Eigen::VectorXd box_lo, box_hi;
};

// Doubled ambient space W x R_s x S^1_theta with the shifted Liouville data.
// All fields live on the doubled chart; `lambda`, `Z`, `psi`, `f` are the
// base objects extended trivially in (s, theta).
struct DoubledSpace {
    WeinsteinModel base;
    ChartPtr chart;
    OneForm lambda;     // extension of base lambda
    OneForm lambdaD;    // lambda + 2 s dtheta
    VectorField Z;      // extension of base Z
    VectorField ZD;     // Z + s d/ds
    ScalarField psi;    // extension
    ScalarField psiD;   // psi + s^2
    ScalarField f;      // regular equation, extended
    ScalarField fD;     // s^2 + f
    std::function<Eigen::MatrixXd(const ChartPoint&)> JD;
    double surface_tol = 1e-8;

    int wdim() const { return base.chart->dim; }  // s index; theta is wdim()+1
};

// The zero locus of an equation inside a doubled space.
struct Hypersurface {
    const DoubledSpace* ambient;
    ScalarField equation;
    double on_surface_tol;

    bool contains(const ChartPoint& p) const {
        return std::abs(equation.value(p)) < on_surface_tol;
    }
};

WeinsteinModel make_flat_model(int n);
WeinsteinModel make_torus_model(int n);

// chi(psi - c) with a = (c - min psi_F) / 4.
CutoffSpec default_cutoff(const WeinsteinModel& model);
ScalarField cutoff_equation(const WeinsteinModel& model, const CutoffSpec& spec);

// Assembles the doubled space and spot-checks transversality of Z^D against
// {f^D = 0} on a deterministic sample; throws ConstructionError with a
// witness point on failure.
DoubledSpace make_doubled_space(const WeinsteinModel& model, const ScalarField& f,
                                double surface_tol = 1e-8);

Hypersurface doubled_surface(const DoubledSpace& ds);

// s^2 + g(p) on the doubled chart, for a regular equation g on the base chart.
ScalarField doubled_equation(const DoubledSpace& ds, const ScalarField& g);

// alpha ^ (d alpha)^n evaluated on the oriented level-set tangent basis at an
// on-surface point; nonzero with uniform sign over the surface iff the
// restriction is a contact form.
double contact_volume(const DoubledSpace& ds, const ChartPoint& p);

// max over coordinate directions u of |lambda(u) - kappa * (-d psi o J)(u)|.
double almost_stein_residual(const WeinsteinModel& model, const ChartPoint& p);

// Pfaffian of a (small) even-dimensional antisymmetric matrix.
double pfaffian(const Eigen::MatrixXd& A);

}  // namespace contactkit
