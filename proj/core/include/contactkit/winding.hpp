#pragma once

#include <Eigen/Core>
#include <complex>

#include "contactkit/lagrangian.hpp"

namespace contactkit {

// Sampled loop S^1 -> GL_{n+1}(C): columns are the complexified family
// sections followed by Z^D at the base point.
struct MatrixLoop {
    std::vector<double> theta;
    std::vector<Eigen::MatrixXcd> mats;
    int k = 0;

    int samples() const { return static_cast<int>(theta.size()); }
};

struct WindingReport {
    int k = 0;
    long winding = 0;
    double phase_total = 0.0;
    double block_residual = 0.0;          // entries required to vanish
    double row_modulation_residual = 0.0; // middle row after demodulating e^{-ik theta}
    double radial_residual = 0.0;         // |2/r_k^2 - 2/x0^2 - k|
};

// Real basis realizing the complex trivialization at p: columns
// (w_1, J w_1, ..., w_{n-1}, J w_{n-1}, d/dx, d/dy, d/ds, d/dtheta).
Eigen::MatrixXd trivialization_basis(const DoubledSpace& ds, const WeinsteinModel& model,
                                     const ChartPoint& p);

// Coordinates of a real tangent vector in the complex trivialization.
Eigen::VectorXcd complexify(const DoubledSpace& ds, const WeinsteinModel& model,
                            const ChartPoint& p, const Eigen::VectorXd& u);

// Appends Z^D to the family sections and expresses everything through the
// trivialization; throws ConstructionError if a sample matrix is singular.
MatrixLoop stabilize_and_trivialize(const LagrangianFamily& fam, const DoubledSpace& ds,
                                    const WeinsteinModel& model);

// Principal-value phase tracking of det around the loop. Throws
// UndersampledError on a phase jump >= pi/2 and InconsistentWindingError if
// the total is not close to an integer multiple of 2*pi. The radial residual
// is not filled here (see radial_constraint_residual / run_invariant_pipeline).
WindingReport winding_number(const MatrixLoop& loop);

// Integrates psi_c^k from gamma(0), measures the endpoint radius r_k of the
// last C factor and returns |k + 2/r0^2 - 2/r_k^2| with r0 = x0.
double radial_constraint_residual(const DoubledSpace& ds, const WeinsteinModel& model, int k,
                                  OdeTol tol = {});

// The angular coefficient s_k of the pushed theta-section: the pushforward of
// d/dtheta + (2/x0) d/dy has the form d/dtheta + s_k d/dphi at the image
// point. Measured from the family, never asserted; callers compare it to
// k + 2/x0^2. Returns (mean s_k, max deviation across samples).
std::pair<double, double> measured_section_slope(const DoubledSpace& ds,
                                                 const LagrangianFamily& pushed);

struct InvariantRunSettings {
    int theta_samples = 64;
    int max_theta_samples = 4096;
    OdeTol tol;
    int jobs = 1;
};

// Full pipeline with adaptive sample doubling: build family, push forward,
// stabilize, wind, attach the radial residual. Optionally returns the final
// matrix loop.
WindingReport run_invariant_pipeline(const DoubledSpace& ds, const WeinsteinModel& model, int k,
                                     const InvariantRunSettings& settings = {},
                                     MatrixLoop* out_loop = nullptr);

}  // namespace contactkit
