#pragma once

#include "contactkit/flows.hpp"

namespace contactkit {

// S^1-family of Lagrangian bases of the contact planes along a loop gamma.
struct LagrangianFamily {
    std::vector<double> theta;                          // sorted, in [0, 2*pi)
    std::vector<ChartPoint> base;                       // gamma(theta_i)
    std::vector<std::vector<TangentVector>> sections;   // n sections per sample
    struct Meta {
        Eigen::VectorXd q0;
        double x0 = 0.0;
        double a = 0.0;
        double c = 0.0;
    } meta;
    int k = 0;  // iterate already applied to this family

    int samples() const { return static_cast<int>(theta.size()); }
    int n_sections() const { return base.empty() ? 0 : static_cast<int>(sections[0].size()); }
};

struct FamilyTolerances {
    double kernel = 1e-8;      // |alpha_f(X_j)|
    double independence = 1e-6;  // smallest singular value of the section matrix
    double lagrangian = 1e-7;  // |d alpha_f(X_i, X_j)|
};

struct FamilyCheck {
    double max_kernel_residual = 0.0;
    double min_singular_value = 0.0;
    double max_lagrangian_residual = 0.0;
};

// Verifies the family invariants; throws ConstructionError naming the first
// failing sample when out of tolerance.
FamilyCheck validate_family(const DoubledSpace& ds, const LagrangianFamily& fam,
                            const FamilyTolerances& tol = {});

// The loop gamma(theta) = (q0, x0, -1, theta) on W_- with sections
// w_j(q0) and d/dtheta + (2/x0) d/dy, where x0^2 = c - 3a - psi_F(q0).
LagrangianFamily build_family(const DoubledSpace& ds, const WeinsteinModel& model, int samples);

// Applies psi_c^k with its Jacobian at every sample and revalidates
// (pushforward by a contactomorphism must preserve all invariants).
LagrangianFamily pushforward_family(const DoubledSpace& ds, const LagrangianFamily& fam, int k,
                                    OdeTol tol = {}, int jobs = 1);

// Runs indexed tasks on up to `jobs` threads; results are ordered by index
// regardless of execution order. Exceptions are rethrown on the caller.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace contactkit
