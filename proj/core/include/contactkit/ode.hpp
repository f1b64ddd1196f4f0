#pragma once

#include <functional>
#include <optional>

#include "contactkit/fields.hpp"

namespace contactkit {

struct OdeTol {
    double rel = 1e-10;
    double abs = 1e-12;
};

// Time-dependent vector field. One dual evaluator provides both values and
// the spatial Jacobian (by seeding directions), which is all the variational
// transport needs.
struct TimeDependentField {
    ChartPtr chart;
    std::function<std::vector<Dual>(DualSpan, double)> eval;

    template <class F>
    static TimeDependentField make(ChartPtr chart, F f) {
        TimeDependentField tf;
        tf.chart = std::move(chart);
        tf.eval = [f](DualSpan x, double t) { return f(x, t); };
        return tf;
    }

    // Embeds a time-independent field.
    static TimeDependentField constant_in_time(const VectorField& X);

    Eigen::VectorXd value(const ChartPoint& p, double t) const;
    Eigen::MatrixXd spatial_jacobian(const ChartPoint& p, double t) const;
};

struct FlowResult {
    ChartPoint endpoint;
    Eigen::MatrixXd jacobian;  // solution of dM/dt = DX M, M(t0) = id
    double drift = 0.0;        // max |constraint| seen along the trajectory
    long steps = 0;
    OdeTol tol_used;
    // Rows (t, coords..., |constraint|); filled when recording is requested.
    std::vector<std::vector<double>> trajectory;
};

struct FlowOptions {
    OdeTol tol;
    const ScalarField* constraint = nullptr;  // monitored, never corrected
    bool record_trajectory = false;
};

// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) with simultaneous
// integration of the variational equation. Reverse time (t1 < t0) allowed.
FlowResult integrate_flow(const TimeDependentField& field, const ChartPoint& p0, double t0,
                          double t1, const FlowOptions& opts = {});

}  // namespace contactkit
