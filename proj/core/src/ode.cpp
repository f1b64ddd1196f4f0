#include "contactkit/ode.hpp"

#include <cmath>

namespace contactkit {

TimeDependentField TimeDependentField::constant_in_time(const VectorField& X) {
    TimeDependentField tf;
    tf.chart = X.chart_ptr();
    tf.eval = [X](DualSpan x, double) { return X(x); };
    return tf;
}

Eigen::VectorXd TimeDependentField::value(const ChartPoint& p, double t) const {
    auto out = eval(DualSpan(lift(p.coords())), t);
    Eigen::VectorXd v(static_cast<int>(out.size()));
    for (size_t i = 0; i < out.size(); ++i) v[static_cast<int>(i)] = out[i].v;
    return v;
}

Eigen::MatrixXd TimeDependentField::spatial_jacobian(const ChartPoint& p, double t) const {
    const int n = p.dim();
    Eigen::MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
        auto out = eval(DualSpan(lift_seeded(p.coords(), j)), t);
        for (int i = 0; i < n; ++i) J(i, j) = out[static_cast<size_t>(i)].d;
    }
    return J;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Error coefficients (5th order minus embedded 4th order).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Deriv {
    Eigen::VectorXd f;   // dx/dt
    Eigen::MatrixXd Fm;  // dM/dt = DX * M
};

}  // namespace

FlowResult integrate_flow(const TimeDependentField& field, const ChartPoint& p0, double t0,
                          double t1, const FlowOptions& opts) {
    const int n = p0.dim();
    Eigen::VectorXd y = p0.coords();
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);

    FlowResult res{ChartPoint(p0.chart_ptr(), y), M, 0.0, 0, opts.tol, {}};

    auto monitor = [&](double t, const Eigen::VectorXd& x) {
        double con = 0.0;
        if (opts.constraint) {
            con = std::abs(opts.constraint->value(ChartPoint(p0.chart_ptr(), x)));
            res.drift = std::max(res.drift, con);
        }
        if (opts.record_trajectory) {
            std::vector<double> row;
            row.reserve(static_cast<size_t>(n) + 2);
            row.push_back(t);
            for (int i = 0; i < n; ++i) row.push_back(x[i]);
            row.push_back(con);
            res.trajectory.push_back(std::move(row));
        }
    };
    monitor(t0, y);

    const double span = t1 - t0;
    if (span == 0.0) return res;
    const double dir = span > 0.0 ? 1.0 : -1.0;

    auto rhs = [&](double t, const Eigen::VectorXd& x, const Eigen::MatrixXd& Mx) {
        Deriv d;
        d.f.resize(n);
        Eigen::MatrixXd DX(n, n);
        for (int j = 0; j < n; ++j) {
            auto out = field.eval(DualSpan(lift_seeded(x, j)), t);
            for (int i = 0; i < n; ++i) {
                if (!jet_finite(out[static_cast<size_t>(i)]))
                    throw EvalError("flow: non-finite field evaluation");
                if (j == 0) d.f[i] = out[static_cast<size_t>(i)].v;
                DX(i, j) = out[static_cast<size_t>(i)].d;
            }
        }
        d.Fm = DX * Mx;
        return d;
    };

    auto err_norm = [&](const Eigen::VectorXd& ex, const Eigen::MatrixXd& eM,
                        const Eigen::VectorXd& x0v, const Eigen::VectorXd& x1v,
                        const Eigen::MatrixXd& M0, const Eigen::MatrixXd& M1) {
        double acc = 0.0;
        long cnt = 0;
        for (int i = 0; i < n; ++i) {
            double sc = opts.tol.abs + opts.tol.rel * std::max(std::abs(x0v[i]), std::abs(x1v[i]));
            acc += sqr(ex[i] / sc);
            ++cnt;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double sc =
                    opts.tol.abs + opts.tol.rel * std::max(std::abs(M0(i, j)), std::abs(M1(i, j)));
                acc += sqr(eM(i, j) / sc);
                ++cnt;
            }
        return std::sqrt(acc / static_cast<double>(cnt));
    };

    double t = t0;
    double h = dir * std::min(0.05, std::abs(span));
    const double h_min = 1e-14 * std::max(1.0, std::abs(span));

    Deriv k1 = rhs(t, y, M);
    while (dir * (t1 - t) > 0.0) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t;

        Deriv k2 = rhs(t + c2 * h, y + h * (a21 * k1.f), M + h * (a21 * k1.Fm));
        Deriv k3 = rhs(t + c3 * h, y + h * (a31 * k1.f + a32 * k2.f),
                       M + h * (a31 * k1.Fm + a32 * k2.Fm));
        Deriv k4 = rhs(t + c4 * h, y + h * (a41 * k1.f + a42 * k2.f + a43 * k3.f),
                       M + h * (a41 * k1.Fm + a42 * k2.Fm + a43 * k3.Fm));
        Deriv k5 = rhs(t + c5 * h, y + h * (a51 * k1.f + a52 * k2.f + a53 * k3.f + a54 * k4.f),
                       M + h * (a51 * k1.Fm + a52 * k2.Fm + a53 * k3.Fm + a54 * k4.Fm));
        Deriv k6 = rhs(
            t + h, y + h * (a61 * k1.f + a62 * k2.f + a63 * k3.f + a64 * k4.f + a65 * k5.f),
            M + h * (a61 * k1.Fm + a62 * k2.Fm + a63 * k3.Fm + a64 * k4.Fm + a65 * k5.Fm));

        Eigen::VectorXd y_new = y + h * (b1 * k1.f + b3 * k3.f + b4 * k4.f + b5 * k5.f + b6 * k6.f);
        Eigen::MatrixXd M_new =
            M + h * (b1 * k1.Fm + b3 * k3.Fm + b4 * k4.Fm + b5 * k5.Fm + b6 * k6.Fm);
        Deriv k7 = rhs(t + h, y_new, M_new);

        Eigen::VectorXd ex =
            h * (e1 * k1.f + e3 * k3.f + e4 * k4.f + e5 * k5.f + e6 * k6.f + e7 * k7.f);
        Eigen::MatrixXd eM =
            h * (e1 * k1.Fm + e3 * k3.Fm + e4 * k4.Fm + e5 * k5.Fm + e6 * k6.Fm + e7 * k7.Fm);

        double err = err_norm(ex, eM, y, y_new, M, M_new);
        if (err <= 1.0) {
            t += h;
            y = std::move(y_new);
            M = std::move(M_new);
            k1 = std::move(k7);  // FSAL
            ++res.steps;
            monitor(t, y);
        }

        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::min(5.0, std::max(0.2, factor));
        h *= factor;
        if (std::abs(h) < h_min && dir * (t1 - t) > 0.0)
            throw StiffnessError("flow: step size underflow (stiffness or singularity)",
                                 res.trajectory);
    }

    res.endpoint = ChartPoint(p0.chart_ptr(), y);
    res.jacobian = std::move(M);
    return res;
}

}  // namespace contactkit
