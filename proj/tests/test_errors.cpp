#include "doctest.h"

#include "contactkit/winding.hpp"
#include "test_helpers.hpp"

using namespace contactkit;

TEST_CASE("reverse-time integration inverts the forward flow") {
    auto chart = ChartSpec::make({"x"}, {false});
    auto lin = TimeDependentField::make(chart, [](DualSpan x, double) {
        return std::vector<Dual>{x[0]};
    });
    ChartPoint p(chart, Eigen::VectorXd::Constant(1, 1.0));
    FlowResult fwd = integrate_flow(lin, p, 0.0, 1.0);
    FlowResult back = integrate_flow(lin, fwd.endpoint, 1.0, 0.0);
    CHECK(std::abs(back.endpoint[0] - 1.0) < 1e-9);
    CHECK(std::abs(fwd.jacobian(0, 0) * back.jacobian(0, 0) - 1.0) < 1e-8);
}

TEST_CASE("integration through a pole reports stiffness with a trajectory") {
    auto chart = ChartSpec::make({"x"}, {false});
    // x' = -1/x reaches x = 0 at t = 1/2 in finite time
    auto pole = TimeDependentField::make(chart, [](DualSpan x, double) {
        return std::vector<Dual>{Dual(-1.0) / x[0]};
    });
    ChartPoint p(chart, Eigen::VectorXd::Constant(1, 1.0));
    FlowOptions opts;
    opts.record_trajectory = true;
    try {
        integrate_flow(pole, p, 0.0, 1.0, opts);
        FAIL("expected an integration failure");
    } catch (const StiffnessError& e) {
        CHECK(!e.trajectory.empty());
    } catch (const EvalError&) {
        // acceptable alternative if the step lands exactly on the pole
    }
}

TEST_CASE("Gray field reports its singular denominator") {
    auto m = make_flat_model(1);
    auto f = cutoff_equation(m, default_cutoff(m));
    auto ds = make_doubled_space(m, f);
    auto Y = gray_field(ds, rotation_momentum(ds));
    // Interior plateau point with s = 0: df(Z) = 0 and 2 s^2 = 0.
    Eigen::VectorXd x(4);
    x << 0.1, 0.0, 0.0, 0.0;
    CHECK_THROWS_AS(Y.value(ChartPoint(ds.chart, x), 0.0), SingularDenominatorError);
}

TEST_CASE("the equivalence field also guards its denominator") {
    auto m = make_flat_model(1);
    auto f1 = cutoff_equation(m, default_cutoff(m));
    auto ds = make_doubled_space(m, f1);
    auto f0 = ScalarField::make(m.chart, [psi = m.psi, c = m.c](auto x) { return psi(x) - c; });
    auto X = double_equiv_field(f0, f1, ds);
    Eigen::VectorXd x(4);
    x << 0.05, 0.0, 0.0, 0.0;  // plateau for f1; f0 has df0(Z) = psi ~ 0, s = 0
    CHECK_THROWS_AS(X.value(ChartPoint(ds.chart, x), 1.0), SingularDenominatorError);
}

TEST_CASE("pipeline refines undersampled loops and respects the cap") {
    auto m = make_flat_model(1);
    auto ds = make_doubled_space(m, cutoff_equation(m, default_cutoff(m)));

    InvariantRunSettings coarse;
    coarse.theta_samples = 4;  // k = 3 needs jumps < pi/2, forcing refinement
    auto rep = run_invariant_pipeline(ds, m, 3, coarse);
    CHECK(rep.winding == 3);

    InvariantRunSettings capped;
    capped.theta_samples = 4;
    capped.max_theta_samples = 8;
    CHECK_THROWS_AS(run_invariant_pipeline(ds, m, 3, capped), UndersampledError);
}

TEST_CASE("non-finite evaluations name the offending coordinate") {
    auto chart = ChartSpec::make({"u", "v"}, {false, false});
    auto inv = ScalarField::make(chart, [](auto x) { return 1.0 / x[0]; });
    ChartPoint origin(chart, Eigen::Vector2d(0.0, 1.0));
    CHECK_THROWS_WITH_AS(inv.gradient(origin),
                         doctest::Contains("coordinate 'u'"), EvalError);
    CHECK_THROWS_AS(ChartPoint(chart, Eigen::Vector2d(std::nan(""), 0.0)), EvalError);
}

TEST_CASE("tangent vectors demand matching base points") {
    auto chart = ChartSpec::make({"x", "y"}, {false, false});
    ChartPoint a(chart, Eigen::Vector2d(0.0, 0.0));
    ChartPoint b(chart, Eigen::Vector2d(1.0, 0.0));
    TangentVector u(a, Eigen::Vector2d(1.0, 2.0));
    TangentVector v(b, Eigen::Vector2d(0.5, 0.5));
    CHECK_THROWS_AS(u + v, ConfigError);
    TangentVector w(a, Eigen::Vector2d(0.5, 0.5));
    CHECK((u + w).components[0] == 1.5);
    CHECK((2.0 * u).components[1] == 4.0);
}

TEST_CASE("model builders validate their size argument") {
    CHECK_THROWS_AS(make_flat_model(0), ConfigError);
    CHECK_THROWS_AS(make_torus_model(-2), ConfigError);
}

TEST_CASE("psi_c rejects off-surface starts and flags escape-level drift") {
    auto m = make_flat_model(1);
    auto ds = make_doubled_space(m, cutoff_equation(m, default_cutoff(m)));
    Eigen::VectorXd x(4);
    x << 0.3, 0.0, 0.2, 0.0;
    CHECK_THROWS_AS(psi_c(ds, ChartPoint(ds.chart, x), 1), ConstructionError);
}
