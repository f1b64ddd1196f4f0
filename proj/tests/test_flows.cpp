#include "doctest.h"

#include "contactkit/flows.hpp"
#include "test_helpers.hpp"

using namespace contactkit;

namespace {

struct FlatSetup {
    WeinsteinModel model;
    ScalarField f;
    DoubledSpace ds;
    explicit FlatSetup(int n)
        : model(make_flat_model(n)),
          f(cutoff_equation(model, default_cutoff(model))),
          ds(make_doubled_space(model, f)) {}
};

ChartPoint wminus_point(const DoubledSpace& ds, double x, double y, double theta) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ds.wdim() + 2);
    c[ds.wdim() - 2] = x;
    c[ds.wdim() - 1] = y;
    c[ds.wdim()] = -1.0;
    c[ds.wdim() + 1] = theta;
    return ChartPoint(ds.chart, c);
}

}  // namespace

TEST_CASE("flow of the zero field is the identity") {
    FlatSetup s(1);
    auto zero = TimeDependentField::make(s.ds.chart, [](DualSpan x, double) {
        return std::vector<Dual>(x.size(), Dual(0.0));
    });
    ChartPoint p = wminus_point(s.ds, 0.4, 0.0, 1.0);
    FlowResult r = integrate_flow(zero, p, 0.0, 1.0);
    CHECK(coord_distance(r.endpoint, p) == 0.0);
    CHECK((r.jacobian - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("constant theta field advances the angle mod 2*pi") {
    FlatSetup s(1);
    auto dtheta = TimeDependentField::make(s.ds.chart, [](DualSpan x, double) {
        std::vector<Dual> out(x.size(), Dual(0.0));
        out[3] = Dual(1.0, 0.0);
        return out;
    });
    ChartPoint p = wminus_point(s.ds, 0.4, 0.0, 6.0);
    FlowResult r = integrate_flow(dtheta, p, 0.0, 1.0);
    CHECK(r.endpoint[3] == doctest::Approx(reduce_angle(7.0)).epsilon(1e-12));
    CHECK((r.jacobian - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("linear flow reproduces the exponential and its derivative") {
    auto chart = ChartSpec::make({"x"}, {false});
    auto lin = TimeDependentField::make(chart, [](DualSpan x, double) {
        return std::vector<Dual>{x[0]};
    });
    ChartPoint p(chart, Eigen::VectorXd::Constant(1, 1.0));
    FlowResult r = integrate_flow(lin, p, 0.0, 1.0);
    CHECK(std::abs(r.endpoint[0] - std::exp(1.0)) < 1e-9);
    CHECK(std::abs(r.jacobian(0, 0) - std::exp(1.0)) < 1e-8);
}

TEST_CASE("equal equations give the zero equivalence field") {
    FlatSetup s(1);
    auto X = double_equiv_field(s.f, s.f, s.ds);
    Sampler sampler(2);
    for (int i = 0; i < 20; ++i) {
        ChartPoint p = sampler.surface_point(s.ds);
        CHECK(X.value(p, sampler.uniform(0.0, 1.0)).norm() == 0.0);
    }
}

TEST_CASE("equivalence flow lands on the other double") {
    FlatSetup s(1);
    auto f0 = ScalarField::make(s.model.chart,
                                [psi = s.model.psi, c = s.model.c](auto x) { return psi(x) - c; });
    auto f0D = doubled_equation(s.ds, f0);
    auto map = double_equiv_map(s.ds, f0, s.f);

    Sampler sampler(3);
    for (int i = 0; i < 20; ++i) {
        ChartPoint p = sampler.surface_point(s.ds);  // on {f1^D = 0}, f1 = cutoff
        ChartPoint q = map.value(p);
        CHECK(std::abs(f0D.value(q)) < 1e-8);
        auto conf = conformality_residual(map, s.ds, p, &f0D);
        CHECK(conf.residual < 1e-6);
        CHECK(conf.coorientation_preserved);
    }
}

TEST_CASE("equivalence flow tracks the interpolating zero sets") {
    FlatSetup s(1);
    auto f0 = ScalarField::make(s.model.chart,
                                [psi = s.model.psi, c = s.model.c](auto x) { return psi(x) - c; });
    auto X = double_equiv_field(f0, s.f, s.ds);
    TimeDependentField rev;
    rev.chart = X.chart;
    rev.eval = [X](DualSpan x, double tau) { return X.eval(x, 1.0 - tau); };

    Sampler sampler(33);
    for (int trial = 0; trial < 10; ++trial) {
        ChartPoint p = sampler.surface_point(s.ds);  // on {f1^D = 0}
        for (double tau : {0.25, 0.5, 0.75}) {
            ChartPoint q = integrate_flow(rev, p, 0.0, tau).endpoint;
            double t = 1.0 - tau;
            ChartPoint qw(s.model.chart, q.coords().head(2));
            double ft = t * s.f.value(qw) + (1.0 - t) * f0.value(qw) + q[2] * q[2];
            CHECK(std::abs(ft) < 1e-10);  // on {f_t^D = 0} at every intermediate time
        }
    }
}

TEST_CASE("Lie derivative identity for the equivalence field") {
    FlatSetup s(1);
    auto f0 = ScalarField::make(s.model.chart,
                                [psi = s.model.psi, c = s.model.c](auto x) { return psi(x) - c; });
    auto X = double_equiv_field(f0, s.f, s.ds);

    Sampler sampler(4);
    int done = 0;
    while (done < 50) {
        ChartPoint p = sampler.doubled_point(s.ds);
        double t = sampler.uniform(0.0, 1.0);
        ChartPoint pw(s.model.chart, p.coords().head(2));
        double dfZ = t * s.f.directional(pw, s.model.Z.value(pw)) +
                     (1.0 - t) * f0.directional(pw, s.model.Z.value(pw));
        double den = 2.0 * p[2] * p[2] + dfZ;
        if (std::abs(den) < 0.2) continue;  // keep clear of the singular locus
        ++done;

        auto Xt = VectorField::make_first_order(s.ds.chart,
                                                [X, t](DualSpan x) { return X.eval(x, t); });
        double g = (s.f.value(pw) - f0.value(pw)) / den;
        Eigen::VectorXd u = Eigen::VectorXd::Random(4);
        TangentVector tu(p, u);
        double lhs = lie_derivative(s.ds.lambdaD, Xt, p, tu);
        double rhs = g * s.ds.lambdaD.value(tu);
        CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)) < 1e-7);
    }
}

TEST_CASE("Gray field with zero momentum vanishes") {
    FlatSetup s(1);
    auto zero_h = ScalarField::constant(s.ds.chart, 0.0);
    auto Y = gray_field(s.ds, zero_h);
    Sampler sampler(6);
    for (int i = 0; i < 10; ++i)
        CHECK(Y.value(sampler.surface_point(s.ds), 0.0).norm() == 0.0);
}

TEST_CASE("Gray field closed form on W_-") {
    FlatSetup s(2);
    auto Y = gray_field(s.ds, rotation_momentum(s.ds));
    Sampler sampler(7);
    for (int i = 0; i < 30; ++i) {
        // points of W_-: psi <= c - 2a, s = -1
        Eigen::VectorXd c = Eigen::VectorXd::Zero(6);
        do {
            for (int j = 0; j < 4; ++j) c[j] = sampler.uniform(-0.7, 0.7);
        } while (s.model.psi.value(ChartPoint(s.model.chart, c.head(4))) > 0.45);
        c[4] = -1.0;
        c[5] = sampler.uniform(0.0, 6.28);
        ChartPoint p(s.ds.chart, c);
        double r2 = c[2] * c[2] + c[3] * c[3];

        Eigen::VectorXd got = Y.value(p, 0.0);
        Eigen::VectorXd want = Eigen::VectorXd::Zero(6);
        want.head(4) = -(r2 / 2.0) * s.ds.Z.value(p).head(4);  // -(r^2/2) Z on F x C
        CHECK((got - want).norm() < 1e-12);
        CHECK(got[4] == 0.0);  // no d/ds component on the plateau
        CHECK(got[5] == 0.0);
    }
}

TEST_CASE("Gray field is tangent and lies in every ker(lambda_t)") {
    FlatSetup s(2);
    auto h = rotation_momentum(s.ds);
    auto Y = gray_field(s.ds, h);
    Sampler sampler(8);
    for (int i = 0; i < 100; ++i) {
        ChartPoint p = sampler.surface_point(s.ds);
        double t = sampler.uniform(0.0, 1.0);
        Eigen::VectorXd y = Y.value(p, 0.0);
        CHECK(std::abs(s.ds.fD.directional(p, y)) < 1e-9);
        CHECK(std::abs(lambda_t(s.ds, h, t).value(p, y)) < 1e-9);
    }
}

TEST_CASE("rotation momentum satisfies dh(Z) = h") {
    FlatSetup s(2);
    auto h = rotation_momentum(s.ds);
    Sampler sampler(9);
    for (int i = 0; i < 100; ++i) {
        ChartPoint p = sampler.doubled_point(s.ds);
        CHECK(std::abs(h.directional(p, s.ds.Z.value(p)) - h.value(p)) < 1e-8);
    }
}

TEST_CASE("rotation pullback identity for the doubled form") {
    FlatSetup s(1);
    auto rot = psi_rotation(s.ds);
    auto h = rotation_momentum(s.ds);
    Sampler sampler(10);
    for (int i = 0; i < 50; ++i) {
        ChartPoint p = sampler.doubled_point(s.ds);
        TangentVector u(p, Eigen::VectorXd::Random(4));
        double lhs = pullback(rot, s.ds.lambdaD, p, u);
        double rhs = s.ds.lambda.value(u) + (2.0 * p[2] + h.value(p)) * u.components[3];
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("psi rotation basics") {
    FlatSetup s(1);
    auto rot = psi_rotation(s.ds);

    Eigen::VectorXd a(4);
    a << 0.5, -0.2, 0.1, 0.0;  // theta = 0
    CHECK(coord_distance(rot.value(ChartPoint(s.ds.chart, a)), ChartPoint(s.ds.chart, a)) == 0.0);

    Eigen::VectorXd b(4);
    b << 0.5, 0.0, 0.0, 3.14159265358979323846;
    ChartPoint q = rot.value(ChartPoint(s.ds.chart, b));
    CHECK(q[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(q[1]) < 1e-12);

    Sampler sampler(11);
    for (int i = 0; i < 20; ++i) {
        ChartPoint p = sampler.doubled_point(s.ds);
        Eigen::MatrixXd J = rot.jacobian(p);
        Eigen::MatrixXd Jfd = testutil::fd_jacobian(
            [&](const Eigen::VectorXd& x) {
                return rot.value(ChartPoint(s.ds.chart, x)).coords();
            },
            p.coords());
        // keep away from the theta wrap so the finite difference is smooth
        if (p[3] < 1e-5 || p[3] > 6.28) continue;
        CHECK((J - Jfd).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("psi_c is the identity at k = 0 and shifts the angle at k = 1") {
    FlatSetup s(1);
    ChartPoint p = wminus_point(s.ds, 0.5, 0.0, 1.3);
    FlowResult r0 = psi_c(s.ds, p, 0);
    CHECK(coord_distance(r0.endpoint, p) == 0.0);
    CHECK((r0.jacobian - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);

    FlowResult r1 = psi_c(s.ds, p, 1);
    CHECK(std::abs(r1.endpoint[2] + 1.0) < 1e-10);   // s stays -1
    CHECK(r1.endpoint[3] == doctest::Approx(1.3));   // theta untouched
    double phi = std::atan2(r1.endpoint[1], r1.endpoint[0]);
    CHECK(std::abs(reduce_angle(phi) - 1.3) < 1e-8);  // angular shift by theta
}

TEST_CASE("the flow of Y preserves s on W_-") {
    FlatSetup s(1);
    auto Y = gray_field(s.ds, rotation_momentum(s.ds));
    ChartPoint p = wminus_point(s.ds, 0.45, 0.1, 0.7);
    FlowOptions opts;
    opts.constraint = &s.ds.fD;
    opts.record_trajectory = true;
    FlowResult r = integrate_flow(Y, p, 0.0, 1.0, opts);
    for (const auto& row : r.trajectory) CHECK(std::abs(row[3] + 1.0) < 1e-10);
    CHECK(r.drift < 1e-10);
}

TEST_CASE("psi_c is conformal and the bare rotation is not") {
    FlatSetup s(1);
    auto map_c = psi_c_map(s.ds, 1);
    auto rot = psi_rotation(s.ds);
    Sampler sampler(13);
    double worst_c = 0.0, worst_rot = 0.0;
    for (int i = 0; i < 25; ++i) {
        ChartPoint p = sampler.surface_point(s.ds);
        auto c = conformality_residual(map_c, s.ds, p);
        CHECK(c.residual < 1e-6);
        CHECK(c.coorientation_preserved);
        worst_c = std::max(worst_c, c.residual);
        worst_rot = std::max(worst_rot, conformality_residual(rot, s.ds, p).residual);
    }
    CHECK(worst_rot > 1e3 * 1e-6);  // the deformation is doing real work
}

TEST_CASE("equivalence flow commutes with the rotation") {
    FlatSetup s(1);
    auto f0 = ScalarField::make(s.model.chart,
                                [psi = s.model.psi, c = s.model.c](auto x) { return psi(x) - c; });
    auto map = double_equiv_map(s.ds, f0, s.f);
    auto rot = psi_rotation(s.ds);
    Sampler sampler(14);
    for (int i = 0; i < 15; ++i) {
        ChartPoint p = sampler.surface_point(s.ds);
        ChartPoint a = map.value(rot.value(p));
        ChartPoint b = rot.value(map.value(p));
        CHECK(coord_distance(a, b) < 1e-8);
    }
}

TEST_CASE("transported Jacobian matches finite differences of the flow map") {
    FlatSetup s(1);
    auto Y = gray_field(s.ds, rotation_momentum(s.ds));
    auto rot = psi_rotation(s.ds);
    ChartPoint p = wminus_point(s.ds, 0.5, 0.0, 0.9);

    FlowResult leg = integrate_flow(Y, p, 0.0, 1.0);
    Eigen::MatrixXd J = rot.jacobian(leg.endpoint) * leg.jacobian;
    // The ambient finite-difference probes leave the hypersurface, so drive
    // the leg directly; h large enough that integrator noise stays below the
    // quotient.
    Eigen::MatrixXd Jfd = testutil::fd_jacobian(
        [&](const Eigen::VectorXd& x) {
            FlowResult r = integrate_flow(Y, ChartPoint(s.ds.chart, x), 0.0, 1.0);
            return rot.value(r.endpoint).coords();
        },
        p.coords(), 1e-4);
    CHECK((J - Jfd).cwiseAbs().maxCoeff() / std::max(1.0, J.cwiseAbs().maxCoeff()) < 1e-5);
}

TEST_CASE("tightening tolerances moves endpoints consistently") {
    FlatSetup s(1);
    ChartPoint p = wminus_point(s.ds, 0.48, 0.05, 2.0);
    OdeTol loose{1e-8, 1e-10}, tight{1e-9, 1e-11};
    ChartPoint a = psi_c(s.ds, p, 2, loose).endpoint;
    ChartPoint b = psi_c(s.ds, p, 2, tight).endpoint;
    CHECK(coord_distance(a, b) < 10.0 * 1e-8);
}

TEST_CASE("iterates compose as a group") {
    FlatSetup s(1);
    ChartPoint p = wminus_point(s.ds, 0.5, 0.0, 0.4);
    ChartPoint once = psi_c(s.ds, psi_c(s.ds, p, 1).endpoint, 2).endpoint;
    ChartPoint all = psi_c(s.ds, p, 3).endpoint;
    CHECK(coord_distance(once, all) < 1e-8);
}
