#include "doctest.h"

#include "contactkit/winding.hpp"

#include <Eigen/Dense>
#include "test_helpers.hpp"

using namespace contactkit;

namespace {

struct Setup {
    WeinsteinModel model;
    ScalarField f;
    DoubledSpace ds;
    explicit Setup(const WeinsteinModel& m)
        : model(m), f(cutoff_equation(model, default_cutoff(model))),
          ds(make_doubled_space(model, f)) {}
};

MatrixLoop synthetic_loop(int samples, int power) {
    MatrixLoop loop;
    loop.k = power;
    for (int i = 0; i < samples; ++i) {
        double th = 2.0 * 3.14159265358979323846 * i / samples;
        loop.theta.push_back(th);
        Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(3, 3);
        B(2, 2) = std::polar(1.0, power * th);
        loop.mats.push_back(B);
    }
    return loop;
}

}  // namespace

TEST_CASE("family base circle has radius x0 = 1/2") {
    Setup s(make_flat_model(1));
    auto fam = build_family(s.ds, s.model, 16);
    CHECK(fam.meta.x0 == doctest::Approx(0.5));
    CHECK(fam.meta.a == doctest::Approx(0.25));
    CHECK(fam.n_sections() == 1);  // n = 1: F is a point, one section only
    for (int i = 0; i < fam.samples(); ++i) {
        CHECK(fam.base[static_cast<size_t>(i)][0] == doctest::Approx(0.5));
        CHECK(fam.base[static_cast<size_t>(i)][2] == doctest::Approx(-1.0));
        // alpha_f on the last section: -2 + x0^2 * (2/x0) / x0 = 0
        CHECK(std::abs(s.ds.lambdaD.value(fam.sections[static_cast<size_t>(i)].back())) < 1e-12);
    }
}

TEST_CASE("family validation reports clean invariants") {
    Setup s(make_flat_model(2));
    auto fam = build_family(s.ds, s.model, 16);
    CHECK(fam.n_sections() == 2);
    auto check = validate_family(s.ds, fam);
    CHECK(check.max_kernel_residual < 1e-12);
    CHECK(check.max_lagrangian_residual < 1e-12);
    CHECK(check.min_singular_value > 0.5);
}

TEST_CASE("pushforward at k = 0 is the identity") {
    Setup s(make_flat_model(1));
    auto fam = build_family(s.ds, s.model, 8);
    auto pushed = pushforward_family(s.ds, fam, 0);
    for (int i = 0; i < fam.samples(); ++i)
        CHECK(coord_distance(fam.base[static_cast<size_t>(i)],
                             pushed.base[static_cast<size_t>(i)]) == 0.0);
}

TEST_CASE("pushforward moves the base circle to radius r_1") {
    Setup s(make_flat_model(1));
    auto fam = build_family(s.ds, s.model, 8);
    auto pushed = pushforward_family(s.ds, fam, 1);
    double x0 = fam.meta.x0;
    for (int i = 0; i < pushed.samples(); ++i) {
        const ChartPoint& q = pushed.base[static_cast<size_t>(i)];
        double r1 = std::hypot(q[0], q[1]);
        CHECK(std::abs(1.0 + 2.0 / (x0 * x0) - 2.0 / (r1 * r1)) < 1e-6);
        CHECK(std::abs(r1 - std::sqrt(2.0) / 3.0) < 1e-8);  // 2/r^2 = 9 at x0 = 1/2
        for (const auto& sec : pushed.sections[static_cast<size_t>(i)])
            CHECK(std::abs(s.ds.lambdaD.value(sec)) < 1e-7);
    }
}

TEST_CASE("the doubled form at the base circle matches its closed form") {
    // lambda^D at gamma(theta) is x0^2 dphi - 2 dtheta: at z = x0 on the real
    // axis, dphi pairs with d/dphi = x0 d/dy, so lambda^D(d/dy) = x0.
    Setup s(make_flat_model(2));
    auto fam = build_family(s.ds, s.model, 8);
    double x0 = fam.meta.x0;
    for (int i = 0; i < fam.samples(); ++i) {
        const ChartPoint& p = fam.base[static_cast<size_t>(i)];
        Eigen::VectorXd e = Eigen::VectorXd::Zero(p.dim());
        e[3] = 1.0;  // d/dy of the last C factor
        CHECK(s.ds.lambdaD.value(p, e) == doctest::Approx(x0).epsilon(1e-12));
        e[3] = 0.0;
        e[5] = 1.0;  // d/dtheta
        CHECK(s.ds.lambdaD.value(p, e) == doctest::Approx(-2.0).epsilon(1e-12));
        e[5] = 0.0;
        e[0] = 1.0;  // an F direction
        CHECK(std::abs(s.ds.lambdaD.value(p, e)) < 1e-14);
    }
}

TEST_CASE("the measured slope of the pushed theta-section obeys s_k = k + 2/x0^2") {
    Setup s(make_flat_model(1));
    auto fam = build_family(s.ds, s.model, 16);
    double x0 = fam.meta.x0;
    for (int k : {1, 2, 3}) {
        auto pushed = pushforward_family(s.ds, fam, k);
        auto [sk, dev] = measured_section_slope(s.ds, pushed);
        CHECK(dev < 1e-8);  // constant across the loop
        CHECK(std::abs(sk - (k + 2.0 / (x0 * x0))) < 1e-6);
    }
}

TEST_CASE("trivialized loop is constant at k = 0") {
    Setup s(make_flat_model(2));
    auto fam = build_family(s.ds, s.model, 16);
    auto loop = stabilize_and_trivialize(fam, s.ds, s.model);
    for (int i = 1; i < loop.samples(); ++i)
        CHECK((loop.mats[static_cast<size_t>(i)] - loop.mats[0]).cwiseAbs().maxCoeff() < 1e-8);
    auto rep = winding_number(loop);
    CHECK(rep.winding == 0);
}

TEST_CASE("block structure of the pushed loop") {
    Setup s(make_flat_model(2));
    auto fam = build_family(s.ds, s.model, 32);
    auto pushed = pushforward_family(s.ds, fam, 1);
    auto loop = stabilize_and_trivialize(pushed, s.ds, s.model);
    auto rep = winding_number(loop);
    CHECK(rep.block_residual < 1e-6);
    CHECK(rep.row_modulation_residual < 1e-6);
    CHECK(rep.winding == 1);
}

TEST_CASE("winding of synthetic loops") {
    auto rep0 = winding_number(synthetic_loop(32, 0));
    CHECK(rep0.winding == 0);
    auto rep2 = winding_number(synthetic_loop(32, 2));
    CHECK(rep2.winding == 2);
    CHECK(rep2.phase_total == doctest::Approx(4.0 * 3.14159265358979323846).epsilon(1e-9));
}

TEST_CASE("winding is additive under pointwise products") {
    auto a = synthetic_loop(64, 1);
    auto b = synthetic_loop(64, 3);
    MatrixLoop prod = a;
    for (int i = 0; i < prod.samples(); ++i)
        prod.mats[static_cast<size_t>(i)] =
            a.mats[static_cast<size_t>(i)] * b.mats[static_cast<size_t>(i)];
    CHECK(winding_number(prod).winding == 4);
}

TEST_CASE("undersampled loops are rejected") {
    // winding 3 at 8 samples: phase jump 3*2*pi/8 > pi/2
    CHECK_THROWS_AS(winding_number(synthetic_loop(8, 3)), UndersampledError);
}

TEST_CASE("full pipeline winds k times around zero") {
    Setup s(make_flat_model(1));
    InvariantRunSettings settings;
    for (int k : {0, 1, 2, 3, 4}) {
        auto rep = run_invariant_pipeline(s.ds, s.model, k, settings);
        CHECK(rep.winding == k);
        CHECK(rep.block_residual < 1e-6);
        CHECK(rep.row_modulation_residual < 1e-6);
        CHECK(rep.radial_residual < 1e-6);
    }
}

TEST_CASE("pipeline on the five-dimensional flat model") {
    Setup s(make_flat_model(2));
    InvariantRunSettings settings;
    settings.theta_samples = 48;
    auto rep = run_invariant_pipeline(s.ds, s.model, 3, settings);
    CHECK(rep.winding == 3);
    CHECK(rep.block_residual < 1e-6);
}

TEST_CASE("pipeline on the torus model") {
    Setup s(make_torus_model(1));
    InvariantRunSettings settings;
    settings.theta_samples = 32;
    auto rep = run_invariant_pipeline(s.ds, s.model, 1, settings);
    CHECK(rep.winding == 1);
    CHECK(rep.block_residual < 1e-6);
    CHECK(rep.radial_residual < 1e-6);
}

TEST_CASE("radial constraint residuals") {
    Setup s(make_flat_model(1));
    CHECK(radial_constraint_residual(s.ds, s.model, 0) == doctest::Approx(0.0));
    CHECK(radial_constraint_residual(s.ds, s.model, 1) < 1e-6);

    Setup s2(make_flat_model(2));
    CHECK(radial_constraint_residual(s2.ds, s2.model, 4) < 1e-6);
}

TEST_CASE("pushed radii decrease with k") {
    Setup s(make_flat_model(1));
    auto fam = build_family(s.ds, s.model, 4);
    double prev = fam.meta.x0;
    for (int k = 1; k <= 4; ++k) {
        FlowResult res = psi_c(s.ds, fam.base[0], k);
        double rk = std::hypot(res.endpoint[0], res.endpoint[1]);
        CHECK(rk < prev);
        // against the closed-form radius law 2/r_k^2 = k + 2/x0^2
        CHECK(std::abs(rk - std::sqrt(2.0 / (k + 8.0))) < 1e-7);
        prev = rk;
    }
}

TEST_CASE("parallel pushforward reproduces the serial loop exactly") {
    Setup s(make_flat_model(2));
    InvariantRunSettings serial;
    serial.theta_samples = 16;
    InvariantRunSettings parallel = serial;
    parallel.jobs = 2;
    MatrixLoop a, b;
    auto ra = run_invariant_pipeline(s.ds, s.model, 2, serial, &a);
    auto rb = run_invariant_pipeline(s.ds, s.model, 2, parallel, &b);
    CHECK(ra.winding == rb.winding);
    REQUIRE(a.samples() == b.samples());
    for (int i = 0; i < a.samples(); ++i)
        CHECK((a.mats[static_cast<size_t>(i)] - b.mats[static_cast<size_t>(i)]).cwiseAbs().maxCoeff() ==
              0.0);
}

TEST_CASE("the pipeline generalizes to the seven-dimensional flat model") {
    Setup s(make_flat_model(3));
    InvariantRunSettings settings;
    settings.theta_samples = 16;
    auto rep = run_invariant_pipeline(s.ds, s.model, 1, settings);
    CHECK(rep.winding == 1);
    CHECK(rep.block_residual < 1e-6);
    CHECK(rep.radial_residual < 1e-6);
}

TEST_CASE("winding is stable under sampling and tolerance changes") {
    Setup s(make_flat_model(1));
    InvariantRunSettings base;
    auto rep = run_invariant_pipeline(s.ds, s.model, 2, base);

    InvariantRunSettings doubled = base;
    doubled.theta_samples *= 2;
    CHECK(run_invariant_pipeline(s.ds, s.model, 2, doubled).winding == rep.winding);

    InvariantRunSettings tight = base;
    tight.tol.rel /= 10.0;
    tight.tol.abs /= 10.0;
    CHECK(run_invariant_pipeline(s.ds, s.model, 2, tight).winding == rep.winding);
}
