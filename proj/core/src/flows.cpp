#include "contactkit/flows.hpp"

#include <cmath>

namespace contactkit {

namespace {

// d f(x) . z for a jet-level direction z, via one nested-jet pass.
template <class T>
T directional_jet(const ScalarField& f, std::span<const T> x, const std::vector<T>& z) {
    std::vector<Jet<T>> xx(x.size());
    for (size_t i = 0; i < x.size(); ++i) xx[i] = Jet<T>(x[i], z[i]);
    return f(std::span<const Jet<T>>(xx)).d;
}

std::vector<double> point_of(std::span<const Dual> x) {
    std::vector<double> p(x.size());
    for (size_t i = 0; i < x.size(); ++i) p[i] = x[i].v;
    return p;
}

}  // namespace

TimeDependentField double_equiv_field(const ScalarField& f0, const ScalarField& f1,
                                      const DoubledSpace& ds) {
    const int w = ds.wdim();
    return TimeDependentField::make(
        ds.chart, [f0, f1, Z = ds.base.Z, w](DualSpan x, double t) {
            auto xw = x.first(w);
            Dual v0 = f0(xw);
            Dual v1 = f1(xw);
            auto zw = Z(xw);
            Dual den = 2.0 * x[w] * x[w] +
                       t * directional_jet(f1, xw, zw) + (1.0 - t) * directional_jet(f0, xw, zw);
            if (std::abs(den.v) < 1e-8)
                throw SingularDenominatorError("double equivalence field: d f_t^D(Z^D) ~ 0",
                                               point_of(x));
            Dual coef = (v1 - v0) / den;
            std::vector<Dual> out(x.size(), Dual(0.0));
            for (int i = 0; i < w; ++i) out[static_cast<size_t>(i)] = coef * zw[static_cast<size_t>(i)];
            out[static_cast<size_t>(w)] = coef * x[w];
            return out;
        });
}

SmoothMap double_equiv_map(const DoubledSpace& ds, const ScalarField& f0, const ScalarField& f1,
                           OdeTol tol) {
    TimeDependentField X = double_equiv_field(f0, f1, ds);
    // Flow of tau -> X_{1 - tau}; carries {f1^D = 0} at tau=0 to {f0^D = 0}
    // at tau=1 (the zero set of f_t^D is preserved along the way).
    TimeDependentField rev;
    rev.chart = X.chart;
    rev.eval = [X](DualSpan x, double tau) { return X.eval(x, 1.0 - tau); };

    SmoothMap m;
    m.source = ds.chart;
    m.target = ds.chart;
    m.value = [rev, tol](const ChartPoint& p) {
        FlowOptions opts;
        opts.tol = tol;
        return integrate_flow(rev, p, 0.0, 1.0, opts).endpoint;
    };
    m.jacobian = [rev, tol](const ChartPoint& p) {
        FlowOptions opts;
        opts.tol = tol;
        return integrate_flow(rev, p, 0.0, 1.0, opts).jacobian;
    };
    return m;
}

VectorField rotation_generator(const DoubledSpace& ds) {
    const int w = ds.wdim();
    return VectorField::make(ds.chart, [w](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        std::vector<T> out(x.size(), T(0.0));
        out[static_cast<size_t>(w - 2)] = T(0.0) - x[w - 1];  // d/dphi = -y d/dx + x d/dy
        out[static_cast<size_t>(w - 1)] = x[w - 2];
        return out;
    });
}

ScalarField rotation_momentum(const DoubledSpace& ds) {
    const int w = ds.wdim();
    return ScalarField::make(ds.chart,
                             [lam = ds.base.lambda, X = rotation_generator(ds), w](auto x) {
                                 auto xv = X(x);
                                 using T = std::remove_cvref_t<decltype(x[0])>;
                                 std::span<const T> vw(xv.data(), static_cast<size_t>(w));
                                 return lam(x.first(w), vw);
                             });
}

OneForm lambda_t(const DoubledSpace& ds, const ScalarField& h, double t) {
    const int w = ds.wdim();
    return OneForm::make(ds.chart, [lam = ds.base.lambda, h, t, w](auto x, auto v) {
        return lam(x.first(w), v.first(w)) + (2.0 * x[w] + t * h(x)) * v[w + 1];
    });
}

TimeDependentField gray_field(const DoubledSpace& ds, const ScalarField& h) {
    const int w = ds.wdim();
    return TimeDependentField::make(
        ds.chart, [h, f = ds.f, Z = ds.Z, w](DualSpan x, double) {
            Dual hh = h(x);
            auto zfull = Z(x);
            Dual dfZ = directional_jet(f, x, zfull);
            Dual den = 2.0 * x[w] * x[w] + dfZ;  // d f^D(Z^D)
            if (std::abs(den.v) < 1e-8)
                throw SingularDenominatorError("Gray field: d f^D(Z^D) ~ 0", point_of(x));
            Dual coef = hh / (2.0 * den);
            std::vector<Dual> out(x.size(), Dual(0.0));
            for (int i = 0; i < w; ++i)
                out[static_cast<size_t>(i)] = coef * 2.0 * x[w] * zfull[static_cast<size_t>(i)];
            out[static_cast<size_t>(w)] = Dual(0.0) - coef * dfZ;
            return out;
        });
}

SmoothMap psi_rotation(const DoubledSpace& ds) {
    const int w = ds.wdim();
    return SmoothMap::from_dual(ds.chart, ds.chart, [w](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        std::vector<T> out(x.begin(), x.end());
        T ct = cos(x[w + 1]), st = sin(x[w + 1]);
        out[static_cast<size_t>(w - 2)] = x[w - 2] * ct - x[w - 1] * st;
        out[static_cast<size_t>(w - 1)] = x[w - 2] * st + x[w - 1] * ct;
        return out;
    });
}

FlowResult psi_c(const DoubledSpace& ds, const ChartPoint& p, int k, OdeTol tol) {
    if (k < 0) throw ConfigError("psi_c: iterate index must be >= 0");
    if (std::abs(ds.fD.value(p)) > ds.surface_tol)
        throw ConstructionError("psi_c: start point is off the hypersurface");

    const int n = p.dim();
    FlowResult acc{p, Eigen::MatrixXd::Identity(n, n), 0.0, 0, tol, {}};
    if (k == 0) return acc;

    TimeDependentField Y = gray_field(ds, rotation_momentum(ds));
    SmoothMap rot = psi_rotation(ds);
    FlowOptions opts;
    opts.tol = tol;
    opts.constraint = &ds.fD;

    ChartPoint q = p;
    for (int i = 0; i < k; ++i) {
        FlowResult leg = integrate_flow(Y, q, 0.0, 1.0, opts);
        acc.jacobian = leg.jacobian * acc.jacobian;
        acc.drift = std::max(acc.drift, leg.drift);
        acc.steps += leg.steps;
        q = leg.endpoint;
        acc.jacobian = rot.jacobian(q) * acc.jacobian;
        q = rot.value(q);
    }
    acc.endpoint = q;
    double endpoint_drift = std::abs(ds.fD.value(q));
    acc.drift = std::max(acc.drift, endpoint_drift);
    if (acc.drift > 10.0 * ds.surface_tol)
        throw FlowEscapeError("psi_c: trajectory left the hypersurface (drift " +
                              std::to_string(acc.drift) + ")");
    return acc;
}

SmoothMap psi_c_map(const DoubledSpace& ds, int k, OdeTol tol) {
    SmoothMap m;
    m.source = ds.chart;
    m.target = ds.chart;
    m.value = [ds, k, tol](const ChartPoint& p) { return psi_c(ds, p, k, tol).endpoint; };
    m.jacobian = [ds, k, tol](const ChartPoint& p) { return psi_c(ds, p, k, tol).jacobian; };
    return m;
}

ConformalityResult conformality_residual(const SmoothMap& map, const DoubledSpace& ds,
                                         const ChartPoint& p,
                                         const ScalarField* image_equation) {
    if (std::abs(ds.fD.value(p)) > ds.surface_tol)
        throw ConstructionError("conformality: point is off the hypersurface");
    auto basis = level_set_tangent_basis(ds.fD, p, ds.surface_tol);
    ChartPoint q = map.value(p);
    const ScalarField& img_eq = image_equation ? *image_equation : ds.fD;
    if (std::abs(img_eq.value(q)) > 10.0 * ds.surface_tol)
        throw FlowEscapeError("conformality: image point is off the hypersurface");
    Eigen::MatrixXd J = map.jacobian(p);

    const int m = static_cast<int>(basis.size());
    Eigen::VectorXd a(m), b(m);
    for (int i = 0; i < m; ++i) {
        const auto& u = basis[static_cast<size_t>(i)];
        a[i] = ds.lambdaD.value(q, J * u.components);
        b[i] = ds.lambdaD.value(u);
    }
    ConformalityResult res;
    double bb = b.squaredNorm();
    res.factor = bb > 0.0 ? a.dot(b) / bb : 0.0;
    double scale = std::max(a.cwiseAbs().maxCoeff(),
                            std::abs(res.factor) * b.cwiseAbs().maxCoeff());
    double dev = (a - res.factor * b).cwiseAbs().maxCoeff();
    res.residual = scale > 0.0 ? dev / scale : dev;
    res.coorientation_preserved = res.factor > 0.0;
    return res;
}

}  // namespace contactkit
