#include "contactkit/weinstein.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

namespace contactkit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
}  // namespace

WeinsteinModel make_flat_model(int n) {
    if (n < 1) throw ConfigError("flat model: n must be >= 1");
    std::vector<std::string> names;
    std::vector<bool> periodic;
    for (int i = 1; i <= n; ++i) {
        names.push_back("x" + std::to_string(i));
        names.push_back("y" + std::to_string(i));
        periodic.push_back(false);
        periodic.push_back(false);
    }
    WeinsteinModel m;
    m.name = "flat";
    m.n = n;
    m.chart = ChartSpec::make(names, periodic);
    const int dim = 2 * n;

    m.lambda = OneForm::make(m.chart, [dim](auto x, auto v) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        T acc(0.0);
        for (int i = 0; i < dim; i += 2) acc += x[i] * v[i + 1] - x[i + 1] * v[i];
        return acc;
    });
    m.Z = VectorField::make(m.chart, [dim](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        std::vector<T> out(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) out[static_cast<size_t>(i)] = 0.5 * x[i];
        return out;
    });
    m.psi = ScalarField::make(m.chart, [dim](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        T acc(0.0);
        for (int i = 0; i < dim; ++i) acc += x[i] * x[i];
        return acc;
    });
    m.psi_F = ScalarField::make(m.chart, [dim](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        T acc(0.0);
        for (int i = 0; i < dim - 2; ++i) acc += x[i] * x[i];
        return acc;
    });
    m.min_psi_F = 0.0;
    m.c = 1.0;
    m.kappa = 0.5;

    Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; i += 2) {
        J0(i + 1, i) = 1.0;   // J dx = dy
        J0(i, i + 1) = -1.0;  // J dy = -dx
    }
    m.J = [J0](const ChartPoint&) { return J0; };

    std::vector<Eigen::VectorXd> w;
    for (int j = 0; j + 1 < n; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e[2 * j] = 1.0;
        w.push_back(e);
    }
    m.frame = [w](const ChartPoint&) { return w; };
    m.q0 = Eigen::VectorXd::Zero(dim - 2);
    m.box_lo = Eigen::VectorXd::Constant(dim, -1.1);
    m.box_hi = Eigen::VectorXd::Constant(dim, 1.1);
    return m;
}

WeinsteinModel make_torus_model(int n) {
    if (n < 1) throw ConfigError("torus model: n must be >= 1");
    std::vector<std::string> names;
    std::vector<bool> periodic;
    for (int i = 1; i <= n; ++i) {
        names.push_back("q" + std::to_string(i));
        periodic.push_back(true);
    }
    for (int i = 1; i <= n; ++i) {
        names.push_back("p" + std::to_string(i));
        periodic.push_back(false);
    }
    names.push_back("x");
    names.push_back("y");
    periodic.push_back(false);
    periodic.push_back(false);

    WeinsteinModel m;
    m.name = "torus";
    m.n = n + 1;  // complex dimension of T*T^n x C
    m.chart = ChartSpec::make(names, periodic);
    const int dim = 2 * n + 2;
    const int ix = 2 * n, iy = 2 * n + 1;

    // lambda_F = (1/2) sum p_i dq_i; its Liouville field is the full fiber
    // Euler field sum p_i d/dp_i (lambda_F is linear in p, so the 1/2-scaled
    // field would only satisfy i_Z d(lambda) = lambda/2).
    m.lambda = OneForm::make(m.chart, [n, ix, iy](auto x, auto v) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        T acc = x[ix] * v[iy] - x[iy] * v[ix];
        for (int i = 0; i < n; ++i) acc += 0.5 * x[n + i] * v[i];
        return acc;
    });
    m.Z = VectorField::make(m.chart, [n, dim, ix, iy](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        std::vector<T> out(static_cast<size_t>(dim), T(0.0));
        for (int i = 0; i < n; ++i) out[static_cast<size_t>(n + i)] = x[n + i];
        out[static_cast<size_t>(ix)] = 0.5 * x[ix];
        out[static_cast<size_t>(iy)] = 0.5 * x[iy];
        return out;
    });
    m.psi = ScalarField::make(m.chart, [n, ix, iy](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        T acc = x[ix] * x[ix] + x[iy] * x[iy];
        for (int i = 0; i < n; ++i) acc += x[n + i] * x[n + i];
        return acc;
    });
    m.psi_F = ScalarField::make(m.chart, [n](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        T acc(0.0);
        for (int i = 0; i < n; ++i) acc += x[n + i] * x[n + i];
        return acc;
    });
    m.min_psi_F = 0.0;
    m.c = 1.0;
    m.kappa = 0.5;

    // J dq = -(1/2) dp, J dp = 2 dq: tamed by d lambda_F and scaled so that
    // lambda = -(1/2) d psi o J holds on the F factor as well (kappa = 1/2).
    Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        J0(n + i, i) = -0.5;
        J0(i, n + i) = 2.0;
    }
    J0(iy, ix) = 1.0;
    J0(ix, iy) = -1.0;
    m.J = [J0](const ChartPoint&) { return J0; };

    std::vector<Eigen::VectorXd> w;
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e[j] = 1.0;  // d/dq_j
        w.push_back(e);
    }
    m.frame = [w](const ChartPoint&) { return w; };
    m.q0 = Eigen::VectorXd::Zero(2 * n);

    m.box_lo = Eigen::VectorXd::Constant(dim, -1.05);
    m.box_hi = Eigen::VectorXd::Constant(dim, 1.05);
    for (int i = 0; i < n; ++i) {
        m.box_lo[i] = 0.0;
        m.box_hi[i] = kTwoPi;
    }
    return m;
}

CutoffSpec default_cutoff(const WeinsteinModel& model) {
    CutoffSpec spec;
    spec.a = (model.c - model.min_psi_F) / 4.0;
    spec.validate();
    return spec;
}

ScalarField cutoff_equation(const WeinsteinModel& model, const CutoffSpec& spec) {
    spec.validate();
    double c = model.c;
    return ScalarField::make(model.chart, [psi = model.psi, spec, c](auto x) {
        return spec(psi(x) - c);
    });
}

DoubledSpace make_doubled_space(const WeinsteinModel& model, const ScalarField& f,
                                double surface_tol) {
    DoubledSpace ds;
    ds.base = model;
    ds.surface_tol = surface_tol;

    auto names = model.chart->names;
    auto periodic = model.chart->periodic;
    names.push_back("s");
    periodic.push_back(false);
    names.push_back("theta");
    periodic.push_back(true);
    ds.chart = ChartSpec::make(names, periodic);
    const int w = model.chart->dim;

    ds.lambda = OneForm::make(ds.chart, [lam = model.lambda, w](auto x, auto v) {
        return lam(x.first(w), v.first(w));
    });
    ds.lambdaD = OneForm::make(ds.chart, [lam = model.lambda, w](auto x, auto v) {
        return lam(x.first(w), v.first(w)) + 2.0 * x[w] * v[w + 1];
    });
    ds.Z = VectorField::make(ds.chart, [Z = model.Z, w](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        auto out = Z(x.first(w));
        out.push_back(T(0.0));
        out.push_back(T(0.0));
        return out;
    });
    ds.ZD = VectorField::make(ds.chart, [Z = model.Z, w](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        auto out = Z(x.first(w));
        out.push_back(x[w]);
        out.push_back(T(0.0));
        return out;
    });
    ds.psi = ScalarField::make(ds.chart, [psi = model.psi, w](auto x) { return psi(x.first(w)); });
    ds.psiD = ScalarField::make(ds.chart, [psi = model.psi, w](auto x) {
        return psi(x.first(w)) + x[w] * x[w];
    });
    ds.f = ScalarField::make(ds.chart, [f, w](auto x) { return f(x.first(w)); });
    ds.fD = ScalarField::make(ds.chart, [f, w](auto x) { return f(x.first(w)) + x[w] * x[w]; });

    Eigen::MatrixXd Jst(2, 2);
    Jst << 0.0, -1.0, 1.0, 0.0;  // J ds = dtheta, J dtheta = -ds
    ds.JD = [J = model.J, wchart = model.chart, w, Jst](const ChartPoint& p) {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(w + 2, w + 2);
        ChartPoint pw(wchart, p.coords().head(w));
        out.topLeftCorner(w, w) = J(pw);
        out.bottomRightCorner(2, 2) = Jst;
        return out;
    };

    // Spot-check that Z is boundary-gradient-like for f and that Z^D is
    // transverse to {f^D = 0}.
    std::mt19937_64 rng(0x5eed0001ULL);
    auto uniform = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    int found = 0, tries = 0;
    while (found < 64 && tries < 4000) {
        ++tries;
        Eigen::VectorXd xw(w);
        for (int i = 0; i < w; ++i) xw[i] = uniform(model.box_lo[i], model.box_hi[i]);
        ChartPoint pw(model.chart, xw);
        double fv = f.value(pw);
        double dfZ = f.directional(pw, model.Z.value(pw));
        if (dfZ < -1e-10)
            throw ConstructionError("doubled space: df(Z) < 0 at a sampled point",
                                    {xw.data(), xw.data() + w});
        if (fv > 0.0) continue;
        ++found;
        Eigen::VectorXd xd(w + 2);
        xd.head(w) = xw;
        xd[w] = (tries % 2 == 0 ? 1.0 : -1.0) * std::sqrt(-fv);
        xd[w + 1] = uniform(0.0, kTwoPi);
        ChartPoint pd(ds.chart, xd);
        double trans = ds.fD.directional(pd, ds.ZD.value(pd));
        if (trans <= 0.0)
            throw ConstructionError("doubled space: df^D(Z^D) <= 0 on the zero set",
                                    {xd.data(), xd.data() + w + 2});
    }
    if (found == 0)
        throw ConstructionError("doubled space: could not sample the zero set of f^D");
    return ds;
}

Hypersurface doubled_surface(const DoubledSpace& ds) {
    return Hypersurface{&ds, ds.fD, ds.surface_tol};
}

ScalarField doubled_equation(const DoubledSpace& ds, const ScalarField& g) {
    const int w = ds.wdim();
    return ScalarField::make(ds.chart, [g, w](auto x) { return g(x.first(w)) + x[w] * x[w]; });
}

double pfaffian(const Eigen::MatrixXd& A) {
    const int m = static_cast<int>(A.rows());
    if (m % 2 != 0) return 0.0;
    if (m == 0) return 1.0;
    if (m == 2) return A(0, 1);
    double acc = 0.0;
    double sign = 1.0;
    for (int j = 1; j < m; ++j) {
        // remove rows/cols 0 and j
        Eigen::MatrixXd B(m - 2, m - 2);
        int bi = 0;
        for (int i = 1; i < m; ++i) {
            if (i == j) continue;
            int bj = 0;
            for (int k = 1; k < m; ++k) {
                if (k == j) continue;
                B(bi, bj++) = A(i, k);
            }
            ++bi;
        }
        acc += sign * A(0, j) * pfaffian(B);
        sign = -sign;
    }
    return acc;
}

double contact_volume(const DoubledSpace& ds, const ChartPoint& p) {
    auto basis = level_set_tangent_basis(ds.fD, p, ds.surface_tol);
    const int m = static_cast<int>(basis.size());  // 2n + 1
    const int n = (m - 1) / 2;
    Eigen::VectorXd a(m);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        a[i] = ds.lambdaD.value(basis[static_cast<size_t>(i)]);
        for (int j = i + 1; j < m; ++j) {
            D(i, j) = d_oneform(ds.lambdaD, p, basis[static_cast<size_t>(i)],
                                basis[static_cast<size_t>(j)]);
            D(j, i) = -D(i, j);
        }
    }
    // alpha ^ omega^n on (u_1..u_{2n+1}) = n! sum_i (-1)^(i-1) a_i Pf(D minus i)
    double acc = 0.0;
    double sign = 1.0;
    for (int i = 0; i < m; ++i) {
        Eigen::MatrixXd B(m - 1, m - 1);
        int bi = 0;
        for (int r = 0; r < m; ++r) {
            if (r == i) continue;
            int bj = 0;
            for (int col = 0; col < m; ++col) {
                if (col == i) continue;
                B(bi, bj++) = D(r, col);
            }
            ++bi;
        }
        acc += sign * a[i] * pfaffian(B);
        sign = -sign;
    }
    return factorial(n) * acc;
}

double almost_stein_residual(const WeinsteinModel& model, const ChartPoint& p) {
    Eigen::VectorXd lam = model.lambda.components(p);
    Eigen::VectorXd grad = model.psi.gradient(p);
    Eigen::MatrixXd J = model.J(p);
    // -d psi o J applied to e_i is -grad . (J e_i)
    Eigen::VectorXd rhs = -(J.transpose() * grad);
    return (lam - model.kappa * rhs).cwiseAbs().maxCoeff();
}

}  // namespace contactkit
