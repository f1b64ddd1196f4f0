#include "contactkit/exterior.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

namespace contactkit {

Eigen::VectorXd exterior_derivative(const ScalarField& field, const ChartPoint& p) {
    return field.gradient(p);
}

OneForm d(const ScalarField& field) {
    return OneForm::make_first_order(
        field.chart_ptr(),
        [field](auto x, auto v) {
            using T = std::remove_cvref_t<decltype(x[0])>;
            std::vector<Jet<T>> xx(x.size());
            for (size_t i = 0; i < x.size(); ++i) xx[i] = Jet<T>(x[i], v[i]);
            return field(std::span<const Jet<T>>(xx)).d;
        },
        /*closed=*/true, /*exact=*/true);
}

TwoForm d(const OneForm& form) {
    return TwoForm::make(
        form.chart_ptr(),
        [form](auto x, auto u, auto v) {
            using T = std::remove_cvref_t<decltype(x[0])>;
            std::vector<Jet<T>> xu(x.size()), xv(x.size());
            std::vector<Jet<T>> cu(x.size()), cv(x.size());
            for (size_t i = 0; i < x.size(); ++i) {
                xu[i] = Jet<T>(x[i], u[i]);
                xv[i] = Jet<T>(x[i], v[i]);
                cu[i] = Jet<T>(u[i], T(0.0));
                cv[i] = Jet<T>(v[i], T(0.0));
            }
            using JS = std::span<const Jet<T>>;
            return form(JS(xu), JS(cv)).d - form(JS(xv), JS(cu)).d;
        },
        /*closed=*/true);
}

double d_oneform(const OneForm& form, const ChartPoint& p, const TangentVector& u,
                 const TangentVector& v) {
    // d(w)(u,v) = D_u[w(.,v)] - D_v[w(.,u)] with u, v constant-extended.
    auto xu = lift_seeded(p.coords(), u.components);
    auto xv = lift_seeded(p.coords(), v.components);
    auto cu = lift(u.components);
    auto cv = lift(v.components);
    Dual a = form(DualSpan(xu), DualSpan(cv));
    Dual b = form(DualSpan(xv), DualSpan(cu));
    if (!jet_finite(a) || !jet_finite(b)) throw EvalError("d_oneform: non-finite jet");
    return a.d - b.d;
}

double lie_derivative(const OneForm& form, const VectorField& X, const ChartPoint& p,
                      const TangentVector& u) {
    // i_X d(form): same coefficient-derivative trick with X frozen at p.
    TangentVector Xp = X.at(p);
    double term1 = d_oneform(form, p, Xp, u);
    // d(form(X))(u): differentiate x -> form_x(X(x)) along u.
    auto x = lift_seeded(p.coords(), u.components);
    auto Xx = X(DualSpan(x));
    Dual g = form(DualSpan(x), DualSpan(Xx));
    if (!jet_finite(g)) throw EvalError("lie_derivative: non-finite jet");
    return term1 + g.d;
}

double pullback(const SmoothMap& map, const OneForm& form, const ChartPoint& p,
                const TangentVector& u) {
    ChartPoint q = map.value(p);
    Eigen::VectorXd pushed = map.jacobian(p) * u.components;
    return form.value(q, pushed);
}

std::vector<TangentVector> level_set_tangent_basis(const ScalarField& field, const ChartPoint& p,
                                                   double on_surface_tol, std::uint64_t seed) {
    const int n = p.dim();
    if (std::abs(field.value(p)) >= on_surface_tol)
        throw ConstructionError("tangent basis: point is off the level set");
    Eigen::VectorXd g = field.gradient(p);
    double gn = g.norm();
    if (gn <= 1e-10) throw CriticalPointError("tangent basis: critical point on level set");
    Eigen::VectorXd nrm = g / gn;

    Eigen::MatrixXd cand = Eigen::MatrixXd::Identity(n, n);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXd M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = gauss(rng);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
        cand = qr.householderQ();
    }

    std::vector<TangentVector> basis;
    basis.reserve(static_cast<size_t>(n - 1));
    Eigen::MatrixXd kept(n, n - 1);
    int m = 0;
    for (int j = 0; j < n && m < n - 1; ++j) {
        Eigen::VectorXd v = cand.col(j);
        v -= v.dot(nrm) * nrm;
        for (int k = 0; k < m; ++k) v -= v.dot(kept.col(k)) * kept.col(k);
        double vn = v.norm();
        if (vn < 1e-8) continue;
        kept.col(m++) = v / vn;
    }
    if (m != n - 1)
        throw ConstructionError("tangent basis: Gram-Schmidt failed to span the level set");

    // Orient so that (gradient, basis) is positively oriented.
    Eigen::MatrixXd D(n, n);
    D.col(0) = nrm;
    D.rightCols(n - 1) = kept;
    if (D.determinant() < 0.0) kept.col(m - 1) *= -1.0;

    for (int k = 0; k < m; ++k) basis.emplace_back(p, kept.col(k));
    return basis;
}

}  // namespace contactkit
