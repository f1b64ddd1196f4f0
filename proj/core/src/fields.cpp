#include "contactkit/fields.hpp"

namespace contactkit {

std::vector<Dual> lift(const Eigen::VectorXd& x) {
    std::vector<Dual> out(static_cast<size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) out[static_cast<size_t>(i)] = Dual(x[i], 0.0);
    return out;
}

std::vector<Dual> lift_seeded(const Eigen::VectorXd& x, int direction) {
    auto out = lift(x);
    out[static_cast<size_t>(direction)].d = 1.0;
    return out;
}

std::vector<Dual> lift_seeded(const Eigen::VectorXd& x, const Eigen::VectorXd& dir) {
    auto out = lift(x);
    for (int i = 0; i < x.size(); ++i) out[static_cast<size_t>(i)].d = dir[i];
    return out;
}

ScalarField ScalarField::constant(ChartPtr chart, double value) {
    return ScalarField::make(std::move(chart), [value](auto x) {
        using T = std::remove_cvref_t<decltype(x[0])>;
        (void)x;
        return T(value);
    });
}

Dual ScalarField::operator()(DualSpan x) const { return eval1_(x); }

Dual2 ScalarField::operator()(Dual2Span x) const {
    if (!eval2_)
        throw EvalError("scalar field: second-order evaluation not available for this field");
    return eval2_(x);
}

double ScalarField::value(const ChartPoint& p) const {
    auto x = lift(p.coords());
    Dual r = eval1_(x);
    if (!jet_finite(r)) throw EvalError("scalar field: non-finite value");
    return r.v;
}

Eigen::VectorXd ScalarField::gradient(const ChartPoint& p) const {
    const int n = p.dim();
    Eigen::VectorXd g(n);
    for (int j = 0; j < n; ++j) {
        auto x = lift_seeded(p.coords(), j);
        Dual r = eval1_(x);
        if (!jet_finite(r))
            throw EvalError("scalar field: non-finite derivative in coordinate '" +
                            p.chart().names[static_cast<size_t>(j)] + "'");
        g[j] = r.d;
    }
    return g;
}

double ScalarField::directional(const ChartPoint& p, const Eigen::VectorXd& dir) const {
    auto x = lift_seeded(p.coords(), dir);
    Dual r = eval1_(x);
    if (!jet_finite(r)) throw EvalError("scalar field: non-finite directional derivative");
    return r.d;
}

std::vector<Dual> VectorField::operator()(DualSpan x) const { return eval1_(x); }

std::vector<Dual2> VectorField::operator()(Dual2Span x) const {
    if (!eval2_)
        throw EvalError("vector field: second-order evaluation not available for this field");
    return eval2_(x);
}

Eigen::VectorXd VectorField::value(const ChartPoint& p) const {
    auto out = eval1_(lift(p.coords()));
    Eigen::VectorXd v(static_cast<int>(out.size()));
    for (size_t i = 0; i < out.size(); ++i) {
        if (!jet_finite(out[i])) throw EvalError("vector field: non-finite component");
        v[static_cast<int>(i)] = out[i].v;
    }
    return v;
}

TangentVector VectorField::at(const ChartPoint& p) const { return TangentVector(p, value(p)); }

Eigen::MatrixXd VectorField::jacobian(const ChartPoint& p) const {
    const int n = p.dim();
    Eigen::MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
        auto out = eval1_(lift_seeded(p.coords(), j));
        for (int i = 0; i < n; ++i) {
            if (!jet_finite(out[static_cast<size_t>(i)]))
                throw EvalError("vector field: non-finite derivative in coordinate '" +
                                p.chart().names[static_cast<size_t>(j)] + "'");
            J(i, j) = out[static_cast<size_t>(i)].d;
        }
    }
    return J;
}

Dual OneForm::operator()(DualSpan x, DualSpan v) const { return eval1_(x, v); }

Dual2 OneForm::operator()(Dual2Span x, Dual2Span v) const {
    if (!eval2_)
        throw EvalError("one-form: second-order evaluation not available for this form");
    return eval2_(x, v);
}

double OneForm::value(const ChartPoint& p, const Eigen::VectorXd& v) const {
    auto x = lift(p.coords());
    auto vv = lift(v);
    Dual r = eval1_(x, vv);
    if (!jet_finite(r)) throw EvalError("one-form: non-finite value");
    return r.v;
}

double OneForm::value(const TangentVector& u) const { return value(u.base, u.components); }

Eigen::VectorXd OneForm::components(const ChartPoint& p) const {
    const int n = p.dim();
    Eigen::VectorXd c(n);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        e[i] = 1.0;
        c[i] = value(p, e);
        e[i] = 0.0;
    }
    return c;
}

double TwoForm::value(const ChartPoint& p, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& v) const {
    auto x = lift(p.coords());
    auto uu = lift(u);
    auto vv = lift(v);
    Dual r = eval1_(x, uu, vv);
    if (!jet_finite(r)) throw EvalError("two-form: non-finite value");
    return r.v;
}

double TwoForm::value(const TangentVector& u, const TangentVector& v) const {
    return value(u.base, u.components, v.components);
}

SmoothMap SmoothMap::identity(ChartPtr chart) {
    SmoothMap m;
    m.source = chart;
    m.target = chart;
    m.value = [](const ChartPoint& p) { return p; };
    m.jacobian = [](const ChartPoint& p) {
        return Eigen::MatrixXd::Identity(p.dim(), p.dim()).eval();
    };
    return m;
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
    SmoothMap m;
    m.source = inner.source;
    m.target = outer.target;
    m.value = [outer, inner](const ChartPoint& p) { return outer.value(inner.value(p)); };
    m.jacobian = [outer, inner](const ChartPoint& p) {
        ChartPoint mid = inner.value(p);
        return (outer.jacobian(mid) * inner.jacobian(p)).eval();
    };
    return m;
}

}  // namespace contactkit
