#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <vector>

#include "contactkit/chart.hpp"
#include "contactkit/jet.hpp"

namespace contactkit {

using DualSpan  = std::span<const Dual>;
using Dual2Span = std::span<const Dual2>;

std::vector<Dual> lift(const Eigen::VectorXd& x);
std::vector<Dual> lift_seeded(const Eigen::VectorXd& x, int direction);
std::vector<Dual> lift_seeded(const Eigen::VectorXd& x, const Eigen::VectorXd& dir);

// Scalar field given by a pure evaluator over dual-number coordinates.
// Fields built with `make` evaluate at first and second jet order; fields
// built with `make_first_order` (flow fields and other already-differentiated
// compositions) only at first order.
class ScalarField {
public:
    ScalarField() = default;

    template <class F>
    static ScalarField make(ChartPtr chart, F f) {
        ScalarField s;
        s.chart_ = std::move(chart);
        s.eval1_ = [f](DualSpan x) { return f(x); };
        s.eval2_ = [f](Dual2Span x) { return f(x); };
        return s;
    }

    template <class F>
    static ScalarField make_first_order(ChartPtr chart, F f) {
        ScalarField s;
        s.chart_ = std::move(chart);
        s.eval1_ = [f](DualSpan x) { return f(x); };
        return s;
    }

    static ScalarField constant(ChartPtr chart, double value);

    Dual operator()(DualSpan x) const;
    Dual2 operator()(Dual2Span x) const;

    double value(const ChartPoint& p) const;
    Eigen::VectorXd gradient(const ChartPoint& p) const;
    double directional(const ChartPoint& p, const Eigen::VectorXd& dir) const;

    const ChartPtr& chart_ptr() const { return chart_; }
    bool valid() const { return static_cast<bool>(eval1_); }

private:
    ChartPtr chart_;
    std::function<Dual(DualSpan)> eval1_;
    std::function<Dual2(Dual2Span)> eval2_;
};

class VectorField {
public:
    VectorField() = default;

    template <class F>
    static VectorField make(ChartPtr chart, F f) {
        VectorField s;
        s.chart_ = std::move(chart);
        s.eval1_ = [f](DualSpan x) { return f(x); };
        s.eval2_ = [f](Dual2Span x) { return f(x); };
        return s;
    }

    template <class F>
    static VectorField make_first_order(ChartPtr chart, F f) {
        VectorField s;
        s.chart_ = std::move(chart);
        s.eval1_ = [f](DualSpan x) { return f(x); };
        return s;
    }

    std::vector<Dual> operator()(DualSpan x) const;
    std::vector<Dual2> operator()(Dual2Span x) const;

    Eigen::VectorXd value(const ChartPoint& p) const;
    TangentVector at(const ChartPoint& p) const;
    Eigen::MatrixXd jacobian(const ChartPoint& p) const;

    const ChartPtr& chart_ptr() const { return chart_; }
    bool valid() const { return static_cast<bool>(eval1_); }

private:
    ChartPtr chart_;
    std::function<std::vector<Dual>(DualSpan)> eval1_;
    std::function<std::vector<Dual2>(Dual2Span)> eval2_;
};

// 1-form as an evaluator on (point, constant vector). Coefficients are
// recovered by evaluating on basis vectors.
class OneForm {
public:
    OneForm() = default;

    template <class F>
    static OneForm make(ChartPtr chart, F f, bool closed = false, bool exact = false) {
        OneForm s;
        s.chart_ = std::move(chart);
        s.eval1_ = [f](DualSpan x, DualSpan v) { return f(x, v); };
        s.eval2_ = [f](Dual2Span x, Dual2Span v) { return f(x, v); };
        s.closed_ = closed;
        s.exact_ = exact;
        return s;
    }

    template <class F>
    static OneForm make_first_order(ChartPtr chart, F f, bool closed = false, bool exact = false) {
        OneForm s;
        s.chart_ = std::move(chart);
        s.eval1_ = [f](DualSpan x, DualSpan v) { return f(x, v); };
        s.closed_ = closed;
        s.exact_ = exact;
        return s;
    }

    Dual operator()(DualSpan x, DualSpan v) const;
    Dual2 operator()(Dual2Span x, Dual2Span v) const;

    double value(const ChartPoint& p, const Eigen::VectorXd& v) const;
    double value(const TangentVector& u) const;
    Eigen::VectorXd components(const ChartPoint& p) const;

    bool closed() const { return closed_; }
    bool exact() const { return exact_; }
    const ChartPtr& chart_ptr() const { return chart_; }
    bool valid() const { return static_cast<bool>(eval1_); }

private:
    ChartPtr chart_;
    std::function<Dual(DualSpan, DualSpan)> eval1_;
    std::function<Dual2(Dual2Span, Dual2Span)> eval2_;
    bool closed_ = false;
    bool exact_ = false;
};

// 2-form as an evaluator on (point, two constant vectors).
class TwoForm {
public:
    TwoForm() = default;

    template <class F>
    static TwoForm make(ChartPtr chart, F f, bool closed = false) {
        TwoForm s;
        s.chart_ = std::move(chart);
        s.eval1_ = [f](DualSpan x, DualSpan u, DualSpan v) { return f(x, u, v); };
        s.closed_ = closed;
        return s;
    }

    Dual operator()(DualSpan x, DualSpan u, DualSpan v) const { return eval1_(x, u, v); }
    double value(const ChartPoint& p, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    double value(const TangentVector& u, const TangentVector& v) const;

    bool closed() const { return closed_; }
    const ChartPtr& chart_ptr() const { return chart_; }
    bool valid() const { return static_cast<bool>(eval1_); }

private:
    ChartPtr chart_;
    std::function<Dual(DualSpan, DualSpan, DualSpan)> eval1_;
    bool closed_ = false;
};

// A smooth map between charts with an explicit Jacobian, either analytic or
// supplied by whoever built the map (e.g. a flow with transported Jacobian).
struct SmoothMap {
    ChartPtr source;
    ChartPtr target;
    std::function<ChartPoint(const ChartPoint&)> value;
    std::function<Eigen::MatrixXd(const ChartPoint&)> jacobian;

    static SmoothMap identity(ChartPtr chart);

    // Builds value and AD Jacobian from one dual evaluator.
    template <class F>
    static SmoothMap from_dual(ChartPtr source, ChartPtr target, F f) {
        SmoothMap m;
        m.source = source;
        m.target = target;
        m.value = [f, target](const ChartPoint& p) {
            auto out = f(DualSpan(lift(p.coords())));
            Eigen::VectorXd y(out.size());
            for (size_t i = 0; i < out.size(); ++i) y[static_cast<int>(i)] = out[i].v;
            return ChartPoint(target, y);
        };
        m.jacobian = [f](const ChartPoint& p) {
            const int n = p.dim();
            Eigen::MatrixXd J;
            for (int j = 0; j < n; ++j) {
                auto out = f(DualSpan(lift_seeded(p.coords(), j)));
                if (j == 0) J.resize(static_cast<int>(out.size()), n);
                for (size_t i = 0; i < out.size(); ++i) J(static_cast<int>(i), j) = out[i].d;
            }
            return J;
        };
        return m;
    }
};

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

}  // namespace contactkit
