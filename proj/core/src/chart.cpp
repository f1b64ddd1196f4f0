#include "contactkit/chart.hpp"

#include <cmath>

namespace contactkit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::shared_ptr<const ChartSpec> ChartSpec::make(std::vector<std::string> names,
                                                 std::vector<bool> periodic) {
    if (names.empty() || names.size() != periodic.size())
        throw ConfigError("chart: need at least one coordinate and matching periodic mask");
    auto spec = std::make_shared<ChartSpec>();
    spec->dim = static_cast<int>(names.size());
    spec->names = std::move(names);
    spec->periodic = std::move(periodic);
    return spec;
}

double reduce_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // guard against fmod rounding to 2*pi
    return r;
}

ChartPoint::ChartPoint(ChartPtr chart, Eigen::VectorXd coords)
    : chart_(std::move(chart)), x_(std::move(coords)) {
    if (x_.size() != chart_->dim)
        throw ConfigError("chart point: coordinate count does not match chart dimension");
    for (int i = 0; i < chart_->dim; ++i) {
        if (!std::isfinite(x_[i]))
            throw EvalError("chart point: non-finite coordinate '" + chart_->names[i] + "'");
        if (chart_->periodic[i]) x_[i] = reduce_angle(x_[i]);
    }
}

double coord_distance(const ChartPoint& a, const ChartPoint& b) {
    const ChartSpec& c = a.chart();
    if (&c != &b.chart())
        throw ConfigError("coord_distance: points on different charts");
    double m = 0.0;
    for (int i = 0; i < c.dim; ++i) {
        double d = std::abs(a[i] - b[i]);
        if (c.periodic[i]) d = std::min(d, kTwoPi - d);
        m = std::max(m, d);
    }
    return m;
}

bool approx_equal(const ChartPoint& a, const ChartPoint& b, double tol) {
    return coord_distance(a, b) <= tol;
}

TangentVector::TangentVector(ChartPoint p, Eigen::VectorXd c)
    : base(std::move(p)), components(std::move(c)) {
    if (components.size() != base.dim())
        throw ConfigError("tangent vector: component count does not match chart dimension");
    if (!components.allFinite())
        throw EvalError("tangent vector: non-finite component");
}

TangentVector operator+(const TangentVector& a, const TangentVector& b) {
    if (!approx_equal(a.base, b.base, 1e-12))
        throw ConfigError("tangent vector addition: different base points");
    return TangentVector(a.base, a.components + b.components);
}

TangentVector operator*(double s, const TangentVector& a) {
    return TangentVector(a.base, s * a.components);
}

}  // namespace contactkit
