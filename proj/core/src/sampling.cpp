#include "contactkit/sampling.hpp"

#include <cmath>

namespace contactkit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

ChartPoint Sampler::ambient_point(const WeinsteinModel& model) {
    const int w = model.chart->dim;
    Eigen::VectorXd x(w);
    for (int i = 0; i < w; ++i) x[i] = uniform(model.box_lo[i], model.box_hi[i]);
    return ChartPoint(model.chart, x);
}

ChartPoint Sampler::doubled_point(const DoubledSpace& ds) {
    const int w = ds.wdim();
    Eigen::VectorXd x(w + 2);
    for (int i = 0; i < w; ++i) x[i] = uniform(ds.base.box_lo[i], ds.base.box_hi[i]);
    x[w] = uniform(-1.1, 1.1);
    x[w + 1] = uniform(0.0, kTwoPi);
    return ChartPoint(ds.chart, x);
}

ChartPoint Sampler::surface_point(const DoubledSpace& ds, const ScalarField& g) {
    const int w = ds.wdim();
    for (int tries = 0; tries < 100000; ++tries) {
        ChartPoint pw = ambient_point(ds.base);
        double gv = g.value(pw);
        if (gv > 0.0) continue;
        Eigen::VectorXd x(w + 2);
        x.head(w) = pw.coords();
        double sign = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
        x[w] = sign * std::sqrt(-gv);
        x[w + 1] = uniform(0.0, kTwoPi);
        return ChartPoint(ds.chart, x);
    }
    throw ConstructionError("sampler: could not hit the sublevel set {g <= 0}");
}

ChartPoint Sampler::surface_point(const DoubledSpace& ds) {
    // ds.f is already extended to the doubled chart; rebuild the base view.
    const int w = ds.wdim();
    for (int tries = 0; tries < 100000; ++tries) {
        ChartPoint pw = ambient_point(ds.base);
        Eigen::VectorXd xd = Eigen::VectorXd::Zero(w + 2);
        xd.head(w) = pw.coords();
        double fv = ds.f.value(ChartPoint(ds.chart, xd));
        if (fv > 0.0) continue;
        double sign = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
        xd[w] = sign * std::sqrt(-fv);
        xd[w + 1] = uniform(0.0, kTwoPi);
        return ChartPoint(ds.chart, xd);
    }
    throw ConstructionError("sampler: could not hit the sublevel set {f <= 0}");
}

}  // namespace contactkit
