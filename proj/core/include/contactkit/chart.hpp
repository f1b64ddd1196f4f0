#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "contactkit/errors.hpp"

namespace contactkit {

// A single explicit coordinate chart. Periodic coordinates are angles,
// stored reduced to [0, 2*pi).
struct ChartSpec {
    int dim = 0;
    std::vector<bool> periodic;
    std::vector<std::string> names;

    static std::shared_ptr<const ChartSpec> make(std::vector<std::string> names,
                                                 std::vector<bool> periodic);
};

using ChartPtr = std::shared_ptr<const ChartSpec>;

double reduce_angle(double a);

class ChartPoint {
public:
    ChartPoint(ChartPtr chart, Eigen::VectorXd coords);

    const ChartSpec& chart() const { return *chart_; }
    const ChartPtr& chart_ptr() const { return chart_; }
    const Eigen::VectorXd& coords() const { return x_; }
    double operator[](int i) const { return x_[i]; }
    int dim() const { return chart_->dim; }

private:
    ChartPtr chart_;
    Eigen::VectorXd x_;
};

// Max-norm distance with wrap-around on periodic coordinates.
double coord_distance(const ChartPoint& a, const ChartPoint& b);

// Equality per chart convention: non-periodic coordinates exactly within tol,
// periodic coordinates mod 2*pi within tol.
bool approx_equal(const ChartPoint& a, const ChartPoint& b, double tol = 1e-12);

struct TangentVector {
    ChartPoint base;
    Eigen::VectorXd components;

    TangentVector(ChartPoint p, Eigen::VectorXd c);
};

TangentVector operator+(const TangentVector& a, const TangentVector& b);
TangentVector operator*(double s, const TangentVector& a);

}  // namespace contactkit
