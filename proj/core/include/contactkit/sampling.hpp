#pragma once

#include <cstdint>
#include <random>

#include "contactkit/weinstein.hpp"

namespace contactkit {

// Deterministic sample-point generation. All randomized checks draw their
// points up front from one seeded stream, so parallel evaluation order never
// changes a report.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    // Point in the model's ambient box (base chart).
    ChartPoint ambient_point(const WeinsteinModel& model);

    // Point in the doubled ambient box: base box x [-1.1, 1.1]_s x [0, 2pi).
    ChartPoint doubled_point(const DoubledSpace& ds);

    // Point on {g^D = 0} for a regular equation g on the base chart with
    // g <= 0 somewhere in the box: rejection-samples the base point, then
    // s = +/- sqrt(-g). Defaults to the space's own equation.
    ChartPoint surface_point(const DoubledSpace& ds);
    ChartPoint surface_point(const DoubledSpace& ds, const ScalarField& g);

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace contactkit
