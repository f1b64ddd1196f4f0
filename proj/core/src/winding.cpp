#include "contactkit/winding.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace contactkit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;
}  // namespace

Eigen::MatrixXd trivialization_basis(const DoubledSpace& ds, const WeinsteinModel& model,
                                     const ChartPoint& p) {
    const int w = ds.wdim();
    const int dim = w + 2;
    ChartPoint pw(model.chart, p.coords().head(w));
    auto frame = model.frame(pw);
    Eigen::MatrixXd JF = model.J(pw);

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
    int col = 0;
    for (const auto& wj : frame) {
        A.col(col).head(w) = wj;
        A.col(col + 1).head(w) = JF * wj;
        col += 2;
    }
    A(w - 2, col) = 1.0;      // d/dx
    A(w - 1, col + 1) = 1.0;  // d/dy = J d/dx
    A(w, col + 2) = 1.0;      // d/ds
    A(w + 1, col + 3) = 1.0;  // d/dtheta = J^D d/ds
    return A;
}

Eigen::VectorXcd complexify(const DoubledSpace& ds, const WeinsteinModel& model,
                            const ChartPoint& p, const Eigen::VectorXd& u) {
    Eigen::MatrixXd A = trivialization_basis(ds, model, p);
    Eigen::VectorXd coef = A.partialPivLu().solve(u);
    const int N = static_cast<int>(coef.size()) / 2;
    Eigen::VectorXcd out(N);
    for (int i = 0; i < N; ++i) out[i] = std::complex<double>(coef[2 * i], coef[2 * i + 1]);
    return out;
}

MatrixLoop stabilize_and_trivialize(const LagrangianFamily& fam, const DoubledSpace& ds,
                                    const WeinsteinModel& model) {
    MatrixLoop loop;
    loop.k = fam.k;
    loop.theta = fam.theta;
    loop.mats.reserve(static_cast<size_t>(fam.samples()));

    for (int s = 0; s < fam.samples(); ++s) {
        const ChartPoint& p = fam.base[static_cast<size_t>(s)];
        const auto& secs = fam.sections[static_cast<size_t>(s)];
        const int N = static_cast<int>(secs.size()) + 1;

        Eigen::MatrixXd A = trivialization_basis(ds, model, p);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        Eigen::MatrixXcd B(N, N);
        auto put = [&](int colidx, const Eigen::VectorXd& u) {
            Eigen::VectorXd coef = lu.solve(u);
            for (int i = 0; i < N; ++i)
                B(i, colidx) = std::complex<double>(coef[2 * i], coef[2 * i + 1]);
        };
        for (size_t j = 0; j < secs.size(); ++j) put(static_cast<int>(j), secs[j].components);
        put(N - 1, ds.ZD.value(p));

        if (std::abs(B.determinant()) <= 1e-10)
            throw ConstructionError("matrix loop: singular sample at theta index " +
                                    std::to_string(s));
        loop.mats.push_back(std::move(B));
    }
    return loop;
}

WindingReport winding_number(const MatrixLoop& loop) {
    const int ns = loop.samples();
    if (ns < 4) throw ConfigError("winding: need at least 4 samples");
    const int N = static_cast<int>(loop.mats[0].rows());
    const int nm1 = N - 2 >= 0 ? N - 2 : 0;  // leading block size

    WindingReport rep;
    rep.k = loop.k;

    std::vector<std::complex<double>> dets(static_cast<size_t>(ns));
    for (int i = 0; i < ns; ++i) {
        dets[static_cast<size_t>(i)] = loop.mats[static_cast<size_t>(i)].determinant();
        if (std::abs(dets[static_cast<size_t>(i)]) <= 1e-10)
            throw ConstructionError("winding: vanishing determinant at sample " +
                                    std::to_string(i));
    }
    double total = 0.0;
    for (int i = 0; i < ns; ++i) {
        std::complex<double> ratio =
            dets[static_cast<size_t>((i + 1) % ns)] / dets[static_cast<size_t>(i)];
        double jump = std::arg(ratio);
        if (std::abs(jump) >= kPi / 2.0)
            throw UndersampledError("winding: determinant phase jump " + std::to_string(jump) +
                                    " at sample " + std::to_string(i));
        total += jump;
    }
    rep.phase_total = total;
    rep.winding = std::lround(total / kTwoPi);
    if (std::abs(total / kTwoPi - static_cast<double>(rep.winding)) >= 0.05)
        throw InconsistentWindingError("winding: accumulated phase " + std::to_string(total) +
                                       " is not an integer multiple of 2*pi");

    // Structural residuals. Lower-left block: the last two rows of the first
    // N-2 columns must vanish. Middle row (index N-2) of the last two columns
    // carries the e^{ik theta} modulation.
    for (int s = 0; s < ns; ++s) {
        const auto& B = loop.mats[static_cast<size_t>(s)];
        for (int col = 0; col < nm1; ++col)
            for (int row = N - 2; row < N; ++row)
                rep.block_residual = std::max(rep.block_residual, std::abs(B(row, col)));
    }
    if (N >= 2) {
        for (int col = N - 2; col < N; ++col) {
            std::complex<double> mean(0.0, 0.0);
            std::vector<std::complex<double>> demod(static_cast<size_t>(ns));
            for (int s = 0; s < ns; ++s) {
                std::complex<double> ph =
                    std::polar(1.0, -static_cast<double>(loop.k) * loop.theta[static_cast<size_t>(s)]);
                demod[static_cast<size_t>(s)] = loop.mats[static_cast<size_t>(s)](N - 2, col) * ph;
                mean += demod[static_cast<size_t>(s)];
            }
            mean /= static_cast<double>(ns);
            for (int s = 0; s < ns; ++s)
                rep.row_modulation_residual = std::max(
                    rep.row_modulation_residual, std::abs(demod[static_cast<size_t>(s)] - mean));
        }
    }
    return rep;
}

double radial_constraint_residual(const DoubledSpace& ds, const WeinsteinModel& model, int k,
                                  OdeTol tol) {
    if (k < 0) throw ConfigError("radial constraint: k must be >= 0");
    LagrangianFamily fam = build_family(ds, model, 4);
    const ChartPoint& start = fam.base[0];  // gamma(0)
    FlowResult res = psi_c(ds, start, k, tol);
    const int w = ds.wdim();
    double rk = std::hypot(res.endpoint[w - 2], res.endpoint[w - 1]);
    double x0 = fam.meta.x0;
    return std::abs(static_cast<double>(k) + 2.0 / (x0 * x0) - 2.0 / (rk * rk));
}

std::pair<double, double> measured_section_slope(const DoubledSpace& ds,
                                                 const LagrangianFamily& pushed) {
    const int w = ds.wdim();
    double mean = 0.0;
    std::vector<double> vals;
    for (int i = 0; i < pushed.samples(); ++i) {
        const ChartPoint& p = pushed.base[static_cast<size_t>(i)];
        const TangentVector& v = pushed.sections[static_cast<size_t>(i)].back();
        double x = p[w - 2], y = p[w - 1];
        double r2 = x * x + y * y;
        // d/dphi at z has components (-y, x); project the C-factor part.
        double sk = (-y * v.components[w - 2] + x * v.components[w - 1]) / r2;
        double dtheta = v.components[w + 1];
        if (std::abs(dtheta - 1.0) > 1e-8)
            throw ConstructionError("section slope: pushed section lost its d/dtheta component");
        vals.push_back(sk);
        mean += sk;
    }
    mean /= static_cast<double>(pushed.samples());
    double dev = 0.0;
    for (double v : vals) dev = std::max(dev, std::abs(v - mean));
    return {mean, dev};
}

WindingReport run_invariant_pipeline(const DoubledSpace& ds, const WeinsteinModel& model, int k,
                                     const InvariantRunSettings& settings, MatrixLoop* out_loop) {
    int ns = settings.theta_samples;
    for (;;) {
        try {
            LagrangianFamily fam = build_family(ds, model, ns);
            LagrangianFamily pushed = pushforward_family(ds, fam, k, settings.tol, settings.jobs);
            MatrixLoop loop = stabilize_and_trivialize(pushed, ds, model);
            WindingReport rep = winding_number(loop);
            rep.radial_residual = radial_constraint_residual(ds, model, k, settings.tol);
            if (out_loop) *out_loop = std::move(loop);
            return rep;
        } catch (const UndersampledError&) {
            if (2 * ns > settings.max_theta_samples) throw;
            ns *= 2;
        }
    }
}

}  // namespace contactkit
