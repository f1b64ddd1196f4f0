#include "contactkit/lagrangian.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace contactkit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nthreads = std::min(jobs, count);
    pool.reserve(static_cast<size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

FamilyCheck validate_family(const DoubledSpace& ds, const LagrangianFamily& fam,
                            const FamilyTolerances& tol) {
    FamilyCheck out;
    out.min_singular_value = std::numeric_limits<double>::infinity();
    for (int s = 0; s < fam.samples(); ++s) {
        const auto& secs = fam.sections[static_cast<size_t>(s)];
        const ChartPoint& p = fam.base[static_cast<size_t>(s)];
        if (std::abs(ds.fD.value(p)) > ds.surface_tol)
            throw ConstructionError("family: base point off the hypersurface at sample " +
                                    std::to_string(s));
        Eigen::MatrixXd S(p.dim(), static_cast<int>(secs.size()));
        for (size_t j = 0; j < secs.size(); ++j) {
            double ker = std::abs(ds.lambdaD.value(secs[j]));
            out.max_kernel_residual = std::max(out.max_kernel_residual, ker);
            if (ker > tol.kernel)
                throw ConstructionError("family: section " + std::to_string(j) +
                                            " leaves ker(alpha) at sample " + std::to_string(s) +
                                            " (residual " + std::to_string(ker) + ")",
                                        {p.coords().data(), p.coords().data() + p.dim()});
            S.col(static_cast<int>(j)) = secs[j].components;
        }
        double sv = Eigen::JacobiSVD<Eigen::MatrixXd>(S).singularValues().minCoeff();
        out.min_singular_value = std::min(out.min_singular_value, sv);
        if (sv < tol.independence)
            throw ConstructionError("family: sections nearly dependent at sample " +
                                    std::to_string(s) + " (sigma_min " + std::to_string(sv) + ")");
        for (size_t i = 0; i < secs.size(); ++i)
            for (size_t j = i + 1; j < secs.size(); ++j) {
                double lag = std::abs(d_oneform(ds.lambdaD, p, secs[i], secs[j]));
                out.max_lagrangian_residual = std::max(out.max_lagrangian_residual, lag);
                if (lag > tol.lagrangian)
                    throw ConstructionError("family: d(alpha) does not vanish on sections at sample " +
                                            std::to_string(s) + " (residual " +
                                            std::to_string(lag) + ")");
            }
    }
    return out;
}

LagrangianFamily build_family(const DoubledSpace& ds, const WeinsteinModel& model, int samples) {
    if (samples < 4) throw ConfigError("family: need at least 4 theta samples");
    const int w = ds.wdim();
    const int dim = w + 2;

    LagrangianFamily fam;
    fam.meta.a = default_cutoff(model).a;
    fam.meta.c = model.c;
    fam.meta.q0 = model.q0;

    Eigen::VectorXd qw = Eigen::VectorXd::Zero(w);
    qw.head(w - 2) = model.q0;
    ChartPoint q0_point(model.chart, qw);
    double psiF0 = model.psi_F.value(q0_point);
    double rad2 = model.c - 3.0 * fam.meta.a - psiF0;
    if (rad2 <= 0.0)
        throw ConstructionError("family: c - 3a <= min psi_F, no base circle radius exists");
    fam.meta.x0 = std::sqrt(rad2);

    auto frame = model.frame(q0_point);  // n-1 sections of TF at q0

    for (int i = 0; i < samples; ++i) {
        double th = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
        x.head(w - 2) = model.q0;
        x[w - 2] = fam.meta.x0;  // z = x0 on the positive real axis
        x[w] = -1.0;
        x[w + 1] = th;
        ChartPoint p(ds.chart, x);

        std::vector<TangentVector> secs;
        secs.reserve(frame.size() + 1);
        for (const auto& wj : frame) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
            v.head(w) = wj;
            secs.emplace_back(p, v);
        }
        Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
        v[w - 1] = 2.0 / fam.meta.x0;  // (2/x0) d/dy
        v[w + 1] = 1.0;                // d/dtheta
        secs.emplace_back(p, v);

        fam.theta.push_back(th);
        fam.base.push_back(std::move(p));
        fam.sections.push_back(std::move(secs));
    }
    validate_family(ds, fam);
    return fam;
}

LagrangianFamily pushforward_family(const DoubledSpace& ds, const LagrangianFamily& fam, int k,
                                    OdeTol tol, int jobs) {
    if (k < 0) throw ConfigError("pushforward: iterate index must be >= 0");
    LagrangianFamily out = fam;
    out.k = fam.k + k;
    if (k == 0) return out;

    parallel_for(fam.samples(), jobs, [&](int i) {
        FlowResult res = psi_c(ds, fam.base[static_cast<size_t>(i)], k, tol);
        out.base[static_cast<size_t>(i)] = res.endpoint;
        auto& secs = out.sections[static_cast<size_t>(i)];
        for (size_t j = 0; j < secs.size(); ++j)
            secs[j] = TangentVector(res.endpoint,
                                    res.jacobian * fam.sections[static_cast<size_t>(i)][j].components);
    });

    // A contactomorphism must carry the family invariants along; a violation
    // here signals a flow or Jacobian bug, not a property of the model.
    FamilyTolerances tols;
    tols.kernel = 1e-7;
    validate_family(ds, out, tols);
    return out;
}

}  // namespace contactkit
