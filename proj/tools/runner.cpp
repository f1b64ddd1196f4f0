#include "runner.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "contactkit/version.hpp"

namespace contactkit {

namespace fs = std::filesystem;

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "liouville",    "transversality", "contact-volume",    "almost-stein",
        "h-theta",      "lie-xt",         "gray-tangency",     "pullback-rotation"};
    return names;
}

void RunConfig::validate() const {
    if (model != "flat" && model != "torus")
        throw ConfigError("config: unknown model '" + model + "' (expected flat or torus)");
    if (n < 1) throw ConfigError("config: n must be >= 1");
    if (tol_ode_rel <= 0.0 || tol_ode_abs <= 0.0 || tol_surface <= 0.0 || tol_identity <= 0.0)
        throw ConfigError("config: tolerances must be positive");
    if (samples < 1 || theta_samples < 4) throw ConfigError("config: sample counts too small");
    if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
    for (int k : k_list)
        if (k < 0) throw ConfigError("config: k_list entries must be non-negative");
    for (const auto& c : checks) {
        const auto& known = verify_suite_names();
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw ConfigError("config: unknown check suite '" + c + "'");
    }
}

Json RunConfig::to_json() const {
    Json j;
    j["model"] = {{"name", model}, {"n", n}};
    j["checks"] = checks;
    j["k_list"] = k_list;
    j["samples"] = samples;
    j["theta_samples"] = theta_samples;
    j["tolerances"] = {{"ode_rel", tol_ode_rel},
                       {"ode_abs", tol_ode_abs},
                       {"surface", tol_surface},
                       {"identity", tol_identity}};
    j["seed"] = seed;
    j["output"] = {{"dir", out_dir}, {"plot", plot}, {"dump_trajectories", dump_trajectories}};
    j["jobs"] = jobs;
    j["same_equation"] = same_equation;
    return j;
}

RunConfig RunConfig::from_json(const Json& j) { return from_json(j, RunConfig{}); }

RunConfig RunConfig::from_json(const Json& j, RunConfig base) {
    RunConfig c = std::move(base);
    if (j.contains("model")) {
        if (j["model"].contains("name")) c.model = j["model"]["name"].get<std::string>();
        if (j["model"].contains("n")) c.n = j["model"]["n"].get<int>();
    }
    if (j.contains("checks")) c.checks = j["checks"].get<std::vector<std::string>>();
    if (j.contains("k_list")) c.k_list = j["k_list"].get<std::vector<int>>();
    if (j.contains("samples")) c.samples = j["samples"].get<int>();
    if (j.contains("theta_samples")) c.theta_samples = j["theta_samples"].get<int>();
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (t.contains("ode_rel")) c.tol_ode_rel = t["ode_rel"].get<double>();
        if (t.contains("ode_abs")) c.tol_ode_abs = t["ode_abs"].get<double>();
        if (t.contains("surface")) c.tol_surface = t["surface"].get<double>();
        if (t.contains("identity")) c.tol_identity = t["identity"].get<double>();
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output")) {
        if (j["output"].contains("dir")) c.out_dir = j["output"]["dir"].get<std::string>();
        if (j["output"].contains("plot")) c.plot = j["output"]["plot"].get<bool>();
        if (j["output"].contains("dump_trajectories"))
            c.dump_trajectories = j["output"]["dump_trajectories"].get<bool>();
    }
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    if (j.contains("same_equation")) c.same_equation = j["same_equation"].get<bool>();
    return c;
}

namespace {

WeinsteinModel build_model(const RunConfig& cfg) {
    return cfg.model == "flat" ? make_flat_model(cfg.n) : make_torus_model(cfg.n);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// Evaluates `fn` at pre-drawn points, tracking the largest residual and its
// witness; evaluation may run in parallel, the fold is index-ordered.
struct SuiteAccumulator {
    double max_residual = 0.0;
    std::optional<Eigen::VectorXd> witness;

    void fold(const std::vector<double>& residuals, const std::vector<ChartPoint>& points) {
        for (size_t i = 0; i < residuals.size(); ++i) {
            if (residuals[i] > max_residual) {
                max_residual = residuals[i];
                witness = points[i].coords();
            }
        }
    }
};

double liouville_residual_at(const OneForm& lam, const VectorField& Z, const ChartPoint& p) {
    TangentVector Zp = Z.at(p);
    double worst = 0.0;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(p.dim());
    for (int i = 0; i < p.dim(); ++i) {
        e[i] = 1.0;
        TangentVector u(p, e);
        worst = std::max(worst, std::abs(d_oneform(lam, p, Zp, u) - lam.value(u)));
        e[i] = 0.0;
    }
    return worst;
}

}  // namespace

Report cmd_verify(const RunConfig& cfg) {
    cfg.validate();
    Report report;
    report.command = "verify";
    report.config_echo = cfg.to_json();

    WeinsteinModel model = build_model(cfg);
    ScalarField f = cutoff_equation(model, default_cutoff(model));
    DoubledSpace ds = make_doubled_space(model, f, cfg.tol_surface);
    ScalarField h = rotation_momentum(ds);
    ScalarField f0 = ScalarField::make(model.chart,
                                       [psi = model.psi, c = model.c](auto x) { return psi(x) - c; });
    TimeDependentField Xt = double_equiv_field(f0, f, ds);
    TimeDependentField Y = gray_field(ds, h);
    SmoothMap rot = psi_rotation(ds);

    std::vector<std::string> suites = cfg.checks.empty() ? verify_suite_names() : cfg.checks;
    Sampler sampler(cfg.seed);

    for (const auto& suite : suites) {
        Timer timer;
        CheckRecord rec;
        rec.name = suite;
        SuiteAccumulator acc;

        if (suite == "liouville") {
            std::vector<ChartPoint> pts;
            std::vector<double> ts;
            for (int i = 0; i < cfg.samples; ++i) {
                pts.push_back(sampler.doubled_point(ds));
                ts.push_back(sampler.uniform(0.0, 1.0));
            }
            std::vector<double> res(pts.size());
            parallel_for(cfg.samples, cfg.jobs, [&](int i) {
                const ChartPoint& p = pts[static_cast<size_t>(i)];
                double r = liouville_residual_at(ds.lambdaD, ds.ZD, p);
                OneForm lt = lambda_t(ds, h, ts[static_cast<size_t>(i)]);
                r = std::max(r, liouville_residual_at(lt, ds.ZD, p));
                res[static_cast<size_t>(i)] = r;
            });
            acc.fold(res, pts);
            rec.pass = acc.max_residual < cfg.tol_identity;
        } else if (suite == "transversality") {
            std::vector<ChartPoint> pts;
            for (int i = 0; i < cfg.samples; ++i) pts.push_back(sampler.surface_point(ds));
            std::vector<double> vals(pts.size());
            parallel_for(cfg.samples, cfg.jobs, [&](int i) {
                const ChartPoint& p = pts[static_cast<size_t>(i)];
                vals[static_cast<size_t>(i)] = ds.fD.directional(p, ds.ZD.value(p));
            });
            double min_val = vals[0];
            size_t arg = 0;
            for (size_t i = 1; i < vals.size(); ++i)
                if (vals[i] < min_val) {
                    min_val = vals[i];
                    arg = i;
                }
            rec.max_residual = min_val;  // reported value: minimum of df^D(Z^D)
            rec.pass = min_val > 0.0;
            if (!rec.pass) rec.witness = pts[arg].coords();
            rec.note = "value is min df^D(Z^D) over on-surface samples";
        } else if (suite == "contact-volume") {
            std::vector<ChartPoint> pts;
            for (int i = 0; i < cfg.samples; ++i) pts.push_back(sampler.surface_point(ds));
            std::vector<double> vals(pts.size());
            parallel_for(cfg.samples, cfg.jobs, [&](int i) {
                vals[static_cast<size_t>(i)] = contact_volume(ds, pts[static_cast<size_t>(i)]);
            });
            bool uniform_sign = true;
            int sign = vals[0] > 0.0 ? 1 : -1;
            std::vector<double> mags;
            for (size_t i = 0; i < vals.size(); ++i) {
                if ((vals[i] > 0.0 ? 1 : -1) != sign) {
                    uniform_sign = false;
                    acc.witness = pts[i].coords();
                }
                mags.push_back(std::abs(vals[i]));
            }
            std::sort(mags.begin(), mags.end());
            double median = mags[mags.size() / 2];
            double ratio = median > 0.0 ? mags.front() / median : 0.0;
            rec.max_residual = ratio;  // reported value: min|vol| / median|vol|
            rec.pass = uniform_sign && ratio > 1e-8;
            rec.witness = acc.witness;
            rec.note = "value is min|volume| / median|volume|; sign must be uniform";
        } else if (suite == "almost-stein") {
            std::vector<ChartPoint> pts;
            for (int i = 0; i < cfg.samples; ++i) pts.push_back(sampler.ambient_point(model));
            std::vector<double> res(pts.size());
            parallel_for(cfg.samples, cfg.jobs, [&](int i) {
                res[static_cast<size_t>(i)] =
                    almost_stein_residual(model, pts[static_cast<size_t>(i)]);
            });
            acc.fold(res, pts);
            rec.pass = acc.max_residual < cfg.tol_identity;
        } else if (suite == "h-theta") {
            std::vector<ChartPoint> pts;
            for (int i = 0; i < cfg.samples; ++i) pts.push_back(sampler.doubled_point(ds));
            std::vector<double> res(pts.size());
            parallel_for(cfg.samples, cfg.jobs, [&](int i) {
                const ChartPoint& p = pts[static_cast<size_t>(i)];
                res[static_cast<size_t>(i)] =
                    std::abs(h.directional(p, ds.Z.value(p)) - h.value(p));
            });
            acc.fold(res, pts);
            rec.pass = acc.max_residual < cfg.tol_identity;
        } else if (suite == "lie-xt") {
            std::vector<ChartPoint> pts;
            std::vector<double> ts;
            std::vector<Eigen::VectorXd> us;
            const int w = ds.wdim();
            while (static_cast<int>(pts.size()) < cfg.samples) {
                ChartPoint p = sampler.doubled_point(ds);
                double t = sampler.uniform(0.0, 1.0);
                ChartPoint pw(model.chart, p.coords().head(w));
                double den = 2.0 * p[w] * p[w] +
                             t * f.directional(pw, model.Z.value(pw)) +
                             (1.0 - t) * f0.directional(pw, model.Z.value(pw));
                if (std::abs(den) < 0.2) continue;
                pts.push_back(p);
                ts.push_back(t);
                Eigen::VectorXd u(w + 2);
                for (int i = 0; i < w + 2; ++i) u[i] = sampler.uniform(-1.0, 1.0);
                us.push_back(u);
            }
            std::vector<double> res(pts.size());
            parallel_for(cfg.samples, cfg.jobs, [&](int i) {
                const ChartPoint& p = pts[static_cast<size_t>(i)];
                double t = ts[static_cast<size_t>(i)];
                auto Xt_fixed = VectorField::make_first_order(
                    ds.chart, [Xt, t](DualSpan x) { return Xt.eval(x, t); });
                ChartPoint pw(model.chart, p.coords().head(w));
                double den = 2.0 * p[w] * p[w] +
                             t * f.directional(pw, model.Z.value(pw)) +
                             (1.0 - t) * f0.directional(pw, model.Z.value(pw));
                double g = (f.value(pw) - f0.value(pw)) / den;
                TangentVector u(p, us[static_cast<size_t>(i)]);
                double lhs = lie_derivative(ds.lambdaD, Xt_fixed, p, u);
                double rhs = g * ds.lambdaD.value(u);
                res[static_cast<size_t>(i)] = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
            });
            acc.fold(res, pts);
            rec.pass = acc.max_residual < cfg.tol_identity;
        } else if (suite == "gray-tangency") {
            std::vector<ChartPoint> pts;
            std::vector<double> ts;
            for (int i = 0; i < cfg.samples; ++i) {
                pts.push_back(sampler.surface_point(ds));
                ts.push_back(sampler.uniform(0.0, 1.0));
            }
            std::vector<double> res(pts.size());
            parallel_for(cfg.samples, cfg.jobs, [&](int i) {
                const ChartPoint& p = pts[static_cast<size_t>(i)];
                Eigen::VectorXd y = Y.value(p, 0.0);
                double r = std::abs(ds.fD.directional(p, y));
                OneForm lt = lambda_t(ds, h, ts[static_cast<size_t>(i)]);
                r = std::max(r, std::abs(lt.value(p, y)));
                res[static_cast<size_t>(i)] = r;
            });
            acc.fold(res, pts);
            rec.pass = acc.max_residual < cfg.tol_identity;
        } else if (suite == "pullback-rotation") {
            std::vector<ChartPoint> pts;
            std::vector<Eigen::VectorXd> us;
            const int w = ds.wdim();
            for (int i = 0; i < cfg.samples; ++i) {
                pts.push_back(sampler.doubled_point(ds));
                Eigen::VectorXd u(w + 2);
                for (int j = 0; j < w + 2; ++j) u[j] = sampler.uniform(-1.0, 1.0);
                us.push_back(u);
            }
            std::vector<double> res(pts.size());
            parallel_for(cfg.samples, cfg.jobs, [&](int i) {
                const ChartPoint& p = pts[static_cast<size_t>(i)];
                TangentVector u(p, us[static_cast<size_t>(i)]);
                double lhs = pullback(rot, ds.lambdaD, p, u);
                double rhs = ds.lambda.value(u) +
                             (2.0 * p[ds.wdim()] + h.value(p)) * u.components[ds.wdim() + 1];
                res[static_cast<size_t>(i)] = std::abs(lhs - rhs);
            });
            acc.fold(res, pts);
            rec.pass = acc.max_residual < cfg.tol_identity;
        } else {
            throw ConfigError("config: unknown check suite '" + suite + "'");
        }

        if (rec.name != "transversality" && rec.name != "contact-volume") {
            rec.max_residual = acc.max_residual;
            if (!rec.pass) rec.witness = acc.witness;
        }
        rec.seconds = timer.seconds();
        report.all_pass = report.all_pass && rec.pass;
        report.checks.push_back(std::move(rec));
    }
    return report;
}

Report cmd_invariant(const RunConfig& cfg) {
    cfg.validate();
    Report report;
    report.command = "invariant";
    report.config_echo = cfg.to_json();

    WeinsteinModel model = build_model(cfg);
    ScalarField f = cutoff_equation(model, default_cutoff(model));
    DoubledSpace ds = make_doubled_space(model, f, cfg.tol_surface);

    for (int k : cfg.k_list) {
        Timer timer;
        CheckRecord rec;
        rec.name = "winding-k" + std::to_string(k);
        try {
            InvariantRunSettings settings;
            settings.theta_samples = cfg.theta_samples;
            settings.tol = OdeTol{cfg.tol_ode_rel, cfg.tol_ode_abs};
            settings.jobs = cfg.jobs;
            if (cfg.dump_trajectories && k >= 1) {
                // Gray-flow legs of psi_c^k from gamma(0), one CSV per k.
                LagrangianFamily fam = build_family(ds, model, 4);
                TimeDependentField Y = gray_field(ds, rotation_momentum(ds));
                SmoothMap rot = psi_rotation(ds);
                FlowOptions fopts;
                fopts.tol = settings.tol;
                fopts.constraint = &ds.fD;
                fopts.record_trajectory = true;
                std::vector<std::vector<double>> rows;
                ChartPoint q = fam.base[0];
                for (int leg = 0; leg < k; ++leg) {
                    FlowResult r = integrate_flow(Y, q, 0.0, 1.0, fopts);
                    rows.insert(rows.end(), r.trajectory.begin(), r.trajectory.end());
                    q = rot.value(r.endpoint);
                }
                write_trajectory_csv(rows, ds.chart->names,
                                     (fs::path(cfg.out_dir) /
                                      ("trajectory_k" + std::to_string(k) + ".csv"))
                                         .string());
            }
            MatrixLoop loop;
            WindingReport rep = run_invariant_pipeline(ds, model, k, settings, &loop);

            double b0_constancy = 0.0;
            if (k == 0) {
                for (int i = 1; i < loop.samples(); ++i)
                    b0_constancy = std::max(
                        b0_constancy,
                        (loop.mats[static_cast<size_t>(i)] - loop.mats[0]).cwiseAbs().maxCoeff());
            }
            rec.pass = rep.winding == k && rep.block_residual < 1e-6 &&
                       rep.row_modulation_residual < 1e-6 &&
                       (k == 0 || rep.radial_residual < 1e-6) && (k != 0 || b0_constancy < 1e-8);
            rec.max_residual = std::max({rep.block_residual, rep.row_modulation_residual,
                                         rep.radial_residual, b0_constancy});
            rec.note = "winding = " + std::to_string(rep.winding);

            write_winding_json(rep, cfg.out_dir);
            write_loop_csv(loop, cfg.out_dir);
            if (cfg.plot) write_loop_svg(loop, cfg.out_dir);
        } catch (const StiffnessError& e) {
            rec.pass = false;
            rec.note = e.what();
            if (!e.trajectory.empty())
                write_trajectory_csv(e.trajectory, ds.chart->names,
                                     (fs::path(cfg.out_dir) /
                                      ("trajectory_error_k" + std::to_string(k) + ".csv"))
                                         .string());
        } catch (const Error& e) {
            rec.pass = false;
            rec.note = e.what();
        }
        rec.seconds = timer.seconds();
        report.all_pass = report.all_pass && rec.pass;
        report.checks.push_back(std::move(rec));
    }
    return report;
}

Report cmd_double_equiv(const RunConfig& cfg) {
    cfg.validate();
    Report report;
    report.command = "double-equiv";
    report.config_echo = cfg.to_json();

    WeinsteinModel model = build_model(cfg);
    ScalarField f1 = cutoff_equation(model, default_cutoff(model));
    DoubledSpace ds = make_doubled_space(model, f1, cfg.tol_surface);
    ScalarField f0 =
        cfg.same_equation
            ? f1
            : ScalarField::make(model.chart,
                                [psi = model.psi, c = model.c](auto x) { return psi(x) - c; });
    ScalarField f0D = doubled_equation(ds, f0);
    OdeTol tol{cfg.tol_ode_rel, cfg.tol_ode_abs};
    SmoothMap map = double_equiv_map(ds, f0, f1, tol);
    SmoothMap rot = psi_rotation(ds);

    Sampler sampler(cfg.seed);
    std::vector<ChartPoint> pts;
    for (int i = 0; i < cfg.samples; ++i) pts.push_back(sampler.surface_point(ds));

    Timer batch;
    std::vector<double> landing(pts.size()), conf(pts.size()), commute(pts.size());
    std::vector<int> coorient(pts.size(), 1);
    parallel_for(cfg.samples, cfg.jobs, [&](int i) {
        const ChartPoint& p = pts[static_cast<size_t>(i)];
        ChartPoint q = map.value(p);
        landing[static_cast<size_t>(i)] = std::abs(f0D.value(q));
        auto c = conformality_residual(map, ds, p, &f0D);
        conf[static_cast<size_t>(i)] = c.residual;
        coorient[static_cast<size_t>(i)] = c.coorientation_preserved ? 1 : 0;
        commute[static_cast<size_t>(i)] =
            coord_distance(map.value(rot.value(p)), rot.value(q));
    });
    double batch_seconds = batch.seconds();

    auto push = [&](const std::string& name, const std::vector<double>& vals, double threshold,
                    bool extra_ok = true) {
        CheckRecord rec;
        rec.name = name;
        SuiteAccumulator acc;
        acc.fold(vals, pts);
        rec.max_residual = acc.max_residual;
        rec.pass = acc.max_residual < threshold && extra_ok;
        if (!rec.pass) rec.witness = acc.witness;
        rec.seconds = batch_seconds / 3.0;
        report.all_pass = report.all_pass && rec.pass;
        report.checks.push_back(std::move(rec));
    };
    bool all_coorient = std::all_of(coorient.begin(), coorient.end(), [](int v) { return v == 1; });
    push("equiv-landing", landing, 1e-8);
    push("equiv-conformality", conf, 1e-6, all_coorient);
    push("equiv-commutation", commute, 1e-8);
    return report;
}

Json Report::to_json() const {
    Json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config_echo;
    Json arr = Json::array();
    Json timings = Json::object();
    for (const auto& rec : checks) {
        Json r;
        r["name"] = rec.name;
        r["status"] = rec.pass ? "pass" : "fail";
        r["max_residual"] = rec.max_residual;
        if (rec.witness) {
            Json w = Json::array();
            for (int i = 0; i < rec.witness->size(); ++i) w.push_back((*rec.witness)[i]);
            r["witness"] = w;
        }
        if (!rec.note.empty()) r["note"] = rec.note;
        arr.push_back(r);
        timings[rec.name] = rec.seconds;
    }
    j["checks"] = arr;
    j["all_pass"] = all_pass;
    j["timings"] = timings;  // excluded from determinism comparisons
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = buf;
    return j;
}

void write_report(const Report& report, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "report.json");
    out << report.to_json().dump(2) << "\n";
}

void write_winding_json(const WindingReport& rep, const std::string& out_dir) {
    fs::create_directories(out_dir);
    Json j;
    j["k"] = rep.k;
    j["winding"] = rep.winding;
    j["phase_total"] = rep.phase_total;
    j["block_residual"] = rep.block_residual;
    j["row_modulation_residual"] = rep.row_modulation_residual;
    j["radial_residual"] = rep.radial_residual;
    std::ofstream out(fs::path(out_dir) / ("winding_k" + std::to_string(rep.k) + ".json"));
    out << j.dump(2) << "\n";
}

void write_loop_csv(const MatrixLoop& loop, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / ("loop_k" + std::to_string(loop.k) + ".csv"));
    const int N = loop.samples() ? static_cast<int>(loop.mats[0].rows()) : 0;
    out << "theta,re_det,im_det";
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) out << ",re_" << r << "_" << c << ",im_" << r << "_" << c;
    out << "\n";
    out.precision(17);
    for (int i = 0; i < loop.samples(); ++i) {
        const auto& B = loop.mats[static_cast<size_t>(i)];
        std::complex<double> det = B.determinant();
        out << loop.theta[static_cast<size_t>(i)] << "," << det.real() << "," << det.imag();
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c)
                out << "," << B(r, c).real() << "," << B(r, c).imag();
        out << "\n";
    }
}

void write_trajectory_csv(const std::vector<std::vector<double>>& rows,
                          const std::vector<std::string>& coord_names, const std::string& path) {
    fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path);
    out << "t";
    for (const auto& n : coord_names) out << "," << n;
    out << ",abs_constraint\n";
    out.precision(17);
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

void write_loop_svg(const MatrixLoop& loop, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / ("loop_k" + std::to_string(loop.k) + ".svg"));
    double maxmag = 1e-300;
    std::vector<std::complex<double>> dets;
    for (const auto& B : loop.mats) {
        dets.push_back(B.determinant());
        maxmag = std::max(maxmag, std::abs(dets.back()));
    }
    auto sx = [&](double re) { return 210.0 + 180.0 * re / maxmag; };
    auto sy = [&](double im) { return 210.0 - 180.0 * im / maxmag; };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"420\" height=\"420\" "
           "viewBox=\"0 0 420 420\">\n";
    out << "  <line x1=\"10\" y1=\"210\" x2=\"410\" y2=\"210\" stroke=\"#999\"/>\n";
    out << "  <line x1=\"210\" y1=\"10\" x2=\"210\" y2=\"410\" stroke=\"#999\"/>\n";
    out << "  <path fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" d=\"";
    for (size_t i = 0; i <= dets.size(); ++i) {
        const auto& z = dets[i % dets.size()];
        out << (i == 0 ? "M" : "L") << sx(z.real()) << " " << sy(z.imag()) << " ";
    }
    out << "\"/>\n";
    out << "  <circle cx=\"" << sx(dets[0].real()) << "\" cy=\"" << sy(dets[0].imag())
        << "\" r=\"3\" fill=\"#b22\"/>\n";
    out << "</svg>\n";
}

}  // namespace contactkit
