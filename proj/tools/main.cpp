#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "runner.hpp"

using namespace contactkit;

namespace {

struct CliFlags {
    std::string config_path;
    std::string model;
    int n = 0;
    std::string k_csv;
    int samples = 0;
    int theta_samples = 0;
    std::uint64_t seed = 0;
    double tol_ode_rel = 0.0, tol_ode_abs = 0.0, tol_surface = 0.0, tol_identity = 0.0;
    std::string out_dir;
    bool plot = false;
    int jobs = 0;
    bool same_equation = false;
    bool dump_trajectories = false;
    std::vector<std::string> checks;
};

std::vector<int> parse_k_list(const std::string& csv) {
    std::vector<int> out;
    std::string cur;
    for (char ch : csv + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (out.empty()) throw ConfigError("config: empty k list");
    return out;
}

void add_common_flags(CLI::App* cmd, CliFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file (flags override fields)");
    cmd->add_option("--model", flags.model, "model name: flat or torus");
    cmd->add_option("--n", flags.n, "model size parameter");
    cmd->add_option("--k", flags.k_csv, "comma-separated iterate indices");
    cmd->add_option("--samples", flags.samples, "random sample points per suite");
    cmd->add_option("--theta-samples", flags.theta_samples, "initial loop sampling");
    cmd->add_option("--seed", flags.seed, "RNG seed (CONTACTKIT_SEED as fallback)");
    cmd->add_option("--tol-ode-rel", flags.tol_ode_rel, "ODE relative tolerance");
    cmd->add_option("--tol-ode-abs", flags.tol_ode_abs, "ODE absolute tolerance");
    cmd->add_option("--tol-surface", flags.tol_surface, "hypersurface tolerance");
    cmd->add_option("--tol-identity", flags.tol_identity, "identity-suite threshold");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_flag("--plot", flags.plot, "emit SVG traces");
    cmd->add_option("--jobs", flags.jobs, "parallel sample evaluation bound");
    cmd->add_option("--checks", flags.checks, "suite subset for verify");
}

RunConfig assemble_config(const CLI::App* cmd, const CliFlags& flags) {
    RunConfig cfg;
    bool config_has_seed = false;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw ConfigError("config: cannot open '" + flags.config_path + "'");
        Json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
        config_has_seed = j.contains("seed");
        cfg = RunConfig::from_json(j, cfg);
    }
    if (cmd->count("--model")) cfg.model = flags.model;
    if (cmd->count("--n")) cfg.n = flags.n;
    if (cmd->count("--k")) cfg.k_list = parse_k_list(flags.k_csv);
    if (cmd->count("--samples")) cfg.samples = flags.samples;
    if (cmd->count("--theta-samples")) cfg.theta_samples = flags.theta_samples;
    if (cmd->count("--tol-ode-rel")) cfg.tol_ode_rel = flags.tol_ode_rel;
    if (cmd->count("--tol-ode-abs")) cfg.tol_ode_abs = flags.tol_ode_abs;
    if (cmd->count("--tol-surface")) cfg.tol_surface = flags.tol_surface;
    if (cmd->count("--tol-identity")) cfg.tol_identity = flags.tol_identity;
    if (cmd->count("--out")) cfg.out_dir = flags.out_dir;
    if (cmd->count("--plot")) cfg.plot = flags.plot;
    if (cmd->count("--jobs")) cfg.jobs = flags.jobs;
    if (cmd->count("--checks")) cfg.checks = flags.checks;
    if (auto* opt = cmd->get_option_no_throw("--same-equation"); opt && opt->count())
        cfg.same_equation = flags.same_equation;
    if (auto* opt = cmd->get_option_no_throw("--dump-trajectories"); opt && opt->count())
        cfg.dump_trajectories = flags.dump_trajectories;
    if (cmd->count("--seed")) {
        cfg.seed = flags.seed;
    } else if (!config_has_seed) {
        if (const char* env = std::getenv("CONTACTKIT_SEED")) cfg.seed = std::stoull(env);
    }
    cfg.validate();
    return cfg;
}

int finish(const Report& report, const RunConfig& cfg) {
    write_report(report, cfg.out_dir);
    for (const auto& rec : report.checks)
        std::cout << (rec.pass ? "[pass] " : "[FAIL] ") << rec.name
                  << "  value=" << rec.max_residual
                  << (rec.note.empty() ? "" : "  (" + rec.note + ")") << "\n";
    std::cout << (report.all_pass ? "all checks passed" : "some checks FAILED") << "\n";
    return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contactkit: numerically verified contact structures on doubled "
                 "Liouville domains times the circle"};
    app.require_subcommand(1);

    CliFlags flags;
    auto* verify = app.add_subcommand("verify", "run the structural identity suites");
    auto* invariant = app.add_subcommand("invariant", "winding numbers of iterate loops");
    auto* dequiv = app.add_subcommand("double-equiv", "equation-independence of the double");
    for (auto* cmd : {verify, invariant, dequiv}) add_common_flags(cmd, flags);
    dequiv->add_flag("--same-equation", flags.same_equation,
                     "sanity mode: both regular equations equal");
    invariant->add_flag("--dump-trajectories", flags.dump_trajectories,
                        "write the Gray-flow trajectory from gamma(0) per k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            RunConfig cfg = assemble_config(verify, flags);
            return finish(cmd_verify(cfg), cfg);
        }
        if (invariant->parsed()) {
            RunConfig cfg = assemble_config(invariant, flags);
            return finish(cmd_invariant(cfg), cfg);
        }
        RunConfig cfg = assemble_config(dequiv, flags);
        return finish(cmd_double_equiv(cfg), cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
