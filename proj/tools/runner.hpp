#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "contactkit/flows.hpp"
#include "contactkit/sampling.hpp"
#include "contactkit/winding.hpp"

namespace contactkit {

using Json = nlohmann::ordered_json;

// Names accepted in RunConfig::checks (the `verify` suites).
const std::vector<std::string>& verify_suite_names();

struct RunConfig {
    std::string model = "flat";
    int n = 1;
    std::vector<std::string> checks;  // empty = all suites
    std::vector<int> k_list = {1};
    int samples = 100;
    int theta_samples = 64;
    double tol_ode_rel = 1e-10;
    double tol_ode_abs = 1e-12;
    double tol_surface = 1e-8;
    double tol_identity = 1e-7;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    bool plot = false;
    int jobs = 1;
    bool same_equation = false;     // double-equiv sanity mode: f0 = f1
    bool dump_trajectories = false; // write Gray-leg trajectories per k

    void validate() const;          // throws ConfigError
    Json to_json() const;           // effective config echo
    static RunConfig from_json(const Json& j);
    static RunConfig from_json(const Json& j, RunConfig base);
};

struct CheckRecord {
    std::string name;
    bool pass = false;
    double max_residual = 0.0;
    std::optional<Eigen::VectorXd> witness;
    std::string note;
    double seconds = 0.0;
};

struct Report {
    std::string command;
    std::vector<CheckRecord> checks;
    bool all_pass = true;
    Json config_echo;

    Json to_json() const;  // timings and timestamp live in separate fields
};

Report cmd_verify(const RunConfig& config);
Report cmd_invariant(const RunConfig& config);
Report cmd_double_equiv(const RunConfig& config);

void write_report(const Report& report, const std::string& out_dir);

// Machine-readable per-k outputs of the invariant pipeline.
void write_winding_json(const WindingReport& rep, const std::string& out_dir);
void write_loop_csv(const MatrixLoop& loop, const std::string& out_dir);
void write_loop_svg(const MatrixLoop& loop, const std::string& out_dir);

// Rows (t, coordinates..., |f^D|), as recorded by the integrator.
void write_trajectory_csv(const std::vector<std::vector<double>>& rows,
                          const std::vector<std::string>& coord_names, const std::string& path);

}  // namespace contactkit
