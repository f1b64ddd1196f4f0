#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "runner.hpp"

using namespace contactkit;
namespace fs = std::filesystem;

namespace {

Json stripped(const Report& r) {
    Json j = r.to_json();
    j.erase("timings");
    j.erase("timestamp");
    return j;
}

}  // namespace

TEST_CASE("config validation rejects bad input") {
    RunConfig bad;
    bad.tol_surface = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    RunConfig unknown;
    unknown.checks = {"liouville", "no-such-suite"};
    CHECK_THROWS_AS(unknown.validate(), ConfigError);

    RunConfig negk;
    negk.k_list = {-1};
    CHECK_THROWS_AS(negk.validate(), ConfigError);

    RunConfig badmodel;
    badmodel.model = "sphere";
    CHECK_THROWS_AS(badmodel.validate(), ConfigError);
}

TEST_CASE("config round-trips through JSON with overrides") {
    RunConfig cfg;
    cfg.model = "torus";
    cfg.n = 2;
    cfg.seed = 99;
    cfg.k_list = {0, 3};
    Json j = cfg.to_json();
    RunConfig back = RunConfig::from_json(j);
    CHECK(back.model == "torus");
    CHECK(back.n == 2);
    CHECK(back.seed == 99);
    CHECK(back.k_list == std::vector<int>{0, 3});

    Json partial = {{"samples", 7}};
    RunConfig merged = RunConfig::from_json(partial, back);
    CHECK(merged.samples == 7);
    CHECK(merged.model == "torus");
}

TEST_CASE("verify command passes on the built-in models") {
    RunConfig cfg;
    cfg.model = "flat";
    cfg.n = 1;
    cfg.samples = 25;
    cfg.seed = 5;
    Report r = cmd_verify(cfg);
    CHECK(r.all_pass);
    CHECK(r.checks.size() == verify_suite_names().size());

    cfg.model = "torus";
    Report rt = cmd_verify(cfg);
    CHECK(rt.all_pass);
}

TEST_CASE("reports are deterministic for a fixed config and seed") {
    RunConfig cfg;
    cfg.samples = 15;
    cfg.seed = 1234;
    cfg.checks = {"liouville", "h-theta", "almost-stein"};
    Report a = cmd_verify(cfg);
    Report b = cmd_verify(cfg);
    CHECK(stripped(a).dump() == stripped(b).dump());
}

TEST_CASE("invariant command writes machine-readable outputs") {
    fs::path dir = fs::temp_directory_path() / "contactkit_test_out";
    fs::remove_all(dir);
    RunConfig cfg;
    cfg.k_list = {0, 1};
    cfg.theta_samples = 16;
    cfg.out_dir = dir.string();
    cfg.plot = true;
    Report r = cmd_invariant(cfg);
    CHECK(r.all_pass);
    write_report(r, cfg.out_dir);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "winding_k0.json"));
    CHECK(fs::exists(dir / "winding_k1.json"));
    CHECK(fs::exists(dir / "loop_k1.csv"));
    CHECK(fs::exists(dir / "loop_k1.svg"));

    std::ifstream in(dir / "winding_k1.json");
    Json j;
    in >> j;
    CHECK(j["winding"].get<long>() == 1);
    CHECK(j["radial_residual"].get<double>() < 1e-6);

    std::ifstream csv(dir / "loop_k1.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header.rfind("theta,re_det,im_det", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("double-equiv command passes, including the degenerate mode") {
    RunConfig cfg;
    cfg.samples = 10;
    cfg.seed = 9;
    Report r = cmd_double_equiv(cfg);
    CHECK(r.all_pass);
    REQUIRE(r.checks.size() == 3);
    CHECK(r.checks[0].max_residual < 1e-8);   // landing
    CHECK(r.checks[2].max_residual < 1e-8);   // commutation

    cfg.same_equation = true;
    Report rd = cmd_double_equiv(cfg);
    CHECK(rd.all_pass);
}

TEST_CASE("parallel evaluation does not change the report") {
    RunConfig cfg;
    cfg.samples = 20;
    cfg.seed = 7;
    cfg.checks = {"liouville", "gray-tangency"};
    Report serial = cmd_verify(cfg);
    cfg.jobs = 2;
    Report parallel = cmd_verify(cfg);
    Json a = stripped(serial), b = stripped(parallel);
    a["config"].erase("jobs");
    b["config"].erase("jobs");
    CHECK(a.dump() == b.dump());
}
