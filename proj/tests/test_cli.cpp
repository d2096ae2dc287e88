#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "choquard/config.hpp"
#include "choquard/errors.hpp"
#include "choquard/report.hpp"
#include "choquard/runner.hpp"

using namespace choquard;
namespace fs = std::filesystem;

TEST_CASE("config defaults and precedence") {
  SUBCASE("empty document gives the defaults") {
    const RunConfig cfg = parse_config(std::string("{}"), {});
    CHECK(cfg.dim == 5);
    CHECK(cfg.alpha == 2.0);
    CHECK(cfg.q == 3.0);
    CHECK(cfg.r_min == 1e-6);
    CHECK(cfg.r_max == 1e4);
    CHECK(cfg.grid_count == 2048);
    CHECK(cfg.eps_list == std::vector<double>{0.1, 0.05, 0.025, 0.0125});
  }
  SUBCASE("file values are read") {
    const std::string doc = R"({"N":4,"q":3.5,"grid":{"rMin":1e-5,"rMax":100.0,"M":256},
      "epsList":[0.2,0.1],"sExponent":0.75,"solver":{"maxIter":50},"seed":7})";
    const RunConfig cfg = parse_config(doc, {});
    CHECK(cfg.dim == 4);
    CHECK(cfg.q == 3.5);
    CHECK(cfg.grid_count == 256);
    CHECK(cfg.eps_list == std::vector<double>{0.2, 0.1});
    CHECK(cfg.s_exponent == 0.75);
    CHECK(cfg.solver.max_iter == 50);
    CHECK(cfg.seed == 7);
  }
  SUBCASE("flags override the file") {
    ConfigOverrides ov;
    ov.eps = "0.1,0.05";
    ov.grid = "1e-4,1e3,512";
    const RunConfig cfg = parse_config(std::string(R"({"epsList":[0.4,0.2]})"), ov);
    CHECK(cfg.eps_list == std::vector<double>{0.1, 0.05});
    CHECK(cfg.grid_count == 512);
    CHECK(cfg.r_min == 1e-4);
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(parse_config(std::string("{"), {}), config_error);
    CHECK_THROWS_AS(parse_config(std::string(R"({"grid":{"M":4}})"), {}), config_error);
    ConfigOverrides ov;
    ov.eps = "0.1,zebra";
    CHECK_THROWS_AS(parse_config(std::string("{}"), ov), config_error);
  }
  SUBCASE("out-of-range parameters are config errors") {
    ConfigOverrides ov;
    ov.dim = 4;
    ov.q = 2.5;
    const RunConfig cfg = parse_config(std::string("{}"), ov);
    CHECK_FALSE(cfg.params().theorem_regime());
    ov.q = 6.0;  // outside (2, 2*)
    CHECK_THROWS_AS(parse_config(std::string("{}"), ov), config_error);
  }
}

TEST_CASE("report rendering") {
  SUBCASE("level report schema") {
    LevelReport rep;
    rep.level = 1.5;
    rep.bound = 2.0;
    rep.margin = 0.5;
    rep.eps_used = 0.1;
    rep.iterations = 3;
    rep.residual = 1e-6;
    const auto j = nlohmann::json::parse(render_json(rep));
    for (const char* key : {"level", "bound", "margin", "epsUsed", "iterations",
                            "residual", "breakdown"})
      CHECK(j.contains(key));
    CHECK(j["margin"] == 0.5);
    CHECK(j["breakdown"].contains("I"));
  }
  SUBCASE("constants report schema") {
    ConstantsReport rep{1, 2, 3, 4, 5, 6};
    const auto j = nlohmann::json::parse(render_json(rep));
    for (const char* key : {"rieszNorm", "hlsSharp", "choquardC0", "sobolevS",
                            "neharilevelBound", "constraintLevelBound"})
      CHECK(j.contains(key));
  }
  SUBCASE("scan csv round trip at full precision") {
    std::vector<ScanRow> rows(3);
    const ProblemParams params(5, 2.0, 3.0);
    rows[0] = {0.1, 0.0, breakdown_from_parts(1.0 / 3.0, 0.2, 0.1, 0.05, params)};
    rows[1] = {0.05, 0.0, breakdown_from_parts(0.31, 0.19, 0.11, 0.04, params)};
    rows[2] = {0.025, 0.0, breakdown_from_parts(0.3, 0.18, 0.12, 0.03, params)};
    const std::string csv = render_scan_csv(rows);
    CHECK(csv.rfind("eps,sigma,a,b,c,d,I,J,H,T\n", 0) == 0);
    // parse back the first data row
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    std::getline(ss, line);
    double eps, sigma, a;
    std::sscanf(line.c_str(), "%lf,%lf,%lf", &eps, &sigma, &a);
    CHECK(eps == 0.1);
    CHECK(a == 1.0 / 3.0);

    CHECK_THROWS_AS(render_scan_csv({}), data_error);
  }
  SUBCASE("rendering is reproducible") {
    LevelReport rep;
    rep.level = 0.123456789012345678;
    CHECK(render_json(rep) == render_json(rep));
  }
}

TEST_CASE("command dispatch") {
  const fs::path dir = fs::temp_directory_path() / "choquard_cli_test";
  fs::create_directories(dir);

  SUBCASE("constants command writes the artifact") {
    RunConfig cfg;
    cfg.output_dir = (dir / "constants").string();
    CHECK(run_command("constants", cfg) == 0);
    std::ifstream in(fs::path(cfg.output_dir) / "constants.json");
    REQUIRE(in.good());
    const auto j = nlohmann::json::parse(in);
    CHECK(j["choquardC0"].get<double>() == doctest::Approx(0.067513).epsilon(1e-4));
    CHECK(j["choquardC0"].get<double>() * j["sobolevS"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("oracle command: newton cross-check on a small grid") {
    RunConfig cfg;
    cfg.grid_count = 256;
    cfg.output_dir = (dir / "oracle").string();
    CHECK(run_command("oracle", cfg, std::string("newton")) == 0);
  }
  SUBCASE("unknown command") {
    RunConfig cfg;
    CHECK_THROWS_AS(run_command("frobnicate", cfg), config_error);
  }
  SUBCASE("fibering without an input field") {
    RunConfig cfg;
    CHECK_THROWS_AS(run_command("fibering", cfg), config_error);
  }

  fs::remove_all(dir);
}
