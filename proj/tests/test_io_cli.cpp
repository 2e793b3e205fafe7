#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "lie2/cli.hpp"

using namespace lie2;

namespace {

std::string data_path(const std::string& name) {
  return std::string(LIE2_DATA_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/lie2_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("algebra JSON round trip is bit-exact") {
  SeededRng rng(5);
  // random antisymmetric constants (not a Lie algebra; serialization only)
  std::vector<std::vector<std::vector<Real>>> c(
      3, std::vector<std::vector<Real>>(3, std::vector<Real>(3, 0.0)));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        c[i][j][k] = rng.symmetric();
        c[j][i][k] = -c[i][j][k];
      }
  LieAlgebra L = LieAlgebra::from_structure_constants("random", c);
  io::json j = io::algebra_to_json(L);
  std::string path = write_temp("algebra.json", j.dump());
  io::LoadContext ctx;
  std::string dir;
  LieAlgebra back = io::parse_algebra(io::json::parse("\"" + path + "\""),
                                      io::LoadContext{"", nullptr});
  CHECK(back.same_structure(L));  // exact array equality after the trip
}

TEST_CASE("crossed module file matches the builtin construction") {
  io::LoadContext ctx{std::string(LIE2_DATA_DIR), nullptr};
  io::json spec = io::json::parse("\"so3_adjoint_cm.json\"");
  std::string dir;
  io::json j = ctx.resolve(spec, &dir);
  io::LoadContext sub{dir, nullptr};
  auto b = io::parse_gcm(j, sub);
  CHECK(check_alg_crossed_module(*b.gcm->cm).max() <= 1e-12);
  CHECK(b.gcm->R0->simply_connected);
  CHECK(b.gcm->R0->commutation_residual() <= 1e-12);
}

TEST_CASE("extension file agrees with the builtin semidirect product") {
  io::LoadContext ctx{std::string(LIE2_DATA_DIR), nullptr};
  std::string dir;
  io::json j = ctx.resolve(io::json::parse("\"so3_r3_extension.json\""), &dir);
  LieAlgebra hat = io::parse_algebra(j["extension"]["hat"],
                                     io::LoadContext{dir, nullptr});
  CHECK(hat.same_structure(builtins::so3_semidirect_r3()));
}

TEST_CASE("path descriptors") {
  io::json fourier = {
      {"type", "fourier"},
      {"coeffs", {{0.5, 0.25}, {0.0, 1.0}}},
  };
  SampledPath p = io::parse_path(fourier, nullptr, 64);
  CHECK(p.dim == 2);
  CHECK(p.based);
  CHECK(p.samples.col(0).cwiseAbs().maxCoeff() == 0.0);

  io::json samples = {
      {"type", "samples"},
      {"values", {{0.0, 0.0}, {0.5, 1.0}, {0.0, 0.0}}},
  };
  SampledPath q = io::parse_path(samples, nullptr, 64);
  CHECK(q.segments() == 2);
  CHECK(q.samples(1, 1) == 1.0);

  io::json poly = {
      {"type", "poly"},
      {"coeffs", {{1.0, 2.0}}},
      {"based_envelope", false},
  };
  SampledPath r = io::parse_path(poly, nullptr, 16);
  CHECK(r.samples(0, 16) == doctest::Approx(3.0));
}

TEST_CASE("explicit morphism files parse and gate") {
  // ad: so3 -> derivation 2-algebra of so3, a strict morphism
  LieAlgebra so3 = builtins::so3();
  DerivationCrossedModule dcm = derivation_crossed_module(so3);
  io::json j;
  j["source"] = {{"builtin", "so3"}};
  j["target"] = {{"derivation_of", {{"builtin", "so3"}}}};
  io::json mu = io::json::array();
  for (int a = 0; a < dcm.der_dim(); ++a) {
    io::json row = io::json::array();
    for (int i = 0; i < 3; ++i) row.push_back(dcm.cm.dt(a, i));
    mu.push_back(row);
  }
  j["mu"] = mu;
  io::LoadedMorphism lm = io::parse_morphism(j, io::LoadContext{});
  auto [r1, r2] = morphism_residuals(lm.morphism);
  CHECK(r1 <= 1e-12);
  CHECK(r2 <= 1e-12);
  CHECK(lm.target_cm != nullptr);
}

TEST_CASE("machine reports are bit-identical for identical configs") {
  cli::RunConfig cfg;
  cfg.command = "check-crossed-module";
  cfg.inputs = {"so3-derivation"};
  cfg.grid = GridSpec(32, 32, 8);
  cfg.seed = 99;
  cfg.format = OutputFormat::Machine;
  cli::RunResult a = cli::run_command(cfg);
  cli::RunResult b = cli::run_command(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.report.render(OutputFormat::Machine) ==
        b.report.render(OutputFormat::Machine));
  // a different seed changes the sampled checks
  cfg.seed = 100;
  cli::RunResult c = cli::run_command(cfg);
  CHECK(a.report.render(OutputFormat::Machine) !=
        c.report.render(OutputFormat::Machine));
}

TEST_CASE("exit codes separate input errors from check failures") {
  SUBCASE("missing file is an input error") {
    cli::RunConfig cfg;
    cfg.command = "check-algebra";
    cfg.inputs = {"/nonexistent/file.json"};
    CHECK(cli::run_command(cfg).exit_code == 2);
  }
  SUBCASE("malformed json is an input error") {
    std::string path = write_temp("broken.json", "{not json");
    cli::RunConfig cfg;
    cfg.command = "check-algebra";
    cfg.inputs = {path};
    CHECK(cli::run_command(cfg).exit_code == 2);
  }
  SUBCASE("corrupted constants are a check failure") {
    cli::RunConfig cfg;
    cfg.command = "check-algebra";
    cfg.inputs = {data_path("so3_perturbed.json")};
    cli::RunResult res = cli::run_command(cfg);
    CHECK(res.exit_code == 1);
    CHECK_FALSE(res.report.overall());
  }
  SUBCASE("unknown command") {
    cli::RunConfig cfg;
    cfg.command = "frobnicate";
    CHECK(cli::run_command(cfg).exit_code == 2);
  }
  SUBCASE("overall verdict is the conjunction of the records") {
    Report r;
    r.add("a", 0.0, 1.0);
    CHECK(r.overall());
    r.add("b", 2.0, 1.0);
    CHECK_FALSE(r.overall());
  }
}

TEST_CASE("psi command refuses an invalid bigon with a residual report") {
  // corrupt the demo bigon by sampling it with a broken z
  std::string spec = R"({
    "crossed_module": {"builtin": "so3-derivation"},
    "bigon": {"type": "samples",
      "a": [[[0,0,0],[0,0,0]],[[0,0,0],[0,0,0]]],
      "b": [[[0,0,0],[0,0,0]],[[0,0,0],[0,0,0]]],
      "z": [[[0,0,0],[0,0,0]],[[1,1,1],[1,1,1]]]}
  })";
  std::string path = write_temp("bad_bigon.json", spec);
  cli::RunConfig cfg;
  cfg.command = "psi";
  cfg.inputs = {path};
  cli::RunResult res = cli::run_command(cfg);
  CHECK(res.exit_code == 1);
}

TEST_CASE("report provenance carries input hashes") {
  cli::RunConfig cfg;
  cfg.command = "check-algebra";
  cfg.inputs = {data_path("so3.json")};
  cfg.format = OutputFormat::Machine;
  cli::RunResult res = cli::run_command(cfg);
  REQUIRE(res.report.inputs.size() == 1);
  CHECK(res.report.inputs[0].hash.size() == 16);
  std::string text = res.report.render(OutputFormat::Machine);
  CHECK(text.find("hash=" + res.report.inputs[0].hash) != std::string::npos);
}
