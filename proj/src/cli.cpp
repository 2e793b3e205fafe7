#include "lie2/cli.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "lie2/morita.hpp"

namespace lie2 {
namespace cli {

namespace {

using io::json;

constexpr Real kAlgebraTol = 1e-10;
constexpr Real kAntisymTol = 1e-12;
constexpr Real kClassTol = 1e-5;

struct CommandState {
  const RunConfig& cfg;
  Report report;
  std::ostringstream dump;

  explicit CommandState(const RunConfig& c) : cfg(c) {
    report.command = c.command;
    report.N = c.grid.N;
    report.M = c.grid.M;
    report.K = c.grid.K;
    report.seed = c.seed;
  }

  Real class_tol() const { return cfg.tol > 0 ? cfg.tol : kClassTol; }

  json load_input(const std::string& path, io::LoadContext* ctx) {
    std::string bytes;
    json j = io::load_json_file(path, &bytes);
    report.inputs.push_back({path, fnv1a_hex(bytes)});
    ctx->base_dir = std::filesystem::path(path).parent_path().string();
    ctx->stamps = &report.inputs;
    return j;
  }

  void dump_matrix(const std::string& name, const Mat& m) {
    dump << "dump " << name << " " << io::matrix_to_json(m).dump() << "\n";
  }
};

builtins::BuiltinGcm load_gcm_input(CommandState& st, const std::string& input,
                                    json* full_spec) {
  // a bare builtin name is accepted in place of a file path
  for (const auto& name : builtins::gcm_names())
    if (input == name) {
      if (full_spec) *full_spec = json::object();
      st.report.inputs.push_back({"builtin:" + input, fnv1a_hex(input)});
      return builtins::gcm_by_name(input);
    }
  io::LoadContext ctx;
  json j = st.load_input(input, &ctx);
  if (full_spec) *full_spec = j;
  if (j.contains("crossed_module") || j.contains("builtin") || j.is_string())
    return io::parse_gcm(j, ctx);
  throw IoError("input does not define a crossed module: " + input);
}

void cmd_check_algebra(CommandState& st) {
  if (st.cfg.inputs.empty()) throw IoError("check-algebra needs --input");
  for (const auto& path : st.cfg.inputs) {
    io::LoadContext ctx;
    json j = st.load_input(path, &ctx);
    LieAlgebra L = io::parse_algebra(j, ctx);
    st.report.add(L.label() + ".antisymmetry", antisymmetry_residual(L),
                  kAntisymTol);
    st.report.add(L.label() + ".jacobi", jacobi_residual(L),
                  st.cfg.tol > 0 ? st.cfg.tol : kAlgebraTol);
  }
}

void cmd_check_crossed_module(CommandState& st) {
  if (st.cfg.inputs.empty()) throw IoError("check-crossed-module needs --input");
  for (const auto& input : st.cfg.inputs) {
    builtins::BuiltinGcm b = load_gcm_input(st, input, nullptr);
    const auto& cm = *b.gcm->cm;
    std::string tag = b.gcm->label;
    CrossedModuleReport alg = check_alg_crossed_module(cm);
    st.report.add(tag + ".derivation", alg.derivation, kAlgebraTol);
    st.report.add(tag + ".action_morphism", alg.action, kAlgebraTol);
    st.report.add(tag + ".equivariance", alg.equivariance, kAlgebraTol);
    st.report.add(tag + ".peiffer", alg.peiffer, kAlgebraTol);
    GrpCrossedModuleReport grp =
        check_grp_crossed_module(*b.gcm, 8, st.cfg.seed, st.cfg.grid.N);
    std::string caveat =
        grp.sound ? "" : "class-comparison-unsound:not-simply-connected";
    st.report.add(tag + ".group_equivariance", grp.equivariance,
                  st.class_tol(), caveat);
    st.report.add(tag + ".group_peiffer", grp.peiffer, st.class_tol(), caveat);
  }
}

void cmd_psi(CommandState& st) {
  if (st.cfg.inputs.empty()) throw IoError("psi needs --input");
  io::LoadContext ctx;
  json j = st.load_input(st.cfg.inputs.front(), &ctx);
  builtins::BuiltinGcm b = io::parse_gcm(j.at("crossed_module"), ctx);
  BigonData B = io::parse_bigon(j.value("bigon", json{{"type", "generated"},
                                                      {"seed", st.cfg.seed}}),
                                b.gcm->two_alg, st.cfg.grid);

  Real tol = st.cfg.tol > 0 ? st.cfg.tol : bigon_tolerance(B);
  Real res = bigon_residual(B);
  st.report.add("bigon.residual", res, tol);
  st.report.add("bigon.boundary", bigon_boundary_residual(B), 0.0);
  if (!st.report.overall()) return;  // refusal: nonzero residual reported

  MoritaImage img = psi(B, *b.gcm, tol, true);
  Real h2 = st.cfg.grid.ht() * st.cfg.grid.ht() +
            st.cfg.grid.hs() * st.cfg.grid.hs();
  st.report.add("corrected.residual", img.corrected_residual, 10.0 * h2);
  st.report.add("obstruction.endpoint_gap", img.obstruction.discrepancy,
                st.class_tol(),
                img.obstruction.sound ? "" : "necessary-condition-only");
  st.dump_matrix("psi0", img.element.g.matrix);
  st.dump_matrix("psi1", img.element.h.matrix);
}

void cmd_roundtrip(CommandState& st) {
  if (st.cfg.inputs.empty()) throw IoError("roundtrip needs --input");
  io::LoadContext ctx;
  json j = st.load_input(st.cfg.inputs.front(), &ctx);
  builtins::BuiltinGcm b = io::parse_gcm(j.at("crossed_module"), ctx);
  BigonData B = io::parse_bigon(j.value("bigon", json{{"type", "generated"},
                                                      {"seed", st.cfg.seed}}),
                                b.gcm->two_alg, st.cfg.grid);
  st.report.add("bigon.residual", bigon_residual(B), bigon_tolerance(B));
  RoundtripReport rep = roundtrip(B, *b.gcm, st.class_tol());
  st.report.add("h0.endpoint_gap", rep.h0_endpoint_gap, st.class_tol());
  st.report.add("h1.endpoint_gap", rep.h1_endpoint_gap, st.class_tol());
  st.report.add("source.node_gap", rep.source_node_gap, 0.0);
  st.report.add("target.class_gap", rep.target_class_gap, st.class_tol());
  Real h2 = st.cfg.grid.ht() * st.cfg.grid.ht() +
            st.cfg.grid.hs() * st.cfg.grid.hs();
  st.report.add("cube.residual", rep.extension_cube.max(), 10.0 * h2);
  st.report.add("cube.boundary", rep.cube_boundary, 0.0);
}

void cmd_integrate_morphism(CommandState& st) {
  if (st.cfg.inputs.empty()) throw IoError("integrate-morphism needs --input");
  io::LoadContext ctx;
  json j = st.load_input(st.cfg.inputs.front(), &ctx);
  io::LoadedMorphism lm = io::parse_morphism(j, ctx);
  builtins::BuiltinGcm target = j.contains("target")
                                    ? io::parse_gcm(j["target"], ctx)
                                    : builtins::gcm_by_name("r3-derivation");

  auto [r1, r2] = morphism_residuals(lm.morphism);
  st.report.add("morphism.coherence1", r1, kAlgebraTol);
  st.report.add("morphism.coherence2", r2, kAlgebraTol);
  if (!st.report.overall()) return;  // incoherent pair refused

  json hspec = j.value("homotopy", json{{"type", "generated"},
                                        {"seed", st.cfg.seed}});
  if (hspec.value("type", "generated") != "generated")
    throw IoError("integrate-morphism expects a generated homotopy");
  HomotopyGenerator hg = HomotopyGenerator::random(
      lm.morphism.source, hspec.value("seed", st.cfg.seed),
      hspec.value("amplitude", 0.2), hspec.value("modes", 2));

  DevelopmentSurface surf = hg.build(st.cfg.grid.N, st.cfg.grid.M);
  BigonData B = pushforward_homotopy(lm.morphism, surf.a, surf.b, st.cfg.tol);
  Real h2 = st.cfg.grid.ht() * st.cfg.grid.ht() +
            st.cfg.grid.hs() * st.cfg.grid.hs();
  st.report.add("pushforward.bigon_residual", bigon_residual(B), 10.0 * h2);
  MoritaImage img = psi(B, *target.gcm, st.cfg.tol);

  // 4x-finer recomputation of the whole pipeline
  DevelopmentSurface fine = hg.build(4 * st.cfg.grid.N, 4 * st.cfg.grid.M);
  BigonData Bf = pushforward_homotopy(lm.morphism, fine.a, fine.b, st.cfg.tol);
  MoritaImage imgf = psi(Bf, *target.gcm, st.cfg.tol);
  Real gap = std::max(
      (img.element.g.matrix - imgf.element.g.matrix).cwiseAbs().maxCoeff(),
      (img.element.h.matrix - imgf.element.h.matrix).cwiseAbs().maxCoeff());
  st.report.add("fine_grid.agreement", gap, 1e-6);

  st.dump_matrix("g", img.element.g.matrix);
  st.dump_matrix("h", img.element.h.matrix);
}

void cmd_convergence(CommandState& st) {
  std::string which =
      st.cfg.inputs.empty() ? std::string("develop") : st.cfg.inputs.front();
  const int N = st.cfg.grid.N;

  if (which == "develop") {
    auto so3 = std::make_shared<LieAlgebra>(builtins::so3());
    auto R = std::make_shared<MatrixRealization>(
        builtins::so3_spin_realization(so3));
    SeededRng rng(st.cfg.seed);
    PathGenerator gen = PathGenerator::random(3, rng, 3, 0.6);
    auto endpoint = [&](int n) { return develop(gen.path(so3, n), R).matrix; };
    Mat reference = endpoint(8 * N);
    Real prev = 0;
    for (int n : {N, 2 * N, 4 * N}) {
      Real err = (endpoint(n) - reference).cwiseAbs().maxCoeff();
      if (prev > 0) {
        Real order = std::log2(prev / err);
        st.report.add("develop.order_N" + std::to_string(n), -order, -3.5,
                      "observed_order=" + format_real(order));
      }
      prev = err;
    }
    return;
  }
  if (which == "bigon-residual") {
    auto b = builtins::gcm_by_name("so3-derivation");
    BigonGenerator gen = BigonGenerator::random(b.gcm->two_alg, st.cfg.seed, 0.2);
    Real prev = 0;
    for (int n : {N, 2 * N, 4 * N}) {
      Real r = bigon_residual(gen.build(n, n));
      if (prev > 0) {
        Real order = std::log2(prev / r);
        st.report.add("bigon.order_N" + std::to_string(n), -order, -1.8,
                      "observed_order=" + format_real(order));
      }
      prev = r;
    }
    return;
  }
  if (which == "abelian-quadrature") {
    // a cubic integrand is reproduced exactly by the one-step method
    auto ab = std::make_shared<LieAlgebra>(builtins::abelian(2));
    auto R = std::make_shared<MatrixRealization>(
        builtins::translation_realization(ab));
    for (int n : {N, 2 * N, 4 * N}) {
      Mat samples(2, n + 1);
      for (int k = 0; k <= n; ++k) {
        Real t = Real(k) / n;
        samples(0, k) = 1.0 + t * (2.0 + t * (3.0 + 4.0 * t));
        samples(1, k) = t * t;
      }
      Mat g = develop(SampledPath(ab, samples, false), R).matrix;
      // exact integrals of the cubic coordinates
      Vec expected(2);
      expected << 1.0 + 1.0 + 1.0 + 1.0, 1.0 / 3.0;
      Real err = std::max(std::abs(g(0, 2) - expected[0]),
                          std::abs(g(1, 2) - expected[1]));
      st.report.add("quadrature.exact_N" + std::to_string(n), err, 1e-13);
    }
    return;
  }
  throw IoError("unknown convergence check: " + which);
}

}  // namespace

RunResult run_command(const RunConfig& cfg) {
  RunResult out;
  CommandState st(cfg);
  try {
    if (cfg.command == "check-algebra")
      cmd_check_algebra(st);
    else if (cfg.command == "check-crossed-module")
      cmd_check_crossed_module(st);
    else if (cfg.command == "psi")
      cmd_psi(st);
    else if (cfg.command == "roundtrip")
      cmd_roundtrip(st);
    else if (cfg.command == "integrate-morphism")
      cmd_integrate_morphism(st);
    else if (cfg.command == "convergence")
      cmd_convergence(st);
    else
      throw IoError("unknown command: " + cfg.command);
  } catch (const IoError& e) {
    out.report = st.report;
    out.report.add_flag("input", false, e.what());
    out.exit_code = 2;
    return out;
  } catch (const DimensionError& e) {
    out.report = st.report;
    out.report.add_flag("input", false, e.what());
    out.exit_code = 2;
    return out;
  } catch (const PreconditionError& e) {
    out.report = st.report;
    out.report.add_flag("input", false, e.what());
    out.exit_code = 2;
    return out;
  } catch (const CheckFailure& e) {
    st.report.add_flag("refusal", false, e.what());
    out.report = st.report;
    out.exit_code = 1;
    return out;
  } catch (const io::json::exception& e) {
    out.report = st.report;
    out.report.add_flag("input", false, e.what());
    out.exit_code = 2;
    return out;
  }
  out.report = st.report;
  out.dump = st.dump.str();
  out.exit_code = st.report.overall() ? 0 : 1;
  return out;
}

}  // namespace cli
}  // namespace lie2
