#include "lie2/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lie2 {
namespace io {

namespace fs = std::filesystem;

json load_json_file(const std::string& path, std::string* bytes_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  std::string bytes = os.str();
  if (bytes_out) *bytes_out = bytes;
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded()) throw IoError("invalid JSON in " + path);
  return j;
}

json LoadContext::resolve(const json& j, std::string* new_base_dir) const {
  *new_base_dir = base_dir;
  if (!j.is_string()) return j;
  fs::path p(j.get<std::string>());
  if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
  std::string bytes;
  json loaded = load_json_file(p.string(), &bytes);
  if (stamps) stamps->push_back({p.string(), fnv1a_hex(bytes)});
  *new_base_dir = p.parent_path().string();
  return loaded;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw IoError("expected a non-empty nested array for a matrix");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols)
      throw IoError("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<Real>();
  }
  return m;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json algebra_to_json(const LieAlgebra& L) {
  json j;
  j["label"] = L.label();
  j["dim"] = L.dim();
  j["c"] = L.structure_constants();
  return j;
}

LieAlgebra parse_algebra(const json& spec, const LoadContext& ctx) {
  std::string dir;
  json j = ctx.resolve(spec, &dir);
  if (j.contains("builtin"))
    return builtins::algebra_by_name(j["builtin"].get<std::string>());
  if (!j.contains("dim") || !j.contains("c"))
    throw IoError("algebra definition needs 'dim' and 'c'");
  const int n = j["dim"].get<int>();
  auto c3 = j["c"].get<std::vector<std::vector<std::vector<Real>>>>();
  if (static_cast<int>(c3.size()) != n)
    throw IoError("algebra 'c' has wrong extent");
  std::string label = j.value("label", std::string("algebra"));
  return LieAlgebra::from_structure_constants(label, c3);
}

LoadedCrossedModule parse_crossed_module(const json& spec,
                                         const LoadContext& ctx) {
  std::string dir;
  json j = ctx.resolve(spec, &dir);
  LoadContext sub{dir, ctx.stamps};
  LoadedCrossedModule out;
  if (j.contains("builtin")) {
    auto b = builtins::gcm_by_name(j["builtin"].get<std::string>());
    out.cm = b.gcm->cm;
    out.derivation = b.derivation;
    return out;
  }
  if (j.contains("derivation_of")) {
    LieAlgebra k = parse_algebra(j["derivation_of"], sub);
    auto dcm = std::make_shared<DerivationCrossedModule>(
        derivation_crossed_module(k, j.value("svd_threshold", 1e-9)));
    out.cm = std::shared_ptr<const LieAlgCrossedModule>(dcm, &dcm->cm);
    out.derivation = dcm;
    return out;
  }
  auto cm = std::make_shared<LieAlgCrossedModule>();
  cm->label = j.value("label", std::string("crossed-module"));
  cm->h0 = parse_algebra(j.at("h0"), sub);
  cm->h1 = parse_algebra(j.at("h1"), sub);
  cm->dt = matrix_from_json(j.at("dt"));
  if (cm->dt.rows() != cm->h0.dim() || cm->dt.cols() != cm->h1.dim())
    throw IoError("crossed module 'dt' shape mismatch");
  auto phi3 = j.at("phi").get<std::vector<std::vector<std::vector<Real>>>>();
  if (static_cast<int>(phi3.size()) != cm->h0.dim())
    throw IoError("crossed module 'phi' has wrong extent");
  const int n1 = cm->h1.dim();
  cm->phi.assign(cm->h0.dim(), Mat::Zero(n1, n1));
  for (int u = 0; u < cm->h0.dim(); ++u) {
    if (static_cast<int>(phi3[u].size()) != n1)
      throw IoError("crossed module 'phi' has wrong extent");
    for (int m = 0; m < n1; ++m) {
      if (static_cast<int>(phi3[u][m].size()) != n1)
        throw IoError("crossed module 'phi' has wrong extent");
      for (int n = 0; n < n1; ++n) cm->phi[u](n, m) = phi3[u][m][n];
    }
  }
  out.cm = cm;
  return out;
}

MatrixRealization parse_realization(const json& spec, AlgebraPtr algebra,
                                    const LoadContext& ctx) {
  std::string dir;
  json j = ctx.resolve(spec, &dir);
  auto gens3 =
      j.at("generators").get<std::vector<std::vector<std::vector<Real>>>>();
  std::vector<Mat> gens;
  gens.reserve(gens3.size());
  for (const auto& g : gens3) {
    const int m = static_cast<int>(g.size());
    Mat gm(m, m);
    for (int r = 0; r < m; ++r) {
      if (static_cast<int>(g[r].size()) != m)
        throw IoError("realization generator is not square");
      for (int c = 0; c < m; ++c) gm(r, c) = g[r][c];
    }
    gens.push_back(gm);
  }
  return MatrixRealization(std::move(algebra), std::move(gens),
                           j.value("faithful", true),
                           j.value("simply_connected", false),
                           j.value("label", std::string("realization")));
}

builtins::BuiltinGcm parse_gcm(const json& spec, const LoadContext& ctx) {
  std::string dir;
  json j = ctx.resolve(spec, &dir);
  LoadContext sub{dir, ctx.stamps};
  if (j.is_string() || j.contains("builtin")) {
    std::string name = j.is_string() ? j.get<std::string>()
                                     : j["builtin"].get<std::string>();
    return builtins::gcm_by_name(name);
  }
  LoadedCrossedModule lcm = parse_crossed_module(j.at("crossed_module"), sub);
  builtins::BuiltinGcm out;
  out.derivation = lcm.derivation;
  AlgebraPtr h0(lcm.cm, &lcm.cm->h0);
  AlgebraPtr h1(lcm.cm, &lcm.cm->h1);
  auto R0 = std::make_shared<MatrixRealization>(
      parse_realization(j.at("R0"), h0, sub));
  auto R1 = std::make_shared<MatrixRealization>(
      parse_realization(j.at("R1"), h1, sub));
  out.gcm = std::make_shared<GrpCrossedModule>(make_grp_crossed_module(
      lcm.cm, R0, R1, j.value("label", std::string("crossed-module"))));
  return out;
}

SampledPath parse_path(const json& j, AlgebraPtr algebra, int N) {
  std::string type = j.value("type", std::string("fourier"));
  if (type == "samples") {
    auto vals = j.at("values").get<std::vector<std::vector<Real>>>();
    const int nodes = static_cast<int>(vals.size());
    if (nodes < 2) throw IoError("path needs at least two sample nodes");
    const int dim = static_cast<int>(vals[0].size());
    Mat s(dim, nodes);
    for (int k = 0; k < nodes; ++k) {
      if (static_cast<int>(vals[k].size()) != dim)
        throw IoError("ragged path samples");
      for (int d = 0; d < dim; ++d) s(d, k) = vals[k][d];
    }
    SampledPath p(algebra, s, false);
    p.based = j.value("based", is_based(p));
    return p;
  }
  Mat coeffs = matrix_from_json(j.at("coeffs"));
  bool envelope = j.value("based_envelope", type == "fourier");
  const int dim = static_cast<int>(coeffs.rows());
  Mat s(dim, N + 1);
  for (int k = 0; k <= N; ++k) {
    Real t = Real(k) / N;
    Vec v = Vec::Zero(dim);
    for (int c = 0; c < coeffs.cols(); ++c) {
      Real basis = type == "poly" ? std::pow(t, c)
                                  : std::cos(c * 3.14159265358979323846 * t);
      v += coeffs.col(c) * basis;
    }
    Real env = envelope ? t * t * (1.0 - t) * (1.0 - t) : 1.0;
    s.col(k) = env * v;
  }
  SampledPath p(algebra, s, false);
  p.based = is_based(p);
  return p;
}

namespace {

Grid2 grid_from_json(const json& j, int dim) {
  auto vals = j.get<std::vector<std::vector<std::vector<Real>>>>();
  const int N = static_cast<int>(vals.size()) - 1;
  const int M = static_cast<int>(vals[0].size()) - 1;
  Grid2 g(dim, N, M);
  for (int i = 0; i <= N; ++i) {
    if (static_cast<int>(vals[i].size()) != M + 1)
      throw IoError("ragged bigon grid");
    for (int jj = 0; jj <= M; ++jj) {
      if (static_cast<int>(vals[i][jj].size()) != dim)
        throw IoError("bigon grid coordinate length");
      for (int d = 0; d < dim; ++d) g.at(i, jj)[d] = vals[i][jj][d];
    }
  }
  return g;
}

}  // namespace

BigonData parse_bigon(const json& j, TwoAlgebraPtr context,
                      const GridSpec& grid) {
  std::string type = j.value("type", std::string("generated"));
  if (type == "generated") {
    uint64_t seed = j.value("seed", 7u);
    Real amplitude = j.value("amplitude", 0.2);
    int modes = j.value("modes", 2);
    BigonGenerator gen =
        BigonGenerator::random(context, seed, amplitude, modes);
    return gen.build(grid.N, grid.M);
  }
  if (type == "zero") {
    BigonData B;
    B.context = context;
    B.a = Grid2(context->dim0(), grid.N, grid.M);
    B.b = Grid2(context->dim0(), grid.N, grid.M);
    B.z = Grid2(context->dim1, grid.N, grid.M);
    return B;
  }
  if (type != "samples") throw IoError("unknown bigon type: " + type);
  BigonData B;
  B.context = context;
  B.a = grid_from_json(j.at("a"), context->dim0());
  B.b = grid_from_json(j.at("b"), context->dim0());
  B.z = grid_from_json(j.at("z"), context->dim1);
  if (!B.a.same_shape(B.b) || B.a.N != B.z.N || B.a.M != B.z.M)
    throw IoError("bigon grids have inconsistent shapes");
  return B;
}

LoadedMorphism parse_morphism(const json& spec, const LoadContext& ctx) {
  std::string dir;
  json j = ctx.resolve(spec, &dir);
  LoadContext sub{dir, ctx.stamps};
  LoadedMorphism out;
  if (j.contains("extension")) {
    const json& e = j["extension"];
    LieAlgebra hat = parse_algebra(e.at("hat"), sub);
    auto ideal = e.at("ideal_indices").get<std::vector<int>>();
    SplittingData split;
    if (e.contains("section")) {
      split.ideal_indices = ideal;
      split.section = matrix_from_json(e["section"]);
    } else if (e.contains("tilt")) {
      split = tilted_splitting(hat.dim(), ideal, matrix_from_json(e["tilt"]));
    } else {
      split = standard_splitting(hat.dim(), ideal);
    }
    ExtensionMorphism em = extension_to_morphism(hat, split);
    out.morphism = em.morphism;
    out.target_cm = em.target_cm;
    return out;
  }
  LieAlgebra source = parse_algebra(j.at("source"), sub);
  LoadedCrossedModule target = parse_crossed_module(j.at("target"), sub);
  auto source_ptr = std::make_shared<LieAlgebra>(source);
  auto two_alg = std::make_shared<StrictLie2Algebra>(
      crossed_module_to_2algebra(*target.cm));
  Mat mu = matrix_from_json(j.at("mu"));
  const int ng = source.dim();
  const int n1 = target.cm->h1.dim();
  std::vector<Mat> nu(ng, Mat::Zero(n1, ng));
  if (j.contains("nu")) {
    auto nu3 = j["nu"].get<std::vector<std::vector<std::vector<Real>>>>();
    if (static_cast<int>(nu3.size()) != ng)
      throw IoError("morphism 'nu' has wrong extent");
    for (int i = 0; i < ng; ++i)
      for (int jj = 0; jj < ng; ++jj)
        for (int k = 0; k < n1; ++k) nu[i](k, jj) = nu3[i][jj][k];
  }
  out.morphism = make_linf_morphism(source_ptr, two_alg, mu, nu);
  out.target_cm = target.derivation;
  return out;
}

}  // namespace io
}  // namespace lie2
