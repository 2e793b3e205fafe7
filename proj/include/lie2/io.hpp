#pragma once

#include <json.hpp>

#include "lie2/builtins.hpp"
#include "lie2/morphisms.hpp"
#include "lie2/report.hpp"
#include "lie2/sampling.hpp"

namespace lie2 {

/// Problems reading or interpreting definition files.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace io {

using nlohmann::json;

/// Tracks the directory for relative references and records input stamps.
struct LoadContext {
  std::string base_dir;
  std::vector<InputStamp>* stamps = nullptr;

  /// If `j` is a string it names a file (relative to base_dir): load it,
  /// stamp it, and return its parsed content with the new base directory.
  json resolve(const json& j, std::string* new_base_dir) const;
};

json load_json_file(const std::string& path, std::string* bytes_out = nullptr);

/// Algebra definition: {"builtin": name} or {"label", "dim", "c"} with
/// c[i][j][k] the structure constants.
LieAlgebra parse_algebra(const json& j, const LoadContext& ctx);

/// Crossed module: {"builtin": name}, {"derivation_of": <algebra>} or
/// {"h0", "h1", "dt", "phi"} with dt[u][m] (row u, column m) and
/// phi[u][m][n] meaning phi_{e_u}(f_m) = sum_n phi[u][m][n] f_n.
struct LoadedCrossedModule {
  std::shared_ptr<const LieAlgCrossedModule> cm;
  std::shared_ptr<const DerivationCrossedModule> derivation;  // when built
};
LoadedCrossedModule parse_crossed_module(const json& j, const LoadContext& ctx);

/// Realization: {"rep_dim", "generators", "faithful", "simply_connected"}.
MatrixRealization parse_realization(const json& j, AlgebraPtr algebra,
                                    const LoadContext& ctx);

/// Group-level crossed module: {"builtin": name} or
/// {"crossed_module": ..., "R0": ..., "R1": ...}.
builtins::BuiltinGcm parse_gcm(const json& j, const LoadContext& ctx);

/// Path descriptor sampled onto an N-grid:
///   {"type": "samples", "values": [[..per node..]]}
///   {"type": "fourier", "coeffs": [[..per coordinate..]],
///    "based_envelope": true}   a_i = env * sum_k c_ik cos(k pi t)
///   {"type": "poly", "coeffs": [[..]], "based_envelope": false}
SampledPath parse_path(const json& j, AlgebraPtr algebra, int N);

/// Bigon descriptor: {"type": "generated", "seed", "amplitude", "modes"} or
/// {"type": "samples", "a", "b", "z"} with a[i][j] a coordinate vector.
BigonData parse_bigon(const json& j, TwoAlgebraPtr context,
                      const GridSpec& grid);

/// Morphism input: either {"extension": {"hat": <algebra>,
/// "ideal_indices": [..], "tilt"?: [[..]], "section"?: [[..]]}} or
/// {"source": <algebra>, "target": <crossed module>, "mu": [[..]],
/// "nu": [[[..]]]} with nu[i][j] an h1 coordinate vector.
struct LoadedMorphism {
  LinfMorphism morphism;
  std::shared_ptr<const DerivationCrossedModule> target_cm;
};
LoadedMorphism parse_morphism(const json& j, const LoadContext& ctx);

json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

json algebra_to_json(const LieAlgebra& L);

}  // namespace io
}  // namespace lie2
