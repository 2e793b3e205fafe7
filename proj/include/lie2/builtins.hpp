#pragma once

#include "lie2/groups.hpp"

namespace lie2 {
namespace builtins {

// --- algebras -------------------------------------------------------------

LieAlgebra abelian(int n, std::string label = {});
LieAlgebra so3();
LieAlgebra sl2();
LieAlgebra heisenberg3();

std::vector<std::string> algebra_names();
LieAlgebra algebra_by_name(const std::string& name);

// --- matrix realizations ---------------------------------------------------

/// R^n as translations, (n+1)x(n+1) upper-triangular blocks; simply
/// connected and faithful.
MatrixRealization translation_realization(AlgebraPtr abelian_algebra);

/// so(3) acting on R^3 (the adjoint picture); faithful, not simply
/// connected (the group is SO(3)).
MatrixRealization so3_vector_realization(AlgebraPtr so3_algebra);

/// so(3) by left quaternion multiplication on R^4; the developed group is
/// the unit quaternions, faithful and simply connected.
MatrixRealization so3_spin_realization(AlgebraPtr so3_algebra);

/// sl(2,R) in its defining 2x2 representation; faithful, not simply
/// connected.
MatrixRealization sl2_defining_realization(AlgebraPtr sl2_algebra);

/// Heisenberg algebra as strictly upper-triangular 3x3 matrices; simply
/// connected and faithful.
MatrixRealization heisenberg_realization(AlgebraPtr h3_algebra);

/// Der(k) acting tautologically on k.
MatrixRealization derivation_tautological_realization(
    std::shared_ptr<const DerivationCrossedModule> dcm);

/// Der(k) realized through a realization of k itself, for algebras whose
/// derivations are all inner (so(3), sl(2,R)). Inherits faithfulness and
/// simple-connectedness from the base realization.
MatrixRealization derivation_inner_realization(
    std::shared_ptr<const DerivationCrossedModule> dcm,
    const MatrixRealization& base);

// --- crossed modules of groups ----------------------------------------------

/// A built-in crossed module with chosen realizations, plus its derivation
/// data when applicable (needed by the extension converters).
struct BuiltinGcm {
  GcmPtr gcm;
  std::shared_ptr<const DerivationCrossedModule> derivation;  // may be null
};

/// Names: "abelian2", "so3-derivation", "sl2-derivation",
/// "heisenberg-derivation", "r3-derivation".
std::vector<std::string> gcm_names();
BuiltinGcm gcm_by_name(const std::string& name);

/// so(3) acting on R^3: the semidirect product so(3) |x R^3, optionally
/// with the section tilted by a linear map T: so(3) -> R^3 (which leaves
/// the extension unchanged but makes nu nonzero).
LieAlgebra so3_semidirect_r3();
Mat so3_r3_tilt();  // a fixed nonzero 3x3 tilt used by demos and tests

}  // namespace builtins
}  // namespace lie2
