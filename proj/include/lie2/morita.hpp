#pragma once

#include "lie2/groups.hpp"

namespace lie2 {

/// Solution grid of the correction ODE dt Db = l2(a, Db) - z, Db(0,s) = 0.
struct DeltaBGrid {
  Grid2 grid;  // h1-valued, same nodes as the source bigon

  /// The boundary datum s -> Db(1, s).
  Mat top_row() const { return grid.s_slice(grid.N); }
};

/// Core integrator behind solve_delta_b, usable on raw (a, z) grids.
Grid2 solve_correction(const Grid2& a, const Grid2& z,
                       const StrictLie2Algebra& A);

/// Per s-slice 4th-order integration of the correction ODE for a bigon.
DeltaBGrid solve_delta_b(const BigonData& B);

/// Residual of dt bt - ds a = [a, bt] with bt = b + dM Db.
Real corrected_residual(const BigonData& B, const DeltaBGrid& D);

struct ObstructionResult {
  bool ok = false;
  Real discrepancy = 0;
  bool sound = false;
};

/// Verifies that dM Db(1,-) concatenated after a(-,0) is class-equal to
/// a(-,1) in H0. Inputs whose z rows do not vanish at the s-faces are
/// normalized by a class-preserving s-reparametrization first.
ObstructionResult obstruction_check(const BigonData& B,
                                    const GrpCrossedModule& gcm,
                                    Real tol = 1e-5);

/// The image of a bigon under the Morita morphism: ([a0], [Db(1,-)])
/// together with diagnostics.
struct MoritaImage {
  TwoGroupElt element;
  Real bigon_residual = 0;
  Real corrected_residual = 0;
  ObstructionResult obstruction;
};

/// Psi_1. Refuses bigons whose defining-equation residual exceeds the
/// tolerance (default tolerance when tol <= 0).
MoritaImage psi(const BigonData& B, const GrpCrossedModule& gcm, Real tol = 0.0,
                bool with_diagnostics = false);

/// Discrepancy of the horizontal-multiplication identity
/// Db''(2,s) = Db(1,s) (.) w(1,s), evaluated pointwise on the rescaled grid.
Real horizontal_delta_identity(const BigonData& B, const BigonData& Bd,
                               const GrpCrossedModule& gcm);

enum class ComposeMode { Vertical, Horizontal };

/// Matrix-norm discrepancy between Psi(composite) and the corresponding
/// 2-group product of the Psi images.
Real psi_functoriality(const BigonData& B1, const BigonData& B2,
                       ComposeMode mode, const GrpCrossedModule& gcm);

/// Fiber data for the inverse map: paths a0, a1 and a representative db of
/// the H1 class, subject to [dM db (.) a0] = [a1].
struct ZetaInput {
  SampledPath a0;
  SampledPath a1;
  SampledPath db;
};

/// Inverse of varpi: builds a bigon with source slice a0 (node-exact),
/// target slice class-equal to a1, and Db(1,-) = db. Throws CheckFailure on
/// fiber-condition violation.
BigonData zeta(const ZetaInput& in, const GrpCrossedModule& gcm,
               Real class_tol = 1e-5);

/// ([a(-,0)], [Db(1,-)], a(-,0), a(-,1)).
struct VarpiImage {
  GroupElement h0_class;
  GroupElement h1_class;
  SampledPath source;
  SampledPath target;
};

VarpiImage varpi(const BigonData& B, const GrpCrossedModule& gcm);

/// Full consistency report of varpi(zeta(varpi(B))) against varpi(B), plus
/// the extension-independence cube residuals for two admissible extensions.
struct RoundtripReport {
  Real h0_endpoint_gap = 0;
  Real h1_endpoint_gap = 0;
  Real source_node_gap = 0;
  Real target_class_gap = 0;
  CubeResiduals extension_cube;
  Real cube_boundary = 0;  // exact-zero faces of the cube datum
  Real max_endpoint_gap() const;
};

RoundtripReport roundtrip(const BigonData& B, const GrpCrossedModule& gcm,
                          Real class_tol = 1e-5);

/// Class-preserving normalization: s-reparametrize by the quintic
/// smoothstep and zero the (already O(h^2)) z rows at the s-faces exactly.
BigonData normalize_bigon(const BigonData& B);

}  // namespace lie2
