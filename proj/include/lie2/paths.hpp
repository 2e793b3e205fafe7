#pragma once

#include "lie2/algebra.hpp"
#include "lie2/numeric.hpp"
#include "lie2/types.hpp"

namespace lie2 {

/// A path sampled on the uniform grid t_k = k/N; column k of `samples` is
/// the coordinate vector at t_k. `based` claims membership in the path
/// space with vanishing endpoints and flat end derivatives.
struct SampledPath {
  int dim = 0;
  Mat samples;  // dim x (N+1)
  bool based = false;
  AlgebraPtr algebra;  // may be null for plain vector-space values

  SampledPath() = default;
  SampledPath(AlgebraPtr alg, Mat s, bool based_flag);
  static SampledPath plain(int dim, Mat s, bool based_flag);

  int segments() const { return static_cast<int>(samples.cols()) - 1; }
  Vec value(Real t) const { return interp_columns(samples, t); }
  Real max_abs() const {
    return samples.size() ? samples.cwiseAbs().maxCoeff() : 0.0;
  }
};

/// Residuals of the based-path boundary conditions: endpoint norms and
/// one-sided end derivatives (which must be <= C*h for membership).
struct BasedReport {
  Real endpoint = 0;
  Real end_derivative = 0;
};

BasedReport based_residual(const SampledPath& p);

/// True when endpoints vanish (<= 1e-12) and the one-sided end derivatives
/// are below derivative_bound * h.
bool is_based(const SampledPath& p, Real derivative_bound = 10.0);

/// Concatenation q-then-p on a doubled grid:
/// 2 tau'(2t) q(tau(2t)) on [0,1/2], 2 tau'(2t-1) p(tau(2t-1)) on [1/2,1].
SampledPath concat(const SampledPath& p, const SampledPath& q,
                   const Cutoff& cut);

/// Concatenation of plain sample blocks (no algebra bookkeeping).
Mat concat_samples(const Mat& p, const Mat& q, const Cutoff& cut);

/// An element of the two-truncated path space: grids (a, b, z) over
/// [0,1]^2 with dt b - ds a = l2(a,b) + dM z and
/// b(0,s) = b(1,s) = z(0,s) = z(1,s) = 0.
struct BigonData {
  TwoAlgebraPtr context;
  Grid2 a;  // h0-valued
  Grid2 b;  // h0-valued
  Grid2 z;  // h1-valued

  int N() const { return a.N; }
  int M() const { return a.M; }

  SampledPath source_path() const;  // a(.,0)
  SampledPath target_path() const;  // a(.,1)
};

/// A 3-parameter equivalence datum between bigons: grids (a,b,c) in h0 and
/// (x,y,z) in h1 over [0,1]^3 subject to the four cube equations, with
/// c, x, y vanishing on the t- and s-faces and z on the t-faces.
struct CubeData {
  TwoAlgebraPtr context;
  Grid3 a, b, c;  // h0-valued
  Grid3 x, y, z;  // h1-valued
};

/// Default residual tolerance for grid data:
/// 10 * max(1,|c|_max) * max(1,|data|_max)^2 * (ht^2 + hs^2).
Real default_grid_tolerance(const StrictLie2Algebra& A, Real data_magnitude,
                            Real ht, Real hs);
Real bigon_tolerance(const BigonData& B);

/// Tolerance budget for bigons produced by reparametrization and
/// concatenation: the chain rule of the flat-ended cutoffs inflates the
/// finite-difference constant by a stable, refinement-independent factor
/// (measured ~16x worst case for horizontal composites).
inline constexpr Real kCompositeToleranceFactor = 32.0;

/// max over interior nodes of |dt b - ds a - [a,b]| (central differences).
Real g_homotopy_residual(const Grid2& a, const Grid2& b, const LieAlgebra& L);

/// max-norm residual of the defining bigon equation at interior nodes.
Real bigon_residual(const BigonData& B);

/// Exact boundary check: max |b|, |z| over the t-faces.
Real bigon_boundary_residual(const BigonData& B);

/// Throws CheckFailure unless bigon_residual(B) <= tol (default tolerance
/// when tol <= 0) and the boundary rows vanish exactly.
void require_valid_bigon(const BigonData& B, Real tol = 0.0);

struct CubeResiduals {
  Real eq_ab = 0;  // dt b - ds a = l2(a,b) + dM z
  Real eq_ac = 0;  // dt c - du a = l2(a,c) + dM y
  Real eq_bc = 0;  // ds c - du b = l2(b,c) + dM x
  Real eq_xyz = 0; // du z - ds y + dt x = l2(a,x) - l2(b,y) + l2(c,z)
  Real max() const;
};

CubeResiduals cube_residuals(const CubeData& C);

/// a^tau(t,s) = tau1'(t) a(tau1,tau2), b^tau = tau2'(s) b(tau1,tau2),
/// z^tau = tau1'(t) tau2'(s) z(tau1,tau2); same grid, class-preserving.
BigonData reparametrize_bigon(const BigonData& B, const Cutoff& tau1,
                              const Cutoff& tau2);

/// Concatenation in the s direction (B1 below, B2 above); requires the
/// target slice of B1 to equal the source slice of B2 node-wise.
BigonData vertical_concat(const BigonData& B1, const BigonData& B2,
                          const Cutoff& cut);

/// Concatenation in the t direction (Bd traversed first). Both inputs are
/// reparametrized by (cut, cut) so the piecewise assembly stays C^2, then
/// the [0,2] domain is rescaled back to [0,1].
BigonData horizontal_concat(const BigonData& B, const BigonData& Bd,
                            const Cutoff& cut);

/// Bilinear interior evaluation of a grid at arbitrary (t,s) via
/// tensor-product 4-point Lagrange stencils.
Vec interp_grid2(const Grid2& g, Real t, Real s);

/// Zeroes the stated exact-zero faces of a bigon (values there are
/// analytically zero after every constructor).
void enforce_bigon_boundary(BigonData& B);

}  // namespace lie2
