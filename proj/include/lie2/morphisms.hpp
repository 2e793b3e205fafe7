#pragma once

#include "lie2/morita.hpp"

namespace lie2 {

/// A (possibly non-strict) morphism from a Lie algebra to a strict Lie
/// 2-algebra: a linear mu into h0 plus an antisymmetric bilinear nu into h1
/// measuring the failure of mu to be strict. nu[i].col(j) = nu(e_i, e_j).
struct LinfMorphism {
  AlgebraPtr source;
  TwoAlgebraPtr target;
  Mat mu;               // dim0 x dim_g
  std::vector<Mat> nu;  // dim_g entries, each dim1 x dim_g

  /// mu as a shape-checked linear map source -> h0.
  LinearMap mu_map() const {
    return LinearMap(source->dim(), target->dim0(), mu);
  }
  Vec nu_value(int i, int j) const { return nu[i].col(j); }
  Vec nu_bilinear(const Vec& X, const Vec& Y) const;
};

/// Builds the morphism and enforces strict antisymmetry of nu
/// (nu(e_j,e_i) := -nu(e_i,e_j) for i < j, zero diagonal).
LinfMorphism make_linf_morphism(AlgebraPtr source, TwoAlgebraPtr target,
                                Mat mu, std::vector<Mat> nu);

/// (r1, r2): max residuals of the two coherence equations
/// mu[X,Y] - l2(mu X, mu Y) = dM nu(X,Y) and
/// l2(mu X, nu(Y,Z)) + c.p. = nu([X,Y], Z) + c.p.
std::pair<Real, Real> morphism_residuals(const LinfMorphism& f);

/// Node-wise mu composed with a based path.
SampledPath pushforward_path(const LinfMorphism& f, const SampledPath& a);

/// Pushes a flat g-homotopy (a, b) to the bigon (mu a, mu b, nu(a, b)).
/// Throws CheckFailure when the input fails its g-homotopy residual.
BigonData pushforward_homotopy(const LinfMorphism& f, const Grid2& a,
                               const Grid2& b, Real tol = 0.0);

/// psi of the pushed-forward homotopy: the integrated morphism evaluated on
/// a representative.
TwoGroupElt integrate_morphism(const LinfMorphism& f, const Grid2& a,
                               const Grid2& b, const GrpCrossedModule& gcm,
                               Real tol = 0.0);

/// Basis-aligned splitting data for an extension g-hat of g by the ideal k:
/// which basis positions span k, and the section matrix
/// (hat_dim x g_dim, column j = the chosen lift of the j-th quotient
/// basis vector; its quotient part must be the identity).
struct SplittingData {
  std::vector<int> ideal_indices;
  Mat section;
};

SplittingData standard_splitting(int hat_dim,
                                 const std::vector<int>& ideal_indices);
/// The standard splitting shifted by a linear map T: g -> k.
SplittingData tilted_splitting(int hat_dim,
                               const std::vector<int>& ideal_indices,
                               const Mat& tilt);

/// extension_to_morphism output: the morphism into the derivation
/// 2-algebra of k together with the derived structures.
struct ExtensionMorphism {
  LinfMorphism morphism;
  std::shared_ptr<const DerivationCrossedModule> target_cm;
  LieAlgebra quotient;  // g with the induced quotient bracket
  LieAlgebra ideal;     // k with the restricted bracket
};

/// Reads mu(X) = [sigma X, .]|_k and nu(X,Y) = [sigma X, sigma Y] -
/// sigma([X,Y]_g) off the decomposition induced by the splitting. Throws
/// when the selected subspace is not an ideal (residual above tol).
ExtensionMorphism extension_to_morphism(const LieAlgebra& hat,
                                        const SplittingData& split,
                                        Real tol = 1e-10);

/// The extension assembled from a morphism into the derivation 2-algebra
/// of k, with the bracket
/// [X1+k1, X2+k2] = [X1,X2]_g + mu(X1)k2 - mu(X2)k1 + [k1,k2]_k + nu(X1,X2).
struct NonAbelianExtension {
  LieAlgebra hat;  // on g + k, g first
  LieAlgebra g;
  LieAlgebra k;
};

NonAbelianExtension morphism_to_extension(const LinfMorphism& f,
                                          const DerivationCrossedModule& target,
                                          Real tol = 1e-8);

/// A representation up to homotopy of g on a two-term complex: per-generator
/// actions (mu0, mu1) intertwining dM, plus nu into Hom(V0, V1).
struct RepUpToHomotopy {
  AlgebraPtr source;
  TwoTermComplex complex;
  std::vector<Mat> mu0;              // dim0 x dim0 per generator
  std::vector<Mat> mu1;              // dim1 x dim1 per generator
  std::vector<std::vector<Mat>> nu;  // nu[i][j]: dim1 x dim0
};

struct RepMorphismResult {
  LinfMorphism morphism;
  std::shared_ptr<const EndComplex> target;
  Real membership_residual;  // distance of (mu0, mu1) from End^0
};

RepMorphismResult rep_to_morphism(const RepUpToHomotopy& r);

}  // namespace lie2
