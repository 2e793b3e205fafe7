#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lie2/types.hpp"

namespace lie2 {

/// A finite-dimensional real Lie algebra given by structure constants in a
/// fixed basis: [e_i, e_j] = sum_k c[i][j][k] e_k. Stored as the adjoint
/// generators ad[i](k,j) = c[i][j][k] so that [x,y] = ad_matrix(x) * y.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::string label, int dim, std::vector<Mat> ad_generators);

  /// Build from the raw 3-index array c[i][j][k].
  static LieAlgebra from_structure_constants(
      std::string label, const std::vector<std::vector<std::vector<Real>>>& c);

  const std::string& label() const { return label_; }
  int dim() const { return dim_; }

  Real c(int i, int j, int k) const { return ad_[i](k, j); }
  const Mat& ad_generator(int i) const { return ad_[i]; }

  /// ad_x as a dim x dim matrix, ad_x y = [x, y].
  Mat ad_matrix(const Vec& x) const;
  Vec bracket(const Vec& x, const Vec& y) const;

  /// The raw structure constants as nested arrays (for serialization).
  std::vector<std::vector<std::vector<Real>>> structure_constants() const;

  bool same_structure(const LieAlgebra& other) const;

 private:
  std::string label_;
  int dim_ = 0;
  std::vector<Mat> ad_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// max |c[i][j][k] + c[j][i][k]| over all index triples.
Real antisymmetry_residual(const LieAlgebra& L);
/// max-norm of the Jacobi expression over all basis triples.
Real jacobi_residual(const LieAlgebra& L);
Real max_structure_constant(const LieAlgebra& L);

/// An element of a Lie algebra in basis coordinates.
struct AlgebraElement {
  AlgebraPtr algebra;
  Vec coords;

  AlgebraElement() = default;
  AlgebraElement(AlgebraPtr alg, Vec c);
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// A linear map between two based vector spaces, as a
/// target_dim x source_dim matrix.
struct LinearMap {
  int source_dim = 0;
  int target_dim = 0;
  Mat matrix;

  LinearMap() = default;
  LinearMap(int src, int tgt, Mat m);
};

/// Crossed module of Lie algebras (h1, h0, dt, phi): dt a morphism h1 -> h0,
/// phi an action of h0 on h1 by derivations satisfying equivariance and the
/// Peiffer identity. phi[u] is the matrix of phi_{e_u} on h1 coordinates.
struct LieAlgCrossedModule {
  std::string label;
  LieAlgebra h1;
  LieAlgebra h0;
  Mat dt;                // h0.dim x h1.dim
  std::vector<Mat> phi;  // one h1.dim x h1.dim matrix per h0 basis vector

  Mat phi_matrix(const Vec& u) const;  // sum_u u_a phi[a]
  /// dt as a shape-checked linear map h1 -> h0.
  LinearMap dt_map() const { return LinearMap(h1.dim(), h0.dim(), dt); }
};

/// Max residuals of the four crossed-module axioms.
struct CrossedModuleReport {
  Real derivation = 0;    // phi_u[m,n] = [phi_u m, n] + [m, phi_u n]
  Real action = 0;        // phi_{[u,v]} = phi_u phi_v - phi_v phi_u
  Real equivariance = 0;  // dt(phi_u m) = [u, dt m]
  Real peiffer = 0;       // phi_{dt m}(n) = [m, n]
  Real max() const;
};

CrossedModuleReport check_alg_crossed_module(const LieAlgCrossedModule& cm);

/// Strict Lie 2-algebra: two-term complex h1 -> h0 with l2 brackets and
/// vanishing l3. h0 carries l2_00 as its Lie bracket; act[u] is the matrix
/// of l2(e_u, -) on h1; l2 on h1 x h1 is identically zero.
struct StrictLie2Algebra {
  std::string label;
  LieAlgebra h0;  // bracket = l2_00
  int dim1 = 0;
  Mat dM;                // h0.dim x dim1
  std::vector<Mat> act;  // l2(e_u, -) on h1, one per h0 basis vector

  int dim0() const { return h0.dim(); }
  /// dM as a shape-checked linear map h1 -> h0.
  LinearMap dM_map() const { return LinearMap(dim1, h0.dim(), dM); }
  Mat act_matrix(const Vec& u) const;  // sum_u u_a act[a]
  Vec l2_mixed(const Vec& u, const Vec& m) const { return act_matrix(u) * m; }
  /// Reconstructed h1 bracket [m,n] = l2(dM m, n).
  Vec h1_bracket(const Vec& m, const Vec& n) const {
    return act_matrix(dM * m) * n;
  }
  /// max |entry| over l2_00 and act arrays.
  Real max_structure_constant() const;
};

using TwoAlgebraPtr = std::shared_ptr<const StrictLie2Algebra>;

struct TwoAlgebraReport {
  Real antisymmetry = 0;   // of l2_00
  Real jacobi = 0;         // of l2_00
  Real graded_jacobi = 0;  // l2(u,l2(v,m)) - l2(v,l2(u,m)) = l2(l2(u,v),m)
  Real equivariance = 0;   // dM l2(u,m) = l2(u, dM m)
  Real max() const;
};

TwoAlgebraReport check_strict_2algebra(const StrictLie2Algebra& A);

StrictLie2Algebra crossed_module_to_2algebra(const LieAlgCrossedModule& cm);

/// Inverse of crossed_module_to_2algebra; the h1 bracket is reconstructed
/// as [m,n] := l2(dM m, n). Throws CheckFailure if the reconstructed
/// bracket fails Jacobi beyond 1e-10.
LieAlgCrossedModule twoalgebra_to_crossed_module(const StrictLie2Algebra& A);

/// Semidirect product Lie algebra on h0 + h1 with
/// [u+m, v+n] = l2(u,v) + l2(u,n) - l2(v,m) + l2(dM m, n).
LieAlgebra semidirect(const StrictLie2Algebra& A);

/// Derivation crossed module (k, Der(k), ad, Id) together with the computed
/// basis of Der(k) inside gl(k). basis_vec stacks vec(D_a) as orthonormal
/// columns, so gl-matrices project onto Der coordinates exactly.
struct DerivationCrossedModule {
  LieAlgCrossedModule cm;
  std::vector<Mat> der_basis;  // D_a as k.dim x k.dim matrices
  Mat basis_vec;               // k.dim^2 x der_dim, orthonormal columns
  Real svd_threshold = 0;
  int der_dim() const { return static_cast<int>(der_basis.size()); }

  /// Coordinates of a gl(k) matrix in the Der basis; *residual (optional)
  /// reports the distance from span(Der).
  Vec der_coordinates(const Mat& D, Real* residual = nullptr) const;
};

/// Computes a basis of Der(k) from the nullspace of the derivation
/// constraints (singular values below `threshold` treated as zero) and
/// assembles the tautological crossed module (k, Der(k), ad, Id).
DerivationCrossedModule derivation_crossed_module(const LieAlgebra& k,
                                                  Real threshold = 1e-9);

/// A two-term complex of vector spaces V1 -> V0.
struct TwoTermComplex {
  int dim0 = 0;
  int dim1 = 0;
  Mat dM;  // dim0 x dim1

  TwoTermComplex() = default;
  TwoTermComplex(int d0, int d1, Mat m);
};

/// End(V) for a two-term complex: degree 0 = pairs (A0, A1) with
/// A0 dM = dM A1, degree 1 = Hom(V0, V1), commutator bracket, differential
/// m -> (dM m, m dM). Keeps the computed degree-0 basis for coordinates.
struct EndComplex {
  StrictLie2Algebra alg;
  TwoTermComplex complex;
  std::vector<std::pair<Mat, Mat>> basis0;  // (A0, A1) pairs
  Mat basis0_vec;  // stacked [vec A0; vec A1], orthonormal columns

  /// Coordinates of (A0, A1) in the degree-0 basis.
  Vec deg0_coordinates(const Mat& A0, const Mat& A1,
                       Real* residual = nullptr) const;
};

EndComplex end_complex(const TwoTermComplex& V);

/// Orthonormal nullspace basis of A (columns), singular values below
/// `threshold` treated as zero.
Mat nullspace(const Mat& A, Real threshold);

}  // namespace lie2
