#pragma once

#include <optional>

#include "lie2/paths.hpp"

namespace lie2 {

/// A matrix realization of a Lie algebra: rho(e_i) = generators[i], an
/// m x m real matrix. `simply_connected` guards the soundness of comparing
/// homotopy classes by developed endpoints.
struct MatrixRealization {
  AlgebraPtr algebra;
  int rep_dim = 0;
  std::vector<Mat> generators;
  bool faithful = true;
  bool simply_connected = false;
  std::string label;

  MatrixRealization() = default;
  MatrixRealization(AlgebraPtr alg, std::vector<Mat> gens, bool faithful_,
                    bool simply_connected_, std::string label_ = {});

  Mat rho(const Vec& coords) const;
  /// max over basis pairs of |rho[x,y] - [rho x, rho y]|.
  Real commutation_residual() const;
};

using RealizationPtr = std::shared_ptr<const MatrixRealization>;

/// An element of the (connected, by construction) matrix group, together
/// with the path it was developed from when known.
struct GroupElement {
  Mat matrix;
  RealizationPtr realization;
  std::optional<SampledPath> source_path;

  static GroupElement identity(RealizationPtr R);
};

/// The frames g(t_k) of a developed path, with g(0) = I.
struct DevelopedPath {
  std::vector<Mat> frames;
  const Mat& endpoint() const { return frames.back(); }
};

/// Solves dg/dt = rho(a(t)) g, g(0) = I, with the classical 4-stage
/// one-step method; sample values between nodes come from cubic
/// interpolation. Endpoint error O(h^4) for smooth a.
DevelopedPath develop_frames(const SampledPath& a, const MatrixRealization& R);

/// develop_frames plus packaging of the endpoint as a GroupElement.
GroupElement develop(const SampledPath& a, RealizationPtr R);

/// True iff the developed endpoints differ by <= tol in max-norm. Equals
/// homotopy-class equality exactly when R.simply_connected; otherwise a
/// necessary condition only (see the report flag).
struct ClassComparison {
  bool equal = false;
  Real discrepancy = 0;
  bool sound = false;  // realization simply connected
};

ClassComparison path_class_equal(const SampledPath& p, const SampledPath& q,
                                 RealizationPtr R, Real tol);

/// Crossed module of Lie groups carried by matrix realizations of the
/// underlying algebra crossed module; the t map and the action Phi are
/// computed by development.
struct GrpCrossedModule {
  std::shared_ptr<const LieAlgCrossedModule> cm;
  TwoAlgebraPtr two_alg;  // crossed_module_to_2algebra(cm)
  RealizationPtr R0;
  RealizationPtr R1;
  std::string label;

  AlgebraPtr h0_algebra() const {
    return AlgebraPtr(cm, &cm->h0);
  }
  AlgebraPtr h1_algebra() const {
    return AlgebraPtr(cm, &cm->h1);
  }
};

using GcmPtr = std::shared_ptr<const GrpCrossedModule>;

GrpCrossedModule make_grp_crossed_module(
    std::shared_ptr<const LieAlgCrossedModule> cm, RealizationPtr R0,
    RealizationPtr R1, std::string label = {});

/// Pushes a path through a linear map node-wise (dt, dM, mu, ...).
SampledPath map_path(const Mat& matrix, const SampledPath& p,
                     AlgebraPtr target_algebra = nullptr);

/// Group-level t of an H1 element: development of dt composed with the
/// element's source path.
GroupElement t_map(const GroupElement& h, const GrpCrossedModule& gcm);

/// Endpoint w(1) of dw/dt = phi_{a(t)} w, w(0) = v.
Vec act_element(const SampledPath& a, const Vec& v,
                const LieAlgCrossedModule& cm);

/// s-family version: solves eqn (t,s) -> w with w(0,s) = v(s) per slice and
/// returns s -> w(1,s).
SampledPath act_path(const SampledPath& a, const SampledPath& v,
                     const LieAlgCrossedModule& cm);

/// Phi_{[a]}([v]): develops act_path(a, v) in R1 and returns its endpoint.
GroupElement Phi_action(const SampledPath& a, const SampledPath& v,
                        const GrpCrossedModule& gcm);

/// An arrow of the strict 2-group H0 x H1 => H0.
struct TwoGroupElt {
  GroupElement g;  // in H0
  GroupElement h;  // in H1
};

/// (g, h') .v (g, h) = (g, h' h) on composable arrows
/// (g' = t(h) g within tol).
TwoGroupElt two_group_vertical(const TwoGroupElt& x, const TwoGroupElt& y,
                               const GrpCrossedModule& gcm, Real tol = 1e-8);

/// (g, h) .h (g', h') = (g g', h Phi_g(h')).
TwoGroupElt two_group_horizontal(const TwoGroupElt& x, const TwoGroupElt& y,
                                 const GrpCrossedModule& gcm);

/// (source, target) = (g, t(h) g).
std::pair<GroupElement, GroupElement> source_target(const TwoGroupElt& x,
                                                    const GrpCrossedModule& gcm);

/// Residuals of the group-level crossed module equations on sampled paths.
struct GrpCrossedModuleReport {
  Real equivariance = 0;  // t Phi_g(h) = g t(h) g^-1
  Real peiffer = 0;       // Phi_{t(h)}(h') = h h' h^-1
  bool sound = false;     // both realizations simply connected
  Real max() const { return std::max(equivariance, peiffer); }
};

GrpCrossedModuleReport check_grp_crossed_module(const GrpCrossedModule& gcm,
                                                int sample_count, uint64_t seed,
                                                int grid_n = 256);

}  // namespace lie2
