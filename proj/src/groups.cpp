#include "lie2/groups.hpp"

#include <cmath>

#include "lie2/sampling.hpp"

namespace lie2 {

MatrixRealization::MatrixRealization(AlgebraPtr alg, std::vector<Mat> gens,
                                     bool faithful_, bool simply_connected_,
                                     std::string label_)
    : algebra(std::move(alg)), generators(std::move(gens)), faithful(faithful_),
      simply_connected(simply_connected_), label(std::move(label_)) {
  if (!algebra) throw PreconditionError("MatrixRealization: null algebra");
  if (static_cast<int>(generators.size()) != algebra->dim())
    throw DimensionError("MatrixRealization: generator count != algebra dim");
  rep_dim = generators.empty() ? 0 : static_cast<int>(generators[0].rows());
  for (const Mat& g : generators)
    if (g.rows() != rep_dim || g.cols() != rep_dim)
      throw DimensionError("MatrixRealization: generator shape mismatch");
}

Mat MatrixRealization::rho(const Vec& coords) const {
  if (coords.size() != algebra->dim())
    throw DimensionError("rho: coordinate length");
  Mat out = Mat::Zero(rep_dim, rep_dim);
  for (int i = 0; i < coords.size(); ++i)
    if (coords[i] != 0.0) out += coords[i] * generators[i];
  return out;
}

Real MatrixRealization::commutation_residual() const {
  const int n = algebra->dim();
  Real r = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat lhs = rho(algebra->bracket(Vec::Unit(n, i), Vec::Unit(n, j)));
      Mat rhs = generators[i] * generators[j] - generators[j] * generators[i];
      r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return r;
}

GroupElement GroupElement::identity(RealizationPtr R) {
  GroupElement e;
  e.realization = R;
  e.matrix = Mat::Identity(R->rep_dim, R->rep_dim);
  Mat zero = Mat::Zero(R->algebra->dim(), 9);
  e.source_path = SampledPath(R->algebra, zero, true);
  return e;
}

namespace {

// One classical 4-stage step of dX/dt = A(t) X over [t, t+h]; A_mid comes
// from cubic interpolation of the samples.
template <typename State, typename Rhs>
State rk4_step(const State& x, Real t, Real h, const Rhs& rhs) {
  State k1 = rhs(t, x);
  State k2 = rhs(t + 0.5 * h, State(x + 0.5 * h * k1));
  State k3 = rhs(t + 0.5 * h, State(x + 0.5 * h * k2));
  State k4 = rhs(t + h, State(x + h * k3));
  return State(x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace

DevelopedPath develop_frames(const SampledPath& a, const MatrixRealization& R) {
  if (a.dim != R.algebra->dim())
    throw DimensionError("develop: path dim != realization algebra dim");
  const int N = a.segments();
  const Real h = 1.0 / N;
  DevelopedPath out;
  out.frames.reserve(N + 1);
  Mat g = Mat::Identity(R.rep_dim, R.rep_dim);
  out.frames.push_back(g);
  auto rhs = [&](Real t, const Mat& x) -> Mat {
    return R.rho(interp_columns(a.samples, t)) * x;
  };
  for (int k = 0; k < N; ++k) {
    g = rk4_step(g, Real(k) * h, h, rhs);
    out.frames.push_back(g);
  }
  return out;
}

GroupElement develop(const SampledPath& a, RealizationPtr R) {
  GroupElement e;
  e.realization = R;
  e.matrix = develop_frames(a, *R).endpoint();
  e.source_path = a;
  return e;
}

ClassComparison path_class_equal(const SampledPath& p, const SampledPath& q,
                                 RealizationPtr R, Real tol) {
  ClassComparison out;
  Mat gp = develop_frames(p, *R).endpoint();
  Mat gq = develop_frames(q, *R).endpoint();
  out.discrepancy = (gp - gq).cwiseAbs().maxCoeff();
  out.equal = out.discrepancy <= tol;
  out.sound = R->simply_connected;
  return out;
}

GrpCrossedModule make_grp_crossed_module(
    std::shared_ptr<const LieAlgCrossedModule> cm, RealizationPtr R0,
    RealizationPtr R1, std::string label) {
  GrpCrossedModule g;
  g.cm = cm;
  g.two_alg = std::make_shared<StrictLie2Algebra>(crossed_module_to_2algebra(*cm));
  g.R0 = std::move(R0);
  g.R1 = std::move(R1);
  g.label = label.empty() ? cm->label : std::move(label);
  if (g.R0->algebra->dim() != cm->h0.dim() ||
      g.R1->algebra->dim() != cm->h1.dim())
    throw DimensionError("GrpCrossedModule: realization dims do not match");
  return g;
}

SampledPath map_path(const Mat& matrix, const SampledPath& p,
                     AlgebraPtr target_algebra) {
  if (matrix.cols() != p.dim) throw DimensionError("map_path: shape mismatch");
  return SampledPath(std::move(target_algebra), matrix * p.samples, p.based);
}

GroupElement t_map(const GroupElement& h, const GrpCrossedModule& gcm) {
  if (!h.source_path)
    throw PreconditionError("t_map: H1 element carries no source path");
  SampledPath pushed = map_path(gcm.cm->dt, *h.source_path, gcm.h0_algebra());
  return develop(pushed, gcm.R0);
}

Vec act_element(const SampledPath& a, const Vec& v,
                const LieAlgCrossedModule& cm) {
  if (a.dim != cm.h0.dim() || v.size() != cm.h1.dim())
    throw DimensionError("act_element: dimensions");
  const int N = a.segments();
  const Real h = 1.0 / N;
  Vec w = v;
  auto rhs = [&](Real t, const Vec& x) -> Vec {
    return cm.phi_matrix(interp_columns(a.samples, t)) * x;
  };
  for (int k = 0; k < N; ++k) w = rk4_step(w, Real(k) * h, h, rhs);
  return w;
}

SampledPath act_path(const SampledPath& a, const SampledPath& v,
                     const LieAlgCrossedModule& cm) {
  if (v.dim != cm.h1.dim()) throw DimensionError("act_path: h1 dimension");
  const int M = v.segments();
  Mat out(v.dim, M + 1);
  for (int j = 0; j <= M; ++j)
    out.col(j) = act_element(a, v.samples.col(j), cm);
  return SampledPath(v.algebra, std::move(out), v.based);
}

GroupElement Phi_action(const SampledPath& a, const SampledPath& v,
                        const GrpCrossedModule& gcm) {
  SampledPath w = act_path(a, v, *gcm.cm);
  return develop(w, gcm.R1);
}

TwoGroupElt two_group_vertical(const TwoGroupElt& x, const TwoGroupElt& y,
                               const GrpCrossedModule& gcm, Real tol) {
  // x = (g', h'), y = (g, h) with g' = t(h) g
  GroupElement th = t_map(y.h, gcm);
  Mat expected = th.matrix * y.g.matrix;
  Real gap = (x.g.matrix - expected).cwiseAbs().maxCoeff();
  if (gap > tol)
    throw PreconditionError("two_group_vertical: arrows not composable, gap " +
                            std::to_string(gap));
  TwoGroupElt out;
  out.g = y.g;
  out.h.realization = x.h.realization;
  out.h.matrix = x.h.matrix * y.h.matrix;
  if (x.h.source_path && y.h.source_path) {
    Cutoff cut = Cutoff::make(CutoffKind::SmoothstepQuintic, 8);
    if (is_based(*x.h.source_path) && is_based(*y.h.source_path))
      out.h.source_path = concat(*x.h.source_path, *y.h.source_path, cut);
  }
  return out;
}

TwoGroupElt two_group_horizontal(const TwoGroupElt& x, const TwoGroupElt& y,
                                 const GrpCrossedModule& gcm) {
  if (!x.g.source_path)
    throw PreconditionError("two_group_horizontal: g has no source path");
  if (!y.h.source_path)
    throw PreconditionError("two_group_horizontal: h' has no source path");
  GroupElement phi = Phi_action(*x.g.source_path, *y.h.source_path, gcm);
  TwoGroupElt out;
  out.g.realization = x.g.realization;
  out.g.matrix = x.g.matrix * y.g.matrix;
  if (x.g.source_path && y.g.source_path && is_based(*x.g.source_path) &&
      is_based(*y.g.source_path)) {
    Cutoff cut = Cutoff::make(CutoffKind::SmoothstepQuintic, 8);
    out.g.source_path = concat(*x.g.source_path, *y.g.source_path, cut);
  }
  out.h.realization = x.h.realization;
  out.h.matrix = x.h.matrix * phi.matrix;
  if (x.h.source_path && phi.source_path && is_based(*x.h.source_path) &&
      is_based(*phi.source_path)) {
    Cutoff cut = Cutoff::make(CutoffKind::SmoothstepQuintic, 8);
    out.h.source_path = concat(*x.h.source_path, *phi.source_path, cut);
  }
  return out;
}

std::pair<GroupElement, GroupElement> source_target(const TwoGroupElt& x,
                                                    const GrpCrossedModule& gcm) {
  GroupElement th = t_map(x.h, gcm);
  GroupElement target;
  target.realization = x.g.realization;
  target.matrix = th.matrix * x.g.matrix;
  return {x.g, target};
}

GrpCrossedModuleReport check_grp_crossed_module(const GrpCrossedModule& gcm,
                                                int sample_count, uint64_t seed,
                                                int grid_n) {
  SeededRng rng(seed);
  GrpCrossedModuleReport rep;
  rep.sound = gcm.R0->simply_connected && gcm.R1->simply_connected;
  AlgebraPtr h0 = gcm.h0_algebra();
  AlgebraPtr h1 = gcm.h1_algebra();
  const int n0 = gcm.cm->h0.dim();
  const int n1 = gcm.cm->h1.dim();

  for (int s = 0; s < sample_count; ++s) {
    SampledPath a = PathGenerator::random(n0, rng, 3, 0.5).path(h0, grid_n);
    SampledPath v = PathGenerator::random(n1, rng, 3, 0.5).path(h1, grid_n);
    SampledPath vp = PathGenerator::random(n1, rng, 3, 0.5).path(h1, grid_n);

    Mat g = develop_frames(a, *gcm.R0).endpoint();
    Mat hmat = develop_frames(v, *gcm.R1).endpoint();
    Mat hpmat = develop_frames(vp, *gcm.R1).endpoint();

    // t is H0-equivariant: t(Phi_g(h)) = g t(h) g^-1
    SampledPath w = act_path(a, v, *gcm.cm);
    Mat lhs1 =
        develop_frames(map_path(gcm.cm->dt, w, h0), *gcm.R0).endpoint();
    Mat th = develop_frames(map_path(gcm.cm->dt, v, h0), *gcm.R0).endpoint();
    Mat rhs1 = g * th * g.inverse();
    rep.equivariance =
        std::max(rep.equivariance, (lhs1 - rhs1).cwiseAbs().maxCoeff());

    // Peiffer identity: Phi_{t(h)}(h') = h h' h^-1
    SampledPath tv = map_path(gcm.cm->dt, v, h0);
    SampledPath wp = act_path(tv, vp, *gcm.cm);
    Mat lhs2 = develop_frames(wp, *gcm.R1).endpoint();
    Mat rhs2 = hmat * hpmat * hmat.inverse();
    rep.peiffer = std::max(rep.peiffer, (lhs2 - rhs2).cwiseAbs().maxCoeff());
  }
  return rep;
}

}  // namespace lie2
