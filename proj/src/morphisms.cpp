#include "lie2/morphisms.hpp"

#include <algorithm>
#include <cmath>

namespace lie2 {

namespace {

Real inf_norm(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

Vec LinfMorphism::nu_bilinear(const Vec& X, const Vec& Y) const {
  Vec out = Vec::Zero(target->dim1);
  for (int i = 0; i < X.size(); ++i)
    if (X[i] != 0.0) out += X[i] * (nu[i] * Y);
  return out;
}

LinfMorphism make_linf_morphism(AlgebraPtr source, TwoAlgebraPtr target,
                                Mat mu, std::vector<Mat> nu) {
  const int ng = source->dim();
  const int n0 = target->dim0();
  const int n1 = target->dim1;
  if (mu.rows() != n0 || mu.cols() != ng)
    throw DimensionError("LinfMorphism: mu shape");
  if (static_cast<int>(nu.size()) != ng)
    throw DimensionError("LinfMorphism: nu slot count");
  for (Mat& m : nu)
    if (m.rows() != n1 || m.cols() != ng)
      throw DimensionError("LinfMorphism: nu slot shape");
  for (int i = 0; i < ng; ++i) {
    nu[i].col(i).setZero();
    for (int j = i + 1; j < ng; ++j) nu[j].col(i) = -nu[i].col(j);
  }
  LinfMorphism f;
  f.source = std::move(source);
  f.target = std::move(target);
  f.mu = std::move(mu);
  f.nu = std::move(nu);
  return f;
}

std::pair<Real, Real> morphism_residuals(const LinfMorphism& f) {
  const auto& g = *f.source;
  const auto& A = *f.target;
  const int ng = g.dim();
  Real r1 = 0, r2 = 0;
  for (int i = 0; i < ng; ++i)
    for (int j = i + 1; j < ng; ++j) {
      Vec lhs = f.mu * g.bracket(Vec::Unit(ng, i), Vec::Unit(ng, j)) -
                A.h0.bracket(f.mu.col(i), f.mu.col(j)) -
                A.dM * f.nu_value(i, j);
      r1 = std::max(r1, inf_norm(lhs));
    }
  for (int i = 0; i < ng; ++i)
    for (int j = i + 1; j < ng; ++j)
      for (int k = j + 1; k < ng; ++k) {
        Vec ei = Vec::Unit(ng, i), ej = Vec::Unit(ng, j), ek = Vec::Unit(ng, k);
        Vec lhs = A.act_matrix(f.mu.col(i)) * f.nu_value(j, k) +
                  A.act_matrix(f.mu.col(j)) * f.nu_value(k, i) +
                  A.act_matrix(f.mu.col(k)) * f.nu_value(i, j);
        Vec rhs = f.nu_bilinear(g.bracket(ei, ej), ek) +
                  f.nu_bilinear(g.bracket(ej, ek), ei) +
                  f.nu_bilinear(g.bracket(ek, ei), ej);
        r2 = std::max(r2, inf_norm(Vec(lhs - rhs)));
      }
  return {r1, r2};
}

SampledPath pushforward_path(const LinfMorphism& f, const SampledPath& a) {
  if (a.dim != f.source->dim())
    throw DimensionError("pushforward_path: path dim != source dim");
  AlgebraPtr h0(f.target, &f.target->h0);
  return SampledPath(h0, f.mu * a.samples, a.based);
}

BigonData pushforward_homotopy(const LinfMorphism& f, const Grid2& a,
                               const Grid2& b, Real tol) {
  const auto& g = *f.source;
  if (a.dim != g.dim() || !a.same_shape(b))
    throw DimensionError("pushforward_homotopy: grid shape");
  Real bnd = 0;
  for (int j = 0; j <= a.M; ++j) {
    bnd = std::max(bnd, inf_norm(b.at(0, j)));
    bnd = std::max(bnd, inf_norm(b.at(a.N, j)));
  }
  if (bnd > 1e-12)
    throw CheckFailure("pushforward_homotopy: b rows at the t-faces must vanish");
  Real res = g_homotopy_residual(a, b, g);
  Real mag = std::max(a.max_abs(), b.max_abs());
  Real effective = tol > 0 ? tol
                           : 10.0 * std::max(1.0, max_structure_constant(g)) *
                                 std::max(1.0, mag) * std::max(1.0, mag) *
                                 (1.0 / (a.N * a.N) + 1.0 / (a.M * a.M));
  if (res > effective)
    throw CheckFailure("pushforward_homotopy: g-homotopy residual " +
                       std::to_string(res) + " exceeds tolerance " +
                       std::to_string(effective));

  BigonData out;
  out.context = f.target;
  out.a = Grid2(f.target->dim0(), a.N, a.M);
  out.b = Grid2(f.target->dim0(), a.N, a.M);
  out.z = Grid2(f.target->dim1, a.N, a.M);
  out.a.data = f.mu * a.data;
  out.b.data = f.mu * b.data;
  for (int c = 0; c < out.z.data.cols(); ++c)
    out.z.data.col(c) = f.nu_bilinear(a.data.col(c), b.data.col(c));
  enforce_bigon_boundary(out);
  return out;
}

TwoGroupElt integrate_morphism(const LinfMorphism& f, const Grid2& a,
                               const Grid2& b, const GrpCrossedModule& gcm,
                               Real tol) {
  BigonData B = pushforward_homotopy(f, a, b, tol);
  return psi(B, gcm, tol).element;
}

SplittingData standard_splitting(int hat_dim,
                                 const std::vector<int>& ideal_indices) {
  SplittingData s;
  s.ideal_indices = ideal_indices;
  std::vector<bool> in_ideal(hat_dim, false);
  for (int idx : ideal_indices) in_ideal.at(idx) = true;
  const int ng = hat_dim - static_cast<int>(ideal_indices.size());
  s.section = Mat::Zero(hat_dim, ng);
  int col = 0;
  for (int i = 0; i < hat_dim; ++i)
    if (!in_ideal[i]) s.section(i, col++) = 1.0;
  return s;
}

SplittingData tilted_splitting(int hat_dim,
                               const std::vector<int>& ideal_indices,
                               const Mat& tilt) {
  SplittingData s = standard_splitting(hat_dim, ideal_indices);
  const int ng = static_cast<int>(s.section.cols());
  if (tilt.rows() != static_cast<int>(ideal_indices.size()) ||
      tilt.cols() != ng)
    throw DimensionError("tilted_splitting: tilt shape");
  for (int a = 0; a < static_cast<int>(ideal_indices.size()); ++a)
    s.section.row(ideal_indices[a]) += tilt.row(a);
  return s;
}

ExtensionMorphism extension_to_morphism(const LieAlgebra& hat,
                                        const SplittingData& split,
                                        Real tol) {
  const int n = hat.dim();
  const int nk = static_cast<int>(split.ideal_indices.size());
  const int ng = n - nk;
  std::vector<bool> in_ideal(n, false);
  for (int idx : split.ideal_indices) in_ideal.at(idx) = true;
  std::vector<int> comp;
  for (int i = 0; i < n; ++i)
    if (!in_ideal[i]) comp.push_back(i);
  if (split.section.rows() != n || split.section.cols() != ng)
    throw DimensionError("extension_to_morphism: section shape");

  auto k_part = [&](const Vec& v) {
    Vec out(nk);
    for (int a = 0; a < nk; ++a) out[a] = v[split.ideal_indices[a]];
    return out;
  };
  auto g_part = [&](const Vec& v) {
    Vec out(ng);
    for (int i = 0; i < ng; ++i) out[i] = v[comp[i]];
    return out;
  };
  // section must be a genuine lift: quotient part = identity
  for (int j = 0; j < ng; ++j) {
    Vec gp = g_part(split.section.col(j));
    if ((gp - Vec::Unit(ng, j)).cwiseAbs().maxCoeff() > 1e-12)
      throw PreconditionError(
          "extension_to_morphism: section is not a lift of the quotient basis");
  }

  // the selected subspace must be an ideal: [x, k] stays in k
  Real ideal_residual = 0;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < nk; ++a) {
      Vec br = hat.bracket(Vec::Unit(n, i),
                           Vec::Unit(n, split.ideal_indices[a]));
      ideal_residual = std::max(ideal_residual, inf_norm(g_part(br)));
    }
  if (ideal_residual > tol)
    throw CheckFailure("extension_to_morphism: selected subspace is not an "
                       "ideal, residual " + std::to_string(ideal_residual));

  ExtensionMorphism out;

  // k with the restricted bracket
  {
    std::vector<Mat> adk(nk, Mat::Zero(nk, nk));
    for (int a = 0; a < nk; ++a)
      for (int b = 0; b < nk; ++b) {
        Vec br = hat.bracket(Vec::Unit(n, split.ideal_indices[a]),
                             Vec::Unit(n, split.ideal_indices[b]));
        Vec kb = k_part(br);
        for (int c = 0; c < nk; ++c) adk[a](c, b) = kb[c];
      }
    out.ideal = LieAlgebra(hat.label() + "-ideal", nk, std::move(adk));
  }

  // quotient bracket through the section
  std::vector<Vec> sigma(ng);
  for (int j = 0; j < ng; ++j) sigma[j] = split.section.col(j);
  {
    std::vector<Mat> adg(ng, Mat::Zero(ng, ng));
    for (int i = 0; i < ng; ++i)
      for (int j = 0; j < ng; ++j) {
        Vec br = g_part(hat.bracket(sigma[i], sigma[j]));
        for (int c = 0; c < ng; ++c) adg[i](c, j) = br[c];
      }
    out.quotient = LieAlgebra(hat.label() + "-quotient", ng, std::move(adg));
  }

  auto dcm = std::make_shared<DerivationCrossedModule>(
      derivation_crossed_module(out.ideal));
  out.target_cm = dcm;
  auto target =
      std::make_shared<StrictLie2Algebra>(crossed_module_to_2algebra(dcm->cm));

  // mu(X) = [sigma X, .]|_k in Der(k) coordinates
  Mat mu(dcm->der_dim(), ng);
  for (int i = 0; i < ng; ++i) {
    Mat D(nk, nk);
    for (int b = 0; b < nk; ++b)
      D.col(b) = k_part(hat.bracket(
          sigma[i], Vec::Unit(n, split.ideal_indices[b])));
    Real res = 0;
    mu.col(i) = dcm->der_coordinates(D, &res);
    if (res > 1e-8)
      throw CheckFailure(
          "extension_to_morphism: induced action is not a derivation");
  }

  // nu(X,Y) = [sigma X, sigma Y] - sigma([X,Y]_g), valued in k
  std::vector<Mat> nu(ng, Mat::Zero(nk, ng));
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < ng; ++j) {
      Vec br = hat.bracket(sigma[i], sigma[j]);
      Vec qb = g_part(br);
      Vec lifted = split.section * qb;
      nu[i].col(j) = k_part(Vec(br - lifted));
    }

  auto source = std::make_shared<LieAlgebra>(out.quotient);
  out.morphism = make_linf_morphism(source, target, std::move(mu), std::move(nu));
  return out;
}

NonAbelianExtension morphism_to_extension(const LinfMorphism& f,
                                          const DerivationCrossedModule& target,
                                          Real tol) {
  auto [r1, r2] = morphism_residuals(f);
  if (std::max(r1, r2) > tol)
    throw CheckFailure("morphism_to_extension: coherence residuals (" +
                       std::to_string(r1) + ", " + std::to_string(r2) +
                       ") exceed tolerance");
  const LieAlgebra& g = *f.source;
  const LieAlgebra& k = target.cm.h1;
  const int ng = g.dim();
  const int nk = k.dim();
  const int n = ng + nk;

  // mu(e_i) as a concrete k-matrix
  std::vector<Mat> muk(ng);
  for (int i = 0; i < ng; ++i) {
    Mat D = Mat::Zero(nk, nk);
    for (int a = 0; a < target.der_dim(); ++a)
      D += f.mu(a, i) * target.der_basis[a];
    muk[i] = D;
  }

  std::vector<Mat> ad(n, Mat::Zero(n, n));
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < ng; ++j) {
      Vec bg = g.bracket(Vec::Unit(ng, i), Vec::Unit(ng, j));
      Vec bk = f.nu_value(i, j);
      for (int c = 0; c < ng; ++c) ad[i](c, j) = bg[c];
      for (int c = 0; c < nk; ++c) ad[i](ng + c, j) = bk[c];
    }
  for (int i = 0; i < ng; ++i)
    for (int b = 0; b < nk; ++b) {
      Vec v = muk[i].col(b);
      for (int c = 0; c < nk; ++c) {
        ad[i](ng + c, ng + b) = v[c];
        ad[ng + b](ng + c, i) = -v[c];
      }
    }
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b) {
      Vec bk = k.bracket(Vec::Unit(nk, a), Vec::Unit(nk, b));
      for (int c = 0; c < nk; ++c) ad[ng + a](ng + c, ng + b) = bk[c];
    }

  NonAbelianExtension out;
  out.g = g;
  out.k = k;
  out.hat = LieAlgebra(g.label() + "+" + k.label(), n, std::move(ad));
  if (jacobi_residual(out.hat) > 1e-10)
    throw CheckFailure(
        "morphism_to_extension: assembled bracket fails the Jacobi identity");
  return out;
}

RepMorphismResult rep_to_morphism(const RepUpToHomotopy& r) {
  const int ng = r.source->dim();
  auto end = std::make_shared<EndComplex>(end_complex(r.complex));
  auto target = std::make_shared<StrictLie2Algebra>(end->alg);

  RepMorphismResult out;
  out.target = end;
  out.membership_residual = 0;

  Mat mu(target->dim0(), ng);
  for (int i = 0; i < ng; ++i) {
    Real res = 0;
    mu.col(i) = end->deg0_coordinates(r.mu0[i], r.mu1[i], &res);
    out.membership_residual = std::max(out.membership_residual, res);
  }

  const int n0 = r.complex.dim0;
  const int n1 = r.complex.dim1;
  std::vector<Mat> nu(ng, Mat::Zero(n0 * n1, ng));
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < ng; ++j) {
      if (r.nu.empty()) break;
      const Mat& m = r.nu[i][j];
      nu[i].col(j) = Eigen::Map<const Vec>(m.data(), n0 * n1);
    }

  out.morphism = make_linf_morphism(r.source, target, std::move(mu),
                                    std::move(nu));
  return out;
}

}  // namespace lie2
