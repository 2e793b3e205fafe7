#include "lie2/builtins.hpp"

#include <Eigen/Dense>

namespace lie2 {
namespace builtins {

LieAlgebra abelian(int n, std::string label) {
  std::vector<Mat> ad(n, Mat::Zero(n, n));
  return LieAlgebra(label.empty() ? "abelian" + std::to_string(n) : label, n,
                    std::move(ad));
}

LieAlgebra so3() {
  // [e1,e2] = e3 and cyclic (Levi-Civita structure constants)
  std::vector<std::vector<std::vector<Real>>> c(
      3, std::vector<std::vector<Real>>(3, std::vector<Real>(3, 0.0)));
  c[0][1][2] = 1.0;
  c[1][0][2] = -1.0;
  c[1][2][0] = 1.0;
  c[2][1][0] = -1.0;
  c[2][0][1] = 1.0;
  c[0][2][1] = -1.0;
  return LieAlgebra::from_structure_constants("so3", c);
}

LieAlgebra sl2() {
  // basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
  std::vector<std::vector<std::vector<Real>>> c(
      3, std::vector<std::vector<Real>>(3, std::vector<Real>(3, 0.0)));
  c[0][1][1] = 2.0;
  c[1][0][1] = -2.0;
  c[0][2][2] = -2.0;
  c[2][0][2] = 2.0;
  c[1][2][0] = 1.0;
  c[2][1][0] = -1.0;
  return LieAlgebra::from_structure_constants("sl2", c);
}

LieAlgebra heisenberg3() {
  std::vector<std::vector<std::vector<Real>>> c(
      3, std::vector<std::vector<Real>>(3, std::vector<Real>(3, 0.0)));
  c[0][1][2] = 1.0;
  c[1][0][2] = -1.0;
  return LieAlgebra::from_structure_constants("heisenberg3", c);
}

std::vector<std::string> algebra_names() {
  return {"abelian2", "abelian3", "so3", "sl2", "heisenberg3"};
}

LieAlgebra algebra_by_name(const std::string& name) {
  if (name == "abelian2") return abelian(2);
  if (name == "abelian3") return abelian(3);
  if (name == "so3") return so3();
  if (name == "sl2") return sl2();
  if (name == "heisenberg3") return heisenberg3();
  throw PreconditionError("unknown builtin algebra: " + name);
}

MatrixRealization translation_realization(AlgebraPtr abelian_algebra) {
  const int n = abelian_algebra->dim();
  std::vector<Mat> gens;
  gens.reserve(n);
  for (int i = 0; i < n; ++i) {
    Mat g = Mat::Zero(n + 1, n + 1);
    g(i, n) = 1.0;
    gens.push_back(g);
  }
  return MatrixRealization(std::move(abelian_algebra), std::move(gens), true,
                           true, "translations");
}

MatrixRealization so3_vector_realization(AlgebraPtr so3_algebra) {
  std::vector<Mat> gens(3, Mat::Zero(3, 3));
  gens[0](1, 2) = -1.0, gens[0](2, 1) = 1.0;
  gens[1](0, 2) = 1.0, gens[1](2, 0) = -1.0;
  gens[2](0, 1) = -1.0, gens[2](1, 0) = 1.0;
  return MatrixRealization(std::move(so3_algebra), std::move(gens), true, false,
                           "so3-vector");
}

MatrixRealization so3_spin_realization(AlgebraPtr so3_algebra) {
  // left multiplication by i/2, j/2, k/2 on quaternions (basis 1, i, j, k)
  Mat Li = Mat::Zero(4, 4), Lj = Mat::Zero(4, 4), Lk = Mat::Zero(4, 4);
  Li(1, 0) = 1, Li(0, 1) = -1, Li(3, 2) = 1, Li(2, 3) = -1;
  Lj(2, 0) = 1, Lj(3, 1) = -1, Lj(0, 2) = -1, Lj(1, 3) = 1;
  Lk(3, 0) = 1, Lk(2, 1) = 1, Lk(1, 2) = -1, Lk(0, 3) = -1;
  std::vector<Mat> gens = {0.5 * Li, 0.5 * Lj, 0.5 * Lk};
  return MatrixRealization(std::move(so3_algebra), std::move(gens), true, true,
                           "so3-spin");
}

MatrixRealization sl2_defining_realization(AlgebraPtr sl2_algebra) {
  Mat h = Mat::Zero(2, 2), e = Mat::Zero(2, 2), f = Mat::Zero(2, 2);
  h(0, 0) = 1.0, h(1, 1) = -1.0;
  e(0, 1) = 1.0;
  f(1, 0) = 1.0;
  std::vector<Mat> gens = {h, e, f};
  return MatrixRealization(std::move(sl2_algebra), std::move(gens), true, false,
                           "sl2-defining");
}

MatrixRealization heisenberg_realization(AlgebraPtr h3_algebra) {
  Mat x = Mat::Zero(3, 3), y = Mat::Zero(3, 3), z = Mat::Zero(3, 3);
  x(0, 1) = 1.0;
  y(1, 2) = 1.0;
  z(0, 2) = 1.0;
  std::vector<Mat> gens = {x, y, z};
  return MatrixRealization(std::move(h3_algebra), std::move(gens), true, true,
                           "heisenberg-upper");
}

MatrixRealization derivation_tautological_realization(
    std::shared_ptr<const DerivationCrossedModule> dcm) {
  AlgebraPtr der(dcm, &dcm->cm.h0);
  std::vector<Mat> gens = dcm->der_basis;
  return MatrixRealization(std::move(der), std::move(gens), true, false,
                           "der-tautological");
}

MatrixRealization derivation_inner_realization(
    std::shared_ptr<const DerivationCrossedModule> dcm,
    const MatrixRealization& base) {
  const LieAlgebra& k = dcm->cm.h1;
  const int n = k.dim();
  const int d = dcm->der_dim();
  // express each basis derivation in the inner (ad) basis
  Mat ad_stack(n * n, n);
  for (int i = 0; i < n; ++i) {
    Mat adi = k.ad_generator(i);
    ad_stack.col(i) = Eigen::Map<const Vec>(adi.data(), n * n);
  }
  std::vector<Mat> gens;
  gens.reserve(d);
  for (int a = 0; a < d; ++a) {
    Vec coords = ad_stack.colPivHouseholderQr().solve(dcm->basis_vec.col(a));
    Real gap = (ad_stack * coords - dcm->basis_vec.col(a)).norm();
    if (gap > 1e-8)
      throw PreconditionError(
          "derivation_inner_realization: a derivation is not inner");
    gens.push_back(base.rho(coords));
  }
  AlgebraPtr der(dcm, &dcm->cm.h0);
  return MatrixRealization(std::move(der), std::move(gens), base.faithful,
                           base.simply_connected, base.label + "-der");
}

namespace {

BuiltinGcm assemble(std::shared_ptr<const LieAlgCrossedModule> cm,
                    MatrixRealization R0, MatrixRealization R1,
                    std::shared_ptr<const DerivationCrossedModule> dcm,
                    std::string label) {
  BuiltinGcm out;
  out.gcm = std::make_shared<GrpCrossedModule>(make_grp_crossed_module(
      std::move(cm), std::make_shared<MatrixRealization>(std::move(R0)),
      std::make_shared<MatrixRealization>(std::move(R1)), std::move(label)));
  out.derivation = std::move(dcm);
  return out;
}

}  // namespace

std::vector<std::string> gcm_names() {
  return {"abelian2", "so3-derivation", "sl2-derivation",
          "heisenberg-derivation", "r3-derivation"};
}

BuiltinGcm gcm_by_name(const std::string& name) {
  if (name == "abelian2") {
    auto cm = std::make_shared<LieAlgCrossedModule>();
    cm->label = "abelian2";
    cm->h0 = abelian(2);
    cm->h1 = abelian(2);
    cm->dt = Mat::Identity(2, 2);
    cm->phi.assign(2, Mat::Zero(2, 2));
    AlgebraPtr h0(cm, &cm->h0), h1(cm, &cm->h1);
    return assemble(cm, translation_realization(h0),
                    translation_realization(h1), nullptr, "abelian2");
  }
  if (name == "so3-derivation") {
    auto dcm = std::make_shared<DerivationCrossedModule>(
        derivation_crossed_module(so3()));
    auto cm = std::shared_ptr<const LieAlgCrossedModule>(dcm, &dcm->cm);
    AlgebraPtr h1(cm, &cm->h1);
    MatrixRealization spin = so3_spin_realization(h1);
    return assemble(cm, derivation_inner_realization(dcm, spin), spin, dcm,
                    "so3-derivation");
  }
  if (name == "sl2-derivation") {
    auto dcm = std::make_shared<DerivationCrossedModule>(
        derivation_crossed_module(sl2()));
    auto cm = std::shared_ptr<const LieAlgCrossedModule>(dcm, &dcm->cm);
    AlgebraPtr h1(cm, &cm->h1);
    MatrixRealization def = sl2_defining_realization(h1);
    return assemble(cm, derivation_inner_realization(dcm, def), def, dcm,
                    "sl2-derivation");
  }
  if (name == "heisenberg-derivation") {
    auto dcm = std::make_shared<DerivationCrossedModule>(
        derivation_crossed_module(heisenberg3()));
    auto cm = std::shared_ptr<const LieAlgCrossedModule>(dcm, &dcm->cm);
    AlgebraPtr h1(cm, &cm->h1);
    return assemble(cm, derivation_tautological_realization(dcm),
                    heisenberg_realization(h1), dcm, "heisenberg-derivation");
  }
  if (name == "r3-derivation") {
    auto dcm = std::make_shared<DerivationCrossedModule>(
        derivation_crossed_module(abelian(3, "r3")));
    auto cm = std::shared_ptr<const LieAlgCrossedModule>(dcm, &dcm->cm);
    AlgebraPtr h1(cm, &cm->h1);
    return assemble(cm, derivation_tautological_realization(dcm),
                    translation_realization(h1), dcm, "r3-derivation");
  }
  throw PreconditionError("unknown builtin crossed module: " + name);
}

LieAlgebra so3_semidirect_r3() {
  // basis (e1,e2,e3, f1,f2,f3): so(3) brackets, [e_i, f_j] = e_i x f_j
  std::vector<std::vector<std::vector<Real>>> c(
      6, std::vector<std::vector<Real>>(6, std::vector<Real>(6, 0.0)));
  auto eps = [](int i, int j, int k) -> Real {
    return Real((i - j) * (j - k) * (k - i)) / 2.0;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Real e = eps(i, j, k);
        if (e == 0.0) continue;
        c[i][j][k] = e;              // so(3) on itself
        c[i][3 + j][3 + k] = e;      // vector action
        c[3 + j][i][3 + k] = -e;
      }
  return LieAlgebra::from_structure_constants("so3+r3", c);
}

Mat so3_r3_tilt() {
  Mat T(3, 3);
  T << 0.3, -0.1, 0.2,
       0.0,  0.4, -0.2,
       0.1,  0.0,  0.5;
  return T;
}

}  // namespace builtins
}  // namespace lie2
