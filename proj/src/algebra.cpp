#include "lie2/algebra.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace lie2 {

LieAlgebra::LieAlgebra(std::string label, int dim, std::vector<Mat> ad_generators)
    : label_(std::move(label)), dim_(dim), ad_(std::move(ad_generators)) {
  if (static_cast<int>(ad_.size()) != dim_)
    throw DimensionError("LieAlgebra: need one ad generator per basis vector");
  for (const Mat& a : ad_)
    if (a.rows() != dim_ || a.cols() != dim_)
      throw DimensionError("LieAlgebra: ad generator shape mismatch");
}

LieAlgebra LieAlgebra::from_structure_constants(
    std::string label, const std::vector<std::vector<std::vector<Real>>>& c) {
  const int n = static_cast<int>(c.size());
  std::vector<Mat> ad(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(c[i].size()) != n)
      throw DimensionError("structure constants: ragged array");
    for (int j = 0; j < n; ++j) {
      if (static_cast<int>(c[i][j].size()) != n)
        throw DimensionError("structure constants: ragged array");
      for (int k = 0; k < n; ++k) ad[i](k, j) = c[i][j][k];
    }
  }
  return LieAlgebra(std::move(label), n, std::move(ad));
}

Mat LieAlgebra::ad_matrix(const Vec& x) const {
  if (x.size() != dim_) throw DimensionError("ad_matrix: coordinate length");
  Mat out = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) out += x[i] * ad_[i];
  return out;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionError("bracket: coordinate length");
  Vec out = Vec::Zero(dim_);
  for (int i = 0; i < dim_; ++i)
    if (x[i] != 0.0) out += x[i] * (ad_[i] * y);
  return out;
}

std::vector<std::vector<std::vector<Real>>> LieAlgebra::structure_constants()
    const {
  std::vector<std::vector<std::vector<Real>>> c(
      dim_, std::vector<std::vector<Real>>(dim_, std::vector<Real>(dim_, 0.0)));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) c[i][j][k] = ad_[i](k, j);
  return c;
}

bool LieAlgebra::same_structure(const LieAlgebra& other) const {
  if (dim_ != other.dim_) return false;
  for (int i = 0; i < dim_; ++i)
    if (ad_[i] != other.ad_[i]) return false;
  return true;
}

Real antisymmetry_residual(const LieAlgebra& L) {
  Real r = 0;
  for (int i = 0; i < L.dim(); ++i)
    for (int j = 0; j < L.dim(); ++j)
      for (int k = 0; k < L.dim(); ++k)
        r = std::max(r, std::abs(L.c(i, j, k) + L.c(j, i, k)));
  return r;
}

Real jacobi_residual(const LieAlgebra& L) {
  const int n = L.dim();
  Real r = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Real s = 0;
          for (int m = 0; m < n; ++m)
            s += L.c(i, j, m) * L.c(m, k, l) + L.c(j, k, m) * L.c(m, i, l) +
                 L.c(k, i, m) * L.c(m, j, l);
          r = std::max(r, std::abs(s));
        }
  return r;
}

Real max_structure_constant(const LieAlgebra& L) {
  Real r = 0;
  for (int i = 0; i < L.dim(); ++i)
    r = std::max(r, L.ad_generator(i).cwiseAbs().maxCoeff());
  return r;
}

AlgebraElement::AlgebraElement(AlgebraPtr alg, Vec c)
    : algebra(std::move(alg)), coords(std::move(c)) {
  if (!algebra) throw PreconditionError("AlgebraElement: null algebra");
  if (coords.size() != algebra->dim())
    throw DimensionError("AlgebraElement: coordinate length");
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  if (!x.algebra || !y.algebra)
    throw PreconditionError("bracket: element without algebra");
  if (x.algebra != y.algebra && !x.algebra->same_structure(*y.algebra))
    throw DimensionError("bracket: elements of different algebras");
  return AlgebraElement(x.algebra, x.algebra->bracket(x.coords, y.coords));
}

LinearMap::LinearMap(int src, int tgt, Mat m)
    : source_dim(src), target_dim(tgt), matrix(std::move(m)) {
  if (matrix.rows() != tgt || matrix.cols() != src)
    throw DimensionError("LinearMap: matrix shape mismatch");
}

Mat LieAlgCrossedModule::phi_matrix(const Vec& u) const {
  if (u.size() != h0.dim()) throw DimensionError("phi_matrix: coordinate length");
  Mat out = Mat::Zero(h1.dim(), h1.dim());
  for (int a = 0; a < h0.dim(); ++a) out += u[a] * phi[a];
  return out;
}

Real CrossedModuleReport::max() const {
  return std::max(std::max(derivation, action), std::max(equivariance, peiffer));
}

CrossedModuleReport check_alg_crossed_module(const LieAlgCrossedModule& cm) {
  const int n0 = cm.h0.dim();
  const int n1 = cm.h1.dim();
  if (cm.dt.rows() != n0 || cm.dt.cols() != n1)
    throw DimensionError("crossed module: dt shape");
  if (static_cast<int>(cm.phi.size()) != n0)
    throw DimensionError("crossed module: phi count");
  for (const Mat& p : cm.phi)
    if (p.rows() != n1 || p.cols() != n1)
      throw DimensionError("crossed module: phi shape");

  CrossedModuleReport rep;
  auto inf = [](const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; };

  for (int u = 0; u < n0; ++u) {
    // derivation property of phi_u on all h1 basis pairs
    for (int m = 0; m < n1; ++m)
      for (int n = 0; n < n1; ++n) {
        Vec em = Vec::Unit(n1, m), en = Vec::Unit(n1, n);
        Vec lhs = cm.phi[u] * cm.h1.bracket(em, en);
        Vec rhs = cm.h1.bracket(cm.phi[u] * em, en) +
                  cm.h1.bracket(em, cm.phi[u] * en);
        rep.derivation = std::max(rep.derivation, inf(Vec(lhs - rhs)));
      }
    // equivariance dt(phi_u m) = [u, dt m]
    for (int m = 0; m < n1; ++m) {
      Vec em = Vec::Unit(n1, m);
      Vec lhs = cm.dt * (cm.phi[u] * em);
      Vec rhs = cm.h0.bracket(Vec::Unit(n0, u), cm.dt * em);
      rep.equivariance = std::max(rep.equivariance, inf(Vec(lhs - rhs)));
    }
  }
  // phi is a morphism into (Der(h1), commutator)
  for (int u = 0; u < n0; ++u)
    for (int v = 0; v < n0; ++v) {
      Mat lhs = cm.phi_matrix(cm.h0.bracket(Vec::Unit(n0, u), Vec::Unit(n0, v)));
      Mat rhs = cm.phi[u] * cm.phi[v] - cm.phi[v] * cm.phi[u];
      if (lhs.size())
        rep.action = std::max(rep.action, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  // Peiffer identity phi_{dt m}(n) = [m, n]
  for (int m = 0; m < n1; ++m)
    for (int n = 0; n < n1; ++n) {
      Vec em = Vec::Unit(n1, m), en = Vec::Unit(n1, n);
      Vec lhs = cm.phi_matrix(cm.dt * em) * en;
      Vec rhs = cm.h1.bracket(em, en);
      rep.peiffer = std::max(rep.peiffer, inf(Vec(lhs - rhs)));
    }
  return rep;
}

Mat StrictLie2Algebra::act_matrix(const Vec& u) const {
  if (u.size() != h0.dim()) throw DimensionError("act_matrix: coordinate length");
  Mat out = Mat::Zero(dim1, dim1);
  for (int a = 0; a < h0.dim(); ++a) out += u[a] * act[a];
  return out;
}

Real StrictLie2Algebra::max_structure_constant() const {
  Real r = lie2::max_structure_constant(h0);
  for (const Mat& a : act)
    if (a.size()) r = std::max(r, a.cwiseAbs().maxCoeff());
  return r;
}

Real TwoAlgebraReport::max() const {
  return std::max(std::max(antisymmetry, jacobi),
                  std::max(graded_jacobi, equivariance));
}

TwoAlgebraReport check_strict_2algebra(const StrictLie2Algebra& A) {
  const int n0 = A.h0.dim();
  const int n1 = A.dim1;
  if (A.dM.rows() != n0 || A.dM.cols() != n1)
    throw DimensionError("2-algebra: dM shape");
  if (static_cast<int>(A.act.size()) != n0)
    throw DimensionError("2-algebra: act count");

  TwoAlgebraReport rep;
  rep.antisymmetry = antisymmetry_residual(A.h0);
  rep.jacobi = jacobi_residual(A.h0);
  for (int u = 0; u < n0; ++u)
    for (int v = 0; v < n0; ++v) {
      Mat lhs = A.act[u] * A.act[v] - A.act[v] * A.act[u];
      Mat rhs = A.act_matrix(A.h0.bracket(Vec::Unit(n0, u), Vec::Unit(n0, v)));
      if (lhs.size())
        rep.graded_jacobi =
            std::max(rep.graded_jacobi, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  for (int u = 0; u < n0; ++u)
    for (int m = 0; m < n1; ++m) {
      Vec em = Vec::Unit(n1, m);
      Vec lhs = A.dM * (A.act[u] * em);
      Vec rhs = A.h0.bracket(Vec::Unit(n0, u), A.dM * em);
      rep.equivariance =
          std::max(rep.equivariance, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return rep;
}

StrictLie2Algebra crossed_module_to_2algebra(const LieAlgCrossedModule& cm) {
  StrictLie2Algebra A;
  A.label = cm.label.empty() ? "2alg" : cm.label;
  A.h0 = cm.h0;
  A.dim1 = cm.h1.dim();
  A.dM = cm.dt;
  A.act = cm.phi;
  return A;
}

LieAlgCrossedModule twoalgebra_to_crossed_module(const StrictLie2Algebra& A) {
  LieAlgCrossedModule cm;
  cm.label = A.label;
  cm.h0 = A.h0;
  cm.dt = A.dM;
  cm.phi = A.act;
  // h1 bracket [m,n] := l2(dM m, n)
  const int n1 = A.dim1;
  std::vector<Mat> ad1(n1, Mat::Zero(n1, n1));
  for (int m = 0; m < n1; ++m) ad1[m] = A.act_matrix(A.dM.col(m));
  cm.h1 = LieAlgebra(A.h0.label() + "-h1", n1, std::move(ad1));
  if (jacobi_residual(cm.h1) > 1e-10)
    throw CheckFailure("twoalgebra_to_crossed_module: reconstructed h1 bracket "
                       "fails the Jacobi identity");
  return cm;
}

LieAlgebra semidirect(const StrictLie2Algebra& A) {
  const int n0 = A.h0.dim();
  const int n1 = A.dim1;
  const int n = n0 + n1;
  std::vector<Mat> ad(n, Mat::Zero(n, n));
  auto embed0 = [&](int i) { return i; };
  auto embed1 = [&](int m) { return n0 + m; };
  // [u+m, v+n] = l2(u,v) + l2(u,n) - l2(v,m) + l2(dM m, n)
  for (int u = 0; u < n0; ++u) {
    for (int v = 0; v < n0; ++v) {
      Vec bc = A.h0.bracket(Vec::Unit(n0, u), Vec::Unit(n0, v));
      for (int k = 0; k < n0; ++k) ad[embed0(u)](embed0(k), embed0(v)) = bc[k];
    }
    for (int m = 0; m < n1; ++m) {
      Vec am = A.act[u].col(m);
      for (int k = 0; k < n1; ++k) {
        ad[embed0(u)](embed1(k), embed1(m)) = am[k];
        ad[embed1(m)](embed1(k), embed0(u)) = -am[k];
      }
    }
  }
  for (int m = 0; m < n1; ++m)
    for (int p = 0; p < n1; ++p) {
      Vec bc = A.act_matrix(A.dM.col(m)) * Vec::Unit(n1, p);
      for (int k = 0; k < n1; ++k) ad[embed1(m)](embed1(k), embed1(p)) = bc[k];
    }
  return LieAlgebra(A.label + "-semidirect", n, std::move(ad));
}

Mat nullspace(const Mat& A, Real threshold) {
  if (A.rows() == 0) return Mat::Identity(A.cols(), A.cols());
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > threshold) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

DerivationCrossedModule derivation_crossed_module(const LieAlgebra& k,
                                                  Real threshold) {
  const int n = k.dim();
  // Constraints D[e_i,e_j] = [D e_i, e_j] + [e_i, D e_j] on vec(D),
  // column-major: D_{pq} at index p + q*n.
  const int pairs = n * (n - 1) / 2;
  Mat A = Mat::Zero(pairs * n, n * n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          A(row, l + m * n) += k.c(i, j, m);        // D[e_i,e_j]
          A(row, m + i * n) -= k.c(m, j, l);        // [D e_i, e_j]
          A(row, m + j * n) -= k.c(i, m, l);        // [e_i, D e_j]
        }
        ++row;
      }
    }

  Mat basis = nullspace(A, threshold);
  const int d = static_cast<int>(basis.cols());

  DerivationCrossedModule out;
  out.svd_threshold = threshold;
  out.basis_vec = basis;
  out.der_basis.reserve(d);
  for (int a = 0; a < d; ++a)
    out.der_basis.push_back(Eigen::Map<const Mat>(basis.col(a).data(), n, n));

  // Der(k) structure constants via commutators; the nullspace basis is
  // orthonormal under the vec inner product, so projection is exact.
  std::vector<Mat> ad_der(d, Mat::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Mat comm = out.der_basis[a] * out.der_basis[b] -
                 out.der_basis[b] * out.der_basis[a];
      Vec coords = basis.transpose() * Eigen::Map<const Vec>(comm.data(), n * n);
      for (int c = 0; c < d; ++c) ad_der[a](c, b) = coords[c];
    }

  LieAlgCrossedModule cm;
  cm.label = "der(" + k.label() + ")";
  cm.h1 = k;
  cm.h0 = LieAlgebra("Der(" + k.label() + ")", d, std::move(ad_der));
  cm.dt = Mat::Zero(d, n);
  for (int i = 0; i < n; ++i) {
    Mat adi = k.ad_generator(i);
    cm.dt.col(i) = basis.transpose() * Eigen::Map<const Vec>(adi.data(), n * n);
  }
  cm.phi = out.der_basis;
  out.cm = std::move(cm);
  return out;
}

Vec DerivationCrossedModule::der_coordinates(const Mat& D, Real* residual) const {
  const int n = cm.h1.dim();
  if (D.rows() != n || D.cols() != n)
    throw DimensionError("der_coordinates: matrix shape");
  Vec v = Eigen::Map<const Vec>(D.data(), n * n);
  Vec coords = basis_vec.transpose() * v;
  if (residual) {
    Vec back = basis_vec * coords;
    *residual = (v - back).cwiseAbs().maxCoeff();
  }
  return coords;
}

TwoTermComplex::TwoTermComplex(int d0, int d1, Mat m)
    : dim0(d0), dim1(d1), dM(std::move(m)) {
  if (dM.rows() != d0 || dM.cols() != d1)
    throw DimensionError("TwoTermComplex: dM shape");
}

EndComplex end_complex(const TwoTermComplex& V) {
  const int n0 = V.dim0;
  const int n1 = V.dim1;
  // Degree 0: (A0, A1) with A0 dM - dM A1 = 0, unknowns [vec A0; vec A1].
  Mat C = Mat::Zero(n0 * n1, n0 * n0 + n1 * n1);
  int row = 0;
  for (int q = 0; q < n1; ++q)
    for (int p = 0; p < n0; ++p) {
      for (int m = 0; m < n0; ++m) C(row, p + m * n0) += V.dM(m, q);
      for (int m = 0; m < n1; ++m) C(row, n0 * n0 + m + q * n1) -= V.dM(p, m);
      ++row;
    }
  Mat basis = nullspace(C, 1e-9);
  const int d0 = static_cast<int>(basis.cols());

  EndComplex out;
  out.complex = V;
  out.basis0_vec = basis;
  out.basis0.reserve(d0);
  for (int a = 0; a < d0; ++a) {
    Mat A0 = Eigen::Map<const Mat>(basis.col(a).data(), n0, n0);
    Mat A1 = Eigen::Map<const Mat>(basis.col(a).data() + n0 * n0, n1, n1);
    out.basis0.emplace_back(A0, A1);
  }

  // Commutator bracket on degree 0, in the orthonormal nullspace basis.
  std::vector<Mat> ad0(d0, Mat::Zero(d0, d0));
  auto stack = [&](const Mat& A0, const Mat& A1) {
    Vec v(n0 * n0 + n1 * n1);
    v.head(n0 * n0) = Eigen::Map<const Vec>(A0.data(), n0 * n0);
    v.tail(n1 * n1) = Eigen::Map<const Vec>(A1.data(), n1 * n1);
    return v;
  };
  for (int a = 0; a < d0; ++a)
    for (int b = 0; b < d0; ++b) {
      Mat C0 = out.basis0[a].first * out.basis0[b].first -
               out.basis0[b].first * out.basis0[a].first;
      Mat C1 = out.basis0[a].second * out.basis0[b].second -
               out.basis0[b].second * out.basis0[a].second;
      Vec coords = basis.transpose() * stack(C0, C1);
      for (int c = 0; c < d0; ++c) ad0[a](c, b) = coords[c];
    }

  StrictLie2Algebra A;
  A.label = "End";
  A.h0 = LieAlgebra("End0", d0, std::move(ad0));
  A.dim1 = n0 * n1;  // Hom(V0, V1), m as an n1 x n0 matrix, vec column-major

  // Differential m -> (dM m, m dM) in degree-0 coordinates.
  A.dM = Mat::Zero(d0, n0 * n1);
  for (int c = 0; c < n0; ++c)
    for (int r = 0; r < n1; ++r) {
      Mat m = Mat::Zero(n1, n0);
      m(r, c) = 1.0;
      Mat A0 = V.dM * m;
      Mat A1 = m * V.dM;
      A.dM.col(r + c * n1) = basis.transpose() * stack(A0, A1);
    }

  // l2((A0,A1), m) = A1 m - m A0 on Hom(V0,V1).
  A.act.assign(d0, Mat::Zero(n0 * n1, n0 * n1));
  for (int a = 0; a < d0; ++a) {
    const Mat& A0 = out.basis0[a].first;
    const Mat& A1 = out.basis0[a].second;
    for (int c = 0; c < n0; ++c)
      for (int r = 0; r < n1; ++r) {
        Mat m = Mat::Zero(n1, n0);
        m(r, c) = 1.0;
        Mat im = A1 * m - m * A0;
        A.act[a].col(r + c * n1) = Eigen::Map<const Vec>(im.data(), n0 * n1);
      }
  }
  out.alg = std::move(A);
  return out;
}

Vec EndComplex::deg0_coordinates(const Mat& A0, const Mat& A1,
                                 Real* residual) const {
  const int n0 = complex.dim0;
  const int n1 = complex.dim1;
  if (A0.rows() != n0 || A0.cols() != n0 || A1.rows() != n1 || A1.cols() != n1)
    throw DimensionError("deg0_coordinates: matrix shape");
  Vec v(n0 * n0 + n1 * n1);
  v.head(n0 * n0) = Eigen::Map<const Vec>(A0.data(), n0 * n0);
  v.tail(n1 * n1) = Eigen::Map<const Vec>(A1.data(), n1 * n1);
  Vec coords = basis0_vec.transpose() * v;
  if (residual) {
    Vec back = basis0_vec * coords;
    *residual = (v - back).cwiseAbs().maxCoeff();
  }
  return coords;
}

}  // namespace lie2
