#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "lie2/algebra.hpp"
#include "lie2/builtins.hpp"
#include "lie2/sampling.hpp"

using namespace lie2;

namespace {

// Independent Jacobi evaluation straight from the definition, used as the
// oracle for jacobi_residual.
Real jacobi_oracle(const LieAlgebra& L) {
  const int n = L.dim();
  Real worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec ei = Vec::Unit(n, i), ej = Vec::Unit(n, j), ek = Vec::Unit(n, k);
        Vec total = L.bracket(L.bracket(ei, ej), ek) +
                    L.bracket(L.bracket(ej, ek), ei) +
                    L.bracket(L.bracket(ek, ei), ej);
        worst = std::max(worst, total.cwiseAbs().maxCoeff());
      }
  return worst;
}

// Independent assembly of the derivation constraints; returns dim Der(k)
// as the nullity computed by a rank decomposition.
int derivation_dim_oracle(const LieAlgebra& k) {
  const int n = k.dim();
  std::vector<Eigen::RowVectorXd> rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n * n);
        // D[e_i,e_j]_l - [D e_i, e_j]_l - [e_i, D e_j]_l = 0, D_{pq} at p+q*n
        for (int m = 0; m < n; ++m) {
          row(l + m * n) += k.c(i, j, m);
          row(m + i * n) -= k.c(m, j, l);
          row(m + j * n) -= k.c(i, m, l);
        }
        rows.push_back(row);
      }
  Mat A(rows.size(), n * n);
  for (size_t r = 0; r < rows.size(); ++r) A.row(r) = rows[r];
  Eigen::FullPivLU<Mat> lu(A);
  lu.setThreshold(1e-9);
  return n * n - lu.rank();
}

AlgebraPtr shared(const LieAlgebra& L) {
  return std::make_shared<LieAlgebra>(L);
}

}  // namespace

TEST_CASE("so3 bracket agrees with the cross product") {
  auto so3 = shared(builtins::so3());
  SeededRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Vec x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = rng.symmetric();
      y[i] = rng.symmetric();
    }
    Vec br = bracket(AlgebraElement(so3, x), AlgebraElement(so3, y)).coords;
    Eigen::Vector3d cx = Eigen::Vector3d(x).cross(Eigen::Vector3d(y));
    CHECK((br - Vec(cx)).cwiseAbs().maxCoeff() <= 1e-14);
  }
  Vec e1 = Vec::Unit(3, 0), e2 = Vec::Unit(3, 1);
  CHECK((so3->bracket(e1, e2) - Vec::Unit(3, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bracket is antisymmetric on random elements") {
  for (const auto& name : builtins::algebra_names()) {
    auto L = shared(builtins::algebra_by_name(name));
    SeededRng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      Vec x(L->dim());
      for (int i = 0; i < L->dim(); ++i) x[i] = rng.symmetric();
      CHECK(L->bracket(x, x).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("bracket rejects mismatched algebras") {
  auto so3 = shared(builtins::so3());
  auto ab = shared(builtins::abelian(3));
  AlgebraElement x(so3, Vec::Unit(3, 0));
  AlgebraElement y(ab, Vec::Unit(3, 1));
  CHECK_THROWS_AS(bracket(x, y), DimensionError);
  CHECK_THROWS_AS(AlgebraElement(so3, Vec::Zero(4)), DimensionError);
}

TEST_CASE("jacobi_residual matches the direct oracle") {
  SUBCASE("zero for the built-in algebras") {
    for (const auto& name : builtins::algebra_names()) {
      LieAlgebra L = builtins::algebra_by_name(name);
      CHECK(jacobi_residual(L) <= 1e-12);
      CHECK(jacobi_oracle(L) <= 1e-12);
      CHECK(antisymmetry_residual(L) == 0.0);
    }
  }
  SUBCASE("perturbed so3 is detected") {
    auto c = builtins::so3().structure_constants();
    c[0][1][2] += 0.1;
    LieAlgebra bad = LieAlgebra::from_structure_constants("so3-corrupt", c);
    Real r = jacobi_residual(bad);
    CHECK(r > 0.05);
    CHECK(r == doctest::Approx(jacobi_oracle(bad)).epsilon(1e-12));
  }
}

TEST_CASE("derivation crossed module of the built-ins") {
  SUBCASE("so3: all derivations inner, dim 3") {
    auto dcm = derivation_crossed_module(builtins::so3());
    CHECK(dcm.der_dim() == 3);
    CHECK(derivation_dim_oracle(builtins::so3()) == 3);
    CHECK(check_alg_crossed_module(dcm.cm).max() <= 1e-10);
  }
  SUBCASE("abelian R^n: Der = gl(n)") {
    auto dcm = derivation_crossed_module(builtins::abelian(3));
    CHECK(dcm.der_dim() == 9);
    CHECK(derivation_dim_oracle(builtins::abelian(3)) == 9);
    CHECK(check_alg_crossed_module(dcm.cm).max() <= 1e-10);
  }
  SUBCASE("heisenberg: dim Der = 6") {
    auto dcm = derivation_crossed_module(builtins::heisenberg3());
    CHECK(dcm.der_dim() == 6);
    CHECK(derivation_dim_oracle(builtins::heisenberg3()) == 6);
    CHECK(check_alg_crossed_module(dcm.cm).max() <= 1e-10);
  }
  SUBCASE("sl2 and every built-in pass the four residuals") {
    for (const auto& name : builtins::algebra_names()) {
      auto dcm = derivation_crossed_module(builtins::algebra_by_name(name));
      CHECK(check_alg_crossed_module(dcm.cm).max() <= 1e-10);
    }
  }
  SUBCASE("each computed basis element satisfies the derivation rule") {
    auto dcm = derivation_crossed_module(builtins::sl2());
    const LieAlgebra k = builtins::sl2();
    for (const Mat& D : dcm.der_basis)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          Vec ei = Vec::Unit(3, i), ej = Vec::Unit(3, j);
          Vec lhs = D * k.bracket(ei, ej);
          Vec rhs = k.bracket(D * ei, ej) + k.bracket(ei, D * ej);
          CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
        }
  }
}

TEST_CASE("crossed module checker flags broken data") {
  SUBCASE("trivial module passes exactly") {
    LieAlgCrossedModule cm;
    cm.h0 = builtins::abelian(2);
    cm.h1 = builtins::abelian(3);
    cm.dt = Mat::Zero(2, 3);
    cm.phi.assign(2, Mat::Zero(3, 3));
    CHECK(check_alg_crossed_module(cm).max() == 0.0);
  }
  SUBCASE("zeroed phi breaks the Peiffer identity by the h1 bracket norm") {
    auto dcm = derivation_crossed_module(builtins::so3());
    LieAlgCrossedModule broken = dcm.cm;
    for (Mat& p : broken.phi) p.setZero();
    CrossedModuleReport rep = check_alg_crossed_module(broken);
    // phi = 0 makes the Peiffer residual exactly max ||[m,n]||
    Real expected = 0;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        expected = std::max(expected, broken.h1
                                          .bracket(Vec::Unit(3, m),
                                                   Vec::Unit(3, n))
                                          .cwiseAbs()
                                          .maxCoeff());
    CHECK(expected > 0.5);
    CHECK(rep.peiffer == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("crossed module <-> strict 2-algebra") {
  SUBCASE("derivation module of so3 gives a valid 2-algebra") {
    auto dcm = derivation_crossed_module(builtins::so3());
    StrictLie2Algebra A = crossed_module_to_2algebra(dcm.cm);
    CHECK(check_strict_2algebra(A).max() <= 1e-10);
  }
  SUBCASE("2alg -> cm -> 2alg is the identity bit-exactly") {
    auto dcm = derivation_crossed_module(builtins::heisenberg3());
    StrictLie2Algebra A = crossed_module_to_2algebra(dcm.cm);
    LieAlgCrossedModule cm = twoalgebra_to_crossed_module(A);
    StrictLie2Algebra A2 = crossed_module_to_2algebra(cm);
    CHECK(A2.dM == A.dM);
    CHECK(A2.h0.same_structure(A.h0));
    for (int u = 0; u < A.h0.dim(); ++u) CHECK(A2.act[u] == A.act[u]);
  }
  SUBCASE("cm -> 2alg -> cm recovers the h1 bracket") {
    auto dcm = derivation_crossed_module(builtins::so3());
    StrictLie2Algebra A = crossed_module_to_2algebra(dcm.cm);
    LieAlgCrossedModule back = twoalgebra_to_crossed_module(A);
    CHECK(back.dt == dcm.cm.dt);
    for (size_t u = 0; u < back.phi.size(); ++u)
      CHECK(back.phi[u] == dcm.cm.phi[u]);
    // reconstructed [m,n] = l2(dM m, n) equals the so3 bracket numerically
    for (int i = 0; i < 3; ++i)
      CHECK((back.h1.ad_generator(i) - dcm.cm.h1.ad_generator(i))
                .cwiseAbs()
                .maxCoeff() <= 1e-12);
  }
  SUBCASE("garbage 2-algebra data is rejected") {
    StrictLie2Algebra bad;
    bad.h0 = builtins::so3();
    bad.dim1 = 3;
    bad.dM = Mat::Identity(3, 3);
    bad.act.assign(3, Mat::Zero(3, 3));
    bad.act[0] << 0, 1, 0, 0, 0, 1, 1, 0, 0;  // not an action
    bad.act[1] << 0, 0, 1, 1, 0, 0, 0, 1, 0;
    CHECK_THROWS_AS(twoalgebra_to_crossed_module(bad), CheckFailure);
  }
  SUBCASE("dM = 0 forces an abelian h1") {
    StrictLie2Algebra A;
    A.h0 = builtins::so3();
    A.dim1 = 2;
    A.dM = Mat::Zero(3, 2);
    A.act.assign(3, Mat::Zero(2, 2));
    A.act[0] << 0, 1, -1, 0;
    LieAlgCrossedModule cm = twoalgebra_to_crossed_module(A);
    CHECK(max_structure_constant(cm.h1) == 0.0);
  }
}

TEST_CASE("linear map views are shape checked") {
  auto dcm = derivation_crossed_module(builtins::so3());
  LinearMap dt = dcm.cm.dt_map();
  CHECK(dt.source_dim == 3);
  CHECK(dt.target_dim == 3);
  CHECK(dt.matrix == dcm.cm.dt);
  StrictLie2Algebra A = crossed_module_to_2algebra(dcm.cm);
  CHECK(A.dM_map().matrix == A.dM);
  CHECK_THROWS_AS(LinearMap(2, 3, Mat::Zero(2, 2)), DimensionError);
}

TEST_CASE("semidirect product") {
  SUBCASE("abelian inputs give an abelian result") {
    LieAlgCrossedModule cm;
    cm.h0 = builtins::abelian(2);
    cm.h1 = builtins::abelian(2);
    cm.dt = Mat::Identity(2, 2);
    cm.phi.assign(2, Mat::Zero(2, 2));
    LieAlgebra sd = semidirect(crossed_module_to_2algebra(cm));
    CHECK(sd.dim() == 4);
    CHECK(max_structure_constant(sd) == 0.0);
  }
  SUBCASE("derivation module of so3 gives a 6-dim algebra passing Jacobi") {
    auto dcm = derivation_crossed_module(builtins::so3());
    StrictLie2Algebra A = crossed_module_to_2algebra(dcm.cm);
    LieAlgebra sd = semidirect(A);
    CHECK(sd.dim() == 6);
    CHECK(jacobi_residual(sd) <= 1e-10);
    CHECK(antisymmetry_residual(sd) <= 1e-12);
    // bracket of two pure-h1 elements reduces to l2(dM m, n)
    SeededRng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      Vec m(3), n(3);
      for (int i = 0; i < 3; ++i) m[i] = rng.symmetric(), n[i] = rng.symmetric();
      Vec lifted_m = Vec::Zero(6), lifted_n = Vec::Zero(6);
      lifted_m.tail(3) = m;
      lifted_n.tail(3) = n;
      Vec br = sd.bracket(lifted_m, lifted_n);
      CHECK(br.head(3).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK((br.tail(3) - A.h1_bracket(m, n)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("End(V) for small complexes") {
  SUBCASE("0 -> R") {
    EndComplex E = end_complex(TwoTermComplex(1, 0, Mat::Zero(1, 0)));
    CHECK(E.alg.dim0() == 1);
    CHECK(E.alg.dim1 == 0);
    CHECK(check_strict_2algebra(E.alg).max() <= 1e-12);
  }
  SUBCASE("R -> R identity: End0 is the diagonal") {
    EndComplex E = end_complex(TwoTermComplex(1, 1, Mat::Identity(1, 1)));
    CHECK(E.alg.dim0() == 1);
    CHECK(E.alg.dim1 == 1);
    // the single basis pair has A0 = A1
    CHECK(std::abs(E.basis0[0].first(0, 0) - E.basis0[0].second(0, 0)) <=
          1e-14);
    CHECK(check_strict_2algebra(E.alg).max() <= 1e-12);
    // h1 bracket [m,n] = l2(dM m, n) vanishes (scalars commute)
    CHECK(E.alg.h1_bracket(Vec::Ones(1), Vec::Ones(1)).cwiseAbs().maxCoeff() <=
          1e-14);
  }
  SUBCASE("R -> R zero map: End0 = R^2 and the differential vanishes") {
    EndComplex E = end_complex(TwoTermComplex(1, 1, Mat::Zero(1, 1)));
    CHECK(E.alg.dim0() == 2);
    CHECK(E.alg.dim1 == 1);
    CHECK(E.alg.dM.cwiseAbs().maxCoeff() == 0.0);
    CHECK(check_strict_2algebra(E.alg).max() <= 1e-12);
  }
  SUBCASE("graded Jacobi holds tightly for a 2x1 complex") {
    Mat dM(1, 2);
    dM << 1.0, 0.5;
    EndComplex E = end_complex(TwoTermComplex(1, 2, dM));
    CHECK(check_strict_2algebra(E.alg).max() <= 1e-12);
  }
}
