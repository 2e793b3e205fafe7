#include "lie2/paths.hpp"

#include <algorithm>
#include <cmath>

namespace lie2 {

SampledPath::SampledPath(AlgebraPtr alg, Mat s, bool based_flag)
    : dim(static_cast<int>(s.rows())), samples(std::move(s)), based(based_flag),
      algebra(std::move(alg)) {
  if (algebra && algebra->dim() != dim)
    throw DimensionError("SampledPath: sample rows != algebra dim");
  if (samples.cols() < 2) throw DimensionError("SampledPath: need >= 2 samples");
}

SampledPath SampledPath::plain(int dim, Mat s, bool based_flag) {
  if (s.rows() != dim) throw DimensionError("SampledPath::plain: shape");
  return SampledPath(nullptr, std::move(s), based_flag);
}

BasedReport based_residual(const SampledPath& p) {
  const int N = p.segments();
  const Real h = 1.0 / N;
  BasedReport rep;
  rep.endpoint = std::max(p.samples.col(0).cwiseAbs().maxCoeff(),
                          p.samples.col(N).cwiseAbs().maxCoeff());
  Vec d0 = stencil::forward(p.samples.col(0), p.samples.col(1), p.samples.col(2), h);
  Vec d1 = stencil::backward(p.samples.col(N), p.samples.col(N - 1),
                             p.samples.col(N - 2), h);
  rep.end_derivative =
      std::max(d0.cwiseAbs().maxCoeff(), d1.cwiseAbs().maxCoeff());
  return rep;
}

bool is_based(const SampledPath& p, Real derivative_bound) {
  BasedReport rep = based_residual(p);
  return rep.endpoint <= 1e-12 &&
         rep.end_derivative <= derivative_bound / p.segments();
}

Mat concat_samples(const Mat& p, const Mat& q, const Cutoff& cut) {
  const int Np = static_cast<int>(p.cols()) - 1;
  const int Nq = static_cast<int>(q.cols()) - 1;
  const int half = std::max(Np, Nq);
  const int N = 2 * half;
  Mat out(p.rows(), N + 1);
  for (int k = 0; k <= N; ++k) {
    Real t = Real(k) / N;
    if (k < half) {
      Real u = 2.0 * t;
      out.col(k) = 2.0 * cut.derivative(u) * interp_columns(q, cut.value(u));
    } else if (k > half) {
      Real u = 2.0 * t - 1.0;
      out.col(k) = 2.0 * cut.derivative(u) * interp_columns(p, cut.value(u));
    } else {
      out.col(k).setZero();  // both branches vanish at the midpoint
    }
  }
  return out;
}

SampledPath concat(const SampledPath& p, const SampledPath& q,
                   const Cutoff& cut) {
  if (p.dim != q.dim) throw DimensionError("concat: dimension mismatch");
  if (p.algebra && q.algebra && p.algebra != q.algebra &&
      !p.algebra->same_structure(*q.algebra))
    throw DimensionError("concat: paths in different algebras");
  if (!is_based(p) || !is_based(q))
    throw PreconditionError("concat: both paths must be based");
  return SampledPath(p.algebra ? p.algebra : q.algebra,
                     concat_samples(p.samples, q.samples, cut), true);
}

SampledPath BigonData::source_path() const {
  AlgebraPtr h0(context, &context->h0);
  Mat s = a.t_slice(0);
  bool based = is_based(SampledPath::plain(a.dim, s, false));
  return SampledPath(h0, std::move(s), based);
}

SampledPath BigonData::target_path() const {
  AlgebraPtr h0(context, &context->h0);
  Mat s = a.t_slice(a.M);
  bool based = is_based(SampledPath::plain(a.dim, s, false));
  return SampledPath(h0, std::move(s), based);
}

Real default_grid_tolerance(const StrictLie2Algebra& A, Real data_magnitude,
                            Real ht, Real hs) {
  Real c = std::max(1.0, A.max_structure_constant());
  Real d = std::max(1.0, data_magnitude);
  return 10.0 * c * d * d * (ht * ht + hs * hs);
}

Real bigon_tolerance(const BigonData& B) {
  Real mag = std::max(B.a.max_abs(), std::max(B.b.max_abs(), B.z.max_abs()));
  return default_grid_tolerance(*B.context, mag, 1.0 / B.N(), 1.0 / B.M());
}

Real g_homotopy_residual(const Grid2& a, const Grid2& b, const LieAlgebra& L) {
  if (!a.same_shape(b)) throw DimensionError("g_homotopy_residual: grid shape");
  if (a.dim != L.dim()) throw DimensionError("g_homotopy_residual: dimension");
  const Real ht = 1.0 / a.N, hs = 1.0 / a.M;
  Real r = 0;
  for (int i = 1; i < a.N; ++i)
    for (int j = 1; j < a.M; ++j) {
      Vec dtb = stencil::central(b.at(i - 1, j), b.at(i + 1, j), ht);
      Vec dsa = stencil::central(a.at(i, j - 1), a.at(i, j + 1), hs);
      Vec res = dtb - dsa - L.bracket(a.at(i, j), b.at(i, j));
      r = std::max(r, res.cwiseAbs().maxCoeff());
    }
  return r;
}

Real bigon_residual(const BigonData& B) {
  const auto& A = *B.context;
  if (B.a.dim != A.h0.dim() || B.b.dim != A.h0.dim() || B.z.dim != A.dim1)
    throw DimensionError("bigon_residual: grid dims do not match context");
  if (!B.a.same_shape(B.b) || B.a.N != B.z.N || B.a.M != B.z.M)
    throw DimensionError("bigon_residual: grid shapes differ");
  const Real ht = 1.0 / B.N(), hs = 1.0 / B.M();
  Real r = 0;
  for (int i = 1; i < B.N(); ++i)
    for (int j = 1; j < B.M(); ++j) {
      Vec dtb = stencil::central(B.b.at(i - 1, j), B.b.at(i + 1, j), ht);
      Vec dsa = stencil::central(B.a.at(i, j - 1), B.a.at(i, j + 1), hs);
      Vec res = dtb - dsa - A.h0.bracket(B.a.at(i, j), B.b.at(i, j)) -
                A.dM * B.z.at(i, j);
      r = std::max(r, res.cwiseAbs().maxCoeff());
    }
  return r;
}

Real bigon_boundary_residual(const BigonData& B) {
  Real r = 0;
  for (int j = 0; j <= B.M(); ++j) {
    r = std::max(r, B.b.at(0, j).cwiseAbs().maxCoeff());
    r = std::max(r, B.b.at(B.N(), j).cwiseAbs().maxCoeff());
    if (B.z.dim > 0) {
      r = std::max(r, B.z.at(0, j).cwiseAbs().maxCoeff());
      r = std::max(r, B.z.at(B.N(), j).cwiseAbs().maxCoeff());
    }
  }
  return r;
}

void require_valid_bigon(const BigonData& B, Real tol) {
  if (bigon_boundary_residual(B) != 0.0)
    throw CheckFailure("bigon: boundary rows of b, z must vanish exactly");
  Real effective = tol > 0 ? tol : bigon_tolerance(B);
  Real res = bigon_residual(B);
  if (res > effective)
    throw CheckFailure("bigon: defining equation residual " +
                       std::to_string(res) + " exceeds tolerance " +
                       std::to_string(effective));
}

Real CubeResiduals::max() const {
  return std::max(std::max(eq_ab, eq_ac), std::max(eq_bc, eq_xyz));
}

CubeResiduals cube_residuals(const CubeData& C) {
  const auto& A = *C.context;
  const int N = C.a.N, M = C.a.M, K = C.a.K;
  const Real ht = 1.0 / N, hs = 1.0 / M, hu = 1.0 / K;
  CubeResiduals out;
  for (int i = 1; i < N; ++i)
    for (int j = 1; j < M; ++j)
      for (int k = 1; k < K; ++k) {
        Vec av = C.a.at(i, j, k), bv = C.b.at(i, j, k), cv = C.c.at(i, j, k);
        Vec xv = C.x.at(i, j, k), yv = C.y.at(i, j, k), zv = C.z.at(i, j, k);
        Vec dtb = stencil::central(C.b.at(i - 1, j, k), C.b.at(i + 1, j, k), ht);
        Vec dsa = stencil::central(C.a.at(i, j - 1, k), C.a.at(i, j + 1, k), hs);
        Vec dtc = stencil::central(C.c.at(i - 1, j, k), C.c.at(i + 1, j, k), ht);
        Vec dua = stencil::central(C.a.at(i, j, k - 1), C.a.at(i, j, k + 1), hu);
        Vec dsc = stencil::central(C.c.at(i, j - 1, k), C.c.at(i, j + 1, k), hs);
        Vec dub = stencil::central(C.b.at(i, j, k - 1), C.b.at(i, j, k + 1), hu);
        Vec duz = stencil::central(C.z.at(i, j, k - 1), C.z.at(i, j, k + 1), hu);
        Vec dsy = stencil::central(C.y.at(i, j - 1, k), C.y.at(i, j + 1, k), hs);
        Vec dtx = stencil::central(C.x.at(i - 1, j, k), C.x.at(i + 1, j, k), ht);

        Vec r1 = dtb - dsa - A.h0.bracket(av, bv) - A.dM * zv;
        Vec r2 = dtc - dua - A.h0.bracket(av, cv) - A.dM * yv;
        Vec r3 = dsc - dub - A.h0.bracket(bv, cv) - A.dM * xv;
        Vec r4 = duz - dsy + dtx - A.act_matrix(av) * xv +
                 A.act_matrix(bv) * yv - A.act_matrix(cv) * zv;
        out.eq_ab = std::max(out.eq_ab, r1.cwiseAbs().maxCoeff());
        out.eq_ac = std::max(out.eq_ac, r2.cwiseAbs().maxCoeff());
        out.eq_bc = std::max(out.eq_bc, r3.cwiseAbs().maxCoeff());
        if (r4.size())
          out.eq_xyz = std::max(out.eq_xyz, r4.cwiseAbs().maxCoeff());
      }
  return out;
}

Vec interp_grid2(const Grid2& g, Real t, Real s) {
  // tensor-product stencil: 4 s-rows, each interpolated along t
  int bt, bs;
  Real wt[4], ws[4];
  interp_stencil(t, g.N, &bt, wt);
  interp_stencil(s, g.M, &bs, ws);
  Vec out = Vec::Zero(g.dim);
  for (int j = 0; j < 4; ++j) {
    Vec row = wt[0] * g.at(bt, bs + j) + wt[1] * g.at(bt + 1, bs + j) +
              wt[2] * g.at(bt + 2, bs + j) + wt[3] * g.at(bt + 3, bs + j);
    out += ws[j] * row;
  }
  return out;
}

void enforce_bigon_boundary(BigonData& B) {
  for (int j = 0; j <= B.M(); ++j) {
    B.b.at(0, j).setZero();
    B.b.at(B.N(), j).setZero();
    B.z.at(0, j).setZero();
    B.z.at(B.N(), j).setZero();
  }
}

BigonData reparametrize_bigon(const BigonData& B, const Cutoff& tau1,
                              const Cutoff& tau2) {
  BigonData out;
  out.context = B.context;
  const int N = B.N(), M = B.M();
  out.a = Grid2(B.a.dim, N, M);
  out.b = Grid2(B.b.dim, N, M);
  out.z = Grid2(B.z.dim, N, M);
  for (int i = 0; i <= N; ++i) {
    Real t = Real(i) / N;
    Real u = tau1.value(t), du = tau1.derivative(t);
    if (du < 0) throw PreconditionError("reparametrize_bigon: tau1 decreasing");
    for (int j = 0; j <= M; ++j) {
      Real s = Real(j) / M;
      Real v = tau2.value(s), dv = tau2.derivative(s);
      if (dv < 0)
        throw PreconditionError("reparametrize_bigon: tau2 decreasing");
      out.a.at(i, j) = du * interp_grid2(B.a, u, v);
      out.b.at(i, j) = dv * interp_grid2(B.b, u, v);
      out.z.at(i, j) = du * dv * interp_grid2(B.z, u, v);
    }
  }
  enforce_bigon_boundary(out);
  return out;
}

BigonData vertical_concat(const BigonData& B1, const BigonData& B2,
                          const Cutoff& cut) {
  if (B1.context != B2.context &&
      !(B1.context && B2.context &&
        B1.context->h0.same_structure(B2.context->h0)))
    throw DimensionError("vertical_concat: context mismatch");
  if (B1.N() != B2.N()) throw DimensionError("vertical_concat: t-grid mismatch");
  Real seam = 0;
  for (int i = 0; i <= B1.N(); ++i)
    seam = std::max(seam,
                    (B1.a.at(i, B1.M()) - B2.a.at(i, 0)).cwiseAbs().maxCoeff());
  if (seam > 1e-12)
    throw PreconditionError("vertical_concat: target slice of first bigon != "
                            "source slice of second");

  const int N = B1.N();
  const int Mh = std::max(B1.M(), B2.M());
  const int M = 2 * Mh;
  BigonData out;
  out.context = B1.context;
  out.a = Grid2(B1.a.dim, N, M);
  out.b = Grid2(B1.b.dim, N, M);
  out.z = Grid2(B1.z.dim, N, M);

  auto fill = [&](const BigonData& src, int j, Real local_s) {
    Real v = cut.value(local_s), dv = cut.derivative(local_s);
    for (int i = 0; i <= N; ++i) {
      Real t = Real(i) / N;
      out.a.at(i, j) = interp_grid2(src.a, t, v);
      out.b.at(i, j) = 2.0 * dv * interp_grid2(src.b, t, v);
      out.z.at(i, j) = 2.0 * dv * interp_grid2(src.z, t, v);
    }
  };
  for (int j = 0; j <= M; ++j) {
    Real s = Real(j) / M;
    if (j <= Mh)
      fill(B1, j, 2.0 * s);
    else
      fill(B2, j, 2.0 * s - 1.0);
  }
  enforce_bigon_boundary(out);
  return out;
}

BigonData horizontal_concat(const BigonData& B, const BigonData& Bd,
                            const Cutoff& cut) {
  if (B.context != Bd.context &&
      !(B.context && Bd.context && B.context->h0.same_structure(Bd.context->h0)))
    throw DimensionError("horizontal_concat: context mismatch");

  // Flatten both inputs in t and s so the piecewise assembly is C^2.
  BigonData L = reparametrize_bigon(Bd, cut, cut);
  BigonData R = reparametrize_bigon(B, cut, cut);

  const int N = std::max(L.N(), R.N());
  const int Mh = std::max(L.M(), R.M());
  const int Nout = 2 * N;  // paper-domain [0,2] rescaled to [0,1]
  const int Mout = 2 * Mh;

  BigonData out;
  out.context = B.context;
  out.a = Grid2(B.a.dim, Nout, Mout);
  out.b = Grid2(B.b.dim, Nout, Mout);
  out.z = Grid2(B.z.dim, Nout, Mout);

  // Piecewise values on (T,s) with T in [0,2]; the t-rescale contributes a
  // factor 2 on a and z.
  for (int i = 0; i <= Nout; ++i) {
    Real T = 2.0 * Real(i) / Nout;  // in [0,2]
    for (int j = 0; j <= Mout; ++j) {
      Real s = Real(j) / Mout;
      Vec av, bv, zv;
      if (T <= 1.0) {
        if (s <= 0.5) {
          av = interp_grid2(L.a, T, 2.0 * s);
          bv = 2.0 * interp_grid2(L.b, T, 2.0 * s);
          zv = 2.0 * interp_grid2(L.z, T, 2.0 * s);
        } else {
          av = interp_grid2(L.a, T, 1.0);  // the target path of Bd
          bv = Vec::Zero(B.b.dim);
          zv = Vec::Zero(B.z.dim);
        }
      } else {
        if (s <= 0.5) {
          av = interp_grid2(R.a, T - 1.0, 0.0);  // the source path of B
          bv = Vec::Zero(B.b.dim);
          zv = Vec::Zero(B.z.dim);
        } else {
          av = interp_grid2(R.a, T - 1.0, 2.0 * s - 1.0);
          bv = 2.0 * interp_grid2(R.b, T - 1.0, 2.0 * s - 1.0);
          zv = 2.0 * interp_grid2(R.z, T - 1.0, 2.0 * s - 1.0);
        }
      }
      out.a.at(i, j) = 2.0 * av;
      out.b.at(i, j) = bv;
      out.z.at(i, j) = 2.0 * zv;
    }
  }
  enforce_bigon_boundary(out);
  return out;
}

}  // namespace lie2
