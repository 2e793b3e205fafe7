#include "lie2/sampling.hpp"

#include <cmath>

namespace lie2 {

namespace {

constexpr Real kPi = 3.14159265358979323846;

Real envelope(Real t) { return t * t * (1.0 - t) * (1.0 - t); }
Real envelope_derivative(Real t) {
  return 2.0 * t * (1.0 - t) * (1.0 - t) - 2.0 * t * t * (1.0 - t);
}

}  // namespace

PathGenerator PathGenerator::random(int dim, SeededRng& rng, int modes,
                                    Real amplitude) {
  PathGenerator g;
  g.coeffs = Mat(dim, modes);
  // envelope peaks at 1/16; scale so |path| is about `amplitude`
  const Real scale = 16.0 * amplitude;
  for (int d = 0; d < dim; ++d)
    for (int k = 0; k < modes; ++k)
      g.coeffs(d, k) = scale * rng.symmetric() / Real(k + 1);
  return g;
}

Vec PathGenerator::value(Real t) const {
  Vec out = Vec::Zero(dim());
  const Real env = envelope(t);
  if (env == 0.0) return out;
  for (int k = 0; k < coeffs.cols(); ++k)
    out += std::cos(k * kPi * t) * coeffs.col(k);
  return env * out;
}

Vec PathGenerator::derivative(Real t) const {
  const Real env = envelope(t);
  const Real denv = envelope_derivative(t);
  Vec out = Vec::Zero(dim());
  for (int k = 0; k < coeffs.cols(); ++k) {
    Real c = std::cos(k * kPi * t);
    Real s = std::sin(k * kPi * t);
    out += (denv * c - env * k * kPi * s) * coeffs.col(k);
  }
  return out;
}

Mat PathGenerator::sample(int N) const {
  Mat out(dim(), N + 1);
  for (int k = 0; k <= N; ++k) out.col(k) = value(Real(k) / N);
  return out;
}

SampledPath PathGenerator::path(AlgebraPtr algebra, int N) const {
  return SampledPath(std::move(algebra), sample(N), true);
}

Real surface_sigma(SurfaceShape shape, Real t) {
  if (shape == SurfaceShape::Smoothstep)
    return cutoff_value(CutoffKind::SmoothstepQuintic, t);
  // flat-ended bump 2 q (1 - q) built on the cubic smoothstep; the modest
  // height keeps the chain-rule constants of derived grids small
  Real q = cutoff_value(CutoffKind::SmoothstepCubic, t);
  return 2.0 * q * (1.0 - q);
}

Real surface_sigma_derivative(SurfaceShape shape, Real t) {
  if (shape == SurfaceShape::Smoothstep)
    return cutoff_derivative(CutoffKind::SmoothstepQuintic, t);
  Real q = cutoff_value(CutoffKind::SmoothstepCubic, t);
  Real dq = cutoff_derivative(CutoffKind::SmoothstepCubic, t);
  return 2.0 * dq * (1.0 - 2.0 * q);
}

DevelopmentSurface development_surface(const LieAlgebra& h0, const PathFn& xi,
                                       const PathFn& p, SurfaceShape shape,
                                       int N, int M, int fine_factor) {
  const int n = h0.dim();
  // Coordinate adjoint Ad_{K(x)}: dA/dx = ad_{xi(x)} A, A(0) = I, integrated
  // once on a fine grid and interpolated at the s*sigma(t) arguments.
  const int NF = fine_factor * std::max(N, M);
  const Real hf = 1.0 / NF;
  std::vector<Mat> frames;
  frames.reserve(NF + 1);
  Mat A = Mat::Identity(n, n);
  frames.push_back(A);
  for (int q = 0; q < NF; ++q) {
    Real x = q * hf;
    Mat k1 = h0.ad_matrix(xi(x)) * A;
    Mat mid = h0.ad_matrix(xi(x + 0.5 * hf));
    Mat k2 = mid * (A + 0.5 * hf * k1);
    Mat k3 = mid * (A + 0.5 * hf * k2);
    Mat k4 = h0.ad_matrix(xi(x + hf)) * (A + hf * k3);
    A += (hf / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    frames.push_back(A);
  }

  DevelopmentSurface out;
  out.a = Grid2(n, N, M);
  out.b = Grid2(n, N, M);
  for (int i = 0; i <= N; ++i) {
    Real t = Real(i) / N;
    Real sg = surface_sigma(shape, t);
    Real dsg = surface_sigma_derivative(shape, t);
    Vec pt = p(t);
    for (int j = 0; j <= M; ++j) {
      Real s = Real(j) / M;
      Real x = s * sg;
      Vec xv = xi(x);
      Mat Ad = interp_matrices(frames, x);
      out.a.at(i, j) = (s * dsg) * xv + Ad * pt;
      out.b.at(i, j) = sg * xv;
    }
  }
  return out;
}

BigonGenerator BigonGenerator::random(TwoAlgebraPtr context, uint64_t seed,
                                      Real amplitude, int modes) {
  SeededRng rng(seed);
  BigonGenerator g;
  g.context = context;
  g.a0 = PathGenerator::random(context->dim0(), rng, modes, amplitude);
  g.target_h1 =
      PathGenerator::random(context->dim1, rng, modes, 0.8 * amplitude);
  g.bump_t = PathGenerator::random(context->dim1, rng, modes, 0.5 * amplitude);
  g.bump_s = PathGenerator::random(1, rng, 2, 1.0);
  return g;
}

BigonGenerator BigonGenerator::with_source(TwoAlgebraPtr context,
                                           const PathGenerator& source,
                                           uint64_t seed, Real amplitude,
                                           int modes) {
  BigonGenerator g = random(context, seed, amplitude, modes);
  g.a0 = source;
  return g;
}

BigonGenerator BigonGenerator::with_source_samples(TwoAlgebraPtr context,
                                                   Mat samples, uint64_t seed,
                                                   Real amplitude, int modes) {
  BigonGenerator g = random(context, seed, amplitude, modes);
  g.source_samples = std::move(samples);
  return g;
}

BigonData BigonGenerator::build(int N, int M) const {
  const StrictLie2Algebra& A = *context;
  const int n1 = A.dim1;

  PathFn xi = [&](Real x) -> Vec { return A.dM * target_h1.value(x); };
  PathFn p = [&](Real t) -> Vec {
    if (source_samples) return interp_columns(*source_samples, t);
    return a0.value(t);
  };
  DevelopmentSurface surf =
      development_surface(A.h0, xi, p, SurfaceShape::Smoothstep, N, M);

  BigonData B;
  B.context = context;
  B.a = surf.a;
  B.b = Grid2(A.h0.dim(), N, M);
  B.z = Grid2(n1, N, M);

  // Delta b extension: alpha(t) l2(a(1,s), d(s)) + beta(t) d(s) plus an
  // interior correction vanishing flatly at the t-faces and at the s-faces.
  for (int j = 0; j <= M; ++j) {
    Real s = Real(j) / M;
    Vec d = target_h1.value(s);
    Vec w = A.act_matrix(surf.a.at(N, j)) * d;
    Real ws = bump_s.value(s)[0];
    for (int i = 0; i <= N; ++i) {
      Real t = Real(i) / N;
      Real alpha = t * t * (t - 1.0);
      Real beta = t * t * (3.0 - 2.0 * t);
      Real dalpha = t * (3.0 * t - 2.0);
      Real dbeta = 6.0 * t * (1.0 - t);
      Vec db = alpha * w + beta * d + ws * bump_t.value(t);
      Vec dtdb = dalpha * w + dbeta * d + ws * bump_t.derivative(t);
      B.z.at(i, j) = A.act_matrix(surf.a.at(i, j)) * db - dtdb;
      B.b.at(i, j) = surf.b.at(i, j) - A.dM * db;
    }
  }
  enforce_bigon_boundary(B);
  return B;
}

HomotopyGenerator HomotopyGenerator::random(AlgebraPtr algebra, uint64_t seed,
                                            Real amplitude, int modes) {
  SeededRng rng(seed);
  HomotopyGenerator g;
  g.algebra = algebra;
  g.p = PathGenerator::random(algebra->dim(), rng, modes, amplitude);
  g.xi = PathGenerator::random(algebra->dim(), rng, modes, amplitude);
  return g;
}

DevelopmentSurface HomotopyGenerator::build(int N, int M) const {
  PathFn xif = [&](Real x) -> Vec { return xi.value(x); };
  PathFn pf = [&](Real t) -> Vec { return p.value(t); };
  return development_surface(*algebra, xif, pf, SurfaceShape::Bump, N, M);
}

}  // namespace lie2
