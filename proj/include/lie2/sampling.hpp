#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "lie2/groups.hpp"

namespace lie2 {

/// Deterministic random source: every draw comes from a single seeded
/// mt19937_64; uniforms take the top 53 bits, so streams are bit-identical
/// across platforms.
struct SeededRng {
  std::mt19937_64 engine;

  explicit SeededRng(uint64_t seed) : engine(seed) {}

  Real uniform01() {
    return static_cast<Real>(engine() >> 11) * 0x1.0p-53;
  }
  Real symmetric() { return 2.0 * uniform01() - 1.0; }
};

/// Closed-form based path a_d(t) = env(t) * sum_k coeff(d,k) cos(k pi t)
/// with env = t^2 (1-t)^2; grid-independent, exactly based, C-infinity.
struct PathGenerator {
  Mat coeffs;  // dim x modes

  static PathGenerator random(int dim, SeededRng& rng, int modes,
                              Real amplitude);

  int dim() const { return static_cast<int>(coeffs.rows()); }
  Vec value(Real t) const;
  Vec derivative(Real t) const;
  Mat sample(int N) const;
  SampledPath path(AlgebraPtr algebra, int N) const;
};

/// Shape of the interpolation parameter sigma(t) used by development
/// surfaces: a smoothstep reaches 1 at t=1, a bump returns to 0.
enum class SurfaceShape { Smoothstep, Bump };

Real surface_sigma(SurfaceShape shape, Real t);
Real surface_sigma_derivative(SurfaceShape shape, Real t);

/// The flat pair derived from the group-valued surface
/// g(t,s) = K(s sigma(t)) P(t), where K develops xi and P develops p:
///   a(t,s) = s sigma'(t) xi(s sigma(t)) + Ad_{K(s sigma(t))} p(t),
///   b(t,s) = sigma(t) xi(s sigma(t)).
/// Satisfies dt b - ds a = [a, b] identically. The coordinate adjoint
/// Ad_{K(x)} is integrated once on a fine grid and interpolated.
struct DevelopmentSurface {
  Grid2 a;
  Grid2 b;
};

using PathFn = std::function<Vec(Real)>;

DevelopmentSurface development_surface(const LieAlgebra& h0, const PathFn& xi,
                                       const PathFn& p, SurfaceShape shape,
                                       int N, int M, int fine_factor = 4);

/// A seeded family of analytically valid bigons over a strict Lie
/// 2-algebra, built from a development surface plus an interior correction
/// term; grid-independent, so the same generator can be sampled at any
/// resolution. `target_h1` is the boundary datum d(s) = Delta b(1,s).
struct BigonGenerator {
  TwoAlgebraPtr context;
  PathGenerator a0;         // h0 source path
  PathGenerator target_h1;  // d(s), h1-valued
  PathGenerator bump_t;     // interior correction profiles
  PathGenerator bump_s;
  /// When set, the source path comes from these samples (interpolated)
  /// instead of a0; node values are matched exactly, so the bigon can be
  /// stacked on top of an existing one.
  std::optional<Mat> source_samples;

  static BigonGenerator random(TwoAlgebraPtr context, uint64_t seed,
                               Real amplitude = 0.2, int modes = 2);

  /// Same family but with the source path fixed (for composable chains).
  static BigonGenerator with_source(TwoAlgebraPtr context,
                                    const PathGenerator& source, uint64_t seed,
                                    Real amplitude = 0.2, int modes = 2);

  /// Source fixed to sampled data (e.g. the target slice of another bigon).
  static BigonGenerator with_source_samples(TwoAlgebraPtr context, Mat samples,
                                            uint64_t seed,
                                            Real amplitude = 0.2,
                                            int modes = 2);

  BigonData build(int N, int M) const;
};

/// A seeded flat g-homotopy (a, b) in a Lie algebra: dt b - ds a = [a, b]
/// with b(0,s) = b(1,s) = 0, built from a bump-shaped development surface.
struct HomotopyGenerator {
  AlgebraPtr algebra;
  PathGenerator p;   // a(.,0)
  PathGenerator xi;  // vertical ingredient

  static HomotopyGenerator random(AlgebraPtr algebra, uint64_t seed,
                                  Real amplitude = 0.2, int modes = 2);

  DevelopmentSurface build(int N, int M) const;
};

}  // namespace lie2
