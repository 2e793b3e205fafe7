#pragma once

#include "lie2/types.hpp"

namespace lie2 {

/// Evaluate uniformly sampled data (columns = nodes on [0,1]) at x by
/// 4-point Lagrange interpolation. Exact at the nodes; O(h^4) in between.
Vec interp_columns(const Mat& samples, Real x);

/// The 4-node Lagrange stencil for x in [0,1] over `segments` uniform
/// steps: writes the base node index and the four weights.
void interp_stencil(Real x, int segments, int* base, Real weights[4]);

/// Interpolate every entry of a sequence of equally shaped matrices
/// (nodes on [0,1]) at x.
Mat interp_matrices(const std::vector<Mat>& frames, Real x);

/// d/dt along the first grid axis: 2nd-order central differences in the
/// interior, 2nd-order one-sided at the faces.
Grid2 derivative_t(const Grid2& g);
/// d/ds along the second grid axis, same stencils.
Grid2 derivative_s(const Grid2& g);

/// Pointwise derivative of uniformly sampled columns (nodes on [0,1]).
Mat derivative_columns(const Mat& samples);

namespace stencil {
// 2nd-order first-derivative stencils on a unit-step grid.
inline Vec central(const Vec& prev, const Vec& next, Real h) {
  return (next - prev) / (2.0 * h);
}
inline Vec forward(const Vec& f0, const Vec& f1, const Vec& f2, Real h) {
  return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
}
inline Vec backward(const Vec& f0, const Vec& f1, const Vec& f2, Real h) {
  return (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h);
}
}  // namespace stencil

/// Named reparametrizations of [0,1].
enum class CutoffKind {
  Identity,          // tau(t) = t
  SmoothstepCubic,   // 3t^2 - 2t^3
  SmoothstepQuintic, // 6t^5 - 15t^4 + 10t^3 (flat ends)
  FlatExp            // f(t)/(f(t)+f(1-t)), f = exp(-1/t); flat to all orders
};

Real cutoff_value(CutoffKind kind, Real t);
Real cutoff_derivative(CutoffKind kind, Real t);

/// A cutoff function tau: [0,1] -> [0,1], tau(0)=0, tau(1)=1, non-decreasing.
/// Holds the closed-form choice plus its samples on a grid.
struct Cutoff {
  CutoffKind kind = CutoffKind::SmoothstepQuintic;
  Vec tau;  // samples tau(k/N), k = 0..N

  static Cutoff make(CutoffKind kind, int N);

  Real value(Real t) const { return cutoff_value(kind, t); }
  Real derivative(Real t) const { return cutoff_derivative(kind, t); }
};

const char* cutoff_name(CutoffKind kind);

}  // namespace lie2
