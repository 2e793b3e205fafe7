#include "lie2/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace lie2 {

namespace {

// Lagrange weights for the 4-node unit-step stencil {0,1,2,3} at xi.
// Exact 0/1 weights when xi hits a node.
void lagrange4(Real xi, Real w[4]) {
  w[0] = -(xi - 1.0) * (xi - 2.0) * (xi - 3.0) / 6.0;
  w[1] = xi * (xi - 2.0) * (xi - 3.0) / 2.0;
  w[2] = -xi * (xi - 1.0) * (xi - 3.0) / 2.0;
  w[3] = xi * (xi - 1.0) * (xi - 2.0) / 6.0;
}

int stencil_base(Real x, int segments, Real* xi_out) {
  Real u = x * segments;
  int i = static_cast<int>(std::floor(u));
  i = std::clamp(i, 0, segments - 1);
  int base = std::clamp(i - 1, 0, segments - 3);
  *xi_out = u - base;
  return base;
}

}  // namespace

void interp_stencil(Real x, int segments, int* base, Real weights[4]) {
  if (segments < 3)
    throw PreconditionError("interp_stencil: need at least 4 nodes");
  x = std::clamp(x, 0.0, 1.0);
  Real xi;
  *base = stencil_base(x, segments, &xi);
  lagrange4(xi, weights);
}

Vec interp_columns(const Mat& samples, Real x) {
  const int P = static_cast<int>(samples.cols()) - 1;
  int base;
  Real w[4];
  interp_stencil(x, P, &base, w);
  return w[0] * samples.col(base) + w[1] * samples.col(base + 1) +
         w[2] * samples.col(base + 2) + w[3] * samples.col(base + 3);
}

Mat interp_matrices(const std::vector<Mat>& frames, Real x) {
  const int P = static_cast<int>(frames.size()) - 1;
  if (P < 3) throw PreconditionError("interp_matrices: need at least 4 nodes");
  x = std::clamp(x, 0.0, 1.0);
  Real xi;
  int base = stencil_base(x, P, &xi);
  Real w[4];
  lagrange4(xi, w);
  return w[0] * frames[base] + w[1] * frames[base + 1] +
         w[2] * frames[base + 2] + w[3] * frames[base + 3];
}

Mat derivative_columns(const Mat& samples) {
  const int P = static_cast<int>(samples.cols()) - 1;
  if (P < 2) throw PreconditionError("derivative_columns: need >= 3 nodes");
  const Real h = 1.0 / P;
  Mat out(samples.rows(), P + 1);
  out.col(0) = stencil::forward(samples.col(0), samples.col(1), samples.col(2), h);
  for (int k = 1; k < P; ++k)
    out.col(k) = stencil::central(samples.col(k - 1), samples.col(k + 1), h);
  out.col(P) =
      stencil::backward(samples.col(P), samples.col(P - 1), samples.col(P - 2), h);
  return out;
}

Grid2 derivative_t(const Grid2& g) {
  Grid2 out(g.dim, g.N, g.M);
  const Real h = 1.0 / g.N;
  for (int j = 0; j <= g.M; ++j) {
    out.at(0, j) = stencil::forward(g.at(0, j), g.at(1, j), g.at(2, j), h);
    for (int i = 1; i < g.N; ++i)
      out.at(i, j) = stencil::central(g.at(i - 1, j), g.at(i + 1, j), h);
    out.at(g.N, j) =
        stencil::backward(g.at(g.N, j), g.at(g.N - 1, j), g.at(g.N - 2, j), h);
  }
  return out;
}

Grid2 derivative_s(const Grid2& g) {
  Grid2 out(g.dim, g.N, g.M);
  const Real h = 1.0 / g.M;
  for (int i = 0; i <= g.N; ++i) {
    out.at(i, 0) = stencil::forward(g.at(i, 0), g.at(i, 1), g.at(i, 2), h);
    for (int j = 1; j < g.M; ++j)
      out.at(i, j) = stencil::central(g.at(i, j - 1), g.at(i, j + 1), h);
    out.at(i, g.M) =
        stencil::backward(g.at(i, g.M), g.at(i, g.M - 1), g.at(i, g.M - 2), h);
  }
  return out;
}

namespace {

Real flat_ramp(Real t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / t); }
Real flat_ramp_derivative(Real t) {
  return t <= 0.0 ? 0.0 : std::exp(-1.0 / t) / (t * t);
}

}  // namespace

Real cutoff_value(CutoffKind kind, Real t) {
  switch (kind) {
    case CutoffKind::Identity:
      return t;
    case CutoffKind::SmoothstepCubic:
      return t * t * (3.0 - 2.0 * t);
    case CutoffKind::SmoothstepQuintic:
      return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    case CutoffKind::FlatExp: {
      if (t <= 0.0) return 0.0;
      if (t >= 1.0) return 1.0;
      Real g = flat_ramp(t), h = flat_ramp(1.0 - t);
      return g / (g + h);
    }
  }
  return t;
}

Real cutoff_derivative(CutoffKind kind, Real t) {
  switch (kind) {
    case CutoffKind::Identity:
      return 1.0;
    case CutoffKind::SmoothstepCubic:
      return 6.0 * t * (1.0 - t);
    case CutoffKind::SmoothstepQuintic:
      return 30.0 * t * t * (1.0 - t) * (1.0 - t);
    case CutoffKind::FlatExp: {
      if (t <= 0.0 || t >= 1.0) return 0.0;
      Real g = flat_ramp(t), h = flat_ramp(1.0 - t);
      Real dg = flat_ramp_derivative(t), dh = -flat_ramp_derivative(1.0 - t);
      Real denom = (g + h) * (g + h);
      return (dg * h - g * dh) / denom;
    }
  }
  return 1.0;
}

Cutoff Cutoff::make(CutoffKind kind, int N) {
  Cutoff c;
  c.kind = kind;
  c.tau = Vec(N + 1);
  for (int k = 0; k <= N; ++k) c.tau[k] = cutoff_value(kind, Real(k) / N);
  return c;
}

const char* cutoff_name(CutoffKind kind) {
  switch (kind) {
    case CutoffKind::Identity:
      return "identity";
    case CutoffKind::SmoothstepCubic:
      return "smoothstep3";
    case CutoffKind::SmoothstepQuintic:
      return "smoothstep5";
    case CutoffKind::FlatExp:
      return "flatexp";
  }
  return "unknown";
}

}  // namespace lie2
