#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lie2 {

using Real = double;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Shape or context mismatch between operands (wrong dimension, different
/// parent algebra, incompatible grids).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation's stated precondition does not hold (path not based,
/// arrows not composable, cutoff not monotone).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A numerical gate refused the input (residual above tolerance,
/// fiber condition violated).
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Segment counts of the uniform grids in the t, s and u directions.
struct GridSpec {
  int N = 64;
  int M = 64;
  int K = 8;

  GridSpec() = default;
  GridSpec(int n, int m, int k = 8) : N(n), M(m), K(k) {
    if (N < 8 || M < 8 || K < 8)
      throw PreconditionError("GridSpec: segment counts must be >= 8");
  }

  Real ht() const { return 1.0 / N; }
  Real hs() const { return 1.0 / M; }
  Real hu() const { return 1.0 / K; }
};

/// Vector-valued data over the uniform (t,s) grid; column (i,j) holds the
/// value at (t_i, s_j) = (i/N, j/M). Columns with fixed j are contiguous.
struct Grid2 {
  int dim = 0;
  int N = 0;
  int M = 0;
  Mat data;  // dim x (N+1)(M+1), column index i + j*(N+1)

  Grid2() = default;
  Grid2(int dim_, int N_, int M_)
      : dim(dim_), N(N_), M(M_), data(Mat::Zero(dim_, (N_ + 1) * (M_ + 1))) {}

  int index(int i, int j) const { return i + j * (N + 1); }
  auto at(int i, int j) { return data.col(index(i, j)); }
  auto at(int i, int j) const { return data.col(index(i, j)); }

  /// All samples with fixed s-index j, as a dim x (N+1) block.
  auto t_slice(int j) { return data.middleCols(j * (N + 1), N + 1); }
  auto t_slice(int j) const { return data.middleCols(j * (N + 1), N + 1); }

  /// Samples with fixed t-index i, gathered into a fresh dim x (M+1) matrix.
  Mat s_slice(int i) const {
    Mat out(dim, M + 1);
    for (int j = 0; j <= M; ++j) out.col(j) = at(i, j);
    return out;
  }

  Real max_abs() const {
    return data.size() == 0 ? 0.0 : data.cwiseAbs().maxCoeff();
  }

  bool same_shape(const Grid2& o) const {
    return dim == o.dim && N == o.N && M == o.M;
  }
};

/// Vector-valued data over the uniform (t,s,u) grid.
struct Grid3 {
  int dim = 0;
  int N = 0;
  int M = 0;
  int K = 0;
  Mat data;  // dim x (N+1)(M+1)(K+1), column index i + (N+1)*(j + (M+1)*k)

  Grid3() = default;
  Grid3(int dim_, int N_, int M_, int K_)
      : dim(dim_), N(N_), M(M_), K(K_),
        data(Mat::Zero(dim_, (N_ + 1) * (M_ + 1) * (K_ + 1))) {}

  int index(int i, int j, int k) const {
    return i + (N + 1) * (j + (M + 1) * k);
  }
  auto at(int i, int j, int k) { return data.col(index(i, j, k)); }
  auto at(int i, int j, int k) const { return data.col(index(i, j, k)); }

  /// The (t,s) cross-section at fixed u-index k.
  Grid2 u_section(int k) const {
    Grid2 g(dim, N, M);
    g.data = data.middleCols(k * (N + 1) * (M + 1), (N + 1) * (M + 1));
    return g;
  }

  Real max_abs() const {
    return data.size() == 0 ? 0.0 : data.cwiseAbs().maxCoeff();
  }
};

}  // namespace lie2
