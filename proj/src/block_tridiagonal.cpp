#include "biofilm/block_tridiagonal.hpp"

namespace biofilm {

BlockTridiagonalMatrix::BlockTridiagonalMatrix(int n_blocks) {
  if (n_blocks < 1) throw std::invalid_argument("block matrix needs at least one block");
  diag_.assign(static_cast<std::size_t>(n_blocks), Block3::Zero());
  lower_.assign(static_cast<std::size_t>(n_blocks - 1), Block3::Zero());
  upper_.assign(static_cast<std::size_t>(n_blocks - 1), Block3::Zero());
}

double BlockTridiagonalMatrix::operator()(int row, int col) const {
  const int bi = row / 3, bj = col / 3;
  const int r = row % 3, c = col % 3;
  if (bi == bj) return diag_[bi](r, c);
  if (bi == bj + 1) return lower_[bj](r, c);
  if (bj == bi + 1) return upper_[bi](r, c);
  return 0.0;
}

std::vector<double> BlockTridiagonalMatrix::multiply(std::span<const double> x) const {
  const int n = n_blocks();
  if (x.size() != static_cast<std::size_t>(3 * n)) {
    throw std::invalid_argument("multiply: vector length does not match matrix");
  }
  std::vector<double> y(x.size(), 0.0);
  using Vec = Eigen::Map<const Eigen::Vector3d>;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d acc = diag_[i] * Vec(x.data() + 3 * i);
    if (i > 0) acc += lower_[i - 1] * Vec(x.data() + 3 * (i - 1));
    if (i + 1 < n) acc += upper_[i] * Vec(x.data() + 3 * (i + 1));
    Eigen::Map<Eigen::Vector3d>(y.data() + 3 * i) = acc;
  }
  return y;
}

Eigen::MatrixXd BlockTridiagonalMatrix::to_dense() const {
  const int n = n_blocks();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (int i = 0; i < n; ++i) {
    m.block<3, 3>(3 * i, 3 * i) = diag_[i];
    if (i + 1 < n) {
      m.block<3, 3>(3 * (i + 1), 3 * i) = lower_[i];
      m.block<3, 3>(3 * i, 3 * (i + 1)) = upper_[i];
    }
  }
  return m;
}

std::vector<double> solve_block_tridiagonal(const BlockTridiagonalMatrix& a,
                                            std::span<const double> rhs) {
  const int n = a.n_blocks();
  if (rhs.size() != static_cast<std::size_t>(3 * n)) {
    throw std::invalid_argument("solve_block_tridiagonal: rhs length does not match matrix");
  }
  // Forward sweep: c[i] = S_i^{-1} U_i, d[i] = S_i^{-1} (r_i - L_{i-1} d[i-1]).
  std::vector<Block3> c(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
  std::vector<Eigen::Vector3d> d(static_cast<std::size_t>(n));
  using Vec = Eigen::Map<const Eigen::Vector3d>;

  Block3 schur = a.diag(0);
  for (int i = 0; i < n; ++i) {
    if (i > 0) schur = a.diag(i) - a.lower(i - 1) * c[i - 1];
    Eigen::FullPivLU<Block3> lu(schur);
    if (!lu.isInvertible()) throw SingularBlockError(i);
    Eigen::Vector3d r = Vec(rhs.data() + 3 * i);
    if (i > 0) r -= a.lower(i - 1) * d[i - 1];
    d[i] = lu.solve(r);
    if (i + 1 < n) c[i] = lu.solve(a.upper(i));
  }

  std::vector<double> x(rhs.size());
  Eigen::Vector3d next = d[n - 1];
  Eigen::Map<Eigen::Vector3d>(x.data() + 3 * (n - 1)) = next;
  for (int i = n - 2; i >= 0; --i) {
    next = d[i] - c[i] * next;
    Eigen::Map<Eigen::Vector3d>(x.data() + 3 * i) = next;
  }
  return x;
}

}  // namespace biofilm
