#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace biofilm {

using Block3 = Eigen::Matrix3d;

/// Square matrix of n x n blocks, each 3 x 3, with nonzeros only on the block
/// diagonal and the first block sub/super diagonals.
class BlockTridiagonalMatrix {
 public:
  explicit BlockTridiagonalMatrix(int n_blocks);

  int n_blocks() const noexcept { return static_cast<int>(diag_.size()); }
  int size() const noexcept { return 3 * n_blocks(); }

  Block3& diag(int i) { return diag_[i]; }
  const Block3& diag(int i) const { return diag_[i]; }
  /// Block (i+1, i).
  Block3& lower(int i) { return lower_[i]; }
  const Block3& lower(int i) const { return lower_[i]; }
  /// Block (i, i+1).
  Block3& upper(int i) { return upper_[i]; }
  const Block3& upper(int i) const { return upper_[i]; }

  /// Scalar entry by global row and column; zero outside the band.
  double operator()(int row, int col) const;

  std::vector<double> multiply(std::span<const double> x) const;
  Eigen::MatrixXd to_dense() const;

 private:
  std::vector<Block3> diag_;
  std::vector<Block3> lower_;
  std::vector<Block3> upper_;
};

class SingularBlockError : public std::runtime_error {
 public:
  explicit SingularBlockError(int block)
      : std::runtime_error("singular pivot block at index " + std::to_string(block)),
        block_(block) {}
  int block() const noexcept { return block_; }

 private:
  int block_;
};

/// Block Thomas elimination without inter-block pivoting.
/// Throws SingularBlockError when a Schur-complement pivot is not invertible.
std::vector<double> solve_block_tridiagonal(const BlockTridiagonalMatrix& a,
                                            std::span<const double> rhs);

}  // namespace biofilm
