#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qillume {

/// Dense Hermitian PSD matrix with explicit per-mode dimensions,
/// stored as a direct sum of dense blocks over disjoint index sets.
///
/// Flat indexing is idler-major for two-mode matrices:
/// flat = idler_index * d_signal + signal_index. All states assembled
/// here obey the ladder coherence selection rule <i,j|rho|i',j'> = 0
/// unless i - i' = j - j', so two-mode matrices decompose into blocks
/// of constant i - j. Single-mode matrices use a single block.
struct DensityMatrix {
  struct Block {
    std::vector<int> members;  // ascending flat indices covered by this block
    Eigen::MatrixXd m;         // dense symmetric, members.size() square
  };

  std::vector<int> dims;      // {d_idler, d_signal} or {d_signal}
  std::vector<Block> blocks;  // disjoint member sets, sorted by members.front()
  double trace_deficit = 0.0; // 1 - trace recorded at assembly time

  bool two_mode() const { return dims.size() == 2; }
  long total_dim() const;
  double trace() const;
  double min_eigenvalue() const;
  /// Element accessor on flat indices; exact 0 outside the stored blocks.
  double entry(int row, int col) const;
  Eigen::MatrixXd dense() const;
  std::vector<double> eigenvalues() const;
};

/// Convex/linear combination; terms must share dims. The result partition
/// is the common coarsening of the term partitions.
DensityMatrix lincomb(const std::vector<std::pair<double, const DensityMatrix*>>& terms);

/// Transpose over the idler mode. Exact involution.
DensityMatrix partial_transpose_idler(const DensityMatrix& rho);

/// Marginals of a two-mode matrix.
Eigen::MatrixXd partial_trace_signal(const DensityMatrix& rho);  // -> idler marginal
Eigen::MatrixXd partial_trace_idler(const DensityMatrix& rho);   // -> signal marginal

/// Coarsest partition refining none of the inputs: flat indices grouped by
/// connectivity across every input's blocks. Inputs must share dims.
std::vector<std::vector<int>> merged_partition(
    const std::vector<const DensityMatrix*>& mats);

/// Dense submatrix of rho restricted to the given flat indices.
Eigen::MatrixXd restrict_to(const DensityMatrix& rho, const std::vector<int>& members);

}  // namespace qillume
