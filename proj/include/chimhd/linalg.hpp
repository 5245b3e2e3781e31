#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#ifdef CHIMHD_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

namespace chimhd {

using DenseVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;  // CSR

/// Triplet accumulation phase of a sparse operator. Duplicates sum on
/// finalize; indices are range-checked there.
class TripletList {
 public:
  TripletList(int rows, int cols) : rows_(rows), cols_(cols) {}

  void add(int row, int col, double value) { entries_.emplace_back(row, col, value); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Eigen::Triplet<double>>& entries() const { return entries_; }

  /// CSR matrix with duplicates summed and columns sorted within each row.
  SparseMatrix finalize() const;

 private:
  int rows_, cols_;
  std::vector<Eigen::Triplet<double>> entries_;
};

/// Appends scale*A into out at a block offset; transposed variant swaps
/// row/column roles (used for saddle-point couplings).
void append_block(TripletList& out, const SparseMatrix& A, int row_offset, int col_offset,
                  double scale);
void append_block_transposed(TripletList& out, const SparseMatrix& A, int row_offset,
                             int col_offset, double scale);

struct EssentialConstraint {
  int dof;
  double value;
};

/// One Lagrange-multiplier row/column enforcing weights . x_block = 0 for the
/// sub-vector starting at offset.
struct MeanConstraintSpec {
  int offset;
  DenseVector weights;
};

struct LinearSystem {
  TripletList A;
  DenseVector b;
  std::vector<EssentialConstraint> essential;
  std::vector<MeanConstraintSpec> means;

  explicit LinearSystem(int n) : A(n, n), b(DenseVector::Zero(n)) {}
};

void apply_essential(LinearSystem& sys, std::vector<EssentialConstraint> constraints);
void append_mean_constraint(LinearSystem& sys, int offset, DenseVector weights);

struct SolveResult {
  DenseVector x;            // primal unknowns
  DenseVector multipliers;  // one entry per mean constraint
  double relative_residual = 0.0;
};

/// Sparse LU with partial pivoting on the constrained, augmented operator.
/// Essential rows become identity rows with the symmetric column contribution
/// moved to the right-hand side, so the factorization is reusable across
/// solves with different essential values and right-hand sides.
class DirectSolver {
 public:
  DirectSolver(const TripletList& A, std::vector<int> essential_dofs,
               std::vector<MeanConstraintSpec> means, std::string label);

  /// rhs has the primal size; essential_values is parallel to essential_dofs.
  /// Checks the relative residual against 1e-10 and throws (naming the step)
  /// when the solve is unreliable.
  SolveResult solve(const DenseVector& rhs, const DenseVector& essential_values) const;

  int size() const { return n_; }
  const std::string& label() const { return label_; }

 private:
  int n_ = 0;
  int naug_ = 0;
  std::string label_;
  std::vector<int> ess_dofs_;
  std::vector<MeanConstraintSpec> means_;
  // original column entries of constrained dofs: (row, index into ess_dofs_, value)
  struct ColEntry {
    int row;
    int ess_index;
    double value;
  };
  std::vector<ColEntry> ess_columns_;
  Eigen::SparseMatrix<double> mat_;  // column-major for the factorization
#ifdef CHIMHD_HAVE_UMFPACK
  Eigen::UmfPackLU<Eigen::SparseMatrix<double>> lu_;
#else
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
#endif
};

/// One-shot convenience over DirectSolver.
SolveResult solve_direct(const LinearSystem& sys, const std::string& label);

}  // namespace chimhd
