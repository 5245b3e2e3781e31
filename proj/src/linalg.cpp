#include "chimhd/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace chimhd {

SparseMatrix TripletList::finalize() const {
  for (const auto& t : entries_)
    if (t.row() < 0 || t.row() >= rows_ || t.col() < 0 || t.col() >= cols_)
      throw std::out_of_range("TripletList::finalize: index out of range");
  SparseMatrix m(rows_, cols_);
  m.setFromTriplets(entries_.begin(), entries_.end());
  m.makeCompressed();
  return m;
}

void append_block(TripletList& out, const SparseMatrix& A, int row_offset, int col_offset,
                  double scale) {
  for (int r = 0; r < A.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(A, r); it; ++it)
      out.add(row_offset + static_cast<int>(it.row()), col_offset + static_cast<int>(it.col()),
              scale * it.value());
}

void append_block_transposed(TripletList& out, const SparseMatrix& A, int row_offset,
                             int col_offset, double scale) {
  for (int r = 0; r < A.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(A, r); it; ++it)
      out.add(row_offset + static_cast<int>(it.col()), col_offset + static_cast<int>(it.row()),
              scale * it.value());
}

void apply_essential(LinearSystem& sys, std::vector<EssentialConstraint> constraints) {
  for (const auto& c : constraints) {
    bool seen = false;
    for (const auto& prev : sys.essential)
      if (prev.dof == c.dof) {
        if (prev.value != c.value)
          throw std::invalid_argument("apply_essential: conflicting constraints on dof " +
                                      std::to_string(c.dof));
        seen = true;
      }
    if (!seen) sys.essential.push_back(c);
  }
}

void append_mean_constraint(LinearSystem& sys, int offset, DenseVector weights) {
  if (weights.size() == 0 || weights.isZero(0.0))
    throw std::invalid_argument("append_mean_constraint: zero weight vector");
  sys.means.push_back({offset, std::move(weights)});
}

DirectSolver::DirectSolver(const TripletList& A, std::vector<int> essential_dofs,
                           std::vector<MeanConstraintSpec> means, std::string label)
    : n_(A.rows()),
      label_(std::move(label)),
      ess_dofs_(std::move(essential_dofs)),
      means_(std::move(means)) {
  if (A.rows() != A.cols()) throw std::invalid_argument(label_ + ": matrix not square");
  naug_ = n_ + static_cast<int>(means_.size());

  std::vector<int> ess_index(n_, -1);
  for (size_t i = 0; i < ess_dofs_.size(); ++i) {
    if (ess_dofs_[i] < 0 || ess_dofs_[i] >= n_)
      throw std::out_of_range(label_ + ": essential dof out of range");
    if (ess_index[ess_dofs_[i]] >= 0)
      throw std::invalid_argument(label_ + ": duplicate essential dof");
    ess_index[ess_dofs_[i]] = static_cast<int>(i);
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(A.entries().size() + ess_dofs_.size() + 2 * means_.size() * 8);
  for (const auto& t : A.entries()) {
    if (t.row() < 0 || t.row() >= n_ || t.col() < 0 || t.col() >= n_)
      throw std::out_of_range(label_ + ": triplet index out of range");
    if (ess_index[t.row()] >= 0) continue;  // replaced by identity row
    if (ess_index[t.col()] >= 0) {
      ess_columns_.push_back({t.row(), ess_index[t.col()], t.value()});
      continue;  // column moved to the rhs at solve time
    }
    trip.emplace_back(t.row(), t.col(), t.value());
  }
  for (int d : ess_dofs_) trip.emplace_back(d, d, 1.0);

  for (size_t k = 0; k < means_.size(); ++k) {
    const auto& mc = means_[k];
    const int row = n_ + static_cast<int>(k);
    for (int j = 0; j < mc.weights.size(); ++j) {
      const double w = mc.weights[j];
      if (w == 0.0) continue;
      const int dof = mc.offset + j;
      if (dof < 0 || dof >= n_) throw std::out_of_range(label_ + ": mean weight out of range");
      if (ess_index[dof] >= 0)
        throw std::invalid_argument(label_ + ": mean constraint overlaps essential dof");
      trip.emplace_back(row, dof, w);
      trip.emplace_back(dof, row, w);
    }
  }

  mat_.resize(naug_, naug_);
  mat_.setFromTriplets(trip.begin(), trip.end());
  mat_.makeCompressed();
#ifdef CHIMHD_HAVE_UMFPACK
  // The assembled KKT operators have symmetric structure; the symmetric
  // strategy avoids the fill-in blowup of the automatic one on the
  // saddle blocks and the mean-constraint row.
  lu_.umfpackControl()[UMFPACK_STRATEGY] = UMFPACK_STRATEGY_SYMMETRIC;
#endif
  lu_.compute(mat_);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error(label_ + ": singular linear system (factorization failed)");
}

SolveResult DirectSolver::solve(const DenseVector& rhs, const DenseVector& essential_values) const {
  if (rhs.size() != n_) throw std::invalid_argument(label_ + ": rhs size mismatch");
  if (essential_values.size() != static_cast<Eigen::Index>(ess_dofs_.size()))
    throw std::invalid_argument(label_ + ": essential value count mismatch");

  DenseVector b = DenseVector::Zero(naug_);
  b.head(n_) = rhs;
  for (const auto& e : ess_columns_) b[e.row] -= e.value * essential_values[e.ess_index];
  for (size_t i = 0; i < ess_dofs_.size(); ++i) b[ess_dofs_[i]] = essential_values[i];

  DenseVector x = lu_.solve(b);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error(label_ + ": singular linear system (solve failed)");

  const double bnorm = b.norm();
  const double rnorm = (mat_ * x - b).norm();
  const double rel = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  if (rel > 1e-10)
    throw std::runtime_error(label_ + ": direct solve residual " + std::to_string(rel) +
                             " exceeds 1e-10");

  SolveResult res;
  res.x = x.head(n_);
  res.multipliers = x.tail(naug_ - n_);
  res.relative_residual = rel;
  return res;
}

SolveResult solve_direct(const LinearSystem& sys, const std::string& label) {
  std::vector<int> dofs;
  DenseVector vals(static_cast<Eigen::Index>(sys.essential.size()));
  for (size_t i = 0; i < sys.essential.size(); ++i) {
    dofs.push_back(sys.essential[i].dof);
    vals[static_cast<Eigen::Index>(i)] = sys.essential[i].value;
  }
  DirectSolver solver(sys.A, std::move(dofs), sys.means, label);
  return solver.solve(sys.b, vals);
}

}  // namespace chimhd
