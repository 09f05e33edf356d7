#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pvalab/rational.hpp"

namespace pvalab {

// A sparse row vector: column index -> nonzero coefficient.
using SparseVec = std::map<int, Rational>;

void axpy(SparseVec& y, const Rational& c, const SparseVec& x);
bool sv_is_zero(const SparseVec& v);

// Incremental exact Gaussian elimination over Q.
//
// Rows are reduced against the pivots found so far; a row that survives
// becomes a new pivot row on its preferred column. "Preferred" is decided by
// col_rank: smaller rank is eliminated first, so columns with the largest
// rank are the ones that can survive into reduce() remainders. Pivot rows are
// not inter-reduced (plain echelon, not RREF); reduce() does a single ordered
// elimination pass, and back_substitute() solves for pivot coordinates.
class Echelon {
 public:
  // ncols columns; col_rank[i] gives the pivot preference of column i
  // (lower = used as pivot earlier). Pass empty to use the identity order.
  Echelon(int ncols, std::vector<int> col_rank = {});

  // Returns true if the row was independent of the current span (and was
  // added as a new pivot row). track is an optional tag vector carried along
  // the elimination (used for row-combination bookkeeping).
  bool add_row(SparseVec row, SparseVec track = {});

  // v minus its projection onto the row span: all pivot columns eliminated.
  SparseVec reduce(SparseVec v) const;

  // Same, also accumulating the combination of *added* rows that was
  // subtracted (in terms of the track tags passed to add_row).
  SparseVec reduce_tracked(SparseVec v, SparseVec& combo) const;

  int rank() const { return static_cast<int>(by_col_.size()); }
  int ncols() const { return ncols_; }
  bool is_pivot(int col) const { return by_col_.count(col) != 0; }
  const std::map<int, int>& pivot_cols() const { return by_col_; }

  // Kernel basis of the row-span matrix, one vector per free column.
  std::vector<SparseVec> kernel() const;

  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<SparseVec>& tracks() const { return tracks_; }

 private:
  int pick_pivot(const SparseVec& row) const;

  int ncols_;
  std::vector<int> col_rank_;
  std::vector<SparseVec> rows_;    // pivot rows, pivot coeff normalized to 1
  std::vector<SparseVec> tracks_;
  std::vector<int> pivot_of_row_;
  std::map<int, int> by_col_;      // pivot column -> row index
};

struct RankKernel {
  int rank = 0;
  std::vector<SparseVec> kernel;
};

// Exact rank and kernel basis of the matrix with the given rows. Pivoting
// prefers the sparsest columns first.
RankKernel rank_kernel(const std::vector<SparseVec>& rows, int ncols);

// Coefficients c with sum_i c_i rows[i] = target, if target lies in the row
// span. The result is re-checked against target before returning.
std::optional<std::vector<Rational>> solve_in_rowspace(
    const std::vector<SparseVec>& rows, const SparseVec& target, int ncols);

}  // namespace pvalab
