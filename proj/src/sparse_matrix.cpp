#include "pvalab/sparse_matrix.hpp"

#include <algorithm>

namespace pvalab {

void axpy(SparseVec& y, const Rational& c, const SparseVec& x) {
  if (is_zero(c)) return;
  for (const auto& [j, v] : x) {
    auto it = y.find(j);
    if (it == y.end()) {
      y.emplace(j, c * v);
    } else {
      it->second += c * v;
      if (is_zero(it->second)) y.erase(it);
    }
  }
}

bool sv_is_zero(const SparseVec& v) { return v.empty(); }

Echelon::Echelon(int ncols, std::vector<int> col_rank)
    : ncols_(ncols), col_rank_(std::move(col_rank)) {
  if (col_rank_.empty()) {
    col_rank_.resize(ncols_);
    for (int i = 0; i < ncols_; ++i) col_rank_[i] = i;
  }
}

int Echelon::pick_pivot(const SparseVec& row) const {
  int best = -1;
  for (const auto& [j, v] : row) {
    (void)v;
    if (best < 0 || col_rank_[j] < col_rank_[best]) best = j;
  }
  return best;
}

bool Echelon::add_row(SparseVec row, SparseVec track) {
  // eliminate existing pivot columns, best rank first
  for (;;) {
    int p = -1;
    for (const auto& [j, v] : row) {
      (void)v;
      if (by_col_.count(j) && (p < 0 || col_rank_[j] < col_rank_[p])) p = j;
    }
    if (p < 0) break;
    int r = by_col_.at(p);
    Rational c = -row.at(p);
    axpy(row, c, rows_[r]);
    axpy(track, c, tracks_[r]);
  }
  if (row.empty()) return false;
  int p = pick_pivot(row);
  Rational inv = 1 / row.at(p);
  for (auto& [j, v] : row) v *= inv;
  for (auto& [j, v] : track) v *= inv;
  rows_.push_back(std::move(row));
  tracks_.push_back(std::move(track));
  pivot_of_row_.push_back(p);
  by_col_[p] = static_cast<int>(rows_.size()) - 1;
  return true;
}

SparseVec Echelon::reduce(SparseVec v) const {
  SparseVec combo;
  return reduce_tracked(std::move(v), combo);
}

SparseVec Echelon::reduce_tracked(SparseVec v, SparseVec& combo) const {
  // Pivot rows only contain columns ranked after their own pivot, so one
  // pass in increasing rank order terminates.
  for (;;) {
    int p = -1;
    for (const auto& [j, c] : v) {
      (void)c;
      if (by_col_.count(j) && (p < 0 || col_rank_[j] < col_rank_[p])) p = j;
    }
    if (p < 0) break;
    int r = by_col_.at(p);
    Rational c = -v.at(p);
    axpy(v, c, rows_[r]);
    axpy(combo, c, tracks_[r]);
  }
  return v;
}

std::vector<SparseVec> Echelon::kernel() const {
  std::vector<SparseVec> basis;
  std::vector<int> free_cols;
  for (int j = 0; j < ncols_; ++j)
    if (!by_col_.count(j)) free_cols.push_back(j);

  // pivot columns sorted by decreasing rank, so each row's tail is known
  // when its pivot is solved
  std::vector<int> pcols;
  for (const auto& [p, r] : by_col_) {
    (void)r;
    pcols.push_back(p);
  }
  std::sort(pcols.begin(), pcols.end(),
            [&](int a, int b) { return col_rank_[a] > col_rank_[b]; });

  for (int f : free_cols) {
    SparseVec x;
    x[f] = 1;
    for (int p : pcols) {
      const SparseVec& row = rows_[by_col_.at(p)];
      Rational s(0);
      for (const auto& [j, c] : row) {
        if (j == p) continue;
        auto it = x.find(j);
        if (it != x.end()) s += c * it->second;
      }
      if (!is_zero(s)) x[p] = -s;  // pivot coeff is 1
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

RankKernel rank_kernel(const std::vector<SparseVec>& rows, int ncols) {
  // sparsest columns first keeps elimination fill-in low
  std::vector<int> count(ncols, 0);
  for (const auto& r : rows)
    for (const auto& [j, v] : r) {
      (void)v;
      ++count[j];
    }
  std::vector<int> order(ncols);
  for (int i = 0; i < ncols; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return count[a] < count[b]; });
  std::vector<int> col_rank(ncols);
  for (int i = 0; i < ncols; ++i) col_rank[order[i]] = i;

  Echelon ech(ncols, std::move(col_rank));
  for (const auto& r : rows) ech.add_row(r);
  RankKernel rk;
  rk.rank = ech.rank();
  rk.kernel = ech.kernel();
  return rk;
}

std::optional<std::vector<Rational>> solve_in_rowspace(
    const std::vector<SparseVec>& rows, const SparseVec& target, int ncols) {
  Echelon ech(ncols);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    SparseVec track;
    track[i] = 1;
    ech.add_row(rows[i], std::move(track));
  }
  SparseVec combo;
  SparseVec rem = ech.reduce_tracked(target, combo);
  if (!rem.empty()) return std::nullopt;

  std::vector<Rational> c(rows.size(), Rational(0));
  for (const auto& [i, v] : combo) c[i] = -v;

  // post-condition: the combination reproduces target exactly
  SparseVec check;
  for (size_t i = 0; i < rows.size(); ++i) axpy(check, c[i], rows[i]);
  SparseVec diff = check;
  axpy(diff, Rational(-1), target);
  if (!diff.empty()) throw MathError("solve_in_rowspace: verification failed");
  return c;
}

}  // namespace pvalab
