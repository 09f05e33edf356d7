#include <random>
#include <vector>

#include "doctest.h"
#include "pvalab/digraph.hpp"
#include "pvalab/sparse_matrix.hpp"

using namespace pvalab;

namespace {

SparseVec row(std::initializer_list<std::pair<int, long>> entries) {
  SparseVec v;
  for (auto& [i, c] : entries)
    if (c != 0) v[i] = rat(c);
  return v;
}

// dense elimination oracle for the rank, kept deliberately naive
int dense_rank(std::vector<std::vector<Rational>> m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!is_zero(m[r][c])) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || is_zero(m[r][c])) continue;
      Rational f = m[r][c] / m[rank][c];
      for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

bool in_kernel(const std::vector<SparseVec>& rows, const SparseVec& v) {
  for (const auto& r : rows) {
    Rational dot = 0;
    for (const auto& [i, c] : r) {
      auto it = v.find(i);
      if (it != v.end()) dot += c * it->second;
    }
    if (!is_zero(dot)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("rank-one matrix has the expected kernel line") {
  std::vector<SparseVec> m{row({{0, 1}, {1, 2}}), row({{0, 2}, {1, 4}})};
  auto rk = rank_kernel(m, 2);
  CHECK(rk.rank == 1);
  REQUIRE(rk.kernel.size() == 1);
  const SparseVec& k = rk.kernel[0];
  CHECK(in_kernel(m, k));
  // proportional to (2, -1)
  Rational a = k.count(0) ? k.at(0) : Rational(0);
  Rational b = k.count(1) ? k.at(1) : Rational(0);
  CHECK(!is_zero(a));
  CHECK(a * Rational(-1) == b * Rational(2));
}

TEST_CASE("identity matrix is full rank with trivial kernel") {
  std::vector<SparseVec> m{row({{0, 1}}), row({{1, 1}}), row({{2, 1}})};
  auto rk = rank_kernel(m, 3);
  CHECK(rk.rank == 3);
  CHECK(rk.kernel.empty());
}

TEST_CASE("two-vertex relation rows have rank two over the simple graphs") {
  // columns: the four loopless one-edge-at-most-per-pair graphs on {1,2}
  std::vector<Digraph> basis{make_graph(2, {}), make_graph(2, {{0, 1}}),
                             make_graph(2, {{1, 0}}),
                             make_graph(2, {{0, 1}, {1, 0}})};
  auto col_of = [&](const Digraph& g) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == g) return static_cast<int>(i);
    return -1;
  };
  std::vector<SparseVec> rows;
  for (const auto& rel : relation_span(2)) {
    SparseVec r;
    for (const auto& [g, c] : rel.terms) {
      int col = col_of(g);
      REQUIRE(col >= 0);
      r[col] = c;
    }
    rows.push_back(r);
  }
  auto rk = rank_kernel(rows, static_cast<int>(basis.size()));
  CHECK(rk.rank == 2);  // dim of the quotient = 4 - 2 = 2!
}

TEST_CASE("solve_in_rowspace recovers coefficients and rejects misses") {
  std::vector<SparseVec> id3{row({{0, 1}}), row({{1, 1}}), row({{2, 1}})};
  auto sol = solve_in_rowspace(id3, row({{0, 3}, {1, -2}, {2, 5}}), 3);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == rat(3));
  CHECK((*sol)[1] == rat(-2));
  CHECK((*sol)[2] == rat(5));

  std::vector<SparseVec> one{row({{0, 1}, {1, 1}})};
  CHECK(!solve_in_rowspace(one, row({{0, 1}}), 2).has_value());

  // a dependent target: (1,1) + (1,-1) spans (2,0) -> coefficients exist
  std::vector<SparseVec> pair{row({{0, 1}, {1, 1}}), row({{0, 1}, {1, -1}})};
  auto s2 = solve_in_rowspace(pair, row({{0, 2}}), 2);
  REQUIRE(s2.has_value());
  CHECK((*s2)[0] + (*s2)[1] == rat(2));
  CHECK((*s2)[0] - (*s2)[1] == rat(0));
}

TEST_CASE("cycle relation lies in the span of the relation rows") {
  // the three-cycle relation: the sum of its single-edge deletions
  GraphVector rel;
  rel.add(parse_graph("3; 2->3, 3->1"), rat(1));
  rel.add(parse_graph("3; 1->2, 3->1"), rat(1));
  rel.add(parse_graph("3; 1->2, 2->3"), rat(1));

  // columns: every graph appearing in any relation or in rel itself
  std::map<Digraph, int> col;
  auto touch = [&](const GraphVector& v) {
    for (const auto& [g, c] : v.terms)
      if (!col.count(g)) {
        int next = static_cast<int>(col.size());
        col[g] = next;
      }
  };
  auto span = relation_span(3);
  for (const auto& v : span) touch(v);
  touch(rel);
  auto vec_of = [&](const GraphVector& v) {
    SparseVec r;
    for (const auto& [g, c] : v.terms) r[col.at(g)] = c;
    return r;
  };
  std::vector<SparseVec> rows;
  for (const auto& v : span) rows.push_back(vec_of(v));
  auto sol =
      solve_in_rowspace(rows, vec_of(rel), static_cast<int>(col.size()));
  CHECK(sol.has_value());
}

TEST_CASE("sparse rank agrees with a dense elimination oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 12; ++trial) {
    int nrows = 6, ncols = 8;
    std::vector<SparseVec> sparse(static_cast<std::size_t>(nrows));
    std::vector<std::vector<Rational>> dense(
        static_cast<std::size_t>(nrows),
        std::vector<Rational>(static_cast<std::size_t>(ncols), Rational(0)));
    for (int r = 0; r < nrows; ++r)
      for (int c = 0; c < ncols; ++c) {
        int x = coef(rng);
        if (x != 0) {
          sparse[static_cast<std::size_t>(r)][c] = rat(x);
          dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
              rat(x);
        }
      }
    auto rk = rank_kernel(sparse, ncols);
    CHECK(rk.rank == dense_rank(dense));
    CHECK(rk.rank + static_cast<int>(rk.kernel.size()) == ncols);
    for (const auto& k : rk.kernel) CHECK(in_kernel(sparse, k));
  }
}
