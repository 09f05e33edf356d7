#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "pvalab/perm.hpp"
#include "pvalab/sparse_matrix.hpp"

using namespace pvalab;

namespace {

std::vector<Perm> every_perm(int n) {
  std::vector<Perm> out;
  Perm p = perm_id(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Rational binom_l(long n, long k) { return binom(n, k); }

// independent characterization: p(1) = k, the values below k appear in
// decreasing order, the values above k in increasing order
bool monotone_oracle(const Perm& p, int k) {
  int n = static_cast<int>(p.size());
  if (p[0] != k - 1) return false;
  int next_down = k - 2, next_up = k;  // 0-based values
  for (int i = 1; i < n; ++i) {
    if (p[i] < k - 1) {
      if (p[i] != next_down--) return false;
    } else {
      if (p[i] != next_up++) return false;
    }
  }
  return true;
}

int drop_positions_parity(const Perm& p, int k) {
  int dr = 0;
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] < k - 1) dr += i + 1;  // 1-based positions of the drops
  return dr % 2 ? -1 : 1;
}

GAElem ga_single(const Perm& p) { return GAElem{{p, rat(1)}}; }

// subspace of the right regular representation fixed by every
// right-multiplication y -> y * L_k, k = 2..n
std::vector<SparseVec> lk_fixed_space(int n) {
  auto perms = every_perm(n);
  std::map<Perm, int> col;
  for (std::size_t i = 0; i < perms.size(); ++i)
    col[perms[i]] = static_cast<int>(i);
  std::vector<SparseVec> rows;
  for (int k = 2; k <= n; ++k) {
    GAElem lk = harrison_operator(n, k);
    // (y * L_k - y) = 0, one row per output permutation
    std::map<int, SparseVec> eq;  // output perm index -> row over y coords
    for (const auto& sigma : perms) {
      GAElem prod = ga_mul(ga_single(sigma), lk);
      for (const auto& [pi, c] : prod) eq[col.at(pi)][col.at(sigma)] += c;
      eq[col.at(sigma)][col.at(sigma)] -= 1;
    }
    for (auto& [pi, r] : eq) {
      SparseVec clean;
      for (auto& [j, c] : r)
        if (!is_zero(c)) clean[j] = c;
      if (!clean.empty()) rows.push_back(std::move(clean));
    }
  }
  return rank_kernel(rows, static_cast<int>(perms.size())).kernel;
}

}  // namespace

TEST_CASE("permutation basics") {
  CHECK(perm_sign(perm_id(4)) == 1);
  CHECK(perm_sign(Perm{1, 0}) == -1);
  CHECK(perm_sign(Perm{4, 3, 2, 1, 0}) == 1);

  Perm p{1, 2, 0};
  std::vector<char> v{'a', 'b', 'c'};
  auto w = perm_pull(p, v);
  CHECK(w == std::vector<char>{'b', 'c', 'a'});

  // pullback composes as a left action: (ab).v = a.(b.v)
  auto perms = every_perm(3);
  for (const auto& a : perms)
    for (const auto& b : perms)
      CHECK(perm_pull(perm_compose(a, b), v) ==
            perm_pull(a, perm_pull(b, v)));
}

TEST_CASE("shuffle enumeration") {
  CHECK(shuffles(0, 3) == std::vector<Perm>{perm_id(3)});

  auto s11 = shuffles(1, 1);
  std::set<Perm> got(s11.begin(), s11.end());
  CHECK(got == std::set<Perm>{Perm{0, 1}, Perm{1, 0}});

  CHECK(shuffles(2, 3).size() == 10);

  for (int m = 0; m <= 8; ++m)
    for (int k = 0; m + k <= 8; ++k)
      CHECK(rat(static_cast<long>(shuffles(m, k).size())) ==
            binom_l(m + k, m));

  // oracle: increasing on the first m and on the last k positions
  for (const auto& p : every_perm(4)) {
    bool inc = p[0] < p[1] && p[2] < p[3];
    auto s22 = shuffles(2, 2);
    bool listed = std::find(s22.begin(), s22.end(), p) != s22.end();
    CHECK(inc == listed);
  }
}

TEST_CASE("monotone permutations with start value") {
  auto m53 = monotone(5, 3);
  std::set<Perm> got(m53.begin(), m53.end());
  std::set<Perm> want{Perm{2, 1, 0, 3, 4}, Perm{2, 1, 3, 0, 4},
                      Perm{2, 1, 3, 4, 0}, Perm{2, 3, 1, 0, 4},
                      Perm{2, 3, 1, 4, 0}, Perm{2, 3, 4, 1, 0}};
  CHECK(got == want);

  for (int n = 1; n <= 6; ++n) {
    CHECK(monotone(n, 1) == std::vector<Perm>{perm_id(n)});
    Perm rev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rev[static_cast<std::size_t>(i)] = n - 1 - i;
    CHECK(monotone(n, n) == std::vector<Perm>{rev});
  }

  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(rat(static_cast<long>(monotone(n, k).size())) ==
            binom_l(n - 1, k - 1));

  for (int n = 1; n <= 6; ++n) {
    auto perms = every_perm(n);
    for (int k = 1; k <= n; ++k) {
      auto mk = monotone(n, k);
      std::set<Perm> listed(mk.begin(), mk.end());
      for (const auto& p : perms)
        CHECK(monotone_oracle(p, k) == (listed.count(p) != 0));
    }
  }
}

TEST_CASE("drop signs and the drop identity") {
  CHECK(drop_sign(perm_id(3)) == 1);
  CHECK(drop_sign(Perm{1, 0}) == 1);      // single drop at position 2
  CHECK(drop_sign(Perm{2, 1, 0}) == -1);  // drops at positions 2 and 3

  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k)
      for (const auto& p : monotone(n, k)) {
        CHECK(drop_sign(p) == drop_positions_parity(p, k));
        int want = ((k - 1) % 2 ? -1 : 1) * perm_sign(p);
        CHECK(drop_sign(p) == want);
      }
}

TEST_CASE("harrison operators") {
  GAElem l22 = harrison_operator(2, 2);
  CHECK(l22 == GAElem{{Perm{1, 0}, rat(1)}});

  GAElem l33 = harrison_operator(3, 3);
  CHECK(l33 == GAElem{{Perm{2, 1, 0}, rat(-1)}});

  for (int n = 2; n <= 5; ++n)
    for (int k = 2; k <= n; ++k) {
      GAElem lk = harrison_operator(n, k);
      auto mk = monotone(n, k);
      CHECK(lk.size() == mk.size());
      for (const auto& p : mk) {
        REQUIRE(lk.count(p));
        CHECK(lk.at(p) == rat(drop_sign(p)));
      }
    }
}

TEST_CASE("eulerian idempotents: explicit n = 2 forms") {
  auto es = eulerian_idempotents(2);
  REQUIRE(es.size() == 2);
  GAElem sym{{perm_id(2), rat(1, 2)}, {Perm{1, 0}, rat(1, 2)}};
  GAElem alt{{perm_id(2), rat(1, 2)}, {Perm{1, 0}, rat(-1, 2)}};
  bool match = (es[0] == sym && es[1] == alt) || (es[0] == alt && es[1] == sym);
  CHECK(match);
}

TEST_CASE("eulerian idempotents: orthogonal decomposition of the identity") {
  for (int n = 1; n <= 4; ++n) {
    auto es = eulerian_idempotents(n);
    REQUIRE(static_cast<int>(es.size()) == n);
    GAElem total;
    for (const auto& e : es) total = ga_add(total, e);
    CHECK(total == ga_one(n));
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = 0; j < es.size(); ++j) {
        GAElem prod = ga_mul(es[i], es[j]);
        if (i == j)
          CHECK(prod == es[i]);
        else
          CHECK(ga_is_zero(prod));
      }
  }
}

TEST_CASE("exactly one idempotent projects onto the L_k fixed space") {
  for (int n = 2; n <= 3; ++n) {
    auto perms = every_perm(n);
    std::map<Perm, int> col;
    for (std::size_t i = 0; i < perms.size(); ++i)
      col[perms[i]] = static_cast<int>(i);

    // kernel vectors are independent, so the dimension is the count
    int fixed_rank = static_cast<int>(lk_fixed_space(n).size());

    // membership test for y in the fixed space
    std::vector<GAElem> lks;
    for (int k = 2; k <= n; ++k) lks.push_back(harrison_operator(n, k));
    auto is_fixed = [&](const GAElem& y) {
      for (const auto& lk : lks)
        if (!ga_is_zero(ga_sub(ga_mul(y, lk), y))) return false;
      return true;
    };

    int matches = 0;
    for (const auto& e : eulerian_idempotents(n)) {
      // image of y -> y * e, spanned by sigma * e
      std::vector<SparseVec> image;
      bool all_fixed = true;
      for (const auto& sigma : perms) {
        GAElem v = ga_mul(ga_single(sigma), e);
        if (!is_fixed(v)) all_fixed = false;
        SparseVec r;
        for (const auto& [pi, c] : v)
          if (!is_zero(c)) r[col.at(pi)] = c;
        image.push_back(std::move(r));
      }
      int image_rank =
          rank_kernel(image, static_cast<int>(perms.size())).rank;
      if (all_fixed && image_rank == fixed_rank) ++matches;
    }
    CHECK(matches == 1);
  }
}
