#pragma once

#include <map>
#include <vector>

#include "pvalab/rational.hpp"

namespace pvalab {

// Permutation of {0,..,n-1}, stored as the image list: p[i] = p(i).
// Printing and parsing use the 1-based one-line form [p(1),...,p(n)].
using Perm = std::vector<int>;

Perm perm_id(int n);
// (a*b)(i) = a(b(i))
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& p);
int perm_sign(const Perm& p);
bool is_perm(const Perm& p);
std::string perm_str(const Perm& p);

// w[i] = v[p[i]]; for cochains this is the pullback (p.F)(v) = F(p.v),
// which makes p -> p. a left action on functions.
template <class T>
std::vector<T> perm_pull(const Perm& p, const std::vector<T>& v) {
  std::vector<T> w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = v[p[i]];
  return w;
}

// (m,k)-shuffles: increasing on the first m and on the last k positions.
std::vector<Perm> shuffles(int m, int k);

// Monotone permutations in S_n starting at k (1 <= k <= n): p(1) = k, the
// values k-1..1 placed decreasingly on a chosen set of "drop" positions, the
// values k+1..n increasingly on the rest.
std::vector<Perm> monotone(int n, int k);

// (-1)^{sum of drop positions} for a monotone permutation (1-based
// positions; throws for non-monotone input).
int drop_sign(const Perm& p);

// ---- rational group algebra of S_n ----

using GAElem = std::map<Perm, Rational>;

GAElem ga_one(int n);
GAElem ga_scale(const Rational& c, const GAElem& x);
GAElem ga_add(const GAElem& x, const GAElem& y);
GAElem ga_sub(const GAElem& x, const GAElem& y);
GAElem ga_mul(const GAElem& x, const GAElem& y);
bool ga_is_zero(const GAElem& x);

// sum over monotone permutations starting at k of drop_sign(p) * p
GAElem harrison_operator(int n, int k);

// Eulerian idempotents e^(1)..e^(n) via Lagrange interpolation of the total
// (unsigned) shuffle element at the eigenvalues 2^j - 2; throws MathError if
// the annihilating product check fails.
std::vector<GAElem> eulerian_idempotents(int n);

}  // namespace pvalab
