#include "pvalab/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pvalab {

Perm perm_id(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("perm_compose: sizes");
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

int perm_sign(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

bool is_perm(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::string perm_str(const Perm& p) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i] + 1;
  os << "]";
  return os.str();
}

namespace {

// all r-subsets of {0..m-1}, each sorted ascending
std::vector<std::vector<int>> combinations(int m, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || r > m) return out;
  std::vector<int> c(r);
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    out.push_back(c);
    int i = r - 1;
    while (i >= 0 && c[i] == m - r + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<Perm> shuffles(int m, int k) {
  std::vector<Perm> out;
  if (m < 0 || k < 0) return out;
  int n = m + k;
  for (const auto& s : combinations(n, m)) {
    Perm p(n);
    std::vector<bool> used(n, false);
    for (int i = 0; i < m; ++i) {
      p[i] = s[i];
      used[s[i]] = true;
    }
    int j = m;
    for (int v = 0; v < n; ++v)
      if (!used[v]) p[j++] = v;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Perm> monotone(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("monotone: need 1 <= k <= n");
  std::vector<Perm> out;
  // choose the k-1 drop positions among 2..n; values k-1..1 descend there,
  // values k+1..n ascend on the rest
  for (const auto& drops : combinations(n - 1, k - 1)) {
    Perm p(n, -1);
    p[0] = k - 1;
    std::vector<bool> is_drop(n, false);
    for (int d : drops) is_drop[d + 1] = true;
    int down = k - 2, up = k;
    for (int i = 1; i < n; ++i) p[i] = is_drop[i] ? down-- : up++;
    out.push_back(std::move(p));
  }
  return out;
}

int drop_sign(const Perm& p) {
  int n = static_cast<int>(p.size());
  long dr = 0;
  for (int i = 1; i < n; ++i) {
    bool above = true, below = true;
    for (int j = 0; j < i; ++j) {
      if (p[j] > p[i]) above = false;
      if (p[j] < p[i]) below = false;
    }
    if (!above && !below) throw std::invalid_argument("drop_sign: not monotone");
    if (below) dr += i + 1;  // 1-based drop position
  }
  return dr % 2 == 0 ? 1 : -1;
}

GAElem ga_one(int n) { return {{perm_id(n), Rational(1)}}; }

GAElem ga_scale(const Rational& c, const GAElem& x) {
  GAElem out;
  if (is_zero(c)) return out;
  for (const auto& [p, v] : x) out.emplace(p, c * v);
  return out;
}

GAElem ga_add(const GAElem& x, const GAElem& y) {
  GAElem out = x;
  for (const auto& [p, v] : y) {
    auto it = out.find(p);
    if (it == out.end()) {
      out.emplace(p, v);
    } else {
      it->second += v;
      if (is_zero(it->second)) out.erase(it);
    }
  }
  return out;
}

GAElem ga_sub(const GAElem& x, const GAElem& y) {
  return ga_add(x, ga_scale(Rational(-1), y));
}

GAElem ga_mul(const GAElem& x, const GAElem& y) {
  GAElem out;
  for (const auto& [p, a] : x)
    for (const auto& [q, b] : y) {
      Perm pq = perm_compose(p, q);
      auto it = out.find(pq);
      if (it == out.end()) {
        out.emplace(std::move(pq), a * b);
      } else {
        it->second += a * b;
        if (is_zero(it->second)) out.erase(it);
      }
    }
  return out;
}

bool ga_is_zero(const GAElem& x) { return x.empty(); }

GAElem harrison_operator(int n, int k) {
  GAElem out;
  for (const Perm& p : monotone(n, k)) {
    Rational c(drop_sign(p));
    auto it = out.find(p);
    if (it == out.end())
      out.emplace(p, c);
    else
      it->second += c;
  }
  return out;
}

std::vector<GAElem> eulerian_idempotents(int n) {
  // total unsigned shuffle element
  GAElem s;
  for (int p = 1; p < n; ++p)
    for (const Perm& sh : shuffles(p, n - p)) {
      auto it = s.find(sh);
      if (it == s.end())
        s.emplace(sh, Rational(1));
      else
        it->second += 1;
    }

  std::vector<Rational> c(n);
  for (int j = 1; j <= n; ++j) c[j - 1] = Rational((1L << j) - 2);

  // annihilating product check: prod_j (s - c_j) = 0
  GAElem prod = ga_one(n);
  for (int j = 0; j < n; ++j)
    prod = ga_mul(prod, ga_sub(s, ga_scale(c[j], ga_one(n))));
  if (!ga_is_zero(prod))
    throw MathError("eulerian_idempotents: annihilating product check failed");

  std::vector<GAElem> e;
  for (int i = 0; i < n; ++i) {
    GAElem num = ga_one(n);
    Rational den(1);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      num = ga_mul(num, ga_sub(s, ga_scale(c[j], ga_one(n))));
      den *= c[i] - c[j];
    }
    e.push_back(ga_scale(1 / den, num));
  }
  return e;
}

}  // namespace pvalab
