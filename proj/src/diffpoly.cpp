#include "pvalab/diffpoly.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>

#include "pvalab/sparse_matrix.hpp"

namespace pvalab {

DiffMonomial dm_unit() { return {}; }

DiffMonomial dm_gen(int gen, int order) {
  if (gen < 0 || order < 0) throw std::invalid_argument("dm_gen: bad factor");
  return DiffMonomial{{{gen, order}}};
}

DiffMonomial dm_mul(const DiffMonomial& a, const DiffMonomial& b) {
  DiffMonomial m;
  m.factors.reserve(a.factors.size() + b.factors.size());
  std::merge(a.factors.begin(), a.factors.end(), b.factors.begin(),
             b.factors.end(), std::back_inserter(m.factors));
  return m;
}

long dm_weight(const DiffMonomial& m, const WeightTable& wt) {
  long w = 0;
  for (auto [g, j] : m.factors) w += wt.of(g, j);
  return w;
}

DiffPoly dp_zero() { return {}; }

DiffPoly dp_const(const Rational& c) {
  DiffPoly p;
  if (!is_zero(c)) p.terms.emplace(dm_unit(), c);
  return p;
}

DiffPoly dp_mono(const DiffMonomial& m, const Rational& c) {
  DiffPoly p;
  if (!is_zero(c)) p.terms.emplace(m, c);
  return p;
}

void dp_add_term(DiffPoly& p, const DiffMonomial& m, const Rational& c) {
  if (is_zero(c)) return;
  auto it = p.terms.find(m);
  if (it == p.terms.end()) {
    p.terms.emplace(m, c);
  } else {
    it->second += c;
    if (is_zero(it->second)) p.terms.erase(it);
  }
}

DiffPoly dp_add(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly p = a;
  for (const auto& [m, c] : b.terms) dp_add_term(p, m, c);
  return p;
}

DiffPoly dp_sub(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly p = a;
  for (const auto& [m, c] : b.terms) dp_add_term(p, m, -c);
  return p;
}

DiffPoly dp_scale(const Rational& c, const DiffPoly& p) {
  DiffPoly q;
  if (is_zero(c)) return q;
  for (const auto& [m, v] : p.terms) q.terms.emplace(m, c * v);
  return q;
}

DiffPoly dp_mul(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly p;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) dp_add_term(p, dm_mul(ma, mb), ca * cb);
  return p;
}

DiffPoly total_derivative(const DiffPoly& p) {
  DiffPoly q;
  for (const auto& [m, c] : p.terms) {
    for (size_t k = 0; k < m.factors.size(); ++k) {
      // skip repeated factors after the first: derivative of x^e gives e*x^{e-1}x'
      if (k > 0 && m.factors[k] == m.factors[k - 1]) continue;
      int mult = 0;
      for (const auto& f : m.factors) mult += (f == m.factors[k]);
      DiffMonomial d;
      bool bumped = false;
      for (size_t i = 0; i < m.factors.size(); ++i) {
        auto f = m.factors[i];
        if (!bumped && f == m.factors[k]) {
          ++f.second;
          bumped = true;
        }
        d.factors.push_back(f);
      }
      std::sort(d.factors.begin(), d.factors.end());
      dp_add_term(q, d, c * mult);
    }
  }
  return q;
}

DiffPoly total_derivative(const DiffPoly& p, int times) {
  DiffPoly q = p;
  for (int i = 0; i < times; ++i) q = total_derivative(q);
  return q;
}

std::optional<long> dp_weight(const DiffPoly& p, const WeightTable& wt) {
  std::optional<long> w;
  for (const auto& [m, c] : p.terms) {
    (void)c;
    long mw = dm_weight(m, wt);
    if (!w) {
      w = mw;
    } else if (*w != mw) {
      throw MathError("dp_weight: inhomogeneous polynomial");
    }
  }
  return w;
}

std::vector<DiffMonomial> monomials_of_weight(const WeightTable& wt, long w) {
  for (long d : wt.delta)
    if (d < 1) throw std::invalid_argument("monomials_of_weight: delta < 1");
  std::vector<DiffMonomial> out;
  DiffMonomial cur;
  // factors chosen in nondecreasing (gen, order) to enumerate each multiset once
  std::function<void(long, std::pair<int, int>)> rec = [&](long rem,
                                                           std::pair<int, int> lo) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int g = lo.first; g < static_cast<int>(wt.delta.size()); ++g) {
      int jmin = (g == lo.first) ? lo.second : 0;
      for (int j = jmin; wt.of(g, j) <= rem; ++j) {
        cur.factors.emplace_back(g, j);
        rec(rem - wt.of(g, j), {g, j});
        cur.factors.pop_back();
      }
    }
  };
  rec(w, {0, 0});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DiffMonomial> monomials_up_to_weight(const WeightTable& wt, long w) {
  std::vector<DiffMonomial> out;
  for (long v = 0; v <= w; ++v) {
    auto part = monomials_of_weight(wt, v);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

namespace {

// reverse-lex key: factors sorted by derivative order descending, then
// generator ascending; larger key = eliminated first
std::vector<std::pair<int, int>> pivot_key(const DiffMonomial& m) {
  std::vector<std::pair<int, int>> k;
  k.reserve(m.factors.size());
  for (auto [g, j] : m.factors) k.emplace_back(-j, g);
  std::sort(k.begin(), k.end());
  return k;
}

struct V0Basis {
  std::vector<DiffMonomial> monos;  // of one fixed weight, pivot order
  std::map<DiffMonomial, int> index;
  Echelon ech;
};

const V0Basis& v0_basis(const WeightTable& wt, long w) {
  static std::mutex mu;
  static std::map<std::pair<std::vector<long>, long>, std::unique_ptr<V0Basis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(wt.delta, w);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto monos = monomials_of_weight(wt, w);
  std::sort(monos.begin(), monos.end(), [](const DiffMonomial& a, const DiffMonomial& b) {
    return pivot_key(a) < pivot_key(b);
  });
  auto b = std::make_unique<V0Basis>(V0Basis{
      monos, {}, Echelon(static_cast<int>(monos.size()))});
  for (int i = 0; i < static_cast<int>(monos.size()); ++i) b->index[monos[i]] = i;
  for (const auto& m : monomials_of_weight(wt, w - 1)) {
    DiffPoly dm = total_derivative(dp_mono(m));
    SparseVec row;
    for (const auto& [mm, c] : dm.terms) row[b->index.at(mm)] = c;
    b->ech.add_row(std::move(row));
  }
  it = cache.emplace(key, std::move(b)).first;
  return *it->second;
}

}  // namespace

DiffPoly normal_form_v0(const DiffPoly& p, const WeightTable& wt) {
  // split by weight; reduce each slice against the image of the derivative
  std::map<long, DiffPoly> slices;
  for (const auto& [m, c] : p.terms) dp_add_term(slices[dm_weight(m, wt)], m, c);
  DiffPoly out;
  for (const auto& [w, slice] : slices) {
    const V0Basis& b = v0_basis(wt, w);
    SparseVec v;
    for (const auto& [m, c] : slice.terms) v[b.index.at(m)] = c;
    for (const auto& [i, c] : b.ech.reduce(std::move(v)))
      dp_add_term(out, b.monos[i], c);
  }
  return out;
}

std::string dm_str(const DiffMonomial& m, const std::vector<std::string>& names) {
  if (m.is_unit()) return "1";
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < m.factors.size()) {
    size_t j = i;
    while (j < m.factors.size() && m.factors[j] == m.factors[i]) ++j;
    auto [g, ord] = m.factors[i];
    if (!first) os << "*";
    first = false;
    if (ord == 0) {
      os << names.at(g);
    } else if (ord == 1) {
      os << "D(" << names.at(g) << ")";
    } else {
      os << "D^" << ord << "(" << names.at(g) << ")";
    }
    if (j - i > 1) os << "^" << j - i;
    i = j;
  }
  return os.str();
}

std::string dp_str(const DiffPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms) {
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_unit()) {
      os << rat_str(a);
    } else if (a == 1) {
      os << dm_str(m, names);
    } else {
      os << rat_str(a) << "*" << dm_str(m, names);
    }
  }
  return os.str();
}

long tuple_weight(const std::vector<DiffMonomial>& v, const WeightTable& wt) {
  long w = 0;
  for (const auto& m : v) w += dm_weight(m, wt);
  return w;
}

std::vector<std::vector<DiffMonomial>> monomial_tuples(const WeightTable& wt,
                                                       int len, long cap) {
  std::vector<std::vector<DiffMonomial>> out;
  std::vector<DiffMonomial> cur(len);
  std::vector<std::vector<DiffMonomial>> pool;  // pool[b] = monomials of wt <= b
  for (long b = 0; b <= cap; ++b) pool.push_back(monomials_up_to_weight(wt, b));
  auto rec = [&](auto&& self, int pos, long left) -> void {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    for (const auto& m : pool[left]) {
      cur[pos] = m;
      self(self, pos + 1, left - dm_weight(m, wt));
    }
  };
  if (cap >= 0) rec(rec, 0, cap);
  return out;
}

}  // namespace pvalab
