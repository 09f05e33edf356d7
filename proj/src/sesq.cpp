// =====================================================================
// Sesquilinear Hochschild / Harrison cochains: the grouped differential,
// Harrison operators, the S_s action, and invariant families.
// =====================================================================

#include "pvalab/sesq.hpp"

#include <algorithm>
#include <sstream>

namespace pvalab {

namespace {

// K_0..K_s for a shape
std::vector<int> offsets(const LineShape& k) {
  std::vector<int> K(k.size() + 1, 0);
  for (size_t t = 0; t < k.size(); ++t) K[t + 1] = K[t] + k[t];
  return K;
}

std::string tuple_str(const std::vector<DiffMonomial>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    if (v[i].is_unit()) {
      os << "1";
    } else {
      bool first = true;
      for (auto [g, ord] : v[i].factors) {
        if (!first) os << "*";
        first = false;
        os << "g" << g + 1;
        if (ord > 0) os << "^(" << ord << ")";
      }
    }
  }
  os << ")";
  return os.str();
}

std::vector<Perm> all_perms(int n) {
  Perm p = perm_id(n);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

int koszul_exponent(const LineShape& k, const Perm& sigma) {
  int e = 0;
  for (size_t r = 0; r < sigma.size(); ++r)
    for (size_t q = r + 1; q < sigma.size(); ++q)
      if (sigma[r] > sigma[q]) e += k[r] * k[q];
  return e;
}

int SesqCochain::arity() const {
  int n = 0;
  for (int kt : shape) n += kt;
  return n;
}

bool SesqCochain::is_zero() const {
  for (const auto& [v, q] : values)
    if (!q.is_zero()) return false;
  return true;
}

SesqCochain sq_zero(const LineShape& shape, const WeightTable& wt, long wcap) {
  for (int kt : shape)
    if (kt < 0) throw MathError("sq_zero: negative group size");
  SesqCochain f;
  f.shape = shape;
  f.wcap = wcap;
  int n = f.arity();
  int s = f.s();
  for (const auto& v : monomial_tuples(wt, n, wcap)) f.values[v] = qe_zero(s);
  return f;
}

SesqCochain sq_add(const SesqCochain& a, const SesqCochain& b) {
  if (a.shape != b.shape || a.wcap != b.wcap)
    throw MathError("sq_add: shape or weight cap mismatch");
  SesqCochain out = a;
  for (auto& [v, q] : out.values) q = qe_add(q, b.values.at(v));
  return out;
}

SesqCochain sq_scale(const Rational& c, const SesqCochain& a) {
  SesqCochain out = a;
  for (auto& [v, q] : out.values) q = qe_scale(c, q);
  return out;
}

QuotientElem sq_eval(const SesqCochain& f, const std::vector<DiffPoly>& args,
                     const WeightTable& wt) {
  int n = f.arity();
  if (static_cast<int>(args.size()) != n)
    throw MathError("sq_eval: arity mismatch");
  QuotientElem out = qe_zero(f.s());
  std::vector<DiffMonomial> v(n);
  auto rec = [&](auto&& self, int pos, const Rational& c) -> void {
    if (pos == n) {
      if (tuple_weight(v, wt) > f.wcap)
        throw CapError("sq_eval: tuple weight exceeds the stored window");
      out = qe_add(out, qe_scale(c, f.values.at(v)));
      return;
    }
    for (const auto& [m, a] : args[pos].terms) {
      v[pos] = m;
      self(self, pos + 1, c * a);
    }
  };
  rec(rec, 0, Rational(1));
  return out;
}

CheckResult sq_validate(const SesqCochain& f, const WeightTable& wt) {
  int n = f.arity();
  int s = f.s();
  auto domain = monomial_tuples(wt, n, f.wcap);
  if (f.values.size() != domain.size())
    return {false, "stored domain has " + std::to_string(f.values.size()) +
                       " tuples, expected " + std::to_string(domain.size())};
  for (const auto& v : domain) {
    auto it = f.values.find(v);
    if (it == f.values.end())
      return {false, "missing tuple " + tuple_str(v)};
    if (it->second.arity != s)
      return {false, "value arity != group count at " + tuple_str(v)};
  }
  bool empty_group = false;
  for (int kt : f.shape) empty_group = empty_group || kt == 0;
  if (s > 1 && empty_group && !f.is_zero())
    return {false, "shape with an empty group must carry the zero cochain"};
  // per-group sesquilinearity on tuples whose shifted weight stays stored
  auto K = offsets(f.shape);
  for (const auto& v : domain) {
    if (tuple_weight(v, wt) + 1 > f.wcap) continue;
    for (int t = 1; t <= s; ++t) {
      if (f.shape[t - 1] == 0) continue;
      QuotientElem lhs = qe_zero(s);
      for (int i = K[t - 1]; i < K[t]; ++i) {
        DiffPoly dv = total_derivative(dp_mono(v[i]));
        for (const auto& [m, c] : dv.terms) {
          auto v2 = v;
          v2[i] = m;
          lhs = qe_add(lhs, qe_scale(c, f.values.at(v2)));
        }
      }
      QuotientElem rhs =
          qe_scale(Rational(-1), qe_mul_lambda(f.values.at(v), t, wt));
      if (!(lhs == rhs))
        return {false, "group " + std::to_string(t) +
                           " sesquilinearity fails at " + tuple_str(v)};
    }
  }
  return {true, ""};
}

std::optional<long> sq_weight(const SesqCochain& f, const WeightTable& wt) {
  std::optional<long> shift;
  for (const auto& [v, q] : f.values) {
    auto w = qe_weight(q, wt);
    if (!w) continue;
    long d = *w - tuple_weight(v, wt);
    if (shift && *shift != d)
      throw MathError("sq_weight: values are not of a common shift");
    shift = d;
  }
  return shift;
}

SesqCochain d_t(const SesqCochain& f, int t, const WeightTable& wt) {
  int s = f.s();
  if (t < 1 || t > s) throw MathError("d_t: group index out of range");
  auto K = offsets(f.shape);
  LineShape out_shape = f.shape;
  out_shape[t - 1] += 1;
  SesqCochain out = sq_zero(out_shape, wt, f.wcap);
  for (auto& [v, q] : out.values) {
    // first element of the enlarged group t, pulled out to the left
    {
      std::vector<DiffMonomial> rest = v;
      rest.erase(rest.begin() + K[t - 1]);
      QuotientElem a = qe_shift_mul(f.values.at(rest), t, dp_mono(v[K[t - 1]]), wt);
      if (K[t - 1] % 2) a = qe_scale(Rational(-1), a);
      q = qe_add(q, a);
    }
    // products of adjacent entries inside group t; i is the 1-based formula index
    for (int i = K[t - 1] + 1; i <= K[t]; ++i) {
      std::vector<DiffMonomial> merged = v;
      merged[i - 1] = dm_mul(v[i - 1], v[i]);
      merged.erase(merged.begin() + i);
      QuotientElem a = f.values.at(merged);
      if (i % 2) a = qe_scale(Rational(-1), a);
      q = qe_add(q, a);
    }
    // last element of the enlarged group t, pulled out to the right
    {
      std::vector<DiffMonomial> rest = v;
      rest.erase(rest.begin() + K[t]);
      QuotientElem a = qe_shift_mul(f.values.at(rest), t, dp_mono(v[K[t]]), wt);
      if ((K[t] + 1) % 2) a = qe_scale(Rational(-1), a);
      q = qe_add(q, a);
    }
  }
  return out;
}

SesqCochain L_mt(const SesqCochain& f, int t, int m, const WeightTable& wt) {
  (void)wt;
  int s = f.s();
  if (t < 1 || t > s) throw MathError("L_mt: group index out of range");
  int kt = f.shape[t - 1];
  if (m < 2 || m > kt) throw MathError("L_mt: start value out of range");
  auto K = offsets(f.shape);
  SesqCochain out = f;
  for (auto& [v, q] : out.values) {
    q = qe_zero(s);
    std::vector<DiffMonomial> block(v.begin() + K[t - 1], v.begin() + K[t]);
    for (const Perm& pi : monotone(kt, m)) {
      auto pulled = perm_pull(pi, block);
      auto v2 = v;
      std::copy(pulled.begin(), pulled.end(), v2.begin() + K[t - 1]);
      q = qe_add(q, qe_scale(Rational(drop_sign(pi)), f.values.at(v2)));
    }
  }
  return out;
}

CheckResult harrison_check(const SesqCochain& f, int t, int m,
                           const WeightTable& wt) {
  SesqCochain lhs = L_mt(f, t, m, wt);
  for (const auto& [v, q] : lhs.values) {
    if (!(q == f.values.at(v)))
      return {false, "L_" + std::to_string(m) + "^(" + std::to_string(t) +
                         ") differs at " + tuple_str(v)};
  }
  return {true, ""};
}

CheckResult harrison_check_all(const SesqCochain& f, const WeightTable& wt) {
  for (int t = 1; t <= f.s(); ++t)
    for (int m = 2; m <= f.shape[t - 1]; ++m) {
      auto r = harrison_check(f, t, m, wt);
      if (!r.ok) return r;
    }
  return {true, ""};
}

SesqCochain act_Ss(const SesqCochain& f, const Perm& sigma,
                   const WeightTable& wt) {
  int s = f.s();
  if (static_cast<int>(sigma.size()) != s || !is_perm(sigma))
    throw MathError("act_Ss: bad permutation");
  Perm inv = perm_inverse(sigma);
  LineShape out_shape(s);
  for (int t = 0; t < s; ++t) out_shape[t] = f.shape[inv[t]];
  Rational sign = koszul_exponent(f.shape, sigma) % 2 ? Rational(-1) : Rational(1);
  SesqCochain out = sq_zero(out_shape, wt, f.wcap);
  auto K = offsets(out_shape);
  for (auto& [v, q] : out.values) {
    // feed block sigma(r) of the argument into group r of f
    std::vector<DiffMonomial> cat;
    cat.reserve(v.size());
    for (int r = 0; r < s; ++r) {
      int b = sigma[r];
      cat.insert(cat.end(), v.begin() + K[b], v.begin() + K[b + 1]);
    }
    q = qe_scale(sign, qe_permute(f.values.at(cat), sigma, wt));
  }
  return out;
}

// ---------------------------------------------------------------------
// invariant families
// ---------------------------------------------------------------------

bool SymSesqCochain::is_zero() const {
  for (const auto& [k, c] : components)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<LineShape> sym_shapes(int s, int n) {
  if (s < 0 || n < 0) throw MathError("sym_shapes: negative parameters");
  if (s == 0) {
    if (n == 0) return {LineShape{}};
    return {};
  }
  if (s == 1) return {LineShape{n}};
  std::vector<LineShape> out;
  LineShape cur(s);
  auto rec = [&](auto&& self, int pos, int minpart, int left) -> void {
    if (pos == s) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int p = minpart; p * (s - pos) <= left; ++p) {
      cur[pos] = p;
      self(self, pos + 1, p, left - p);
    }
  };
  rec(rec, 0, 1, n);
  return out;
}

SymSesqCochain sym_zero(int s, int n, const WeightTable& wt, long wcap) {
  SymSesqCochain f;
  f.s = s;
  f.arity = n;
  f.wcap = wcap;
  for (const auto& k : sym_shapes(s, n)) f.components[k] = sq_zero(k, wt, wcap);
  return f;
}

SymSesqCochain sym_add(const SymSesqCochain& a, const SymSesqCochain& b) {
  if (a.s != b.s || a.arity != b.arity || a.wcap != b.wcap)
    throw MathError("sym_add: parameter mismatch");
  SymSesqCochain out = a;
  for (auto& [k, c] : out.components) c = sq_add(c, b.components.at(k));
  return out;
}

SymSesqCochain sym_scale(const Rational& c, const SymSesqCochain& a) {
  SymSesqCochain out = a;
  for (auto& [k, f] : out.components) f = sq_scale(c, f);
  return out;
}

namespace {

// a permutation sigma with act_Ss(sorted-representative, sigma) of the given
// shape: sorted[sigma^{-1}(t)] == shape[t], first fit
Perm shape_transport(const LineShape& sorted, const LineShape& shape) {
  int s = static_cast<int>(shape.size());
  Perm inv(s, -1);
  std::vector<bool> used(s, false);
  for (int t = 0; t < s; ++t) {
    int pick = -1;
    for (int j = 0; j < s; ++j)
      if (!used[j] && sorted[j] == shape[t]) {
        pick = j;
        break;
      }
    if (pick < 0) throw MathError("shape_transport: shapes not equal as multisets");
    inv[t] = pick;
    used[pick] = true;
  }
  return perm_inverse(inv);
}

}  // namespace

SesqCochain sym_component(const SymSesqCochain& f, const LineShape& shape,
                          const WeightTable& wt) {
  LineShape sorted = shape;
  std::sort(sorted.begin(), sorted.end());
  const SesqCochain& rep = f.components.at(sorted);
  if (sorted == shape) return rep;
  return act_Ss(rep, shape_transport(sorted, shape), wt);
}

CheckResult sym_validate(const SymSesqCochain& f, const WeightTable& wt) {
  auto keys = sym_shapes(f.s, f.arity);
  if (f.components.size() != keys.size())
    return {false, "component count mismatch"};
  for (const auto& k : keys) {
    auto it = f.components.find(k);
    if (it == f.components.end())
      return {false, "missing component " + shape_str(k)};
    const SesqCochain& c = it->second;
    if (c.shape != k || c.wcap != f.wcap)
      return {false, "component " + shape_str(k) + " metadata mismatch"};
    auto r = sq_validate(c, wt);
    if (!r.ok) return {false, "component " + shape_str(k) + ": " + r.detail};
    for (const Perm& sigma : all_perms(f.s)) {
      Perm inv = perm_inverse(sigma);
      bool stab = true;
      for (int t = 0; t < f.s; ++t) stab = stab && k[inv[t]] == k[t];
      if (!stab) continue;
      if (!(act_Ss(c, sigma, wt) == c))
        return {false, "component " + shape_str(k) +
                           " not invariant under its stabilizer"};
    }
  }
  return {true, ""};
}

CheckResult sym_harrison_check_all(const SymSesqCochain& f,
                                   const WeightTable& wt) {
  for (const auto& [k, c] : f.components) {
    auto r = harrison_check_all(c, wt);
    if (!r.ok) return {false, "component " + shape_str(k) + ": " + r.detail};
  }
  return {true, ""};
}

SymSesqCochain symmetrize(const SesqCochain& f, const WeightTable& wt) {
  int s = f.s();
  SymSesqCochain out = sym_zero(s, f.arity(), wt, f.wcap);
  Rational avg(1, 1);
  for (int i = 2; i <= s; ++i) avg = avg / Rational(i);
  for (const Perm& sigma : all_perms(s)) {
    SesqCochain g = act_Ss(f, sigma, wt);
    if (!std::is_sorted(g.shape.begin(), g.shape.end())) continue;
    auto it = out.components.find(g.shape);
    if (it == out.components.end()) continue;  // shape with an empty group
    it->second = sq_add(it->second, sq_scale(avg, g));
  }
  return out;
}

SymSesqCochain sym_d_total(const SymSesqCochain& f, const WeightTable& wt) {
  SymSesqCochain out = sym_zero(f.s, f.arity + 1, wt, f.wcap);
  for (auto& [m, c] : out.components) {
    for (int t = 1; t <= f.s; ++t) {
      LineShape pred = m;
      pred[t - 1] -= 1;
      if (pred[t - 1] == 0 && f.s > 1) continue;  // zero predecessor space
      c = sq_add(c, d_t(sym_component(f, pred, wt), t, wt));
    }
  }
  return out;
}

std::optional<long> sym_weight(const SymSesqCochain& f, const WeightTable& wt) {
  std::optional<long> shift;
  for (const auto& [k, c] : f.components) {
    auto d = sq_weight(c, wt);
    if (!d) continue;
    if (shift && *shift != *d)
      throw MathError("sym_weight: components of different shifts");
    shift = d;
  }
  return shift;
}

}  // namespace pvalab
