#include "pvalab/var_complex.hpp"

#include <sstream>

#include "pvalab/perm.hpp"

namespace pvalab {

namespace {

std::vector<std::vector<int>> all_tuples(int ngen, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(len, 0);
  for (;;) {
    out.push_back(cur);
    int k = len - 1;
    while (k >= 0 && ++cur[k] == ngen) cur[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

std::string tuple_str(const PVASpec& pva, const std::vector<int>& t) {
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += pva.generators[t[i]];
  }
  return "(" + s + ")";
}

}  // namespace

VarCochain vc_zero(const PVASpec& pva, int arity) {
  VarCochain f;
  f.arity = arity;
  for (auto& t : all_tuples(pva.ngen(), arity)) f.values.emplace(t, qe_zero(arity));
  return f;
}

bool vc_is_zero(const VarCochain& f) {
  for (const auto& [t, v] : f.values)
    if (!v.body.is_zero()) return false;
  return true;
}

VarCochain vc_add(const VarCochain& a, const VarCochain& b) {
  if (a.arity != b.arity) throw std::invalid_argument("vc_add: arity mismatch");
  VarCochain out = a;
  for (auto& [t, v] : out.values) v = qe_add(v, b.values.at(t));
  return out;
}

VarCochain vc_scale(const Rational& c, const VarCochain& a) {
  VarCochain out = a;
  for (auto& [t, v] : out.values) v = qe_scale(c, v);
  return out;
}

void vc_validate(const PVASpec& pva, const VarCochain& f) {
  int n = f.arity;
  auto tuples = all_tuples(pva.ngen(), n);
  if (f.values.size() != tuples.size())
    throw MathError("cochain: expected one value per generator tuple");
  for (const auto& t : tuples)
    if (!f.values.count(t)) throw MathError("cochain: missing tuple " + tuple_str(pva, t));
  // adjacent transpositions generate S_n
  for (int k = 0; k + 1 < n; ++k) {
    Perm s = perm_id(n);
    std::swap(s[k], s[k + 1]);
    for (const auto& t : tuples) {
      QuotientElem lhs = qe_permute(f.values.at(perm_pull(s, t)), s, pva.wt);
      QuotientElem rhs = qe_scale(Rational(-1), f.values.at(t));
      if (!qe_add(lhs, qe_scale(Rational(-1), rhs)).body.is_zero())
        throw MathError("cochain: not skewsymmetric at " + tuple_str(pva, t) +
                        " swapping slots " + std::to_string(k + 1) + "," +
                        std::to_string(k + 2));
    }
  }
}

std::optional<long> vc_weight(const PVASpec& pva, const VarCochain& f) {
  std::optional<long> delta;
  for (const auto& [t, v] : f.values) {
    auto w = qe_weight(v, pva.wt);
    if (!w) continue;
    long base = 0;
    for (int g : t) base += pva.wt.delta.at(g);
    long d = *w - base;
    if (!delta) {
      delta = d;
    } else if (*delta != d) {
      throw MathError("cochain: values not homogeneous of a common weight shift");
    }
  }
  return delta;
}

VarCochain vc_antisymmetrize(const PVASpec& pva, const VarCochain& raw) {
  int n = raw.arity;
  VarCochain out = vc_zero(pva, n);
  std::vector<Perm> perms;
  {
    Perm p = perm_id(n);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  Rational inv = rat(1, static_cast<long>(perms.size()));
  for (auto& [t, acc] : out.values) {
    for (const auto& s : perms) {
      QuotientElem term = qe_permute(raw.values.at(perm_pull(s, t)), s, pva.wt);
      acc = qe_add(acc, qe_scale(Rational(perm_sign(s)), term));
    }
    acc = qe_scale(inv, acc);
  }
  return out;
}

QuotientElem vc_eval(const PVASpec& pva, const VarCochain& f,
                     const std::vector<DiffMonomial>& args) {
  int n = f.arity;
  if (static_cast<int>(args.size()) != n)
    throw std::invalid_argument("vc_eval: argument count");
  for (int i = 0; i < n; ++i) {
    const DiffMonomial& m = args[i];
    if (m.is_unit()) return qe_zero(n);
    if (m.factors.size() == 1) {
      auto [g, j] = m.factors[0];
      if (j == 0) continue;
      // sesquilinearity: f(.., d^j g, ..) = (-L_i)^j f(.., g, ..)
      auto args2 = args;
      args2[i] = dm_gen(g, 0);
      QuotientElem r = vc_eval(pva, f, args2);
      for (int s = 0; s < j; ++s)
        r = qe_scale(Rational(-1), qe_mul_lambda(r, i + 1, pva.wt));
      return r;
    }
    // Leibniz: f(.., uw, ..) = f_{L_i+d}(.., u, ..)w + f_{L_i+d}(.., w, ..)u
    DiffMonomial u{{m.factors.front()}};
    DiffMonomial w{
        std::vector<std::pair<int, int>>(m.factors.begin() + 1, m.factors.end())};
    auto a1 = args;
    a1[i] = u;
    auto a2 = args;
    a2[i] = w;
    return qe_add(qe_shift_mul(vc_eval(pva, f, a1), i + 1, dp_mono(w), pva.wt),
                  qe_shift_mul(vc_eval(pva, f, a2), i + 1, dp_mono(u), pva.wt));
  }
  std::vector<int> key(n);
  for (int i = 0; i < n; ++i) key[i] = args[i].factors[0].first;
  return f.values.at(key);
}

namespace {

// f evaluated with a polynomial in the first slot, monomials in the rest
QuotientElem eval_poly_slot0(const PVASpec& pva, const VarCochain& f,
                             const DiffPoly& p, const std::vector<DiffMonomial>& rest) {
  QuotientElem acc = qe_zero(f.arity);
  for (const auto& [m, c] : p.terms) {
    std::vector<DiffMonomial> args;
    args.reserve(rest.size() + 1);
    args.push_back(m);
    for (const auto& r : rest) args.push_back(r);
    acc = qe_add(acc, qe_scale(c, vc_eval(pva, f, args)));
  }
  return acc;
}

}  // namespace

VarCochain d_var(const PVASpec& pva, const VarCochain& f) {
  int n = f.arity;
  VarCochain out;
  out.arity = n + 1;
  for (auto& t : all_tuples(pva.ngen(), n + 1)) {
    LambdaPoly raw = lp_zero(n + 1);
    // sum over single slots: (-1)^n (-1)^i [v_i_{L_i} f(..i^..)]
    for (int i = 1; i <= n + 1; ++i) {
      std::vector<int> rem;
      std::vector<int> rem_pos;  // 0-based global positions
      for (int k = 0; k < n + 1; ++k)
        if (k != i - 1) {
          rem.push_back(t[k]);
          rem_pos.push_back(k);
        }
      const QuotientElem& F = f.values.at(rem);
      Rational sgn((n + i) % 2 == 0 ? 1 : -1);
      DiffPoly vi = dp_mono(dm_gen(t[i - 1], 0));
      for (const auto& [e, q] : F.body.terms) {
        LambdaPoly br = bracket(pva, vi, q);
        for (const auto& [be, bc] : br.terms) {
          std::vector<int> ge(n + 1, 0);
          for (int k = 0; k + 1 < n; ++k) ge[rem_pos[k]] = e[k];
          ge[i - 1] += be[0];
          lp_add_term(raw, ge, dp_scale(sgn, bc));
        }
      }
    }
    // sum over pairs: (-1)^{n+1} (-1)^{i+j} f_{L_i+L_j,..}([v_i_{L_i} v_j], ..)
    for (int i = 1; i <= n + 1; ++i)
      for (int j = i + 1; j <= n + 1; ++j) {
        std::vector<DiffMonomial> rest;
        std::vector<int> rest_pos;
        for (int k = 0; k < n + 1; ++k)
          if (k != i - 1 && k != j - 1) {
            rest.push_back(dm_gen(t[k], 0));
            rest_pos.push_back(k);
          }
        LambdaPoly inner = bracket_mm(pva, dm_gen(t[i - 1], 0), dm_gen(t[j - 1], 0));
        Rational sgn((n + i + j) % 2 == 0 ? -1 : 1);  // (-1)^{n+1+i+j}
        for (const auto& [re, q] : inner.terms) {
          QuotientElem ev = eval_poly_slot0(pva, f, q, rest);
          std::vector<SlotSubst> subs(std::max(n - 1, 0));
          if (n >= 2) {
            subs[0].linear[i - 1] = 1;
            subs[0].linear[j - 1] = 1;
            for (int k = 1; k + 1 < n; ++k) subs[k].linear[rest_pos[k - 1]] = 1;
          }
          LambdaPoly s = substitute(ev.body, subs, n + 1);
          std::vector<int> lexp(n + 1, 0);
          lexp[i - 1] = re[0];
          LambdaPoly mono = lp_zero(n + 1);
          lp_add_term(mono, lexp, dp_const(sgn));
          raw = lp_add(raw, lp_mul(s, mono));
        }
      }
    out.values.emplace(t, qe_normalize(n + 1, raw, pva.wt));
  }
  return out;
}

}  // namespace pvalab
