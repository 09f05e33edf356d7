#include "pvalab/lambda_poly.hpp"

#include <algorithm>
#include <sstream>

namespace pvalab {

LambdaPoly lp_zero(int nvars) { return LambdaPoly{nvars, {}}; }

LambdaPoly lp_from(int nvars, const DiffPoly& p) {
  LambdaPoly q{nvars, {}};
  if (!p.is_zero()) q.terms.emplace(std::vector<int>(nvars, 0), p);
  return q;
}

LambdaPoly lp_var(int nvars, int var) {
  if (var < 0 || var >= nvars) throw std::invalid_argument("lp_var: out of range");
  LambdaPoly q{nvars, {}};
  std::vector<int> e(nvars, 0);
  e[var] = 1;
  q.terms.emplace(std::move(e), dp_const(Rational(1)));
  return q;
}

void lp_add_term(LambdaPoly& p, const std::vector<int>& e, const DiffPoly& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(e.size()) != p.nvars)
    throw std::invalid_argument("lp_add_term: exponent length");
  auto it = p.terms.find(e);
  if (it == p.terms.end()) {
    p.terms.emplace(e, c);
  } else {
    it->second = dp_add(it->second, c);
    if (it->second.is_zero()) p.terms.erase(it);
  }
}

LambdaPoly lp_add(const LambdaPoly& a, const LambdaPoly& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("lp_add: nvars mismatch");
  LambdaPoly p = a;
  for (const auto& [e, c] : b.terms) lp_add_term(p, e, c);
  return p;
}

LambdaPoly lp_sub(const LambdaPoly& a, const LambdaPoly& b) {
  return lp_add(a, lp_scale(Rational(-1), b));
}

LambdaPoly lp_scale(const Rational& c, const LambdaPoly& p) {
  LambdaPoly q{p.nvars, {}};
  if (is_zero(c)) return q;
  for (const auto& [e, v] : p.terms) q.terms.emplace(e, dp_scale(c, v));
  return q;
}

LambdaPoly lp_mul_dp(const LambdaPoly& p, const DiffPoly& c) {
  LambdaPoly q{p.nvars, {}};
  for (const auto& [e, v] : p.terms) {
    DiffPoly w = dp_mul(v, c);
    if (!w.is_zero()) q.terms.emplace(e, std::move(w));
  }
  return q;
}

LambdaPoly lp_mul(const LambdaPoly& a, const LambdaPoly& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("lp_mul: nvars mismatch");
  LambdaPoly p{a.nvars, {}};
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(a.nvars);
      for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      lp_add_term(p, e, dp_mul(ca, cb));
    }
  return p;
}

SlotSubst subst_var(int var) {
  SlotSubst s;
  s.linear[var] = 1;
  return s;
}

LambdaPoly substitute(const LambdaPoly& p, const std::vector<SlotSubst>& subs,
                      int out_nvars) {
  if (static_cast<int>(subs.size()) != p.nvars)
    throw std::invalid_argument("substitute: wrong number of slots");
  LambdaPoly out = lp_zero(out_nvars);
  for (const auto& [e, coeff] : p.terms) {
    // term = coeff * prod_i subs[i]^{e[i]}
    LambdaPoly acc = lp_from(out_nvars, coeff);
    for (int i = 0; i < p.nvars && !acc.is_zero(); ++i) {
      int m = e[i];
      // a slot carrying a multiplication target applies (form + d)^m to the
      // target and multiplies the result in, even when m == 0
      if (m == 0 && !subs[i].mul_target) continue;
      LambdaPoly form = lp_zero(out_nvars);
      for (const auto& [var, c] : subs[i].linear) {
        LambdaPoly t = lp_scale(c, lp_var(out_nvars, var));
        form = lp_add(form, t);
      }
      if (!subs[i].mul_target) {
        for (int r = 0; r < m; ++r) acc = lp_mul(acc, form);
      } else {
        // (form + d_target)^m = sum_r binom(m,r) form^{m-r} (d^r target)
        std::vector<LambdaPoly> form_pow = {lp_from(out_nvars, dp_const(Rational(1)))};
        for (int r = 1; r <= m; ++r) form_pow.push_back(lp_mul(form_pow.back(), form));
        LambdaPoly expanded = lp_zero(out_nvars);
        for (int r = 0; r <= m; ++r) {
          DiffPoly dt = total_derivative(*subs[i].mul_target, r);
          if (dt.is_zero()) continue;
          expanded = lp_add(expanded,
                            lp_scale(binom(m, r), lp_mul_dp(form_pow[m - r], dt)));
        }
        acc = lp_mul(acc, expanded);
      }
    }
    out = lp_add(out, acc);
  }
  return out;
}

LambdaPoly shift_substitute(const LambdaPoly& p, int slot, const DiffPoly& target) {
  std::vector<SlotSubst> subs;
  for (int i = 0; i < p.nvars; ++i) subs.push_back(subst_var(i));
  subs[slot].mul_target = target;
  return substitute(p, subs, p.nvars);
}

LambdaPoly normal_form_quotient(const LambdaPoly& p) {
  if (p.nvars < 1) throw std::invalid_argument("normal_form_quotient: no variables");
  int n = p.nvars;
  LambdaPoly out = lp_zero(n - 1);
  for (const auto& [e, coeff] : p.terms) {
    // apply (-(l_1+..+l_{n-1}) - d)^{e[n-1]} to the truncated term
    LambdaPoly cur = lp_zero(n - 1);
    lp_add_term(cur, std::vector<int>(e.begin(), e.end() - 1), coeff);
    for (int r = 0; r < e[n - 1]; ++r) {
      LambdaPoly next = lp_zero(n - 1);
      for (const auto& [ee, cc] : cur.terms) {
        for (int i = 0; i < n - 1; ++i) {
          std::vector<int> e2 = ee;
          ++e2[i];
          lp_add_term(next, e2, dp_scale(Rational(-1), cc));
        }
        lp_add_term(next, ee, dp_scale(Rational(-1), total_derivative(cc)));
      }
      cur = std::move(next);
    }
    out = lp_add(out, cur);
  }
  return out;
}

std::optional<long> lp_weight(const LambdaPoly& p, const WeightTable& wt) {
  std::optional<long> w;
  for (const auto& [e, c] : p.terms) {
    auto cw = dp_weight(c, wt);
    long deg = 0;
    for (int x : e) deg += x;
    long tw = *cw + deg;
    if (!w) {
      w = tw;
    } else if (*w != tw) {
      throw MathError("lp_weight: inhomogeneous polynomial");
    }
  }
  return w;
}

QuotientElem qe_zero(int arity) {
  return QuotientElem{arity, lp_zero(std::max(arity - 1, 0))};
}

QuotientElem qe_normalize(int arity, const LambdaPoly& raw, const WeightTable& wt) {
  if (arity == 0) {
    if (raw.nvars != 0) throw std::invalid_argument("qe_normalize: arity 0 needs 0 vars");
    DiffPoly c = raw.terms.empty() ? dp_zero() : raw.terms.begin()->second;
    return QuotientElem{0, lp_from(0, normal_form_v0(c, wt))};
  }
  if (raw.nvars == arity) return QuotientElem{arity, normal_form_quotient(raw)};
  if (raw.nvars == arity - 1) return QuotientElem{arity, raw};
  throw std::invalid_argument("qe_normalize: variable count mismatch");
}

QuotientElem qe_add(const QuotientElem& a, const QuotientElem& b) {
  if (a.arity != b.arity) throw std::invalid_argument("qe_add: arity mismatch");
  return QuotientElem{a.arity, lp_add(a.body, b.body)};
}

QuotientElem qe_scale(const Rational& c, const QuotientElem& a) {
  return QuotientElem{a.arity, lp_scale(c, a.body)};
}

QuotientElem qe_mul_lambda(const QuotientElem& a, int i, const WeightTable& wt) {
  int n = a.arity;
  if (i < 1 || i > n) throw std::invalid_argument("qe_mul_lambda: slot out of range");
  (void)wt;
  if (i < n) return QuotientElem{n, lp_mul(a.body, lp_var(n - 1, i - 1))};
  // l_n acts on the canonical representative as -(l_1+..+l_{n-1}) - d
  LambdaPoly out = lp_zero(n - 1);
  for (const auto& [e, c] : a.body.terms) {
    for (int k = 0; k < n - 1; ++k) {
      std::vector<int> e2 = e;
      ++e2[k];
      lp_add_term(out, e2, dp_scale(Rational(-1), c));
    }
    lp_add_term(out, e, dp_scale(Rational(-1), total_derivative(c)));
  }
  return QuotientElem{n, out};
}

QuotientElem qe_shift_mul(const QuotientElem& a, int i, const DiffPoly& target,
                          const WeightTable& wt) {
  int n = a.arity;
  if (i < 1 || i > n) throw std::invalid_argument("qe_shift_mul: slot out of range");
  (void)wt;
  if (i == n) {
    // the eliminated slot: the shift is invisible on the canonical
    // representative, only the plain product remains
    return QuotientElem{n, lp_mul_dp(a.body, target)};
  }
  return QuotientElem{n, shift_substitute(a.body, i - 1, target)};
}

QuotientElem qe_permute(const QuotientElem& a, const Perm& p, const WeightTable& wt) {
  int n = a.arity;
  if (static_cast<int>(p.size()) != n)
    throw std::invalid_argument("qe_permute: size mismatch");
  if (n <= 1) return a;
  std::vector<SlotSubst> subs;
  for (int i = 0; i < n - 1; ++i) subs.push_back(subst_var(p[i]));
  LambdaPoly raw = substitute(a.body, subs, n);
  return qe_normalize(n, raw, wt);
}

std::optional<long> qe_weight(const QuotientElem& a, const WeightTable& wt) {
  return lp_weight(a.body, wt);
}

std::vector<std::string> lambda_names(int n) {
  std::vector<std::string> v;
  if (n == 1) {
    v.push_back("L");
    return v;
  }
  for (int i = 1; i <= n; ++i) v.push_back("L" + std::to_string(i));
  return v;
}

std::string lp_str(const LambdaPoly& p, const std::vector<std::string>& names,
                   const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms) {
    std::string lpart;
    for (int i = 0; i < p.nvars; ++i) {
      if (e[i] == 0) continue;
      if (!lpart.empty()) lpart += "*";
      lpart += vars.at(i);
      if (e[i] > 1) lpart += "^" + std::to_string(e[i]);
    }
    // coefficient, parenthesized when it has multiple terms
    std::string cpart = dp_str(c, names);
    bool multi = c.terms.size() > 1;
    std::string piece;
    if (lpart.empty()) {
      piece = cpart;
    } else if (multi) {
      piece = "(" + cpart + ")*" + lpart;
    } else if (cpart == "1") {
      piece = lpart;
    } else if (cpart == "-1") {
      piece = "-" + lpart;
    } else {
      piece = cpart + "*" + lpart;
    }
    // keep the printed sum inside the expression grammar: a '+' may not be
    // followed by a negative piece, so fold the sign into the separator
    if (first) {
      os << piece;
    } else if (!piece.empty() && piece[0] == '-') {
      os << " - " << piece.substr(1);
    } else {
      os << " + " << piece;
    }
    first = false;
  }
  return os.str();
}

std::string qe_str(const QuotientElem& a, const std::vector<std::string>& names) {
  // canonical representatives use the first arity-1 of the full variable list,
  // so arity 2 prints "L1" (not the bare "L" of a genuine 1-variable context)
  std::vector<std::string> vars = lambda_names(a.arity);
  if (!vars.empty()) vars.pop_back();
  return lp_str(a.body, names, vars);
}

}  // namespace pvalab
