#include "pvalab/pva.hpp"

#include <sstream>

namespace pvalab {

namespace {

// q |-> (L + d)^k q with d acting on coefficients, one step
LambdaPoly shift_up(const LambdaPoly& q) {
  LambdaPoly out = lp_zero(1);
  for (const auto& [e, c] : q.terms) {
    std::vector<int> e2 = e;
    ++e2[0];
    lp_add_term(out, e2, c);
    lp_add_term(out, e, total_derivative(c));
  }
  return out;
}

// q |-> (-L - d) q
LambdaPoly shift_down_neg(const LambdaPoly& q) {
  LambdaPoly out = lp_zero(1);
  for (const auto& [e, c] : q.terms) {
    std::vector<int> e2 = e;
    ++e2[0];
    lp_add_term(out, e2, dp_scale(Rational(-1), c));
    lp_add_term(out, e, dp_scale(Rational(-1), total_derivative(c)));
  }
  return out;
}

std::string dm_pair_str(const PVASpec& pva, const DiffMonomial& a,
                        const DiffMonomial& b) {
  return "(" + dm_str(a, pva.generators) + ", " + dm_str(b, pva.generators) + ")";
}

}  // namespace

LambdaPoly skew_flip(const LambdaPoly& q) {
  if (q.nvars != 1) throw std::invalid_argument("skew_flip: expects one variable");
  LambdaPoly out = lp_zero(1);
  for (const auto& [e, c] : q.terms) {
    LambdaPoly cur = lp_from(1, c);
    for (int r = 0; r < e[0]; ++r) cur = shift_down_neg(cur);
    out = lp_add(out, cur);
  }
  return lp_scale(Rational(-1), out);
}

void complete_brackets(PVASpec& pva) {
  int n = pva.ngen();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto it = pva.brackets.find({i, j});
      auto jt = pva.brackets.find({j, i});
      if (it == pva.brackets.end() && jt == pva.brackets.end()) {
        pva.brackets.emplace(std::make_pair(i, j), lp_zero(1));
      } else if (it == pva.brackets.end()) {
        pva.brackets.emplace(std::make_pair(i, j), skew_flip(jt->second));
      } else if (jt != pva.brackets.end() && i < j) {
        LambdaPoly diff = lp_sub(it->second, skew_flip(jt->second));
        if (!diff.is_zero())
          throw MathError("bracket table: [" + pva.generators[i] + "," +
                          pva.generators[j] +
                          "] inconsistent with its skew transpose");
      }
    }
}

namespace {

LambdaPoly bracket_mm_impl(const PVASpec& pva, const DiffMonomial& a,
                           const DiffMonomial& b);

// [g_L b] for a plain generator g
LambdaPoly bracket_gen(const PVASpec& pva, int g, const DiffMonomial& b) {
  if (b.is_unit()) return lp_zero(1);
  if (b.factors.size() > 1) {
    // left Leibniz: [g_L uv] = [g_L u] v + u [g_L v]
    DiffMonomial gm = dm_gen(g, 0);
    DiffMonomial u{{b.factors.front()}};
    DiffMonomial v{std::vector<std::pair<int, int>>(b.factors.begin() + 1,
                                                    b.factors.end())};
    return lp_add(lp_mul_dp(bracket_mm_impl(pva, gm, u), dp_mono(v)),
                  lp_mul_dp(bracket_mm_impl(pva, gm, v), dp_mono(u)));
  }
  auto [h, j] = b.factors[0];
  auto it = pva.brackets.find({g, h});
  if (it == pva.brackets.end()) throw MathError("bracket table incomplete");
  LambdaPoly q = it->second;
  for (int r = 0; r < j; ++r) q = shift_up(q);  // [g_L d^j h] = (L+d)^j [g_L h]
  return q;
}

LambdaPoly bracket_mm_impl(const PVASpec& pva, const DiffMonomial& a,
                           const DiffMonomial& b) {
  {
    std::lock_guard<std::mutex> lk(pva.cache->mu);
    auto it = pva.cache->map.find({a, b});
    if (it != pva.cache->map.end()) return it->second;
  }
  LambdaPoly out = lp_zero(1);
  if (a.is_unit() || b.is_unit()) {
    // zero
  } else if (a.factors.size() > 1) {
    // right Leibniz: [uv_L c] = [u_{L+d} c]_> v + [v_{L+d} c]_> u
    DiffMonomial u{{a.factors.front()}};
    DiffMonomial v{std::vector<std::pair<int, int>>(a.factors.begin() + 1,
                                                    a.factors.end())};
    out = lp_add(shift_substitute(bracket_mm_impl(pva, u, b), 0, dp_mono(v)),
                 shift_substitute(bracket_mm_impl(pva, v, b), 0, dp_mono(u)));
  } else {
    auto [g, j] = a.factors[0];
    LambdaPoly q = bracket_gen(pva, g, b);
    // [d^j g _L b] = (-L)^j [g_L b]
    if (j > 0) {
      LambdaPoly ml = lp_var(1, 0);
      for (int r = 0; r < j; ++r) q = lp_mul(q, ml);
      if (j % 2 == 1) q = lp_scale(Rational(-1), q);
    }
    out = std::move(q);
  }
  std::lock_guard<std::mutex> lk(pva.cache->mu);
  pva.cache->map.emplace(std::make_pair(a, b), out);
  return out;
}

}  // namespace

LambdaPoly bracket_mm(const PVASpec& pva, const DiffMonomial& a, const DiffMonomial& b) {
  return bracket_mm_impl(pva, a, b);
}

LambdaPoly bracket(const PVASpec& pva, const DiffPoly& a, const DiffPoly& b) {
  LambdaPoly out = lp_zero(1);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms)
      out = lp_add(out, lp_scale(ca * cb, bracket_mm(pva, ma, mb)));
  return out;
}

DiffMonomial random_monomial(const WeightTable& wt, long wcap, std::mt19937_64& rng) {
  std::vector<DiffMonomial> pool = monomials_up_to_weight(wt, wcap);
  std::vector<DiffMonomial> nonunit;
  for (auto& m : pool)
    if (!m.is_unit()) nonunit.push_back(std::move(m));
  if (nonunit.empty()) throw MathError("random_monomial: empty pool");
  std::uniform_int_distribution<size_t> dist(0, nonunit.size() - 1);
  return nonunit[dist(rng)];
}

CheckResult check_skewsymmetry(const PVASpec& pva, std::uint64_t seed, int trials,
                               long wcap) {
  auto probe = [&](const DiffMonomial& a, const DiffMonomial& b) -> CheckResult {
    LambdaPoly res = lp_sub(bracket_mm(pva, a, b), skew_flip(bracket_mm(pva, b, a)));
    if (res.is_zero()) return {true, ""};
    return {false, "skewsymmetry fails on " + dm_pair_str(pva, a, b) +
                       ", residual " + lp_str(res, pva.generators, lambda_names(1))};
  };
  for (int i = 0; i < pva.ngen(); ++i)
    for (int j = 0; j < pva.ngen(); ++j) {
      auto r = probe(DiffMonomial{{{i, 0}}}, DiffMonomial{{{j, 0}}});
      if (!r.ok) return r;
    }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    DiffMonomial a = random_monomial(pva.wt, wcap, rng);
    DiffMonomial b = random_monomial(pva.wt, wcap, rng);
    auto r = probe(a, b);
    if (!r.ok) return r;
  }
  return {true, ""};
}

namespace {

// embeds a one-variable lambda polynomial into two variables at slot `var`
LambdaPoly embed2(const LambdaPoly& p, int var) {
  LambdaPoly out = lp_zero(2);
  for (const auto& [e, c] : p.terms) {
    std::vector<int> e2(2, 0);
    e2[var] = e[0];
    lp_add_term(out, e2, c);
  }
  return out;
}

// [a_L [b_M c]] with the outer bracket placed at `outer_var`, the inner
// result already given as a one-variable polynomial at `inner_var`
LambdaPoly nest(const PVASpec& pva, const DiffMonomial& a, const LambdaPoly& inner,
                int outer_var, int inner_var) {
  LambdaPoly out = lp_zero(2);
  for (const auto& [e, c] : inner.terms) {
    LambdaPoly outer = bracket(pva, dp_mono(a), c);  // in one variable
    LambdaPoly emb = embed2(outer, outer_var);
    std::vector<int> shiftexp(2, 0);
    shiftexp[inner_var] = e[0];
    LambdaPoly mono = lp_zero(2);
    lp_add_term(mono, shiftexp, dp_const(Rational(1)));
    out = lp_add(out, lp_mul(emb, mono));
  }
  return out;
}

}  // namespace

CheckResult check_jacobi(const PVASpec& pva, std::uint64_t seed, int trials, long wcap) {
  auto probe = [&](const DiffMonomial& a, const DiffMonomial& b,
                   const DiffMonomial& c) -> CheckResult {
    // [a_L [b_M c]]
    LambdaPoly t1 = nest(pva, a, bracket_mm(pva, b, c), 0, 1);
    // [b_M [a_L c]]
    LambdaPoly t2 = nest(pva, b, bracket_mm(pva, a, c), 1, 0);
    // [[a_L b]_{L+M} c] = sum_r L^r [(q_r)_{L+M} c]
    LambdaPoly inner = bracket_mm(pva, a, b);
    LambdaPoly t3 = lp_zero(2);
    for (const auto& [e, q] : inner.terms) {
      LambdaPoly p1 = bracket(pva, q, dp_mono(c));
      std::vector<SlotSubst> subs(1);
      subs[0].linear[0] = 1;
      subs[0].linear[1] = 1;  // L + M
      LambdaPoly sub2 = substitute(p1, subs, 2);
      std::vector<int> lexp = {e[0], 0};
      LambdaPoly mono = lp_zero(2);
      lp_add_term(mono, lexp, dp_const(Rational(1)));
      t3 = lp_add(t3, lp_mul(sub2, mono));
    }
    LambdaPoly res = lp_sub(lp_sub(t1, t2), t3);
    if (res.is_zero()) return {true, ""};
    std::ostringstream os;
    os << "jacobi fails on (" << dm_str(a, pva.generators) << ", "
       << dm_str(b, pva.generators) << ", " << dm_str(c, pva.generators)
       << "), residual " << lp_str(res, pva.generators, {"L", "M"});
    return {false, os.str()};
  };
  for (int i = 0; i < pva.ngen(); ++i)
    for (int j = 0; j < pva.ngen(); ++j)
      for (int k = 0; k < pva.ngen(); ++k) {
        auto r = probe(DiffMonomial{{{i, 0}}}, DiffMonomial{{{j, 0}}},
                       DiffMonomial{{{k, 0}}});
        if (!r.ok) return r;
      }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    DiffMonomial a = random_monomial(pva.wt, wcap, rng);
    DiffMonomial b = random_monomial(pva.wt, wcap, rng);
    DiffMonomial c = random_monomial(pva.wt, wcap, rng);
    auto r = probe(a, b, c);
    if (!r.ok) return r;
  }
  return {true, ""};
}

}  // namespace pvalab
