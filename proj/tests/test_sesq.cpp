#include <algorithm>

#include "doctest.h"
#include "pvalab/json_io.hpp"
#include "pvalab/parse.hpp"
#include "pvalab/sesq.hpp"

using namespace pvalab;

namespace {

PVASpec load(const std::string& name) {
  return load_pva(std::string(PVALAB_TEST_DATA) + "/" + name);
}

DiffPoly dp(const PVASpec& pva, const std::string& text) {
  return parse_diffpoly(text, pva.generators);
}

// shape (1): the identity endomorphism
SesqCochain id_sq(const PVASpec& pva, long wcap) {
  SesqCochain f = sq_zero({1}, pva.wt, wcap);
  for (auto& [v, q] : f.values)
    q = qe_normalize(1, lp_from(1, dp_mono(v[0])), pva.wt);
  return f;
}

// shape (2): the multiplication
SesqCochain mult2(const PVASpec& pva, long wcap) {
  SesqCochain f = sq_zero({2}, pva.wt, wcap);
  for (auto& [v, q] : f.values)
    q = qe_normalize(1, lp_from(1, dp_mono(dm_mul(v[0], v[1]))), pva.wt);
  return f;
}

// shape (3): the triple product (symmetric, hence a shuffle: not Harrison)
SesqCochain mult3(const PVASpec& pva, long wcap) {
  SesqCochain f = sq_zero({3}, pva.wt, wcap);
  for (auto& [v, q] : f.values)
    q = qe_normalize(
        1, lp_from(1, dp_mono(dm_mul(dm_mul(v[0], v[1]), v[2]))), pva.wt);
  return f;
}

// shape (2): -L*(ab), i.e. d(ab) on canonical representatives
SesqCochain wmult2(const PVASpec& pva, long wcap) {
  SesqCochain f = sq_zero({2}, pva.wt, wcap);
  for (auto& [v, q] : f.values) {
    LambdaPoly raw = lp_zero(1);
    lp_add_term(raw, {1}, dp_mono(dm_mul(v[0], v[1]), rat(-1)));
    q = qe_normalize(1, raw, pva.wt);
  }
  return f;
}

// place a one-variable lambda polynomial into slot `slot` of an s-variable one
LambdaPoly widen(const LambdaPoly& p, int slot, int s) {
  std::vector<SlotSubst> subs = {SlotSubst{{{slot, rat(1)}}, std::nullopt}};
  return substitute(p, subs, s);
}

// shape (1,1): (a|b) -> [a_{L1} b]
SesqCochain br11(const PVASpec& pva, long wcap) {
  SesqCochain f = sq_zero({1, 1}, pva.wt, wcap);
  for (auto& [v, q] : f.values)
    q = qe_normalize(2, widen(bracket_mm(pva, v[0], v[1]), 0, 2), pva.wt);
  return f;
}

// shape (1,1): (a|b) -> [b_{L2} a]
SesqCochain rbr11(const PVASpec& pva, long wcap) {
  SesqCochain f = sq_zero({1, 1}, pva.wt, wcap);
  for (auto& [v, q] : f.values)
    q = qe_normalize(2, widen(bracket_mm(pva, v[1], v[0]), 1, 2), pva.wt);
  return f;
}

// shape (1,2): (a|b,c) -> [a_{L1} (bc)]
SesqCochain br12(const PVASpec& pva, long wcap) {
  SesqCochain f = sq_zero({1, 2}, pva.wt, wcap);
  for (auto& [v, q] : f.values)
    q = qe_normalize(2, widen(bracket_mm(pva, v[0], dm_mul(v[1], v[2])), 0, 2),
                     pva.wt);
  return f;
}

// shape (1,1,1): (a|b|c) -> [a_{L1} [b_{L2} c]]
SesqCochain br111(const PVASpec& pva, long wcap) {
  SesqCochain f = sq_zero({1, 1, 1}, pva.wt, wcap);
  for (auto& [v, q] : f.values) {
    LambdaPoly inner = bracket_mm(pva, v[1], v[2]);
    LambdaPoly raw = lp_zero(3);
    for (const auto& [e, c] : inner.terms) {
      LambdaPoly outer = widen(bracket(pva, dp_mono(v[0]), c), 0, 3);
      LambdaPoly l2pow = lp_zero(3);
      lp_add_term(l2pow, {0, e[0], 0}, dp_mono(dm_unit()));
      raw = lp_add(raw, lp_mul(outer, l2pow));
    }
    q = qe_normalize(3, raw, pva.wt);
  }
  return f;
}

SesqCochain sq_sub(const SesqCochain& a, const SesqCochain& b) {
  return sq_add(a, sq_scale(rat(-1), b));
}

}  // namespace

TEST_CASE("shape enumeration and the zero rule for empty groups") {
  CHECK(sym_shapes(0, 0) == std::vector<LineShape>{{}});
  CHECK(sym_shapes(1, 3) == std::vector<LineShape>{{3}});
  CHECK(sym_shapes(2, 4) == std::vector<LineShape>{{1, 3}, {2, 2}});
  CHECK(sym_shapes(3, 3) == std::vector<LineShape>{{1, 1, 1}});
  CHECK(sym_shapes(2, 1).empty());
  CHECK(sym_shapes(0, 2).empty());

  PVASpec gfz = load("gfz.json");
  SesqCochain z = sq_zero({0, 2}, gfz.wt, 3);
  CHECK(z.arity() == 2);
  CHECK(sq_validate(z, gfz.wt).ok);
  z.values.begin()->second = qe_normalize(2, lp_from(2, dp(gfz, "u")), gfz.wt);
  CHECK(!sq_validate(z, gfz.wt).ok);
}

TEST_CASE("sesquilinearity validation accepts and rejects correctly") {
  PVASpec gfz = load("gfz.json");
  CHECK(sq_validate(id_sq(gfz, 4), gfz.wt).ok);
  CHECK(sq_validate(mult2(gfz, 4), gfz.wt).ok);
  CHECK(sq_validate(wmult2(gfz, 4), gfz.wt).ok);
  CHECK(sq_validate(br11(gfz, 4), gfz.wt).ok);
  CHECK(sq_validate(rbr11(gfz, 4), gfz.wt).ok);
  CHECK(sq_validate(br12(gfz, 4), gfz.wt).ok);
  CHECK(sq_validate(br111(gfz, 3), gfz.wt).ok);

  // the product is NOT sesquilinear per group when the slots are split
  SesqCochain bad = sq_zero({1, 1}, gfz.wt, 4);
  for (auto& [v, q] : bad.values)
    q = qe_normalize(2, lp_from(2, dp_mono(dm_mul(v[0], v[1]))), gfz.wt);
  CHECK(!sq_validate(bad, gfz.wt).ok);

  PVASpec vir = load("virasoro.json");
  CHECK(sq_validate(br11(vir, 5), vir.wt).ok);
  CHECK(sq_validate(br12(vir, 6), vir.wt).ok);
}

TEST_CASE("one-group differential is the Hochschild formula") {
  PVASpec gfz = load("gfz.json");
  DiffMonomial u = dm_gen(0);
  DiffMonomial uu = dm_mul(u, u);

  // d(identity) = multiplication, table for table
  CHECK(d_t(id_sq(gfz, 4), 1, gfz.wt) == mult2(gfz, 4));
  // d(multiplication) = 0: associativity
  CHECK(d_t(mult2(gfz, 4), 1, gfz.wt).is_zero());

  // d(-L*(ab))(a,b,c) = a(bc)' - a'(bc), frozen by hand on representatives
  SesqCochain dw = d_t(wmult2(gfz, 4), 1, gfz.wt);
  CHECK(dw.values.at({u, u, u}).is_zero());
  CHECK(dw.values.at({uu, u, u}) ==
        qe_normalize(1, lp_from(1, dp(gfz, "-u^3*D(u)")), gfz.wt));
  CHECK(dw.values.at({u, u, uu}) ==
        qe_normalize(1, lp_from(1, dp(gfz, "u^3*D(u)")), gfz.wt));
  CHECK(dw.values.at({dm_gen(0, 1), u, dm_unit()}) ==
        qe_normalize(1, lp_from(1, dp(gfz, "-D(D(u))*u")), gfz.wt));

  // d_t of the last group needs t in range
  CHECK_THROWS_AS(d_t(mult2(gfz, 4), 2, gfz.wt), MathError);

  // the group differentials square to zero one group at a time
  CHECK(d_t(d_t(wmult2(gfz, 3), 1, gfz.wt), 1, gfz.wt).is_zero());
  CHECK(d_t(d_t(id_sq(gfz, 3), 1, gfz.wt), 1, gfz.wt).is_zero());
}

TEST_CASE("group differentials anticommute and are equivariant") {
  PVASpec gfz = load("gfz.json");
  SesqCochain f = br12(gfz, 4);

  // d_1 d_2 + d_2 d_1 = 0 into shape (2,3)
  SesqCochain ab = d_t(d_t(f, 2, gfz.wt), 1, gfz.wt);
  SesqCochain ba = d_t(d_t(f, 1, gfz.wt), 2, gfz.wt);
  CHECK(sq_add(ab, ba).is_zero());

  // act_sigma d_t = d_{sigma(t)} act_sigma
  Perm swap = {1, 0};
  for (int t = 1; t <= 2; ++t) {
    SesqCochain lhs = act_Ss(d_t(f, t, gfz.wt), swap, gfz.wt);
    SesqCochain rhs = d_t(act_Ss(f, swap, gfz.wt), 3 - t, gfz.wt);
    CHECK(sq_sub(lhs, rhs).is_zero());
  }
}

TEST_CASE("harrison operators: fixed points and shuffles") {
  PVASpec gfz = load("gfz.json");
  SesqCochain m2 = mult2(gfz, 4);

  // L_2 on a symmetric two-slot group is the identity
  CHECK(L_mt(m2, 1, 2, gfz.wt) == m2);
  CHECK(harrison_check(m2, 1, 2, gfz.wt).ok);
  CHECK(harrison_check_all(wmult2(gfz, 4), gfz.wt).ok);

  // an antisymmetric table fails the m = 2 condition
  SesqCochain anti = sq_zero({2}, gfz.wt, 4);
  for (auto& [v, q] : anti.values) {
    LambdaPoly raw = lp_from(1, total_derivative(dp_mono(v[0])));
    raw = lp_mul(raw, lp_from(1, dp_mono(v[1])));
    LambdaPoly fl = lp_from(1, total_derivative(dp_mono(v[1])));
    fl = lp_mul(fl, lp_from(1, dp_mono(v[0])));
    q = qe_normalize(1, lp_sub(raw, fl), gfz.wt);
  }
  REQUIRE(sq_validate(anti, gfz.wt).ok);
  REQUIRE(!anti.is_zero());
  auto r = harrison_check(anti, 1, 2, gfz.wt);
  CHECK(!r.ok);
  CHECK(r.detail.find("L_2") != std::string::npos);

  // the symmetric triple product is a shuffle: not a Harrison cochain
  CHECK(!harrison_check(mult3(gfz, 4), 1, 2, gfz.wt).ok);

  // but the differential preserves the Harrison conditions
  CHECK(harrison_check_all(d_t(wmult2(gfz, 4), 1, gfz.wt), gfz.wt).ok);
  CHECK(harrison_check_all(d_t(br12(gfz, 4), 2, gfz.wt), gfz.wt).ok);

  // per-group conditions on a split shape: group 2 of [a (bc)] is symmetric
  CHECK(harrison_check(br12(gfz, 4), 2, 2, gfz.wt).ok);
  CHECK_THROWS_AS(L_mt(br12(gfz, 4), 1, 2, gfz.wt), MathError);
}

TEST_CASE("koszul exponents and the group action") {
  PVASpec gfz = load("gfz.json");
  Perm swap = {1, 0};

  CHECK(koszul_exponent({1, 1}, {0, 1}) == 0);
  CHECK(koszul_exponent({1, 1}, swap) == 1);
  CHECK(koszul_exponent({1, 2}, swap) == 2);
  CHECK(koszul_exponent({2, 3}, swap) == 6);
  CHECK(koszul_exponent({1, 1, 1}, {1, 2, 0}) == 2);

  // skewsymmetry of the bracket makes [a_{L1} b] swap-invariant ...
  SesqCochain p = br11(gfz, 4);
  CHECK(act_Ss(p, swap, gfz.wt) == p);
  // ... equivalently [a_{L1} b] = -[b_{L2} a] in the common quotient
  CHECK(sq_add(p, rbr11(gfz, 4)).is_zero());

  // shape transport and the round trip through an asymmetric shape
  SesqCochain f = br12(gfz, 4);
  SesqCochain g = act_Ss(f, swap, gfz.wt);
  CHECK(g.shape == LineShape{2, 1});
  CHECK(act_Ss(g, swap, gfz.wt) == f);

  // composition: act(tau) after act(sigma) is act(tau o sigma)
  SesqCochain h = br111(gfz, 3);
  std::vector<Perm> s3;
  Perm pp = perm_id(3);
  do s3.push_back(pp);
  while (std::next_permutation(pp.begin(), pp.end()));
  for (const Perm& sigma : s3)
    for (const Perm& tau : s3) {
      SesqCochain lhs = act_Ss(act_Ss(h, sigma, gfz.wt), tau, gfz.wt);
      SesqCochain rhs = act_Ss(h, perm_compose(tau, sigma), gfz.wt);
      CHECK(sq_sub(lhs, rhs).is_zero());
    }
}

TEST_CASE("multilinear evaluation") {
  PVASpec gfz = load("gfz.json");
  SesqCochain m2 = mult2(gfz, 4);
  DiffMonomial u = dm_gen(0);

  CHECK(sq_eval(m2, {dp(gfz, "u + 2*D(u)"), dp(gfz, "u")}, gfz.wt) ==
        qe_normalize(1, lp_from(1, dp(gfz, "u^2 + 2*u*D(u)")), gfz.wt));
  CHECK(sq_eval(m2, {dp(gfz, "0"), dp(gfz, "u")}, gfz.wt).is_zero());

  SesqCochain p = br11(gfz, 4);
  QuotientElem direct = p.values.at({u, dm_mul(u, u)});
  CHECK(sq_eval(p, {dp(gfz, "3*u"), dp(gfz, "u^2")}, gfz.wt) ==
        qe_scale(rat(3), direct));

  // monomials outside the stored window are refused
  CHECK_THROWS_AS(sq_eval(p, {dp(gfz, "u^4"), dp(gfz, "u")}, gfz.wt), CapError);
}

TEST_CASE("invariant families: projector, transport, total differential") {
  PVASpec gfz = load("gfz.json");
  Perm swap = {1, 0};

  // full-stabilizer shape: the average of equal terms is the term
  SesqCochain p = br11(gfz, 4);
  SymSesqCochain sp = symmetrize(p, gfz.wt);
  CHECK(sym_validate(sp, gfz.wt).ok);
  CHECK(sp.components.at({1, 1}) == p);

  // trivial stabilizer: only the identity lands on the sorted shape
  SesqCochain f = br12(gfz, 4);
  SymSesqCochain sf = symmetrize(f, gfz.wt);
  CHECK(sym_validate(sf, gfz.wt).ok);
  CHECK(sf.components.at({1, 2}) == sq_scale(Rational(1, 2), f));
  // transport to the unsorted ordering is the group action on the rep
  CHECK(sym_component(sf, {2, 1}, gfz.wt) ==
        act_Ss(sf.components.at({1, 2}), swap, gfz.wt));
  CHECK(sym_component(sf, {1, 2}, gfz.wt) == sf.components.at({1, 2}));

  // the projector commutes with the total differential
  SymSesqCochain lhs = sym_d_total(sf, gfz.wt);
  SymSesqCochain rhs = sym_add(symmetrize(d_t(f, 1, gfz.wt), gfz.wt),
                               symmetrize(d_t(f, 2, gfz.wt), gfz.wt));
  CHECK(sym_add(lhs, sym_scale(rat(-1), rhs)).is_zero());

  // d_total squares to zero on invariant families
  CHECK(sym_d_total(sym_d_total(sf, gfz.wt), gfz.wt).is_zero());
  CHECK(sym_d_total(sym_d_total(sp, gfz.wt), gfz.wt).is_zero());

  // and the transported components satisfy the same validity conditions
  SesqCochain t21 = sym_component(sf, {2, 1}, gfz.wt);
  CHECK(sq_validate(t21, gfz.wt).ok);
}
