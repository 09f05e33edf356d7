#pragma once

#include "pvalab/diffpoly.hpp"
#include "pvalab/perm.hpp"

namespace pvalab {

// Polynomial in nvars commuting variables with DiffPoly coefficients.
// Exponent keys always have length nvars.
struct LambdaPoly {
  int nvars = 0;
  std::map<std::vector<int>, DiffPoly> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const LambdaPoly&) const = default;
};

LambdaPoly lp_zero(int nvars);
LambdaPoly lp_from(int nvars, const DiffPoly& p);
LambdaPoly lp_var(int nvars, int var);  // the variable itself, 0-based
void lp_add_term(LambdaPoly& p, const std::vector<int>& e, const DiffPoly& c);
LambdaPoly lp_add(const LambdaPoly& a, const LambdaPoly& b);
LambdaPoly lp_sub(const LambdaPoly& a, const LambdaPoly& b);
LambdaPoly lp_scale(const Rational& c, const LambdaPoly& p);
LambdaPoly lp_mul_dp(const LambdaPoly& p, const DiffPoly& c);
LambdaPoly lp_mul(const LambdaPoly& a, const LambdaPoly& b);

// One substitution slot: variable -> linear form in the output variables,
// optionally plus d acting on mul_target, whose derivatives multiply into
// the coefficient: (form + d_target)^e = sum_r binom(e,r) form^{e-r} (d^r target).
struct SlotSubst {
  std::map<int, Rational> linear;
  std::optional<DiffPoly> mul_target;
};

SlotSubst subst_var(int var);  // identity on that variable

// Apply per-variable substitutions (subs.size() == p.nvars), producing a
// polynomial in out_nvars variables.
LambdaPoly substitute(const LambdaPoly& p, const std::vector<SlotSubst>& subs,
                      int out_nvars);

// lambda_slot^m -> sum_r binom(m,r) lambda_slot^{m-r} (d^r target), target's
// derivatives multiplied into the coefficients (0-based slot)
LambdaPoly shift_substitute(const LambdaPoly& p, int slot, const DiffPoly& target);

// eliminate the last variable via lambda_n = -(lambda_1+..+lambda_{n-1}) - d,
// d acting on coefficients; result has nvars-1 variables
LambdaPoly normal_form_quotient(const LambdaPoly& p);

// weight if homogeneous, where each variable has weight 1
std::optional<long> lp_weight(const LambdaPoly& p, const WeightTable& wt);

// An element of V[l_1..l_n]/<d + l_1 + .. + l_n>, stored as the canonical
// representative with l_n eliminated (body.nvars = n-1). For arity 0 the
// body is a 0-variable polynomial whose coefficient is reduced mod dV.
struct QuotientElem {
  int arity = 0;
  LambdaPoly body;

  bool is_zero() const { return body.is_zero(); }
  bool operator==(const QuotientElem&) const = default;
};

QuotientElem qe_zero(int arity);
// raw has arity variables (or already arity-1 for pre-reduced input);
// wt is consulted only for arity 0
QuotientElem qe_normalize(int arity, const LambdaPoly& raw, const WeightTable& wt);
QuotientElem qe_add(const QuotientElem& a, const QuotientElem& b);
QuotientElem qe_scale(const Rational& c, const QuotientElem& a);

// multiply by the scalar lambda_i (1-based; i = arity uses the eliminated
// variable, i.e. the operator -(lambda_1+..+lambda_{n-1}) - d)
QuotientElem qe_mul_lambda(const QuotientElem& a, int i, const WeightTable& wt);

// f with slot i shifted by d acting on target, target multiplied in:
// the well-defined combination "F_{..l_i+x..}(..) (|_{x=d} target)"
QuotientElem qe_shift_mul(const QuotientElem& a, int i, const DiffPoly& target,
                          const WeightTable& wt);

// class of f_{l_{p(1)},..,l_{p(n)}} (p a permutation of the arity slots, 0-based)
QuotientElem qe_permute(const QuotientElem& a, const Perm& p, const WeightTable& wt);

std::optional<long> qe_weight(const QuotientElem& a, const WeightTable& wt);

std::string lp_str(const LambdaPoly& p, const std::vector<std::string>& names,
                   const std::vector<std::string>& vars);
std::string qe_str(const QuotientElem& a, const std::vector<std::string>& names);

// variable name lists L1..Ln (or the single "L")
std::vector<std::string> lambda_names(int n);

}  // namespace pvalab
