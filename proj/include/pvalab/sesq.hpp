#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pvalab/digraph.hpp"
#include "pvalab/lambda_poly.hpp"
#include "pvalab/pva.hpp"

namespace pvalab {

// =====================================================================
// Sesquilinear Hochschild / Harrison cochains.
//
// A cochain of shape k = (k_1..k_s) is a multilinear map on tuples of
// length n = k_1+..+k_s with values in V[L_1..L_s]/<d + L_1+..+L_s>,
// one variable per group, satisfying per-group sesquilinearity: applying
// d across the diagonal of group t equals multiplication by -L_t.  The
// stored domain is every monomial tuple of total weight <= wcap (the
// unit monomial is allowed in any slot); values on other tuples follow
// by multilinearity.  For s > 1 a shape with some k_t = 0 carries only
// the zero cochain.
// =====================================================================

struct SesqCochain {
  LineShape shape;  // group sizes, k_t >= 0
  long wcap = 0;
  std::map<std::vector<DiffMonomial>, QuotientElem> values;

  int s() const { return static_cast<int>(shape.size()); }
  int arity() const;
  bool is_zero() const;
  bool operator==(const SesqCochain&) const = default;
};

SesqCochain sq_zero(const LineShape& shape, const WeightTable& wt, long wcap);
SesqCochain sq_add(const SesqCochain& a, const SesqCochain& b);
SesqCochain sq_scale(const Rational& c, const SesqCochain& a);

// domain completeness, value arities, per-group sesquilinearity (checked on
// tuples whose d-shifted weight stays within the cap), and the zero rule for
// shapes with an empty group when s > 1
CheckResult sq_validate(const SesqCochain& f, const WeightTable& wt);

// multilinear extension to polynomial entries; CapError if a required
// monomial tuple exceeds the stored window
QuotientElem sq_eval(const SesqCochain& f, const std::vector<DiffPoly>& args,
                     const WeightTable& wt);

// common weight shift wt(value) - wt(tuple); nullopt for the zero cochain,
// MathError if inhomogeneous
std::optional<long> sq_weight(const SesqCochain& f, const WeightTable& wt);

// the t-th differential (t is 1-based); output shape is k + e_t
SesqCochain d_t(const SesqCochain& f, int t, const WeightTable& wt);

// Harrison operator on group t: sum over monotone permutations of S_{k_t}
// starting at m of the drop sign, pulled back within the group
SesqCochain L_mt(const SesqCochain& f, int t, int m, const WeightTable& wt);
// L_mt(f) == f (2 <= m <= k_t)
CheckResult harrison_check(const SesqCochain& f, int t, int m,
                           const WeightTable& wt);
CheckResult harrison_check_all(const SesqCochain& f, const WeightTable& wt);

// exponent of the Koszul sign of sigma on blocks of the given sizes:
// sum of k_r k_q over inverted pairs r < q, sigma(r) > sigma(q)
int koszul_exponent(const LineShape& k, const Perm& sigma);

// S_s action: groups and their Lambda variables permuted by sigma with the
// Koszul sign from reordering odd arguments blockwise; output shape
// k'_t = k_{sigma^{-1}(t)}
SesqCochain act_Ss(const SesqCochain& f, const Perm& sigma,
                   const WeightTable& wt);

// =====================================================================
// S_s-invariant families, stored by their sorted-shape representatives.
// =====================================================================

struct SymSesqCochain {
  int s = 0;
  int arity = 0;
  long wcap = 0;
  std::map<LineShape, SesqCochain> components;  // ascending shapes

  bool is_zero() const;
  bool operator==(const SymSesqCochain&) const = default;
};

// ascending shapes with s parts summing to n: parts >= 1 for s > 1 (empty
// groups give the zero space), {(n)} for s = 1, and {()} for s = n = 0
std::vector<LineShape> sym_shapes(int s, int n);

SymSesqCochain sym_zero(int s, int n, const WeightTable& wt, long wcap);
SymSesqCochain sym_add(const SymSesqCochain& a, const SymSesqCochain& b);
SymSesqCochain sym_scale(const Rational& c, const SymSesqCochain& a);

// component validity plus stabilizer invariance of every representative
CheckResult sym_validate(const SymSesqCochain& f, const WeightTable& wt);
CheckResult sym_harrison_check_all(const SymSesqCochain& f,
                                   const WeightTable& wt);

// the component at an arbitrarily ordered shape, transported from the sorted
// representative by the group action
SesqCochain sym_component(const SymSesqCochain& f, const LineShape& shape,
                          const WeightTable& wt);

// projector onto invariants: average of act_Ss over S_s
SymSesqCochain symmetrize(const SesqCochain& f, const WeightTable& wt);

// total differential d = sum_t d^(t) on an invariant family, assembled per
// output shape from its predecessor shapes
SymSesqCochain sym_d_total(const SymSesqCochain& f, const WeightTable& wt);

std::optional<long> sym_weight(const SymSesqCochain& f, const WeightTable& wt);

}  // namespace pvalab
