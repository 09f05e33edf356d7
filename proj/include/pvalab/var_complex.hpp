// Variational cohomology complex of a Poisson vertex algebra.
//
// An n-cochain is a sesquilinear, skewsymmetric map
//   f: V^{\otimes n} -> V[lambda_1..lambda_n] / <(d + lambda_1+..+lambda_n)>
// obeying the Leibniz rule in each slot.  It is determined by its values on
// generator tuples; VarCochain stores those values as canonical quotient
// representatives.  C^0 = V/dV, C^1 = derivations commuting with d.
#pragma once

#include "pvalab/pva.hpp"

namespace pvalab {

struct VarCochain {
  int arity = 0;
  // one entry per generator tuple of length `arity` (ngen^arity keys)
  std::map<std::vector<int>, QuotientElem> values;
};

VarCochain vc_zero(const PVASpec& pva, int arity);
bool vc_is_zero(const VarCochain& f);
VarCochain vc_add(const VarCochain& a, const VarCochain& b);
VarCochain vc_scale(const Rational& c, const VarCochain& a);

// Checks the key set is complete and the values are skewsymmetric under
// adjacent transpositions; throws MathError otherwise.
void vc_validate(const PVASpec& pva, const VarCochain& f);

// The weight shift delta with wt(f(v)) = wt(v) + delta; nullopt when f == 0,
// MathError when the values are not homogeneous of a common shift.
std::optional<long> vc_weight(const PVASpec& pva, const VarCochain& f);

// Projects an arbitrary assignment of values onto the skewsymmetric part.
VarCochain vc_antisymmetrize(const PVASpec& pva, const VarCochain& raw);

// Evaluates f on monomial arguments via sesquilinearity and Leibniz.
QuotientElem vc_eval(const PVASpec& pva, const VarCochain& f,
                     const std::vector<DiffMonomial>& args);

// The variational differential.
VarCochain d_var(const PVASpec& pva, const VarCochain& f);

}  // namespace pvalab
