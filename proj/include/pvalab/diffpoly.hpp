#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvalab/rational.hpp"

namespace pvalab {

// Generator weights Delta_i >= 1; wt(u_i^(j)) = Delta_i + j, wt(lambda) = 1.
struct WeightTable {
  std::vector<long> delta;

  long of(int gen, int order) const { return delta.at(gen) + order; }
  bool operator==(const WeightTable&) const = default;
};

// Monomial in the generators and their derivatives: a sorted multiset of
// factors (generator index, derivative order). Empty = the unit.
struct DiffMonomial {
  std::vector<std::pair<int, int>> factors;

  auto operator<=>(const DiffMonomial&) const = default;
  bool is_unit() const { return factors.empty(); }
};

DiffMonomial dm_unit();
DiffMonomial dm_gen(int gen, int order = 0);
DiffMonomial dm_mul(const DiffMonomial& a, const DiffMonomial& b);
long dm_weight(const DiffMonomial& m, const WeightTable& wt);

struct DiffPoly {
  std::map<DiffMonomial, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const DiffPoly&) const = default;
};

DiffPoly dp_zero();
DiffPoly dp_const(const Rational& c);
DiffPoly dp_mono(const DiffMonomial& m, const Rational& c = Rational(1));
void dp_add_term(DiffPoly& p, const DiffMonomial& m, const Rational& c);
DiffPoly dp_add(const DiffPoly& a, const DiffPoly& b);
DiffPoly dp_sub(const DiffPoly& a, const DiffPoly& b);
DiffPoly dp_scale(const Rational& c, const DiffPoly& p);
DiffPoly dp_mul(const DiffPoly& a, const DiffPoly& b);

// d/dx via the chain rule over all factors
DiffPoly total_derivative(const DiffPoly& p);
DiffPoly total_derivative(const DiffPoly& p, int times);

// weight if homogeneous (zero polynomial -> nullopt, mixed -> throws)
std::optional<long> dp_weight(const DiffPoly& p, const WeightTable& wt);

// all monomials of exact weight w (requires all delta >= 1)
std::vector<DiffMonomial> monomials_of_weight(const WeightTable& wt, long w);
// all monomials of weight <= w
std::vector<DiffMonomial> monomials_up_to_weight(const WeightTable& wt, long w);

// canonical representative of p mod dV, computed per weight by eliminating
// the reverse-lex-largest monomials (highest derivative orders first)
DiffPoly normal_form_v0(const DiffPoly& p, const WeightTable& wt);

// all monomial tuples of the given length with total weight <= cap (the unit
// monomial is allowed in any slot), in lexicographic order
std::vector<std::vector<DiffMonomial>> monomial_tuples(const WeightTable& wt,
                                                       int len, long cap);
long tuple_weight(const std::vector<DiffMonomial>& v, const WeightTable& wt);

std::string dm_str(const DiffMonomial& m, const std::vector<std::string>& names);
std::string dp_str(const DiffPoly& p, const std::vector<std::string>& names);

}  // namespace pvalab
