// Poisson vertex algebra structures on differential polynomial rings.
//
// A PVASpec holds the generators, their weights, and the full table of
// generator brackets [g_i lambda g_j] as one-variable lambda polynomials.
// The bracket extends to arbitrary differential polynomials by
// sesquilinearity and the two Leibniz rules; check_skewsymmetry and
// check_jacobi probe the axioms on generator tuples plus random monomials.
#pragma once

#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "pvalab/lambda_poly.hpp"

namespace pvalab {

struct BracketCache {
  std::mutex mu;
  std::map<std::pair<DiffMonomial, DiffMonomial>, LambdaPoly> map;
};

struct PVASpec {
  std::vector<std::string> generators;
  WeightTable wt;
  // full table on ordered generator pairs; each entry has nvars == 1
  std::map<std::pair<int, int>, LambdaPoly> brackets;
  std::unique_ptr<BracketCache> cache = std::make_unique<BracketCache>();

  int ngen() const { return static_cast<int>(generators.size()); }
};

// -q(-L - d): the right-hand side of skewsymmetry applied to q = [b_L a].
LambdaPoly skew_flip(const LambdaPoly& q);

// Completes a partially given bracket table: missing (j,i) entries are
// filled from (i,j) by skewsymmetry; entries present on both sides are
// cross-checked (MathError on mismatch).
void complete_brackets(PVASpec& pva);

// [a_L b] for monomials and polynomials; result has nvars == 1.
LambdaPoly bracket_mm(const PVASpec& pva, const DiffMonomial& a, const DiffMonomial& b);
LambdaPoly bracket(const PVASpec& pva, const DiffPoly& a, const DiffPoly& b);

struct CheckResult {
  bool ok = true;
  std::string detail;  // first failing tuple and its residual, when !ok
};

// [a_L b] + [b_{-L-d} a] == 0 on all generator pairs plus `trials` random
// monomial pairs of weight <= wcap.
CheckResult check_skewsymmetry(const PVASpec& pva, std::uint64_t seed, int trials,
                               long wcap);

// [a_L [b_M c]] - [b_M [a_L c]] - [[a_L b]_{L+M} c] == 0 in V[L,M] on all
// generator triples plus `trials` random monomial triples of weight <= wcap.
CheckResult check_jacobi(const PVASpec& pva, std::uint64_t seed, int trials, long wcap);

// Uniform random monomial of weight in [1, wcap] (never the unit).
DiffMonomial random_monomial(const WeightTable& wt, long wcap, std::mt19937_64& rng);

}  // namespace pvalab
