#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pvalab {

// Exact rational scalar used everywhere; no floating point anywhere in the
// math kernel.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// binomial(n, k) as an exact rational (0 for k < 0 or k > n)
Rational binom(long n, long k);

// n! as an exact rational
Rational factorial(long n);

// Plain decimal string, "p/q" when q != 1.
std::string rat_str(const Rational& r);

struct MathError : std::runtime_error {
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct CapError : std::runtime_error {
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pvalab
