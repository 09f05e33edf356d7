#include "pvalab/rational.hpp"

namespace pvalab {

Rational binom(long n, long k) {
  if (k < 0 || k > n || n < 0) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(b);
}

Rational factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

std::string rat_str(const Rational& r) { return r.get_str(); }

}  // namespace pvalab
