#include "dichot/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace dichot {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow2(int e) {
  mpz_class one = 1;
  mpz_class big;
  unsigned long shift = static_cast<unsigned long>(e < 0 ? -static_cast<long>(e) : e);
  mpz_mul_2exp(big.get_mpz_t(), one.get_mpz_t(), shift);
  if (e >= 0) return Rational(big);
  Rational q(mpz_class(1), big);
  q.canonicalize();
  return q;
}

int precision_for(const Rational& tol) {
  if (tol <= 0) throw std::invalid_argument("precision_for: tolerance must be positive");
  // Estimate from bit lengths, then correct by at most a couple of steps.
  long guess = static_cast<long>(mpz_sizeinbase(tol.get_den_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(tol.get_num_mpz_t(), 2));
  int p = guess < 0 ? 0 : static_cast<int>(guess);
  while (p > 0 && pow2(-(p - 1)) <= tol) --p;
  while (pow2(-p) > tol) ++p;
  return p;
}

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) { ++i; ++digits; }
  if (digits == 0) throw bad();
  if (i < text.size()) {
    if (text[i] != '/') throw bad();
    ++i;
    std::size_t den_digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) { ++i; ++den_digits; }
    if (den_digits == 0 || i != text.size()) throw bad();
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::size_t denominator_bits(const Rational& q) { return mpz_sizeinbase(q.get_den_mpz_t(), 2); }

Rational floor_dyadic(const Rational& q, int bits) {
  Rational scaled = q * pow2(bits);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Rational(f) * pow2(-bits);
}

Rational ceil_dyadic(const Rational& q, int bits) {
  Rational scaled = q * pow2(bits);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Rational(c) * pow2(-bits);
}

long floor_long(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!r.fits_slong_p()) throw std::overflow_error("floor_long: out of range");
  return r.get_si();
}

}  // namespace dichot
