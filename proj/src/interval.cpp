#include "dichot/interval.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace dichot {

RatInterval::RatInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("RatInterval: lo > hi");
}

bool RatInterval::within(int p) const { return width() <= pow2(-p); }

std::string RatInterval::str() const { return "[" + to_string(lo_) + ", " + to_string(hi_) + "]"; }

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return RatInterval(Rational(a.lo() + b.lo()), Rational(a.hi() + b.hi()));
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return RatInterval(Rational(a.lo() - b.hi()), Rational(a.hi() - b.lo()));
}

RatInterval operator-(const RatInterval& a) { return RatInterval(Rational(-a.hi()), Rational(-a.lo())); }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  std::array<Rational, 4> c{a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
  auto [mn, mx] = std::minmax_element(c.begin(), c.end());
  return RatInterval(*mn, *mx);
}

RatInterval operator*(const Rational& k, const RatInterval& a) {
  if (k >= 0) return RatInterval(Rational(k * a.lo()), Rational(k * a.hi()));
  return RatInterval(Rational(k * a.hi()), Rational(k * a.lo()));
}

RatInterval abs(const RatInterval& a) {
  if (a.lo() >= 0) return a;
  if (a.hi() <= 0) return -a;
  return RatInterval(Rational(0), max(Rational(-a.lo()), a.hi()));
}

RatInterval min(const RatInterval& a, const RatInterval& b) {
  return RatInterval(min(a.lo(), b.lo()), min(a.hi(), b.hi()));
}

RatInterval max(const RatInterval& a, const RatInterval& b) {
  return RatInterval(max(a.lo(), b.lo()), max(a.hi(), b.hi()));
}

RatInterval hull(const RatInterval& a, const RatInterval& b) {
  return RatInterval(min(a.lo(), b.lo()), max(a.hi(), b.hi()));
}

RatInterval widen(const RatInterval& a, const Rational& r) {
  return RatInterval(Rational(a.lo() - r), Rational(a.hi() + r));
}

RatInterval round_outward(const RatInterval& a, int bits) {
  return RatInterval(floor_dyadic(a.lo(), bits), ceil_dyadic(a.hi(), bits));
}

}  // namespace dichot
