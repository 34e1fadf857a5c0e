#pragma once

#include "dichot/rational.hpp"

#include <string>

namespace dichot {

/// Closed rational interval [lo, hi] with lo <= hi.
class RatInterval {
 public:
  RatInterval() = default;
  explicit RatInterval(const Rational& point) : lo_(point), hi_(point) {}
  /// Throws std::invalid_argument when lo > hi.
  RatInterval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }

  bool contains(const Rational& q) const { return lo_ <= q && q <= hi_; }
  bool contains(const RatInterval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool intersects(const RatInterval& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }
  bool is_point() const { return lo_ == hi_; }
  /// width <= 2^-p
  bool within(int p) const;

  std::string str() const;

  friend bool operator==(const RatInterval& a, const RatInterval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

 private:
  Rational lo_{0};
  Rational hi_{0};
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const Rational& k, const RatInterval& a);
RatInterval abs(const RatInterval& a);
RatInterval min(const RatInterval& a, const RatInterval& b);
RatInterval max(const RatInterval& a, const RatInterval& b);
RatInterval hull(const RatInterval& a, const RatInterval& b);
/// [lo - r, hi + r]
RatInterval widen(const RatInterval& a, const Rational& r);
/// Smallest interval with dyadic endpoints of denominator 2^bits containing `a`.
RatInterval round_outward(const RatInterval& a, int bits);

}  // namespace dichot
