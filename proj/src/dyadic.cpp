#include "onlinekc/dyadic.hpp"

#include <stdexcept>

namespace onlinekc {

namespace {

bool is_power_of_two(const Integer& v) {
  return v > 0 && (v & (v - 1)) == 0;
}

unsigned log2_exact(const Integer& v) { return static_cast<unsigned>(boost::multiprecision::msb(v)); }

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (q * b != a && ((a > 0) == (b > 0))) ++q;
  return q;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (q * b != a && ((a > 0) != (b > 0))) --q;
  return q;
}

}  // namespace

Dyadic::Dyadic(Integer numerator, unsigned exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  if (numerator_ < 0) throw std::domain_error("Dyadic: negative numerator");
  canonicalize();
}

void Dyadic::canonicalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  const unsigned tz = static_cast<unsigned>(boost::multiprecision::lsb(numerator_));
  const unsigned shift = tz < exponent_ ? tz : exponent_;
  numerator_ >>= shift;
  exponent_ -= shift;
}

Dyadic Dyadic::inverse_power_of_two(unsigned e) { return Dyadic(1, e); }

std::optional<Dyadic> Dyadic::from_rational(const Rational& r) {
  if (r < 0) return std::nullopt;
  const Integer den = boost::multiprecision::denominator(r);
  if (!is_power_of_two(den)) return std::nullopt;
  return Dyadic(boost::multiprecision::numerator(r), log2_exact(den));
}

Rational Dyadic::to_rational() const {
  Integer den = 1;
  den <<= exponent_;
  return Rational(numerator_, den);
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  const unsigned e = std::max(exponent_, o.exponent_);
  return Dyadic((numerator_ << (e - exponent_)) + (o.numerator_ << (e - o.exponent_)), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  const unsigned e = std::max(exponent_, o.exponent_);
  Integer n = (numerator_ << (e - exponent_)) - (o.numerator_ << (e - o.exponent_));
  if (n < 0) throw std::domain_error("Dyadic: negative difference");
  return Dyadic(std::move(n), e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
  return Dyadic(numerator_ * o.numerator_, exponent_ + o.exponent_);
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
  const unsigned e = std::max(exponent_, o.exponent_);
  const Integer a = numerator_ << (e - exponent_);
  const Integer b = o.numerator_ << (e - o.exponent_);
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<long> Dyadic::exact_neg_log2() const {
  if (!is_power_of_two(numerator_)) return std::nullopt;
  return static_cast<long>(exponent_) - static_cast<long>(log2_exact(numerator_));
}

unsigned Dyadic::ceil_neg_log2() const { return onlinekc::ceil_neg_log2(to_rational()); }

Dyadic Dyadic::floor_to(unsigned e) const {
  if (exponent_ <= e) return *this;
  return Dyadic(numerator_ >> (exponent_ - e), e);
}

std::string Dyadic::str() const {
  return numerator_.str() + "/2^" + std::to_string(exponent_);
}

unsigned ceil_neg_log2(const Rational& r) {
  if (r <= 0) throw std::domain_error("ceil_neg_log2: value must be positive");
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (num >= den) return 0;
  // Start from the bit-length estimate and correct by at most one step.
  unsigned k = log2_exact(den) - log2_exact(num);
  if (k > 0 && (num << (k - 1)) >= den) --k;
  while ((num << k) < den) ++k;
  return k;
}

std::optional<long> exact_neg_log2(const Rational& r) {
  if (r <= 0) return std::nullopt;
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (!is_power_of_two(num) || !is_power_of_two(den)) return std::nullopt;
  return static_cast<long>(log2_exact(den)) - static_cast<long>(log2_exact(num));
}

bool is_dyadic(const Rational& r) { return is_power_of_two(boost::multiprecision::denominator(r)); }

Integer ceil_scaled(const Rational& r, unsigned k) {
  return ceil_div(boost::multiprecision::numerator(r) << k, boost::multiprecision::denominator(r));
}

Integer floor_scaled(const Rational& r, unsigned k) {
  return floor_div(boost::multiprecision::numerator(r) << k, boost::multiprecision::denominator(r));
}

Rational pow2(long e) {
  Integer one = 1;
  if (e >= 0) return Rational(one << static_cast<unsigned>(e));
  return Rational(Integer(1), one << static_cast<unsigned>(-e));
}

std::string to_string(const Rational& r) {
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

}  // namespace onlinekc
