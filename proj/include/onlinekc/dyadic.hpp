#pragma once

#include <compare>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace onlinekc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact non-negative rational numerator / 2^exponent, kept canonical:
// numerator odd, or zero with exponent 0.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(Integer numerator, unsigned exponent);

  // 2^-e
  static Dyadic inverse_power_of_two(unsigned e);
  // nullopt unless r >= 0 and its denominator is a power of two.
  static std::optional<Dyadic> from_rational(const Rational& r);

  const Integer& numerator() const { return numerator_; }
  unsigned exponent() const { return exponent_; }
  bool is_zero() const { return numerator_ == 0; }

  Rational to_rational() const;

  Dyadic operator+(const Dyadic& o) const;
  // Throws std::domain_error when the result would be negative.
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;

  bool operator==(const Dyadic&) const = default;
  std::strong_ordering operator<=>(const Dyadic& o) const;

  // -log2 of the value when it is a power of two.
  std::optional<long> exact_neg_log2() const;
  // Smallest k >= 0 with value >= 2^-k. Requires a nonzero value.
  unsigned ceil_neg_log2() const;

  // Largest multiple of 2^-e not above the value.
  Dyadic floor_to(unsigned e) const;

  std::string str() const;  // "num/2^exp"

 private:
  void canonicalize();

  Integer numerator_ = 0;
  unsigned exponent_ = 0;
};

// Smallest k >= 0 with r >= 2^-k. Requires r > 0.
unsigned ceil_neg_log2(const Rational& r);
// -log2 r when r is a power of two (possibly > 1: negative result).
std::optional<long> exact_neg_log2(const Rational& r);

bool is_dyadic(const Rational& r);

// ⌈2^k · r⌉ and ⌊2^k · r⌋.
Integer ceil_scaled(const Rational& r, unsigned k);
Integer floor_scaled(const Rational& r, unsigned k);

Rational pow2(long e);

std::string to_string(const Rational& r);

}  // namespace onlinekc
