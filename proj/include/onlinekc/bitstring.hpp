#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace onlinekc {

// Finite binary string. Holds programs, tape contents and targets alike.
// The default ordering is shortlex (length first, then lexicographic).
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits);

  // Accepts "0110", the empty string, or "-" for the empty string.
  // Throws std::invalid_argument on any other character.
  static BitString parse(std::string_view text);

  // The `length`-bit big-endian numeral for `value` (leading zeros kept).
  static BitString from_index(std::size_t length, std::uint64_t value);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  void push_back(std::uint8_t bit);
  BitString prefix(std::size_t length) const;
  BitString appended(std::uint8_t bit) const;
  BitString operator+(const BitString& other) const;

  // Big-endian numeric value; requires size() <= 64.
  std::uint64_t to_index() const;

  // "0110"; the empty string renders as "".
  std::string str() const;

  bool operator==(const BitString&) const = default;
  std::strong_ordering operator<=>(const BitString& other) const;

 private:
  std::vector<std::uint8_t> bits_;
};

bool lex_less(const BitString& a, const BitString& b);

// Text rendering used by every table/CSV format: "-" for the empty string.
std::string format_bits(const BitString& x);

// All strings of exactly `length` bits, in lexicographic order.
std::vector<BitString> all_strings(std::size_t length);

// Bits at 1-indexed odd positions (x_1 x_3 ...) and even positions.
BitString odd_positions(const BitString& x);
BitString even_positions(const BitString& x);

struct BitStringHash {
  std::size_t operator()(const BitString& x) const noexcept;
};

}  // namespace onlinekc
