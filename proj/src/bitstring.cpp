#include "onlinekc/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace onlinekc {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("BitString: symbol is not a bit");
  }
}

BitString BitString::parse(std::string_view text) {
  if (text == "-") return {};
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      bits.push_back(0);
    } else if (c == '1') {
      bits.push_back(1);
    } else {
      throw std::invalid_argument("not a bit string: '" + std::string(text) + "'");
    }
  }
  return BitString(std::move(bits));
}

BitString BitString::from_index(std::size_t length, std::uint64_t value) {
  std::vector<std::uint8_t> bits(length);
  for (std::size_t i = 0; i < length; ++i) {
    bits[length - 1 - i] = (i < 64) ? static_cast<std::uint8_t>((value >> i) & 1U) : 0;
  }
  BitString out;
  out.bits_ = std::move(bits);
  return out;
}

void BitString::push_back(std::uint8_t bit) {
  if (bit > 1) throw std::invalid_argument("BitString: symbol is not a bit");
  bits_.push_back(bit);
}

BitString BitString::prefix(std::size_t length) const {
  BitString out;
  out.bits_.assign(bits_.begin(), bits_.begin() + std::min(length, bits_.size()));
  return out;
}

BitString BitString::appended(std::uint8_t bit) const {
  BitString out = *this;
  out.push_back(bit);
  return out;
}

BitString BitString::operator+(const BitString& other) const {
  BitString out = *this;
  out.bits_.insert(out.bits_.end(), other.bits_.begin(), other.bits_.end());
  return out;
}

std::uint64_t BitString::to_index() const {
  if (bits_.size() > 64) throw std::out_of_range("BitString::to_index: longer than 64 bits");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::strong_ordering BitString::operator<=>(const BitString& other) const {
  if (auto c = bits_.size() <=> other.bits_.size(); c != 0) return c;
  return bits_ <=> other.bits_;
}

bool lex_less(const BitString& a, const BitString& b) {
  auto x = a.bits();
  auto y = b.bits();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

std::string format_bits(const BitString& x) { return x.empty() ? "-" : x.str(); }

std::vector<BitString> all_strings(std::size_t length) {
  if (length >= 32) throw std::out_of_range("all_strings: length too large");
  std::vector<BitString> out;
  const std::uint64_t count = std::uint64_t{1} << length;
  out.reserve(count);
  for (std::uint64_t v = 0; v < count; ++v) out.push_back(BitString::from_index(length, v));
  return out;
}

BitString odd_positions(const BitString& x) {
  BitString out;
  for (std::size_t i = 0; i < x.size(); i += 2) out.push_back(x[i]);
  return out;
}

BitString even_positions(const BitString& x) {
  BitString out;
  for (std::size_t i = 1; i < x.size(); i += 2) out.push_back(x[i]);
  return out;
}

std::size_t BitStringHash::operator()(const BitString& x) const noexcept {
  // FNV-1a over the bits, then the length.
  std::uint64_t h = 1469598103934665603ULL;
  for (auto b : x.bits()) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  h ^= x.size();
  h *= 1099511628211ULL;
  return static_cast<std::size_t>(h);
}

}  // namespace onlinekc
