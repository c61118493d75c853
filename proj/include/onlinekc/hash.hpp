#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace onlinekc {

// 64-bit FNV-1a. Stable across platforms, so it can name files on disk.
class Fnv1a {
 public:
  Fnv1a& add(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 1099511628211ULL;
    }
    return *this;
  }
  Fnv1a& add(std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (value >> (8 * i)) & 0xFF;
      state_ *= 1099511628211ULL;
    }
    return *this;
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 1469598103934665603ULL;
};

std::string to_hex(std::uint64_t value);

}  // namespace onlinekc
