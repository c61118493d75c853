#pragma once

#include <stdexcept>

#include "onlinekc/bitstring.hpp"
#include "onlinekc/dyadic.hpp"
#include "onlinekc/oracle.hpp"
#include "onlinekc/semimeasure.hpp"

namespace onlinekc {

// Online arithmetic code for an even or odd semimeasure P. The code for x is
// a numeral whose value lies in x's interval [Pc(x), Pc(x) + P(x)); a decoder
// that sees a prefix y recovers the next predicted bit by comparing the
// numeral with Pc(y1). All functions take the parity from the table's kind.

struct Codeword {
  BitString bits;       // transmitted bits, including the "01" pad if padded
  bool padded = false;

  // value(bits) = bits / 2^|bits|; the empty codeword has value 0.
  Dyadic value() const;
  // The numeral without the pad.
  BitString numeral() const;

  bool operator==(const Codeword&) const = default;
};

class ZeroMeasureError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Pc(empty) = 0; Pc(yb) = Pc(y) unless b = 1 at a branching position, where
// Pc(y1) = Pc(y) + P(y0).
Rational cumulative(const SemimeasureTable& measure, const BitString& y);

// k_x = ⌈log2 1/P(x)⌉ bits holding ⌈2^k_x · Pc(x)⌉. Throws ZeroMeasureError
// when P(x) = 0.
Codeword encode(const SemimeasureTable& measure, const BitString& x);

// Numeral q = ⌈2^j · Pc(x)⌉ of j bits followed by "01", where j = k_x when
// that padded value lies at least 2^-(j+2) above Pc(x) and strictly more than
// 2^-(j+2) below Pc(x) + P(x), and j = k_x + 1 otherwise (which always does).
Codeword encode_padded(const SemimeasureTable& measure, const BitString& x);

// Next bit after the full prefix y (|y| at a branching position): 0 iff
// value(code) < Pc(y1).
std::uint8_t decode_step(const SemimeasureTable& measure, const Codeword& code, const BitString& y);

// Decoder that only sees the opposite-parity bits: for the even side, `given`
// holds x_1 x_3 ... x_{2j-1} and the result is x_{2j}; for the odd side,
// `given` holds x_2 ... x_{2j-2} and the result is x_{2j-1}. The hidden bits
// are rebuilt by applying the decoder to shorter inputs.
std::uint8_t decode_strict(const SemimeasureTable& measure, const Codeword& code,
                           const BitString& given);

// All predicted bits of an n-bit string: decode_strict for each task j.
BitString decode_all(const SemimeasureTable& measure, const Codeword& code, const BitString& given,
                     std::size_t n);

// Precision-bounded decoder for a padded code: Pc(y1) is summed from oracle
// terms, each requested with (|code| - 2) + 2 + ⌈log2 max(|y|,1)⌉ bits.
std::uint8_t decode_step_precise(const MeasureOracle& oracle, const Codeword& code,
                                 const BitString& y);

// Bits per oracle term used by decode_step_precise.
unsigned precise_term_bits(const Codeword& code, std::size_t prefix_length);

// Interleaves given/predicted bits back into the full prefix.
BitString interleave(MeasureKind kind, const BitString& given, const BitString& predicted);

}  // namespace onlinekc
