#include "onlinekc/codec.hpp"

namespace onlinekc {

namespace {

void require_online(const SemimeasureTable& measure) {
  if (measure.kind() == MeasureKind::plain) {
    throw std::invalid_argument("online codec needs an even or odd semimeasure");
  }
}

BitString numeral(const Integer& q, unsigned width) {
  BitString out;
  for (unsigned i = width; i-- > 0;) out.push_back(boost::multiprecision::bit_test(q, i) ? 1 : 0);
  return out;
}

Integer numeral_value(const BitString& bits) {
  Integer v = 0;
  for (auto b : bits.bits()) {
    v <<= 1;
    v += b;
  }
  return v;
}

unsigned ceil_log2(std::size_t v) {
  unsigned k = 0;
  while ((std::size_t{1} << k) < v) ++k;
  return k;
}

std::size_t predicted_count(MeasureKind kind, std::size_t n) {
  return kind == MeasureKind::even ? n / 2 : (n + 1) / 2;
}

}  // namespace

Dyadic Codeword::value() const {
  return Dyadic(numeral_value(bits), static_cast<unsigned>(bits.size()));
}

BitString Codeword::numeral() const {
  return padded ? bits.prefix(bits.size() - 2) : bits;
}

Rational cumulative(const SemimeasureTable& measure, const BitString& y) {
  require_online(measure);
  Rational acc = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 1 && branches_at(measure.kind(), i)) acc += measure[y.prefix(i).appended(0)];
  }
  return acc;
}

Codeword encode(const SemimeasureTable& measure, const BitString& x) {
  require_online(measure);
  const Rational& p = measure[x];
  if (p <= 0) throw ZeroMeasureError("cannot encode '" + format_bits(x) + "': measure is zero");
  const unsigned k = ceil_neg_log2(p);
  const Integer q = ceil_scaled(cumulative(measure, x), k);
  if (q >= (Integer(1) << k)) {
    throw std::logic_error("encode: interval leaves [0, 1); table is not a semimeasure");
  }
  return {numeral(q, k), false};
}

Codeword encode_padded(const SemimeasureTable& measure, const BitString& x) {
  require_online(measure);
  const Rational& p = measure[x];
  if (p <= 0) throw ZeroMeasureError("cannot encode '" + format_bits(x) + "': measure is zero");
  const unsigned k = ceil_neg_log2(p);
  const Rational low = cumulative(measure, x);
  for (unsigned j = k; j <= k + 1; ++j) {
    const Integer q = ceil_scaled(low, j);
    // Padded value q/2^j + 2^-(j+2) must sit more than 2^-(j+2) below the top.
    if (Rational(q) / pow2(j) + pow2(-static_cast<long>(j) - 1) < low + p) {
      BitString bits = numeral(q, j);
      bits.push_back(0);
      bits.push_back(1);
      return {bits, true};
    }
  }
  throw std::logic_error("encode_padded: no cell fits; table is not a semimeasure");
}

std::uint8_t decode_step(const SemimeasureTable& measure, const Codeword& code, const BitString& y) {
  require_online(measure);
  if (!branches_at(measure.kind(), y.size())) {
    throw std::invalid_argument("decode_step: prefix length is not a predicted position");
  }
  const Rational split = cumulative(measure, y) + measure[y.appended(0)];
  return code.value().to_rational() < split ? 0 : 1;
}

BitString interleave(MeasureKind kind, const BitString& given, const BitString& predicted) {
  BitString x;
  std::size_t gi = 0, pi = 0;
  bool take_given = kind == MeasureKind::even;
  while (true) {
    if (take_given) {
      if (gi == given.size()) break;
      x.push_back(given[gi++]);
    } else {
      if (pi == predicted.size()) break;
      x.push_back(predicted[pi++]);
    }
    take_given = !take_given;
  }
  return x;
}

std::uint8_t decode_strict(const SemimeasureTable& measure, const Codeword& code,
                           const BitString& given) {
  require_online(measure);
  const bool even = measure.kind() == MeasureKind::even;
  // Task j sees j given bits (even side) or j-1 (odd side).
  const std::size_t tasks = even ? given.size() : given.size() + 1;
  if (tasks == 0) throw std::invalid_argument("decode_strict: even side needs at least one bit");
  BitString predicted;
  for (std::size_t t = 1; t <= tasks; ++t) {
    const BitString seen = given.prefix(even ? t : t - 1);
    const std::uint8_t bit = decode_step(measure, code, interleave(measure.kind(), seen, predicted));
    if (t == tasks) return bit;
    predicted.push_back(bit);
  }
  return 0;  // unreachable
}

BitString decode_all(const SemimeasureTable& measure, const Codeword& code, const BitString& given,
                     std::size_t n) {
  require_online(measure);
  const bool even = measure.kind() == MeasureKind::even;
  const std::size_t count = predicted_count(measure.kind(), n);
  const std::size_t needed = even ? count : (count == 0 ? 0 : count - 1);
  if (given.size() < needed) throw std::invalid_argument("decode_all: not enough given bits");
  BitString out;
  for (std::size_t t = 1; t <= count; ++t) {
    out.push_back(decode_strict(measure, code, given.prefix(even ? t : t - 1)));
  }
  return out;
}

unsigned precise_term_bits(const Codeword& code, std::size_t prefix_length) {
  return static_cast<unsigned>(code.bits.size()) + ceil_log2(std::max<std::size_t>(prefix_length, 1));
}

std::uint8_t decode_step_precise(const MeasureOracle& oracle, const Codeword& code,
                                 const BitString& y) {
  if (!code.padded || code.bits.size() < 2) {
    throw std::invalid_argument("decode_step_precise: needs a padded codeword");
  }
  if (oracle.kind == MeasureKind::plain || !branches_at(oracle.kind, y.size())) {
    throw std::invalid_argument("decode_step_precise: prefix length is not a predicted position");
  }
  const unsigned bits = precise_term_bits(code, y.size());
  Integer top = 1;
  top <<= bits;
  Integer sum = 0;
  auto add_term = [&](const BitString& z) {
    const Integer n = eval_with_precision(oracle, z, bits);
    if (n < -1 || n > top + 1) {
      throw OraclePrecisionError("oracle answer for '" + format_bits(z) + "' is out of range");
    }
    sum += n;
  };
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 1 && branches_at(oracle.kind, i)) add_term(y.prefix(i).appended(0));
  }
  add_term(y.appended(0));
  return code.value().to_rational() < Rational(sum) / pow2(bits) ? 0 : 1;
}

}  // namespace onlinekc
