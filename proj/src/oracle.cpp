#include "onlinekc/oracle.hpp"

#include <array>

namespace onlinekc {

Integer eval_with_precision(const MeasureOracle& oracle, const BitString& x, unsigned precision) {
  return oracle.evaluate(x, precision);
}

Integer probed_eval(const MeasureOracle& oracle, const BitString& x, unsigned precision) {
  const Integer coarse = oracle.evaluate(x, precision);
  const Integer fine = oracle.evaluate(x, precision + 1);
  // Both within 2^-k and 2^-(k+1) of F, so they differ by at most 3·2^-(k+1).
  Integer gap = 2 * coarse - fine;
  if (gap < 0) gap = -gap;
  Integer top = 1;
  top <<= precision;
  if (gap > 3 || coarse < -1 || coarse > top + 1) {
    throw OraclePrecisionError("oracle answer for '" + format_bits(x) + "' at precision " +
                               std::to_string(precision) + " violates its error bound");
  }
  return coarse;
}

MeasureOracle table_oracle(const SemimeasureTable& table) {
  MeasureOracle o;
  o.kind = table.kind();
  o.evaluate = [table](const BitString& x, unsigned k) {
    return floor_scaled(table[x] + pow2(-static_cast<long>(k) - 1), k);
  };
  return o;
}

Rational trinomial_value(MeasureKind kind, const BitString& x) {
  Integer num = 1, den = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!branches_at(kind, i)) continue;
    den *= 3;
    if (x[i] == 1) num *= 2;
  }
  return Rational(num, den);
}

MeasureOracle trinomial_oracle(MeasureKind kind) {
  MeasureOracle o;
  o.kind = kind;
  o.evaluate = [kind](const BitString& x, unsigned k) {
    return floor_scaled(trinomial_value(kind, x) + pow2(-static_cast<long>(k) - 1), k);
  };
  return o;
}

MeasureOracle starved_oracle(MeasureOracle inner, unsigned deficit) {
  MeasureOracle o;
  o.kind = inner.kind;
  o.concurrent = inner.concurrent;
  o.evaluate = [inner = std::move(inner), deficit](const BitString& x, unsigned k) {
    const unsigned coarse = k > deficit ? k - deficit : 0;
    Integer n = inner.evaluate(x, coarse) + 1;
    return Integer(n << (k - coarse));
  };
  return o;
}

namespace {

Rational clamp_unit(const Rational& r) {
  if (r < 0) return Rational(0);
  if (r > 1) return Rational(1);
  return r;
}

}  // namespace

SemimeasureTable rationalize(const MeasureOracle& oracle, std::size_t depth,
                             const RationalizeOptions& options) {
  if (oracle.kind == MeasureKind::plain) {
    throw std::invalid_argument("rationalize: oracle must describe an even or odd semimeasure");
  }
  const MeasureKind kind = oracle.kind;
  const unsigned precision =
      options.precision != 0 ? options.precision : static_cast<unsigned>(2 * depth + 8);

  // Mixed values P1 = floor + A/2, one per string, in shortlex order.
  SemimeasureTable mixed(kind, depth);
  const SemimeasureTable floor_part = uniform_measure(kind, depth);
  for (std::size_t len = 0; len <= depth; ++len) {
    for (const auto& x : all_strings(len)) {
      const Rational approx = clamp_unit(Rational(probed_eval(oracle, x, precision)) /
                                         pow2(static_cast<long>(precision)));
      mixed.set(x, floor_part[x] / 2 + approx / 2);
    }
  }

  SemimeasureTable out(kind, depth);
  out.params()["source"] = "rationalized";
  out.set({}, Dyadic(floor_scaled(mixed[{}], 2), 2).to_rational());
  std::size_t level = 0;  // branching levels seen so far
  for (std::size_t len = 0; len < depth; ++len) {
    const bool branching = branches_at(kind, len);
    if (branching) ++level;
    const unsigned grid = static_cast<unsigned>(2 * level + 2);
    for (const auto& y : all_strings(len)) {
      const Rational& parent_value = out[y];
      if (!branching) {
        out.set(y.appended(0), parent_value);
        out.set(y.appended(1), parent_value);
        continue;
      }
      std::array<Dyadic, 2> ratio;
      for (std::uint8_t b = 0; b < 2; ++b) {
        const Rational r = clamp_unit(mixed[y.appended(b)] / mixed[y]);
        ratio[b] = Dyadic(floor_scaled(r, grid), grid);
      }
      const Dyadic one(1, 0);
      if (ratio[0] + ratio[1] > one) {
        const Dyadic excess = ratio[0] + ratio[1] - one;
        auto& larger = ratio[0] < ratio[1] ? ratio[1] : ratio[0];
        larger = larger - excess;
      }
      for (std::uint8_t b = 0; b < 2; ++b) {
        out.set(y.appended(b), parent_value * ratio[b].to_rational());
      }
    }
  }
  return out;
}

}  // namespace onlinekc
