#pragma once

#include <functional>
#include <stdexcept>

#include "onlinekc/bitstring.hpp"
#include "onlinekc/dyadic.hpp"
#include "onlinekc/semimeasure.hpp"

namespace onlinekc {

// Finite-precision access to a real-valued function F on strings: for
// precision k, evaluate(x, k) returns an integer N with |F(x) - N·2^-k| <= 2^-k.
struct MeasureOracle {
  std::function<Integer(const BitString& x, unsigned precision)> evaluate;
  MeasureKind kind = MeasureKind::even;
  // False if `evaluate` must not be called from several threads at once.
  bool concurrent = true;
};

class OraclePrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Integer eval_with_precision(const MeasureOracle& oracle, const BitString& x, unsigned precision);

// Evaluates at `precision` and `precision + 1` and throws OraclePrecisionError
// when the answers cannot both honour the contract, or when the value falls
// outside [0, 1] by more than the allowed error.
Integer probed_eval(const MeasureOracle& oracle, const BitString& x, unsigned precision);

// Round-to-nearest view of an exact table.
MeasureOracle table_oracle(const SemimeasureTable& table);

// Branching bits are 1 with probability 2/3 and 0 with probability 1/3; the
// other bits are free. Evaluated exactly from the closed form 2^ones / 3^branches.
MeasureOracle trinomial_oracle(MeasureKind kind);

// Exact value of the trinomial measure (test and loss-bound reference).
Rational trinomial_value(MeasureKind kind, const BitString& x);

// Deliberately breaks the contract: answers a request for k bits with the
// inner oracle's (k - deficit)-bit answer rounded up by one unit, rescaled.
MeasureOracle starved_oracle(MeasureOracle inner, unsigned deficit);

struct RationalizeOptions {
  // Bits requested from the oracle; 0 selects 2·depth + 8.
  unsigned precision = 0;
};

// Turns an oracle for a real even (or odd) semimeasure into an exact dyadic
// one of the same kind, losing at most a constant factor:
//   1. mix with the floor f(x) = 2^-(branches in x) / 2: P1 = f + P/2;
//   2. root: P'(empty) = P1(empty) rounded down to a multiple of 1/4;
//   3. at the m-th branching level, the conditional ratio P1(x)/P1(ancestor)
//      is rounded down to a multiple of 2^-(2m+2) (siblings trimmed so the
//      pair never sums above 1) and multiplied onto P'(ancestor);
//   4. non-branching levels copy their parent.
// Then P'(x) >= (1/2)·Π_{i>=1}(1 - 2^-i)·P(x) up to oracle error.
SemimeasureTable rationalize(const MeasureOracle& oracle, std::size_t depth,
                             const RationalizeOptions& options = {});

}  // namespace onlinekc
