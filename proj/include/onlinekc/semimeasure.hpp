#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "onlinekc/bitstring.hpp"
#include "onlinekc/dyadic.hpp"
#include "onlinekc/enumerator.hpp"

namespace onlinekc {

enum class MeasureKind { plain, even, odd };

const char* to_string(MeasureKind kind);
MeasureKind parse_measure_kind(const std::string& text);

// True when the bit appended to a prefix of length `prefix_length` is one the
// measure predicts (branches on). Even measures branch on 1-indexed even
// positions, odd measures on odd positions, plain measures everywhere.
bool branches_at(MeasureKind kind, std::size_t prefix_length);

// Exact values of a semimeasure on every string of length <= depth.
class SemimeasureTable {
 public:
  SemimeasureTable() = default;
  SemimeasureTable(MeasureKind kind, std::size_t depth);

  MeasureKind kind() const { return kind_; }
  std::size_t depth() const { return depth_; }

  const Rational& operator[](const BitString& x) const { return values_.at(index_of(x)); }
  void set(const BitString& x, Rational value) { values_.at(index_of(x)) = std::move(value); }

  bool is_dyadic() const;

  // Free-form provenance written into the export header ("s", "k", ...).
  std::map<std::string, std::string>& params() { return params_; }
  const std::map<std::string, std::string>& params() const { return params_; }

  // Position of x in shortlex order: 2^|x| - 1 + value(x).
  static std::size_t index_of(const BitString& x);

  bool operator==(const SemimeasureTable& o) const {
    return kind_ == o.kind_ && depth_ == o.depth_ && values_ == o.values_;
  }

 private:
  MeasureKind kind_ = MeasureKind::plain;
  std::size_t depth_ = 0;
  std::vector<Rational> values_;
  std::map<std::string, std::string> params_;
};

struct Violation {
  BitString x;
  std::string relation;
};

// Every instance of a failed axiom for the table's kind, plus negativity and
// P(empty) > 1. Empty iff the table is a valid semimeasure of its kind.
std::vector<Violation> validate(const SemimeasureTable& table);

// Q(y) = |{z : |yz| = n, C^s(yz) < k}| / 2^k for every |y| <= n.
SemimeasureTable build_q(const MachineSpec& m, const QParams& params,
                         const EnumerationOptions& options = {});

// Same table from precomputed answers for all 2^n strings of length n in
// lexicographic order. Each answer must have been searched with cap >= k-1
// or carry a value; throws std::invalid_argument otherwise.
SemimeasureTable build_q_from_complexities(std::span<const ComplexityAnswer> full_length,
                                           const QParams& params);

struct Factorization {
  SemimeasureTable odd;
  SemimeasureTable even;
};

// Splits a plain semimeasure Q into an odd factor (the ratios Q(y)/Q(parent)
// at odd positions, starting from Q(empty)) and an even factor (ratios at even
// positions). 0/0 is taken as 0, so every extension of a Q-null prefix is null
// in both factors. Podd(x)·Pev(x) = Q(x) for every x.
Factorization factorize(const SemimeasureTable& q);

// P(x) = 2^-(number of branching positions in x).
SemimeasureTable uniform_measure(MeasureKind kind, std::size_t depth);

// Plain-text export:
//
//   # onlinekc semimeasure table
//   kind <plain|even|odd>
//   depth <n>
//   format <dyadic|rational>
//   param <name> <value>          (zero or more)
//   <x> <numerator> <exponent>    dyadic: value = numerator / 2^exponent
//   <x> <numerator> <denominator> rational
//
// Records are in shortlex order; the empty string is written "-".
void write_table(std::ostream& out, const SemimeasureTable& table);
SemimeasureTable read_table(std::istream& in);

}  // namespace onlinekc
