#pragma once

// Test-only oracles and generators. Nothing here calls into the simulator or
// the enumerator, so it can check them.

#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "onlinekc/bitstring.hpp"
#include "onlinekc/dyadic.hpp"
#include "onlinekc/semimeasure.hpp"

namespace onlinekc::testing {

// Direct model of machines/reference.tm. nullopt when the run does not halt
// within `space` (only the table mode uses space: one cell per input bit).
inline std::optional<BitString> reference_model(const BitString& p, const BitString& input,
                                                std::uint64_t space) {
  if (p.empty()) return BitString{};
  BitString rest;
  for (std::size_t i = 1; i < p.size(); ++i) rest.push_back(p[i]);
  if (p[0] == 1) return rest;
  if (rest.empty()) return input;
  if (input.size() > space) return std::nullopt;
  if (input.size() < rest.size()) return BitString({rest[input.size()]});
  return BitString{};
}

// Brute-force complexity under the model: minimal length, shortlex witness.
struct ModelAnswer {
  std::optional<std::size_t> value;
  BitString witness;
};

template <typename Tasks>
ModelAnswer model_complexity(const Tasks& tasks, std::uint64_t s, std::size_t cap) {
  for (std::size_t len = 0; len <= cap; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const BitString p = BitString::from_index(len, v);
      bool ok = true;
      for (const auto& [target, input] : tasks) {
        auto out = reference_model(p, input, s);
        if (!out || *out != target) {
          ok = false;
          break;
        }
      }
      if (ok) return {len, p};
    }
  }
  return {};
}

inline const char* kHaltNow = "initial h\nhalt h\n";

inline const char* kPushForever =
    "initial a\nhalt h\n"
    "a _ _ _ _ -> a stay stay push0 none none\n";

inline const char* kSpinInPlace =
    "initial a\nhalt h\n"
    "a _ _ _ _ -> b stay stay none none none\n"
    "b _ _ _ _ -> a stay stay none none none\n";

// Reads the program onto stack 1, then: empty -> halt; top 1 -> print 1 and
// halt; top 0 -> shuttle the stack contents between the stacks forever.
inline const char* kShuttle =
    "initial read\nhalt h\n"
    "read 0 _ _ * -> read adv stay push0 none none\n"
    "read 1 _ _ * -> read adv stay push1 none none\n"
    "read $ _ * * -> h stay stay none none none\n"
    "read $ _ 1 * -> h stay stay none none 1\n"
    "read $ _ 0 * -> east stay stay none none none\n"
    "east $ _ 0 _ -> east stay stay pop push0 none\n"
    "east $ _ 1 _ -> east stay stay pop push1 none\n"
    "east $ _ * _ -> west stay stay none none none\n"
    "west $ _ _ 0 -> west stay stay push0 pop none\n"
    "west $ _ _ 1 -> west stay stay push1 pop none\n"
    "west $ _ _ * -> east stay stay none none none\n";

// Random machine text: `states` working states plus a halt state; each
// observation tuple gets a transition with probability `density`.
inline std::string random_machine_text(std::mt19937_64& rng, int states, double density) {
  std::ostringstream out;
  out << "initial q0\nhalt h\n";
  const char* tape_obs[] = {"0", "1", "$"};
  const char* stack_obs[] = {"0", "1", "*"};
  const char* moves[] = {"stay", "adv"};
  const char* acts[] = {"none", "push0", "push1", "pop"};
  const char* emits[] = {"none", "0", "1"};
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> pick_state(0, states);  // == states means halt
  for (int q = 0; q < states; ++q) {
    // Every state has at least one transition so it is never "unknown".
    bool any = false;
    for (int p = 0; p < 3; ++p)
      for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            const bool last = p == 2 && i == 2 && a == 2 && b == 2;
            if (coin(rng) > density && !(last && !any)) continue;
            any = true;
            const int next = pick_state(rng);
            std::string a1 = acts[rng() % 4], a2 = acts[rng() % 4];
            if (a == 2 && a1 == "pop") a1 = "none";
            if (b == 2 && a2 == "pop") a2 = "none";
            out << 'q' << q << ' ' << tape_obs[p] << ' ' << tape_obs[i] << ' ' << stack_obs[a] << ' '
                << stack_obs[b] << " -> " << (next == states ? std::string("h") : "q" + std::to_string(next))
                << ' ' << moves[rng() % 2] << ' ' << moves[rng() % 2] << ' ' << a1 << ' ' << a2 << ' '
                << emits[rng() % 3] << '\n';
          }
  }
  return out.str();
}

inline BitString random_bits(std::mt19937_64& rng, std::size_t length) {
  BitString x;
  for (std::size_t i = 0; i < length; ++i) x.push_back(static_cast<std::uint8_t>(rng() & 1));
  return x;
}

// Random exact semimeasure of the given kind: at branching nodes the two
// children get random shares (numerators out of 8) summing to at most the
// parent; with probability ~1/8 a share is zero.
inline SemimeasureTable random_semimeasure(std::mt19937_64& rng, MeasureKind kind, std::size_t depth) {
  SemimeasureTable t(kind, depth);
  t.set({}, Rational(static_cast<long>(rng() % 8 + 1), 8));
  for (std::size_t len = 0; len < depth; ++len) {
    for (const auto& y : all_strings(len)) {
      const Rational& p = t[y];
      if (!branches_at(kind, len)) {
        t.set(y.appended(0), p);
        t.set(y.appended(1), p);
        continue;
      }
      const long a = static_cast<long>(rng() % 9);
      const long b = static_cast<long>(rng() % (9 - a));
      t.set(y.appended(0), p * Rational(a, 8));
      t.set(y.appended(1), p * Rational(b, 8));
    }
  }
  return t;
}

}  // namespace onlinekc::testing
