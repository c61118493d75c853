#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "onlinekc/bitstring.hpp"
#include "onlinekc/machine.hpp"

namespace onlinekc {

class ComplexityCache;

// One task "print `target` on input `input`".
struct Task {
  BitString target;
  BitString input;
  bool operator==(const Task&) const = default;
};

using TaskList = std::vector<Task>;

// Result of a budgeted search: either the minimal program length with its
// shortlex-least witness, or "no program of length <= cap qualifies".
struct ComplexityAnswer {
  std::optional<std::size_t> value;
  BitString witness;
  std::size_t cap = 0;

  bool exceeds_cap() const { return !value.has_value(); }
  bool operator==(const ComplexityAnswer&) const = default;
};

// Parameters of the counting semimeasure Q.
struct QParams {
  std::uint64_t s = 0;  // space bound
  std::size_t k = 1;    // complexity threshold
  std::size_t n = 0;    // string length
};

// Per-run tallies gathered during enumeration.
struct EnumerationStats {
  std::uint64_t runs = 0;
  std::uint64_t halted = 0;
  std::uint64_t space_exceeded = 0;
  std::uint64_t diverged = 0;
  std::uint64_t bound_violations = 0;  // steps > configuration_bound
  std::uint64_t max_steps = 0;

  void record(const RunResult& r, std::uint64_t bound);
  void merge(const EnumerationStats& other);
};

struct EnumerationOptions {
  bool parallel = true;
  ComplexityCache* cache = nullptr;
  EnumerationStats* stats = nullptr;
};

// Largest supported program-length budget.
inline constexpr std::size_t kMaxCap = 40;

// Shortest program (shortlex-least among the shortest) that, for every task,
// halts within space `s` printing exactly the target. Programs up to length
// `cap` are tried; parallel search reports the same witness as the serial one.
ComplexityAnswer task_complexity(const MachineSpec& m, const TaskList& tasks, std::uint64_t s,
                                 std::size_t cap, const EnumerationOptions& options = {});

namespace reference {
// Straight-line serial search kept as the test oracle for the OpenMP version.
ComplexityAnswer task_complexity_serial(const MachineSpec& m, const TaskList& tasks,
                                        std::uint64_t s, std::size_t cap,
                                        EnumerationStats* stats = nullptr);
}  // namespace reference

// True iff `program` solves every task within space `s`.
bool solves_all(const MachineSpec& m, const BitString& program, const TaskList& tasks,
                std::uint64_t s, EnumerationStats* stats = nullptr);

// [(x_2 <- x_1), (x_4 <- x_1x_3), ...]
TaskList even_tasks(const BitString& x);
// [(x_1 <- empty), (x_3 <- x_2), (x_5 <- x_2x_4), ...]
TaskList odd_tasks(const BitString& x);

ComplexityAnswer plain_complexity(const MachineSpec& m, const BitString& x, std::uint64_t s,
                                  std::size_t cap, const EnumerationOptions& options = {});
ComplexityAnswer conditional_complexity(const MachineSpec& m, const BitString& x,
                                        const BitString& y, std::uint64_t s, std::size_t cap,
                                        const EnumerationOptions& options = {});
ComplexityAnswer even_complexity(const MachineSpec& m, const BitString& x, std::uint64_t s,
                                 std::size_t cap, const EnumerationOptions& options = {});
ComplexityAnswer odd_complexity(const MachineSpec& m, const BitString& x, std::uint64_t s,
                                std::size_t cap, const EnumerationOptions& options = {});

// C^s(x) < k, decided by searching programs of length < k. Requires k >= 1.
bool decide_threshold(const MachineSpec& m, const BitString& x, std::size_t k, std::uint64_t s,
                      const EnumerationOptions& options = {});

// |{z : |yz| = n and C^s(yz) < k}|. Requires |y| <= n.
std::uint64_t count_low_complexity(const MachineSpec& m, const QParams& params,
                                   const BitString& prefix, const EnumerationOptions& options = {});

}  // namespace onlinekc
