#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "onlinekc/bitstring.hpp"

namespace onlinekc {

// What a head or stack top shows. `boundary` is the end marker ($) on a
// tape and the empty-stack observation (*) on a stack.
enum class Symbol : std::uint8_t { zero = 0, one = 1, boundary = 2 };

enum class StackAction : std::uint8_t { none, push0, push1, pop };
enum class Emit : std::uint8_t { none, zero, one };

struct Observation {
  Symbol program;
  Symbol input;
  Symbol top1;
  Symbol top2;
};

struct Transition {
  std::uint32_t next = 0;
  bool advance_program = false;
  bool advance_input = false;
  StackAction stack1 = StackAction::none;
  StackAction stack2 = StackAction::none;
  Emit emit = Emit::none;

  bool operator==(const Transition&) const = default;
};

// Finite control of a two-stack machine with read-only program and input
// tapes and a write-only output tape. Immutable once loaded.
class MachineSpec {
 public:
  static constexpr std::size_t kObservations = 81;  // 3^4

  std::size_t state_count() const { return state_names_.size(); }
  std::size_t transition_count() const;
  std::uint32_t initial() const { return initial_; }
  std::uint32_t halt() const { return halt_; }
  const std::string& state_name(std::uint32_t s) const { return state_names_[s]; }

  // nullptr when no transition is defined for this observation.
  const Transition* lookup(std::uint32_t state, const Observation& obs) const {
    const auto& t = table_[state * kObservations + index_of(obs)];
    return t ? &*t : nullptr;
  }

  // Content hash of the transition table (independent of the spec text's
  // formatting and comments).
  std::uint64_t fingerprint() const;

  static std::size_t index_of(const Observation& obs) {
    return ((static_cast<std::size_t>(obs.program) * 3 + static_cast<std::size_t>(obs.input)) * 3 +
            static_cast<std::size_t>(obs.top1)) * 3 +
           static_cast<std::size_t>(obs.top2);
  }

 private:
  friend MachineSpec load_machine(std::string_view);

  std::vector<std::string> state_names_;
  std::uint32_t initial_ = 0;
  std::uint32_t halt_ = 0;
  std::vector<std::optional<Transition>> table_;
};

class MachineLoadError : public std::runtime_error {
 public:
  explicit MachineLoadError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Parses the line-oriented machine format:
//
//   initial <state>
//   halt <state>
//   <state> <prog> <input> <top1> <top2> -> <next> <pmove> <imove> <s1> <s2> <emit>
//
// obs ∈ {0,1,$,*,_}; `_` matches any of 0/1/boundary and is expanded at load
// time. move ∈ {stay,adv}; act ∈ {none,push0,push1,pop}; emit ∈ {none,0,1}.
// Throws MachineLoadError listing every problem found.
MachineSpec load_machine(std::string_view text);
MachineSpec load_machine_file(const std::filesystem::path& path);

enum class RunStatus { halted, space_exceeded, diverged };

const char* to_string(RunStatus status);

struct RunResult {
  RunStatus status = RunStatus::halted;
  BitString output;
  std::uint64_t max_space = 0;
  std::uint64_t steps = 0;
  // For diverged runs: the step index at which the repeated configuration
  // was seen again.
  std::optional<std::uint64_t> repeat_step;

  bool operator==(const RunResult&) const = default;
};

// Runs from the initial configuration until the machine halts, a transition
// would push the combined stack size past `space_cap`, or a configuration
// repeats. A configuration with no applicable transition is a self-loop and
// is reported as diverged.
RunResult run(const MachineSpec& machine, const BitString& program, const BitString& input,
              std::uint64_t space_cap);

// Number of distinct configurations reachable with combined stack size
// <= space_cap: states·(|p|+2)·(|in|+2)·Σ_{t<=s}(t+1)·2^t, saturating at
// UINT64_MAX. Every run takes at most this many steps.
std::uint64_t configuration_bound(const MachineSpec& machine, std::size_t program_length,
                                  std::size_t input_length, std::uint64_t space_cap);

// The reference machine shipped in machines/reference.tm.
std::filesystem::path reference_machine_path();
const MachineSpec& reference_machine();

}  // namespace onlinekc
