#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "onlinekc/bitstring.hpp"
#include "onlinekc/enumerator.hpp"
#include "onlinekc/machine.hpp"

namespace onlinekc {

struct ExperimentConfig {
  std::filesystem::path machine;
  std::size_t n = 4;
  std::uint64_t s = 8;
  std::size_t cap = 10;
  std::filesystem::path out;  // empty: caller decides (CLI writes stdout)
  std::optional<std::filesystem::path> cache_dir;
  int jobs = 0;  // 0: OpenMP default
};

// Budget guard: n <= 16, cap <= 20 and 2^n · 2^(cap+1) <= 2^30 program slots.
// Returns the reason when the configuration is rejected.
std::optional<std::string> check_budget(const ExperimentConfig& cfg);

// key=value lines (machine, n, s, cap, out, cache, jobs); '#' comments.
// Keys in `explicit_keys` keep the value already in `cfg`.
void apply_config_file(const std::filesystem::path& path, ExperimentConfig& cfg,
                       const std::vector<std::string>& explicit_keys = {});

struct Reconstruction {
  BitString bits;
  bool complete = false;
  std::string problem;  // set when !complete
};

// Rebuilds an n-bit string by alternating the odd-side witness (run on the
// even bits so far) and the even-side witness (run on the odd bits so far).
// Each run must halt within space s and print exactly one bit.
Reconstruction reconstruct_from_dialogue(const MachineSpec& m, const BitString& even_witness,
                                         const BitString& odd_witness, std::size_t n,
                                         std::uint64_t s);

struct AdditivityRow {
  BitString x;
  ComplexityAnswer c_s;
  bool skipped = false;
  std::string skip_reason;
  std::size_t k = 0;
  std::optional<long> neg_log_q;  // nullopt: Q(x) is not a power of two
  unsigned ceil_neg_log_podd = 0;
  unsigned ceil_neg_log_pev = 0;
  std::size_t len_podd = 0;
  std::size_t len_pev = 0;
  std::size_t sum = 0;
  bool bound_ok = false;
  ComplexityAnswer c_ev;
  ComplexityAnswer c_odd;
  std::optional<bool> reconstruct_ok;  // nullopt when a witness is missing
};

struct ExperimentResult {
  std::vector<AdditivityRow> rows;  // lexicographic order of x
  EnumerationStats stats;
};

inline constexpr const char* kAdditivityHeader =
    "x,c_s,k,neglogQ,ceil_neglogPodd,ceil_neglogPev,len_podd,len_pev,sum,bound_ok,c_ev,c_odd,"
    "reconstruct_ok";

// Full pipeline for every x in {0,1}^n: C^s(x), Q with k = C^s(x) + 1,
// factorization, both codewords, enumerated online complexities and the
// dialogue reconstruction. Throws std::invalid_argument on a bad config
// (odd n or budget guard).
ExperimentResult experiment_additivity(const MachineSpec& m, const ExperimentConfig& cfg);

void write_additivity_csv(std::ostream& out, const ExperimentResult& result);

// Histogram of (c_ev + c_odd) - c_s over rows where all three are finite.
std::map<long, std::size_t> dialogue_gap_histogram(const ExperimentResult& result);

}  // namespace onlinekc
