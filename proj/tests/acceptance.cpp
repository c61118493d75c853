// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "onlinekc/codec.hpp"
#include "onlinekc/enumerator.hpp"
#include "onlinekc/experiment.hpp"
#include "onlinekc/oracle.hpp"
#include "onlinekc/semimeasure.hpp"
#include "support.hpp"

using namespace onlinekc;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;
EnumerationStats sweep_stats;  // shared by the criteria that enumerate

void report(int id, const char* name, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %d %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
  std::fflush(stdout);
  failures += !v.pass;
}

EnumerationOptions counted() {
  EnumerationOptions o;
  o.stats = &sweep_stats;
  return o;
}

Verdict axioms() {
  std::size_t tables = 0, violations = 0, mismatches = 0, non_dyadic_q = 0;
  for (std::uint64_t s = 0; s <= 8; ++s)
    for (std::size_t n = 0; n <= 4; ++n)
      for (std::size_t k = 1; k <= 6; ++k) {
        auto q = build_q(reference_machine(), {s, k, n}, counted());
        auto f = factorize(q);
        tables += 3;
        violations += validate(q).size() + validate(f.odd).size() + validate(f.even).size();
        non_dyadic_q += !q.is_dyadic();
        for (std::size_t len = 0; len <= n; ++len)
          for (const auto& x : all_strings(len)) mismatches += f.odd[x] * f.even[x] != q[x];
      }
  std::ostringstream d;
  d << tables << " tables, " << violations << " violations, " << mismatches
    << " recombination mismatches, " << non_dyadic_q << " non-dyadic Q";
  return {violations == 0 && mismatches == 0 && non_dyadic_q == 0, d.str()};
}

Verdict counting() {
  std::size_t checks = 0, over = 0;
  for (std::uint64_t s = 0; s <= 8; ++s)
    for (std::size_t n = 0; n <= 4; ++n)
      for (std::size_t k = 1; k <= 6; ++k) {
        ++checks;
        over += count_low_complexity(reference_machine(), {s, k, n}, {}, counted()) >
                (std::uint64_t{1} << k) - 1;
      }
  return {over == 0, std::to_string(checks) + " (s,k,n) triples, " + std::to_string(over) + " over 2^k-1"};
}

// The measures of criteria 3-5, depth 10.
std::vector<std::pair<std::string, SemimeasureTable>> coding_suite() {
  std::vector<std::pair<std::string, SemimeasureTable>> out;
  for (auto kind : {MeasureKind::even, MeasureKind::odd}) {
    out.emplace_back(std::string("uniform ") + to_string(kind), uniform_measure(kind, 10));
    out.emplace_back(std::string("trinomial ") + to_string(kind), rationalize(trinomial_oracle(kind), 10));
  }
  return out;
}

BitString predicted_bits(MeasureKind kind, const BitString& x) {
  return kind == MeasureKind::even ? even_positions(x) : odd_positions(x);
}
BitString given_bits(MeasureKind kind, const BitString& x) {
  return kind == MeasureKind::even ? odd_positions(x) : even_positions(x);
}

Verdict coding(const std::vector<std::pair<std::string, SemimeasureTable>>& suite) {
  std::size_t strings = 0, failures_here = 0;
  for (const auto& [name, p] : suite) {
    for (std::size_t len = 0; len <= 10; ++len)
      for (const auto& x : all_strings(len)) {
        if (p[x] == 0) continue;
        ++strings;
        const auto code = encode(p, x);
        const Rational lo = cumulative(p, x), v = code.value().to_rational();
        const bool ok = code.bits.size() == ceil_neg_log2(p[x]) && lo <= v && v < lo + p[x] &&
                        decode_all(p, code, given_bits(p.kind(), x), len) == predicted_bits(p.kind(), x);
        failures_here += !ok;
      }
  }
  return {failures_here == 0,
          std::to_string(strings) + " codewords over " + std::to_string(suite.size()) + " measures, " +
              std::to_string(failures_here) + " failures"};
}

Verdict strict_interface(const std::vector<std::pair<std::string, SemimeasureTable>>& suite) {
  std::size_t positions = 0, disagreements = 0;
  for (const auto& [name, p] : suite) {
    const auto kind = p.kind();
    for (std::size_t len = 0; len <= 10; ++len)
      for (const auto& x : all_strings(len)) {
        if (p[x] == 0) continue;
        const auto code = encode(p, x);
        const auto given = given_bits(kind, x);
        for (std::size_t i = 0; i < len; ++i) {
          if (!branches_at(kind, i)) continue;
          ++positions;
          // tasks seen so far: the given bits strictly before position i
          const std::size_t seen = kind == MeasureKind::even ? (i + 1) / 2 : i / 2;
          disagreements += decode_strict(p, code, given.prefix(seen)) != decode_step(p, code, x.prefix(i));
        }
      }
  }
  return {disagreements == 0,
          std::to_string(positions) + " positions, " + std::to_string(disagreements) + " disagreements"};
}

Verdict precision(const std::vector<std::pair<std::string, SemimeasureTable>>& suite) {
  std::size_t positions = 0, disagreements = 0;
  for (const auto& [name, p] : suite) {
    const auto oracle = table_oracle(p);
    for (std::size_t len = 0; len <= 10; ++len)
      for (const auto& x : all_strings(len)) {
        if (p[x] == 0) continue;
        const auto padded = encode_padded(p, x);
        for (std::size_t i = 0; i < len; ++i) {
          if (!branches_at(p.kind(), i)) continue;
          ++positions;
          disagreements += decode_step_precise(oracle, padded, x.prefix(i)) != decode_step(p, padded, x.prefix(i));
        }
      }
  }
  // Starved oracle: first disagreement in shortlex order on uniform even.
  const auto u = uniform_measure(MeasureKind::even, 10);
  const auto starved = starved_oracle(table_oracle(u), 3);
  std::string example;
  std::size_t rejected = 0;  // out-of-range answers the decoder refused
  for (std::size_t len = 0; len <= 10 && example.empty(); ++len)
    for (const auto& x : all_strings(len)) {
      const auto padded = encode_padded(u, x);
      for (std::size_t i = 1; i < len && example.empty(); i += 2) {
        std::uint8_t got;
        try {
          got = decode_step_precise(starved, padded, x.prefix(i));
        } catch (const OraclePrecisionError&) {
          ++rejected;
          continue;
        }
        if (got != x[i])
          example = "x=" + format_bits(x) + " y=" + format_bits(x.prefix(i)) + " code=" + padded.bits.str() +
                    " decoded " + std::to_string(got);
      }
      if (!example.empty()) break;
    }
  std::ostringstream d;
  d << positions << " positions, " << disagreements << " disagreements; starved oracle: " << rejected
    << " answers rejected, then " << (example.empty() ? "no disagreement" : example);
  return {disagreements == 0 && !example.empty(), d.str()};
}

ExperimentConfig additivity_config() {
  ExperimentConfig cfg;
  cfg.machine = reference_machine_path();
  cfg.n = 6;
  cfg.s = 8;
  cfg.cap = 10;
  cfg.jobs = 8;
  return cfg;
}

Verdict additivity() {
  auto cfg = additivity_config();
  std::string shrink;
  if (check_budget(cfg)) {
    cfg.n = 4;
    shrink = " (shrunk to n=4)";
  }
  const auto result = experiment_additivity(reference_machine(), cfg);
  sweep_stats.merge(result.stats);
  std::size_t bad_q = 0, bad_len = 0, skipped = 0;
  for (const auto& row : result.rows) {
    if (row.skipped) {
      ++skipped;
      continue;
    }
    bad_q += row.neg_log_q != static_cast<long>(*row.c_s.value + 1);
    bad_len += !row.bound_ok;
  }
  std::ostringstream d;
  d << "n=" << cfg.n << shrink << ", " << result.rows.size() << " rows, " << skipped << " skipped, " << bad_q
    << " with -log2 Q != C+1, " << bad_len << " over C+3";
  return {bad_q == 0 && bad_len == 0 && skipped == 0 && result.rows.size() == (1u << cfg.n), d.str()};
}

Verdict dialogue() {
  std::size_t failed = 0;
  for (const auto& x : all_strings(4)) {
    const auto ev = even_complexity(reference_machine(), x, 8, 10, counted());
    const auto od = odd_complexity(reference_machine(), x, 8, 10, counted());
    if (!ev.value || !od.value) {
      ++failed;
      continue;
    }
    const auto r = reconstruct_from_dialogue(reference_machine(), ev.witness, od.witness, 4, 8);
    failed += !(r.complete && r.bits == x);
  }
  return {failed == 0, "16 strings, " + std::to_string(failed) + " failures"};
}

Verdict totality() {
  // Add machines that actually exercise space exhaustion and divergence.
  const auto shuttle = load_machine(testing::kShuttle);
  for (std::uint64_t s = 0; s <= 4; ++s)
    for (const auto& x : all_strings(2)) task_complexity(shuttle, {{x, {}}}, s, 8, counted());
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 20; ++i) {
    const auto m = load_machine(testing::random_machine_text(rng, 2 + i % 3, 0.4));
    task_complexity(m, {{BitString::parse("01"), BitString::parse("1")}}, 3, 8, counted());
  }
  const auto& st = sweep_stats;
  std::ostringstream d;
  d << st.runs << " runs (halted " << st.halted << ", space_exceeded " << st.space_exceeded << ", diverged "
    << st.diverged << "), " << st.bound_violations << " over the step bound, max steps " << st.max_steps;
  const bool accounted = st.halted + st.space_exceeded + st.diverged == st.runs;
  return {st.bound_violations == 0 && accounted && st.halted && st.space_exceeded && st.diverged, d.str()};
}

Verdict determinism() {
  std::vector<std::string> csvs;
  const std::vector<int> jobs = {8, 8, 1};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto cfg = additivity_config();
    cfg.jobs = jobs[i];
    const auto dir = fs::temp_directory_path() / ("onlinekc_acceptance_cache_" + std::to_string(i));
    fs::remove_all(dir);
    cfg.cache_dir = dir;
    std::ostringstream out;
    write_additivity_csv(out, experiment_additivity(reference_machine(), cfg));
    csvs.push_back(out.str());
    fs::remove_all(dir);
  }
  const bool same = csvs[0] == csvs[1] && csvs[1] == csvs[2];
  return {same, "3 cold-cache runs (jobs 8, 8, 1), " + std::to_string(csvs[0].size()) + " bytes each, " +
                    (same ? "identical" : "differ")};
}

}  // namespace

int main() {
  report(1, "semimeasure axioms", axioms);
  report(2, "counting bound", counting);
  const auto suite = coding_suite();
  report(3, "online coding", [&] { return coding(suite); });
  report(4, "strict interface", [&] { return strict_interface(suite); });
  report(5, "precision mode", [&] { return precision(suite); });
  report(6, "additivity", additivity);
  report(7, "dialogue reconstruction", dialogue);
  report(8, "simulator totality", totality);
  report(9, "determinism", determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
