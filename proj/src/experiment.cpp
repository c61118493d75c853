#include "onlinekc/experiment.hpp"

#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "onlinekc/cache.hpp"
#include "onlinekc/codec.hpp"
#include "onlinekc/semimeasure.hpp"

namespace onlinekc {

std::optional<std::string> check_budget(const ExperimentConfig& cfg) {
  if (cfg.n > 16) return "n = " + std::to_string(cfg.n) + " exceeds 16";
  if (cfg.cap > 20) return "cap = " + std::to_string(cfg.cap) + " exceeds 20";
  if (cfg.n + cfg.cap + 1 > 30) {
    return "2^n * 2^(cap+1) = 2^" + std::to_string(cfg.n + cfg.cap + 1) +
           " program slots exceeds 2^30";
  }
  return std::nullopt;
}

void apply_config_file(const std::filesystem::path& path, ExperimentConfig& cfg,
                       const std::vector<std::string>& explicit_keys) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  auto is_explicit = [&](const std::string& key) {
    for (const auto& k : explicit_keys)
      if (k == key) return true;
    return false;
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (is_explicit(key)) continue;
    try {
      if (key == "machine") cfg.machine = value;
      else if (key == "n") cfg.n = std::stoul(value);
      else if (key == "s") cfg.s = std::stoull(value);
      else if (key == "cap") cfg.cap = std::stoul(value);
      else if (key == "out") cfg.out = value;
      else if (key == "cache") cfg.cache_dir = value;
      else if (key == "jobs") cfg.jobs = std::stoi(value);
      else throw std::runtime_error("unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad value for '" +
                               key + "'");
    }
  }
}

Reconstruction reconstruct_from_dialogue(const MachineSpec& m, const BitString& even_witness,
                                         const BitString& odd_witness, std::size_t n,
                                         std::uint64_t s) {
  Reconstruction r;
  for (std::size_t i = 0; i < n; ++i) {
    const bool odd_position = i % 2 == 0;  // 1-indexed position i+1
    const BitString input = odd_position ? even_positions(r.bits) : odd_positions(r.bits);
    const BitString& program = odd_position ? odd_witness : even_witness;
    const RunResult run_result = run(m, program, input, s);
    if (run_result.status != RunStatus::halted) {
      r.problem = "position " + std::to_string(i + 1) + ": " + to_string(run_result.status);
      return r;
    }
    if (run_result.output.size() != 1) {
      r.problem = "position " + std::to_string(i + 1) + ": printed '" +
                  format_bits(run_result.output) + "' instead of one bit";
      return r;
    }
    r.bits.push_back(run_result.output[0]);
  }
  r.complete = true;
  return r;
}

namespace {

struct QBundle {
  SemimeasureTable q;
  Factorization f;
};

std::string answer_field(const ComplexityAnswer& a) {
  return a.value ? std::to_string(*a.value) : ">" + std::to_string(a.cap);
}

}  // namespace

ExperimentResult experiment_additivity(const MachineSpec& m, const ExperimentConfig& cfg) {
  if (cfg.n % 2 != 0) throw std::invalid_argument("experiment: n must be even");
  if (auto reason = check_budget(cfg)) throw std::invalid_argument("budget guard: " + *reason);
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);

  std::unique_ptr<ComplexityCache> cache;
  if (cfg.cache_dir) cache = std::make_unique<ComplexityCache>(*cfg.cache_dir);

  const auto xs = all_strings(cfg.n);
  const std::int64_t count = static_cast<std::int64_t>(xs.size());
  ExperimentResult result;
  result.rows.resize(xs.size());

  // Rows are independent; inner searches run serially inside each thread.
  std::vector<ComplexityAnswer> plain(xs.size());
#pragma omp parallel
  {
    EnumerationStats local;
    EnumerationOptions opts{false, cache.get(), &local};
#pragma omp for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
      plain[i] = plain_complexity(m, xs[i], cfg.s, cfg.cap, opts);
    }
#pragma omp critical(onlinekc_stats)
    result.stats.merge(local);
  }

  std::map<std::size_t, QBundle> bundles;
  for (const auto& a : plain) {
    if (!a.value || *a.value + 1 > cfg.cap + 1 || bundles.count(*a.value + 1)) continue;
    const QParams params{cfg.s, *a.value + 1, cfg.n};
    SemimeasureTable q = build_q_from_complexities(plain, params);
    Factorization f = factorize(q);
    bundles.emplace(params.k, QBundle{std::move(q), std::move(f)});
  }

#pragma omp parallel
  {
    EnumerationStats local;
    EnumerationOptions opts{false, cache.get(), &local};
#pragma omp for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
      AdditivityRow& row = result.rows[i];
      row.x = xs[i];
      row.c_s = plain[i];
      if (row.c_s.exceeds_cap()) {
        row.skipped = true;
        row.skip_reason = "exceeds_cap";
        continue;
      }
      row.k = *row.c_s.value + 1;
      if (row.k > cfg.cap + 1) {
        row.skipped = true;
        row.skip_reason = "k > cap + 1";
        continue;
      }
      const QBundle& b = bundles.at(row.k);
      row.neg_log_q = exact_neg_log2(b.q[row.x]);
      row.ceil_neg_log_podd = ceil_neg_log2(b.f.odd[row.x]);
      row.ceil_neg_log_pev = ceil_neg_log2(b.f.even[row.x]);
      row.len_podd = encode(b.f.odd, row.x).bits.size();
      row.len_pev = encode(b.f.even, row.x).bits.size();
      row.sum = row.len_podd + row.len_pev;
      row.bound_ok = row.sum <= *row.c_s.value + 3;

      row.c_ev = even_complexity(m, row.x, cfg.s, cfg.cap, opts);
      row.c_odd = odd_complexity(m, row.x, cfg.s, cfg.cap, opts);
      if (row.c_ev.value && row.c_odd.value) {
        const Reconstruction rec =
            reconstruct_from_dialogue(m, row.c_ev.witness, row.c_odd.witness, cfg.n, cfg.s);
        row.reconstruct_ok = rec.complete && rec.bits == row.x;
      }
    }
#pragma omp critical(onlinekc_stats)
    result.stats.merge(local);
  }
  return result;
}

void write_additivity_csv(std::ostream& out, const ExperimentResult& result) {
  out << kAdditivityHeader << '\n';
  for (const auto& row : result.rows) {
    out << format_bits(row.x) << ',' << answer_field(row.c_s) << ',';
    if (row.skipped) {
      out << ",,,,,,,skipped(" << row.skip_reason << "),,,\n";
      continue;
    }
    out << row.k << ',' << (row.neg_log_q ? std::to_string(*row.neg_log_q) : "na") << ','
        << row.ceil_neg_log_podd << ',' << row.ceil_neg_log_pev << ',' << row.len_podd << ','
        << row.len_pev << ',' << row.sum << ',' << (row.bound_ok ? "true" : "false") << ','
        << answer_field(row.c_ev) << ',' << answer_field(row.c_odd) << ','
        << (row.reconstruct_ok ? (*row.reconstruct_ok ? "true" : "false") : "na") << '\n';
  }
}

std::map<long, std::size_t> dialogue_gap_histogram(const ExperimentResult& result) {
  std::map<long, std::size_t> h;
  for (const auto& row : result.rows) {
    if (row.skipped || !row.c_ev.value || !row.c_odd.value) continue;
    ++h[static_cast<long>(*row.c_ev.value + *row.c_odd.value) - static_cast<long>(*row.c_s.value)];
  }
  return h;
}

}  // namespace onlinekc
