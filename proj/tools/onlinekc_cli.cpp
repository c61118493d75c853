// onlinekc: command-line driver for the complexity, semimeasure and codec
// operations. Exit status: 0 success, 1 domain error, 2 usage error.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "onlinekc/cache.hpp"
#include "onlinekc/codec.hpp"
#include "onlinekc/enumerator.hpp"
#include "onlinekc/experiment.hpp"
#include "onlinekc/hash.hpp"
#include "onlinekc/machine.hpp"
#include "onlinekc/oracle.hpp"
#include "onlinekc/semimeasure.hpp"

using namespace onlinekc;

namespace {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeasureArgs {
  std::string measure = "uniform";
  std::string table;
  std::string parity = "even";
  std::size_t depth = 0;
};

void add_measure_options(CLI::App* cmd, MeasureArgs& a) {
  cmd->add_option("--measure", a.measure, "built-in measure: uniform | trinomial")
      ->check(CLI::IsMember({"uniform", "trinomial"}));
  cmd->add_option("--table", a.table, "semimeasure table file (overrides --measure)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--parity", a.parity, "even | odd")->check(CLI::IsMember({"even", "odd"}));
  cmd->add_option("--depth", a.depth, "table depth for built-in measures");
}

SemimeasureTable load_measure(const MeasureArgs& a, std::size_t min_depth) {
  if (!a.table.empty()) {
    std::ifstream in(a.table);
    SemimeasureTable t = read_table(in);
    if (t.kind() == MeasureKind::plain) throw DomainError("table must be an even or odd semimeasure");
    if (t.depth() < min_depth) throw DomainError("table depth is smaller than the string length");
    return t;
  }
  const MeasureKind kind = parse_measure_kind(a.parity);
  const std::size_t depth = std::max(a.depth, min_depth);
  if (a.measure == "uniform") return uniform_measure(kind, depth);
  return rationalize(trinomial_oracle(kind), depth);
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  body(out);
}

std::string answer_field(const ComplexityAnswer& a) {
  return a.value ? std::to_string(*a.value) : ">" + std::to_string(a.cap);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-bounded online Kolmogorov complexity laboratory"};
  app.require_subcommand(1);

  std::string machine_path = reference_machine_path().string();
  std::string cache_dir;
  std::uint64_t s = 8;
  std::size_t cap = 10;

  // machine validate
  auto* machine_cmd = app.add_subcommand("machine", "machine spec tools");
  machine_cmd->require_subcommand(1);
  auto* validate_cmd = machine_cmd->add_subcommand("validate", "parse and validate a machine spec");
  validate_cmd->add_option("--machine", machine_path, "machine spec file");

  // complexity
  std::string x_text, y_text;
  auto* complexity_cmd = app.add_subcommand("complexity", "C^s(x) or C^s(x|y) by enumeration");
  complexity_cmd->add_option("--machine", machine_path);
  complexity_cmd->add_option("--s", s, "space bound");
  complexity_cmd->add_option("--cap", cap, "maximum program length");
  complexity_cmd->add_option("--x", x_text, "target bits ('-' for empty)")->required();
  complexity_cmd->add_option("--y", y_text, "condition bits");
  complexity_cmd->add_option("--cache", cache_dir);

  // online-complexity
  std::string parity = "even";
  auto* online_cmd = app.add_subcommand("online-complexity", "even or odd online complexity");
  online_cmd->add_option("--machine", machine_path);
  online_cmd->add_option("--s", s);
  online_cmd->add_option("--cap", cap);
  online_cmd->add_option("--x", x_text)->required();
  online_cmd->add_option("--parity", parity)->check(CLI::IsMember({"even", "odd"}));
  online_cmd->add_option("--cache", cache_dir);

  // q-table
  std::size_t k = 1, n = 0;
  std::string out_path;
  auto* q_cmd = app.add_subcommand("q-table", "counting semimeasure Q for (s, k, n)");
  for (auto* cmd : {q_cmd}) {
    cmd->add_option("--machine", machine_path);
    cmd->add_option("--s", s);
    cmd->add_option("--k", k)->required();
    cmd->add_option("--n", n)->required();
    cmd->add_option("--cap", cap);
    cmd->add_option("--out", out_path);
    cmd->add_option("--cache", cache_dir);
  }

  // factorize
  std::string q_file, out_odd, out_even;
  auto* factor_cmd = app.add_subcommand("factorize", "split Q into odd and even semimeasures");
  factor_cmd->add_option("--q", q_file, "Q table file (otherwise built from machine parameters)")
      ->check(CLI::ExistingFile);
  factor_cmd->add_option("--machine", machine_path);
  factor_cmd->add_option("--s", s);
  factor_cmd->add_option("--k", k);
  factor_cmd->add_option("--n", n);
  factor_cmd->add_option("--cap", cap);
  factor_cmd->add_option("--out-odd", out_odd);
  factor_cmd->add_option("--out-even", out_even);
  factor_cmd->add_option("--cache", cache_dir);

  // encode / decode
  MeasureArgs measure_args;
  bool padded = false, precise = false;
  auto* encode_cmd = app.add_subcommand("encode", "online codeword for x");
  add_measure_options(encode_cmd, measure_args);
  encode_cmd->add_option("--x", x_text)->required();
  encode_cmd->add_flag("--padded", padded, "emit the padded codeword");

  std::string code_text, given_text;
  auto* decode_cmd = app.add_subcommand("decode", "predicted bits from a codeword");
  add_measure_options(decode_cmd, measure_args);
  decode_cmd->add_option("--code", code_text, "codeword bits ('-' for empty)")->required();
  decode_cmd->add_option("--given", given_text, "opposite-parity bits the decoder sees")->required();
  decode_cmd->add_option("--n", n, "length of the encoded string")->required();
  decode_cmd->add_flag("--padded", padded, "codeword carries the 01 pad");
  decode_cmd->add_flag("--precise", precise, "finite-precision decoding (implies --padded)");

  // experiment additivity
  ExperimentConfig cfg;
  cfg.machine = reference_machine_path();
  std::string cfg_machine = cfg.machine.string(), cfg_out, cfg_cache, cfg_file;
  auto* exp_cmd = app.add_subcommand("experiment", "experiments");
  exp_cmd->require_subcommand(1);
  auto* add_cmd = exp_cmd->add_subcommand("additivity", "odd+even code lengths against C^s");
  auto* o_machine = add_cmd->add_option("--machine", cfg_machine);
  auto* o_n = add_cmd->add_option("--n", cfg.n);
  auto* o_s = add_cmd->add_option("--s", cfg.s);
  auto* o_cap = add_cmd->add_option("--cap", cfg.cap);
  auto* o_out = add_cmd->add_option("--out", cfg_out);
  auto* o_cache = add_cmd->add_option("--cache", cfg_cache);
  auto* o_jobs = add_cmd->add_option("--jobs", cfg.jobs);
  add_cmd->add_option("--config", cfg_file, "key=value file; flags override")->check(CLI::ExistingFile);

  // cache gc
  auto* cache_cmd = app.add_subcommand("cache", "cache maintenance");
  cache_cmd->require_subcommand(1);
  auto* gc_cmd = cache_cmd->add_subcommand("gc", "drop corrupt or stale records");
  gc_cmd->add_option("--cache", cache_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::unique_ptr<ComplexityCache> cache;
    auto options = [&] {
      EnumerationOptions o;
      if (!cache_dir.empty() && !cache) cache = std::make_unique<ComplexityCache>(cache_dir);
      o.cache = cache.get();
      return o;
    };

    if (validate_cmd->parsed()) {
      const MachineSpec m = load_machine_file(machine_path);
      std::cout << "ok states=" << m.state_count() << " transitions=" << m.transition_count()
                << " fingerprint=" << to_hex(m.fingerprint()) << '\n';
      return 0;
    }

    if (complexity_cmd->parsed()) {
      const MachineSpec m = load_machine_file(machine_path);
      const BitString x = BitString::parse(x_text);
      const BitString y = BitString::parse(y_text);
      const ComplexityAnswer a = conditional_complexity(m, x, y, s, cap, options());
      std::cout << "x,y,s,cap,value,witness\n"
                << format_bits(x) << ',' << format_bits(y) << ',' << s << ',' << cap << ','
                << answer_field(a) << ',' << (a.value ? format_bits(a.witness) : "") << '\n';
      return 0;
    }

    if (online_cmd->parsed()) {
      const MachineSpec m = load_machine_file(machine_path);
      const BitString x = BitString::parse(x_text);
      const ComplexityAnswer a = parity == "even" ? even_complexity(m, x, s, cap, options())
                                                  : odd_complexity(m, x, s, cap, options());
      std::cout << "x,parity,s,cap,value,witness\n"
                << format_bits(x) << ',' << parity << ',' << s << ',' << cap << ','
                << answer_field(a) << ',' << (a.value ? format_bits(a.witness) : "") << '\n';
      return 0;
    }

    auto build_q_checked = [&]() {
      if (k < 1) throw DomainError("k must be >= 1");
      if (k > cap + 1) {
        throw DomainError("k = " + std::to_string(k) + " exceeds cap + 1 = " + std::to_string(cap + 1));
      }
      const MachineSpec m = load_machine_file(machine_path);
      return build_q(m, QParams{s, k, n}, options());
    };

    if (q_cmd->parsed()) {
      const SemimeasureTable q = build_q_checked();
      write_to(out_path, [&](std::ostream& o) { write_table(o, q); });
      return 0;
    }

    if (factor_cmd->parsed()) {
      SemimeasureTable q;
      if (!q_file.empty()) {
        std::ifstream in(q_file);
        q = read_table(in);
      } else {
        q = build_q_checked();
      }
      if (auto v = validate(q); !v.empty()) {
        throw DomainError("input is not a semimeasure: " + format_bits(v.front().x) + ": " +
                          v.front().relation);
      }
      const Factorization f = factorize(q);
      if (out_odd.empty() && out_even.empty()) {
        write_table(std::cout, f.odd);
        std::cout << '\n';
        write_table(std::cout, f.even);
      } else {
        write_to(out_odd, [&](std::ostream& o) { write_table(o, f.odd); });
        write_to(out_even, [&](std::ostream& o) { write_table(o, f.even); });
      }
      return 0;
    }

    if (encode_cmd->parsed()) {
      const BitString x = BitString::parse(x_text);
      const SemimeasureTable t = load_measure(measure_args, x.size());
      const Codeword c = padded ? encode_padded(t, x) : encode(t, x);
      std::cout << format_bits(c.bits) << '\n';
      return 0;
    }

    if (decode_cmd->parsed()) {
      const SemimeasureTable t = load_measure(measure_args, n);
      const Codeword code{BitString::parse(code_text), padded || precise};
      const BitString given = BitString::parse(given_text);
      BitString out;
      if (precise) {
        const MeasureOracle oracle = table_oracle(t);
        const bool even = t.kind() == MeasureKind::even;
        BitString predicted;
        const std::size_t count = even ? n / 2 : (n + 1) / 2;
        for (std::size_t j = 1; j <= count; ++j) {
          const BitString seen = given.prefix(even ? j : j - 1);
          if (seen.size() < (even ? j : j - 1)) throw DomainError("not enough given bits");
          predicted.push_back(decode_step_precise(oracle, code, interleave(t.kind(), seen, predicted)));
        }
        out = predicted;
      } else {
        out = decode_all(t, code, given, n);
      }
      std::cout << format_bits(out) << '\n';
      return 0;
    }

    if (add_cmd->parsed()) {
      std::vector<std::string> explicit_keys;
      if (o_machine->count()) explicit_keys.push_back("machine");
      if (o_n->count()) explicit_keys.push_back("n");
      if (o_s->count()) explicit_keys.push_back("s");
      if (o_cap->count()) explicit_keys.push_back("cap");
      if (o_out->count()) explicit_keys.push_back("out");
      if (o_cache->count()) explicit_keys.push_back("cache");
      if (o_jobs->count()) explicit_keys.push_back("jobs");
      cfg.machine = cfg_machine;
      cfg.out = cfg_out;
      if (!cfg_cache.empty()) cfg.cache_dir = cfg_cache;
      if (!cfg_file.empty()) apply_config_file(cfg_file, cfg, explicit_keys);

      if (auto reason = check_budget(cfg)) {
        write_to(cfg.out.string(), [&](std::ostream& o) {
          o << kAdditivityHeader << "\n# aborted: budget guard: " << *reason << '\n';
        });
        throw DomainError("budget guard: " + *reason);
      }
      if (cfg.n % 2 != 0) throw DomainError("n must be even");
      const MachineSpec m = load_machine_file(cfg.machine);
      const ExperimentResult result = experiment_additivity(m, cfg);
      write_to(cfg.out.string(), [&](std::ostream& o) { write_additivity_csv(o, result); });

      std::size_t bad = 0;
      for (const auto& row : result.rows) bad += (!row.skipped && !row.bound_ok) ? 1 : 0;
      std::cerr << "rows=" << result.rows.size() << " bound_failures=" << bad
                << " runs=" << result.stats.runs << "\n(c_ev + c_odd) - c_s:";
      for (const auto& [gap, count] : dialogue_gap_histogram(result)) {
        std::cerr << ' ' << gap << ":" << count;
      }
      std::cerr << '\n';
      return bad == 0 ? 0 : 1;
    }

    if (gc_cmd->parsed()) {
      const auto report = ComplexityCache(cache_dir).gc();
      std::cout << "kept=" << report.kept << " removed=" << report.removed << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
