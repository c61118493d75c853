#include "onlinekc/semimeasure.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace onlinekc {

const char* to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::plain: return "plain";
    case MeasureKind::even: return "even";
    case MeasureKind::odd: return "odd";
  }
  return "?";
}

MeasureKind parse_measure_kind(const std::string& text) {
  if (text == "plain") return MeasureKind::plain;
  if (text == "even") return MeasureKind::even;
  if (text == "odd") return MeasureKind::odd;
  throw std::invalid_argument("unknown measure kind '" + text + "'");
}

bool branches_at(MeasureKind kind, std::size_t prefix_length) {
  switch (kind) {
    case MeasureKind::even: return prefix_length % 2 == 1;
    case MeasureKind::odd: return prefix_length % 2 == 0;
    default: return true;
  }
}

SemimeasureTable::SemimeasureTable(MeasureKind kind, std::size_t depth)
    : kind_(kind), depth_(depth) {
  if (depth >= 30) throw std::invalid_argument("SemimeasureTable: depth too large");
  values_.assign((std::size_t{1} << (depth + 1)) - 1, Rational(0));
}

std::size_t SemimeasureTable::index_of(const BitString& x) {
  return (std::size_t{1} << x.size()) - 1 + static_cast<std::size_t>(x.to_index());
}

bool SemimeasureTable::is_dyadic() const {
  for (const auto& v : values_) {
    if (!onlinekc::is_dyadic(v)) return false;
  }
  return true;
}

std::vector<Violation> validate(const SemimeasureTable& table) {
  std::vector<Violation> out;
  const BitString root;
  if (table[root] > 1) out.push_back({root, "P(empty) = " + to_string(table[root]) + " > 1"});
  for (std::size_t len = 0; len <= table.depth(); ++len) {
    for (const auto& x : all_strings(len)) {
      const Rational& p = table[x];
      if (p < 0) out.push_back({x, "P(x) = " + to_string(p) + " < 0"});
      if (len == table.depth()) continue;
      const Rational& p0 = table[x.appended(0)];
      const Rational& p1 = table[x.appended(1)];
      if (branches_at(table.kind(), len)) {
        if (p < p0 + p1) {
          out.push_back({x, "P(x) >= P(x0) + P(x1) fails: " + to_string(p) + " < " +
                                to_string(p0) + " + " + to_string(p1)});
        }
      } else if (p != p0 || p != p1) {
        out.push_back({x, "P(x) = P(x0) = P(x1) fails: " + to_string(p) + ", " + to_string(p0) +
                              ", " + to_string(p1)});
      }
    }
  }
  return out;
}

SemimeasureTable build_q_from_complexities(std::span<const ComplexityAnswer> full_length,
                                           const QParams& params) {
  if (params.k < 1) throw std::invalid_argument("build_q: k must be >= 1");
  if (full_length.size() != (std::size_t{1} << params.n)) {
    throw std::invalid_argument("build_q: expected 2^n complexity answers");
  }
  SemimeasureTable q(MeasureKind::plain, params.n);
  q.params()["s"] = std::to_string(params.s);
  q.params()["k"] = std::to_string(params.k);
  q.params()["n"] = std::to_string(params.n);

  std::vector<std::uint64_t> counts(full_length.size());
  for (std::size_t i = 0; i < full_length.size(); ++i) {
    const auto& a = full_length[i];
    if (a.value) {
      counts[i] = *a.value < params.k ? 1 : 0;
    } else if (a.cap + 1 >= params.k) {
      counts[i] = 0;
    } else {
      throw std::invalid_argument("build_q: k = " + std::to_string(params.k) +
                                  " exceeds enumeration cap + 1 = " + std::to_string(a.cap + 1));
    }
  }
  Integer denom = 1;
  denom <<= params.k;
  for (std::size_t len = params.n + 1; len-- > 0;) {
    for (std::size_t v = 0; v < counts.size(); ++v) {
      q.set(BitString::from_index(len, v), Rational(Integer(counts[v]), denom));
    }
    if (len == 0) break;
    std::vector<std::uint64_t> parent(counts.size() / 2);
    for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = counts[2 * v] + counts[2 * v + 1];
    counts = std::move(parent);
  }
  return q;
}

SemimeasureTable build_q(const MachineSpec& m, const QParams& params,
                         const EnumerationOptions& options) {
  if (params.k < 1) throw std::invalid_argument("build_q: k must be >= 1");
  const auto xs = all_strings(params.n);
  std::vector<ComplexityAnswer> answers(xs.size());
  EnumerationOptions inner = options;
  inner.parallel = false;
  // Each entry decides C^s(x) < k by searching programs shorter than k.
#pragma omp parallel for schedule(dynamic) if (options.parallel)
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EnumerationStats local;
    EnumerationOptions o = inner;
    o.stats = options.stats ? &local : nullptr;
    answers[i] = plain_complexity(m, xs[i], params.s, params.k - 1, o);
    if (options.stats) {
#pragma omp critical(onlinekc_stats)
      options.stats->merge(local);
    }
  }
  return build_q_from_complexities(answers, params);
}

Factorization factorize(const SemimeasureTable& q) {
  if (q.kind() != MeasureKind::plain) throw std::invalid_argument("factorize: Q must be plain");
  Factorization f{SemimeasureTable(MeasureKind::odd, q.depth()),
                  SemimeasureTable(MeasureKind::even, q.depth())};
  f.odd.params() = q.params();
  f.even.params() = q.params();
  f.odd.set({}, q[{}]);
  f.even.set({}, Rational(1));
  for (std::size_t len = 1; len <= q.depth(); ++len) {
    for (const auto& x : all_strings(len)) {
      const BitString parent = x.prefix(len - 1);
      const Rational& qp = q[parent];
      const Rational ratio = qp == 0 ? Rational(0) : q[x] / qp;
      if (branches_at(MeasureKind::odd, len - 1)) {
        f.odd.set(x, f.odd[parent] * ratio);
        f.even.set(x, f.even[parent]);
      } else {
        f.even.set(x, f.even[parent] * ratio);
        f.odd.set(x, f.odd[parent]);
      }
    }
  }
  return f;
}

SemimeasureTable uniform_measure(MeasureKind kind, std::size_t depth) {
  SemimeasureTable t(kind, depth);
  for (std::size_t len = 0; len <= depth; ++len) {
    long branches = 0;
    for (std::size_t i = 0; i < len; ++i) branches += branches_at(kind, i) ? 1 : 0;
    for (const auto& x : all_strings(len)) t.set(x, pow2(-branches));
  }
  return t;
}

void write_table(std::ostream& out, const SemimeasureTable& table) {
  const bool dyadic = table.is_dyadic();
  out << "# onlinekc semimeasure table\n"
      << "kind " << to_string(table.kind()) << '\n'
      << "depth " << table.depth() << '\n'
      << "format " << (dyadic ? "dyadic" : "rational") << '\n';
  for (const auto& [name, value] : table.params()) out << "param " << name << ' ' << value << '\n';
  for (std::size_t len = 0; len <= table.depth(); ++len) {
    for (const auto& x : all_strings(len)) {
      const Rational& v = table[x];
      out << format_bits(x) << ' ';
      if (dyadic) {
        const auto d = *Dyadic::from_rational(v);
        out << d.numerator() << ' ' << d.exponent() << '\n';
      } else {
        out << boost::multiprecision::numerator(v) << ' ' << boost::multiprecision::denominator(v)
            << '\n';
      }
    }
  }
}

SemimeasureTable read_table(std::istream& in) {
  std::string line;
  std::optional<MeasureKind> kind;
  std::optional<std::size_t> depth;
  std::optional<bool> dyadic;
  std::map<std::string, std::string> params;
  SemimeasureTable table;
  std::vector<bool> filled;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("table line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head)) continue;
    if (head == "kind" || head == "depth" || head == "format" || head == "param") {
      if (filled.size() > 0) fail("header after records");
      std::string a, b;
      fields >> a;
      if (head == "kind") kind = parse_measure_kind(a);
      if (head == "depth") depth = std::stoul(a);
      if (head == "format") {
        if (a != "dyadic" && a != "rational") fail("unknown format '" + a + "'");
        dyadic = a == "dyadic";
      }
      if (head == "param") {
        fields >> b;
        params[a] = b;
      }
      continue;
    }
    if (filled.empty()) {
      if (!kind || !depth || !dyadic) fail("records before complete header");
      table = SemimeasureTable(*kind, *depth);
      table.params() = params;
      filled.assign((std::size_t{1} << (*depth + 1)) - 1, false);
    }
    BitString x;
    try {
      x = BitString::parse(head);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    std::string a, b;
    if (!(fields >> a >> b)) fail("expected '<x> <numerator> <exponent|denominator>'");
    if (x.size() > *depth) fail("string longer than depth");
    Rational v;
    try {
      v = *dyadic ? Rational(Integer(a)) / pow2(std::stol(b)) : Rational(Integer(a), Integer(b));
    } catch (const std::exception& e) {
      fail(std::string("bad number: ") + e.what());
    }
    const auto idx = SemimeasureTable::index_of(x);
    if (filled[idx]) fail("duplicate record for '" + head + "'");
    filled[idx] = true;
    table.set(x, v);
  }
  if (filled.empty()) {
    if (!kind || !depth || !dyadic) throw std::runtime_error("table: missing header");
    throw std::runtime_error("table: no records");
  }
  for (bool f : filled) {
    if (!f) throw std::runtime_error("table: missing records");
  }
  return table;
}

}  // namespace onlinekc
