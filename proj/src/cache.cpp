#include "onlinekc/cache.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "onlinekc/hash.hpp"

namespace onlinekc {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kMagic = "onlinekc-cache";

std::optional<std::uint64_t> parse_u64(const std::string& s, int base = 10) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    auto v = std::stoull(s, &used, base);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

std::string CacheKey::file_name() const {
  Fnv1a h;
  h.add(machine_hash).add(s).add(cap).add(task_hash);
  return to_hex(h.digest()) + ".rec";
}

std::uint64_t hash_tasks(const TaskList& tasks) {
  Fnv1a h;
  h.add(std::uint64_t{tasks.size()});
  for (const auto& t : tasks) {
    h.add(std::uint64_t{t.target.size()}).add(t.target.str());
    h.add(std::uint64_t{t.input.size()}).add(t.input.str());
  }
  return h.digest();
}

ComplexityCache::ComplexityCache(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
}

std::string ComplexityCache::serialize(const CacheKey& key, const ComplexityAnswer& answer) {
  std::ostringstream out;
  out << kMagic << ' ' << kFormatVersion << '\n'
      << "machine " << to_hex(key.machine_hash) << '\n'
      << "s " << key.s << '\n'
      << "cap " << key.cap << '\n'
      << "tasks " << to_hex(key.task_hash) << '\n'
      << "value " << (answer.value ? std::to_string(*answer.value) : "exceeds") << '\n'
      << "witness " << format_bits(answer.witness) << '\n';
  std::string body = out.str();
  body += "checksum " + to_hex(Fnv1a().add(body).digest()) + "\n";
  return body;
}

std::optional<std::pair<CacheKey, ComplexityAnswer>> ComplexityCache::parse(
    const std::string& record, const CacheKey* expected) {
  const auto cut = record.rfind("checksum ");
  if (cut == std::string::npos) return std::nullopt;
  const std::string body = record.substr(0, cut);
  std::string tail = record.substr(cut + 9);
  if (!tail.empty() && tail.back() == '\n') tail.pop_back();
  if (tail != to_hex(Fnv1a().add(body).digest())) return std::nullopt;

  std::istringstream in(body);
  std::string magic, field, value;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic || version != kFormatVersion) return std::nullopt;

  auto next = [&](const char* name) -> std::optional<std::string> {
    if (!(in >> field >> value) || field != name) return std::nullopt;
    return value;
  };
  CacheKey key;
  ComplexityAnswer answer;
  auto machine = next("machine");
  auto s = next("s");
  auto cap = next("cap");
  auto tasks = next("tasks");
  auto val = next("value");
  auto witness = next("witness");
  if (!machine || !s || !cap || !tasks || !val || !witness) return std::nullopt;
  auto mh = parse_u64(*machine, 16);
  auto sv = parse_u64(*s);
  auto cv = parse_u64(*cap);
  auto th = parse_u64(*tasks, 16);
  if (!mh || !sv || !cv || !th) return std::nullopt;
  key = {*mh, *sv, *cv, *th};
  answer.cap = *cv;
  try {
    answer.witness = BitString::parse(*witness);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (*val != "exceeds") {
    auto v = parse_u64(*val);
    if (!v || *v != answer.witness.size()) return std::nullopt;
    answer.value = *v;
  } else if (!answer.witness.empty()) {
    return std::nullopt;
  }
  if (expected != nullptr &&
      (key.machine_hash != expected->machine_hash || key.s != expected->s ||
       key.cap != expected->cap || key.task_hash != expected->task_hash)) {
    return std::nullopt;
  }
  return std::make_pair(key, answer);
}

std::optional<ComplexityAnswer> ComplexityCache::get(const CacheKey& key) const {
  const fs::path path = dir_ / key.file_name();
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  auto parsed = parse(buf.str(), &key);
  if (!parsed) {
    std::cerr << "warning: ignoring corrupt cache record " << path.string() << '\n';
    return std::nullopt;
  }
  return parsed->second;
}

void ComplexityCache::put(const CacheKey& key, const ComplexityAnswer& answer) const {
  static std::atomic<std::uint64_t> counter{0};
  const fs::path final_path = dir_ / key.file_name();
  const fs::path tmp = dir_ / (key.file_name() + ".tmp." + std::to_string(::getpid()) + "." +
                               std::to_string(counter.fetch_add(1)));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << serialize(key, answer);
    if (!out) throw std::runtime_error("cannot write cache record " + tmp.string());
  }
  fs::rename(tmp, final_path);
}

ComplexityCache::GcReport ComplexityCache::gc() const {
  GcReport report;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    bool keep = false;
    if (entry.path().extension() == ".rec") {
      std::ifstream in(entry.path(), std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      auto parsed = parse(buf.str());
      keep = parsed && parsed->first.file_name() == name;
    }
    if (keep) {
      ++report.kept;
    } else {
      fs::remove(entry.path());
      ++report.removed;
    }
  }
  return report;
}

}  // namespace onlinekc
