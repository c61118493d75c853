#include "onlinekc/enumerator.hpp"

#include <atomic>
#include <stdexcept>

#include <omp.h>

#include "onlinekc/cache.hpp"

namespace onlinekc {

void EnumerationStats::record(const RunResult& r, std::uint64_t bound) {
  ++runs;
  switch (r.status) {
    case RunStatus::halted: ++halted; break;
    case RunStatus::space_exceeded: ++space_exceeded; break;
    case RunStatus::diverged: ++diverged; break;
  }
  if (r.steps > bound) ++bound_violations;
  if (r.steps > max_steps) max_steps = r.steps;
}

void EnumerationStats::merge(const EnumerationStats& o) {
  runs += o.runs;
  halted += o.halted;
  space_exceeded += o.space_exceeded;
  diverged += o.diverged;
  bound_violations += o.bound_violations;
  if (o.max_steps > max_steps) max_steps = o.max_steps;
}

bool solves_all(const MachineSpec& m, const BitString& program, const TaskList& tasks,
                std::uint64_t s, EnumerationStats* stats) {
  for (const auto& task : tasks) {
    RunResult r = run(m, program, task.input, s);
    if (stats != nullptr) {
      stats->record(r, configuration_bound(m, program.size(), task.input.size(), s));
    }
    if (r.status != RunStatus::halted || r.output != task.target) return false;
  }
  return true;
}

namespace {

void check_cap(std::size_t cap) {
  if (cap > kMaxCap) {
    throw std::invalid_argument("program-length cap " + std::to_string(cap) + " exceeds " +
                                std::to_string(kMaxCap));
  }
}

ComplexityAnswer exhausted(std::size_t cap) {
  ComplexityAnswer a;
  a.cap = cap;
  return a;
}

ComplexityAnswer found(BitString witness, std::size_t cap) {
  ComplexityAnswer a;
  a.value = witness.size();
  a.witness = std::move(witness);
  a.cap = cap;
  return a;
}

ComplexityAnswer search_parallel(const MachineSpec& m, const TaskList& tasks, std::uint64_t s,
                                 std::size_t cap, EnumerationStats* stats) {
  if (tasks.empty()) return found({}, cap);
  for (std::size_t len = 0; len <= cap; ++len) {
    const std::int64_t count = std::int64_t{1} << len;
    std::atomic<std::int64_t> best{count};
#pragma omp parallel
    {
      EnumerationStats local;
      EnumerationStats* local_ptr = stats != nullptr ? &local : nullptr;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t i = 0; i < count; ++i) {
        // Only indices below the current best can change the answer.
        if (i >= best.load(std::memory_order_relaxed)) continue;
        if (solves_all(m, BitString::from_index(len, static_cast<std::uint64_t>(i)), tasks, s,
                       local_ptr)) {
          std::int64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
      if (stats != nullptr) {
#pragma omp critical(onlinekc_stats)
        stats->merge(local);
      }
    }
    if (best.load() < count) {
      return found(BitString::from_index(len, static_cast<std::uint64_t>(best.load())), cap);
    }
  }
  return exhausted(cap);
}

}  // namespace

namespace reference {

ComplexityAnswer task_complexity_serial(const MachineSpec& m, const TaskList& tasks,
                                        std::uint64_t s, std::size_t cap,
                                        EnumerationStats* stats) {
  check_cap(cap);
  for (std::size_t len = 0; len <= cap; ++len) {
    const std::uint64_t count = std::uint64_t{1} << len;
    for (std::uint64_t i = 0; i < count; ++i) {
      BitString p = BitString::from_index(len, i);
      if (solves_all(m, p, tasks, s, stats)) return found(std::move(p), cap);
    }
  }
  return exhausted(cap);
}

}  // namespace reference

ComplexityAnswer task_complexity(const MachineSpec& m, const TaskList& tasks, std::uint64_t s,
                                 std::size_t cap, const EnumerationOptions& options) {
  check_cap(cap);
  std::optional<CacheKey> key;
  if (options.cache != nullptr) {
    key = CacheKey{m.fingerprint(), s, cap, hash_tasks(tasks)};
    if (auto hit = options.cache->get(*key)) return *hit;
  }
  ComplexityAnswer answer =
      options.parallel && !omp_in_parallel()
          ? search_parallel(m, tasks, s, cap, options.stats)
          : reference::task_complexity_serial(m, tasks, s, cap, options.stats);
  if (key) options.cache->put(*key, answer);
  return answer;
}

TaskList even_tasks(const BitString& x) {
  TaskList tasks;
  BitString seen;
  for (std::size_t i = 1; i < x.size(); i += 2) {
    seen.push_back(x[i - 1]);
    tasks.push_back({BitString({x[i]}), seen});
  }
  return tasks;
}

TaskList odd_tasks(const BitString& x) {
  TaskList tasks;
  BitString seen;
  for (std::size_t i = 0; i < x.size(); i += 2) {
    if (i > 0) seen.push_back(x[i - 1]);
    tasks.push_back({BitString({x[i]}), seen});
  }
  return tasks;
}

ComplexityAnswer plain_complexity(const MachineSpec& m, const BitString& x, std::uint64_t s,
                                  std::size_t cap, const EnumerationOptions& options) {
  return task_complexity(m, {{x, {}}}, s, cap, options);
}

ComplexityAnswer conditional_complexity(const MachineSpec& m, const BitString& x,
                                        const BitString& y, std::uint64_t s, std::size_t cap,
                                        const EnumerationOptions& options) {
  return task_complexity(m, {{x, y}}, s, cap, options);
}

ComplexityAnswer even_complexity(const MachineSpec& m, const BitString& x, std::uint64_t s,
                                 std::size_t cap, const EnumerationOptions& options) {
  return task_complexity(m, even_tasks(x), s, cap, options);
}

ComplexityAnswer odd_complexity(const MachineSpec& m, const BitString& x, std::uint64_t s,
                                std::size_t cap, const EnumerationOptions& options) {
  return task_complexity(m, odd_tasks(x), s, cap, options);
}

bool decide_threshold(const MachineSpec& m, const BitString& x, std::size_t k, std::uint64_t s,
                      const EnumerationOptions& options) {
  if (k < 1) throw std::invalid_argument("decide_threshold: k must be >= 1");
  return !plain_complexity(m, x, s, k - 1, options).exceeds_cap();
}

std::uint64_t count_low_complexity(const MachineSpec& m, const QParams& params,
                                   const BitString& prefix, const EnumerationOptions& options) {
  if (prefix.size() > params.n) {
    throw std::invalid_argument("count_low_complexity: prefix longer than n");
  }
  std::uint64_t count = 0;
  for (const auto& z : all_strings(params.n - prefix.size())) {
    if (decide_threshold(m, prefix + z, params.k, params.s, options)) ++count;
  }
  return count;
}

}  // namespace onlinekc
