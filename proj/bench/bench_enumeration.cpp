// Serial reference search vs. the OpenMP search on the same workloads.
//
//   onlinekc_bench [threads]

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "onlinekc/enumerator.hpp"
#include "onlinekc/machine.hpp"

using namespace onlinekc;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) omp_set_num_threads(std::atoi(argv[1]));
  const MachineSpec& m = reference_machine();
  std::cout << "threads=" << omp_get_max_threads() << '\n';
  std::cout << "workload,serial_s,parallel_s,speedup,same_answer\n";

  struct Workload {
    const char* name;
    TaskList tasks;
    std::uint64_t s;
    std::size_t cap;
  };
  const BitString x = BitString::parse("110100101101");
  const Workload workloads[] = {
      {"plain_x12_cap13", {{x, {}}}, 8, 13},
      {"even_x12_cap12", even_tasks(x), 8, 12},
      {"odd_x12_cap12", odd_tasks(x), 8, 12},
      {"unsolvable_cap12", {{BitString::parse("0"), {}}, {BitString::parse("1"), {}}}, 8, 12},
  };
  for (const auto& w : workloads) {
    ComplexityAnswer serial, parallel;
    const double ts = seconds([&] { serial = reference::task_complexity_serial(m, w.tasks, w.s, w.cap); });
    const double tp = seconds([&] { parallel = task_complexity(m, w.tasks, w.s, w.cap); });
    std::cout << w.name << ',' << ts << ',' << tp << ',' << (tp > 0 ? ts / tp : 0.0) << ','
              << (serial == parallel ? "yes" : "NO") << '\n';
  }
  return 0;
}
