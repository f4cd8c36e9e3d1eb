// Compares the serial reference and the parallel weakening kernel on a
// synthetic dataset and checks that the outputs match byte for byte.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "weaksup/dataset_io.hpp"
#include "weaksup/mixing.hpp"
#include "weaksup/rng.hpp"
#include "weaksup/weakening.hpp"

using namespace weaksup;

namespace {

Dataset synthetic(std::size_t n, int k, std::uint64_t seed) {
  Dataset data;
  data.columns = {"f0", "label"};
  data.rows.reserve(n);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    double f = rng.next_unit() * 2.0 - 1.0;
    int y = static_cast<int>(rng.next() % static_cast<std::uint64_t>(k));
    data.rows.push_back({format_double(f), std::to_string(y)});
  }
  return data;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = argc > 1 ? static_cast<std::size_t>(std::stoull(argv[1])) : 2000000;
  const int k = 4;
  Dataset data = synthetic(n, k, 7);
  WeakeningSpec spec = WeakeningSpec::iin(template_flip_symmetric(k, 0.3), 42);

#ifdef _OPENMP
  std::printf("rows: %zu, threads: %d\n", n, omp_get_max_threads());
#else
  std::printf("rows: %zu (built without OpenMP)\n", n);
#endif

  auto t0 = std::chrono::steady_clock::now();
  Dataset serial = weaken_dataset_serial(data, spec);
  double serial_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  Dataset parallel = weaken_dataset(data, spec);
  double parallel_s = seconds_since(t0);

  bool identical = csv_to_string(serial) == csv_to_string(parallel);
  std::printf("serial:   %.3f s (%.1f Mrows/s)\n", serial_s,
              static_cast<double>(n) / serial_s / 1e6);
  std::printf("parallel: %.3f s (%.1f Mrows/s), speedup %.2fx\n", parallel_s,
              static_cast<double>(n) / parallel_s / 1e6, serial_s / parallel_s);
  std::printf("outputs identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
