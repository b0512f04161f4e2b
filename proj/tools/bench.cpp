// Timing comparison between the serial reference scans and the OpenMP
// kernels, on the loops the test suite exercises hardest.

#include <chrono>
#include <cstdio>
#include <string>

#include "cml/builtins.hpp"
#include "cml/identities.hpp"
#include "cml/mincond.hpp"
#include "cml/scan.hpp"

using cml::CayleyLoop;
namespace scan = cml::scan;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double, std::milli>(dt).count();
}

template <typename SerialFn, typename ParallelFn>
void bench(const char* label, SerialFn serial, ParallelFn parallel) {
  auto t0 = std::chrono::steady_clock::now();
  serial();
  double ts = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  parallel();
  double tp = ms_since(t0);
  std::printf("%-34s serial %9.1f ms   omp %9.1f ms   speedup %.2fx\n", label,
              ts, tp, tp > 0 ? ts / tp : 0.0);
}

}  // namespace

int main() {
  const CayleyLoop& q81 = cml::cml81();
  cml::StructuredCml s({3}, q81);
  CayleyLoop q243 = cml::truncate(s, 1, 4096).loop;

  std::printf("loop order 81\n");
  bench(
      "moufang scan (81^3)", [&] { scan::serial::moufang_violation(q81); },
      [&] { scan::moufang_violation(q81); });
  bench(
      "associator cube scan (81^3)",
      [&] { scan::serial::associator_cube_violation(q81); },
      [&] { scan::associator_cube_violation(q81); });
  bench(
      "associator power grid (81^3 x 216)",
      [&] {
        scan::serial::associator_power_violation(q81,
                                                 cml::identity_exponent_grid());
      },
      [&] {
        scan::associator_power_violation(q81, cml::identity_exponent_grid());
      });
  bench(
      "expansion scan, exhaustive (81^4)",
      [&] { scan::serial::associator_expansion_violation(q81); },
      [&] { scan::associator_expansion_violation(q81); });
  bench(
      "center scan (81^3)", [&] { scan::serial::central_mask(q81); },
      [&] { scan::central_mask(q81); });

  std::printf("loop order 243\n");
  bench(
      "moufang scan (243^3)", [&] { scan::serial::moufang_violation(q243); },
      [&] { scan::moufang_violation(q243); });
  bench(
      "center scan (243^3)", [&] { scan::serial::central_mask(q243); },
      [&] { scan::central_mask(q243); });
  return 0;
}
