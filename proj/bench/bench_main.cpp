// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: Monte Carlo exit sampling and the float-mode
// multi-column solve. Both pairs must produce identical results; the
// benchmark reports wall times and the speedup.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "harmlab/walk_sim.hpp"

using namespace harmlab;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("openmp disabled; both columns run the serial path\n");
#endif

  {
    const auto ctx = make_group(parse_family("free:2"));
    const auto dist = uniform_steps(ctx);
    const DirectedBall ball = build_ball(ctx.identity, dist, 3);
    constexpr uint64_t kWalks = 4'000'000;
    EmpiricalExitMeasure serial, parallel;
    const double t_serial = timed([&] { serial = sample_exit_serial(ball, 0, kWalks, 7); });
    const double t_parallel = timed([&] { parallel = sample_exit(ball, 0, kWalks, 7); });
    const bool same = serial.counts == parallel.counts && serial.cap_hits == parallel.cap_hits;
    std::printf("mc-sampler  f2 r=3 n=%llu   serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                static_cast<unsigned long long>(kWalks), t_serial, t_parallel,
                t_serial / t_parallel, same ? "bit-identical" : "MISMATCH");
    if (!same) return 1;
  }

  {
    const auto ctx = make_group(parse_family("z:2"));
    const auto dist = uniform_steps(ctx);
    const DirectedBall ball = build_ball(ctx.identity, dist, 24);
    std::vector<std::vector<double>> rows_serial, rows_parallel;
    const double t_serial = timed([&] {
      const auto em = exit_measure<double>(ball, kDefaultExactInteriorLimit, false);
      rows_serial.push_back(em.row(0));
    });
    const double t_parallel = timed([&] {
      const auto em = exit_measure<double>(ball, kDefaultExactInteriorLimit, true);
      rows_parallel.push_back(em.row(0));
    });
    const bool same = rows_serial == rows_parallel;
    std::printf(
        "float-solve z2 r=24 (%d interior, %d boundary)  serial %.3fs  parallel %.3fs  "
        "speedup %.2fx  %s\n",
        ball.interior_count(), ball.boundary_count(), t_serial, t_parallel,
        t_serial / t_parallel, same ? "bit-identical" : "MISMATCH");
    if (!same) return 1;
  }
  return 0;
}
