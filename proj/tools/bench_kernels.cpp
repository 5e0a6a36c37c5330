// Timing comparison of the serial reference kernels against the OpenMP
// parallel path, with a bit-identity check between the two on every workload.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <vector>

#include "netlimit/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;
namespace kern = netlimit::kernels;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class Work>
double best_of(int reps, Work&& work) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto start = Clock::now();
        work();
        best = std::min(best, seconds_since(start));
    }
    return best;
}

void report(const char* name, std::size_t n, double serial_s, double parallel_s,
            bool identical) {
    std::printf("%-14s n=%-10zu serial %8.2f ms   parallel %8.2f ms   "
                "speedup %5.2fx   bit-identical: %s\n",
                name, n, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
                identical ? "yes" : "NO");
}

void bench_map(std::size_t n, int reps) {
    std::vector<double> serial(n), parallel(n);
    auto f = [](std::size_t i) {
        double x = 1.0 + static_cast<double>(i) * 1e-6;
        return std::sin(1.0 / x) + std::sqrt(x);
    };
    double ts = best_of(reps, [&] { kern::eval_into(n, f, serial.data(), kern::Exec::Serial); });
    double tp = best_of(reps, [&] { kern::eval_into(n, f, parallel.data(), kern::Exec::Parallel); });
    bool same = std::memcmp(serial.data(), parallel.data(), n * sizeof(double)) == 0;
    report("map", n, ts, tp, same);
}

void bench_sum(std::size_t n, int reps) {
    auto term = [](std::size_t i) {
        double x = static_cast<double>(i) + 0.5;
        return 1.0 / (x * x);
    };
    double vs = 0.0, vp = 0.0;
    double ts = best_of(reps, [&] { vs = kern::sum_chunked(n, term, kern::Exec::Serial); });
    double tp = best_of(reps, [&] { vp = kern::sum_chunked(n, term, kern::Exec::Parallel); });
    report("chunked sum", n, ts, tp, vs == vp);
}

void bench_riemann(std::size_t cells, int reps) {
    std::vector<double> knots(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i)
        knots[i] = static_cast<double>(i) / static_cast<double>(cells);
    auto f = [](double x) { return std::exp(-x * x); };
    auto g = [](double x) { return x * x; };
    double vs = 0.0, vp = 0.0;
    double ts = best_of(reps, [&] {
        vs = kern::riemann_sum(f, g, knots, 0.5, kern::Exec::Serial);
    });
    double tp = best_of(reps, [&] {
        vp = kern::riemann_sum(f, g, knots, 0.5, kern::Exec::Parallel);
    });
    report("riemann sum", cells, ts, tp, vs == vp);
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = 1u << 24;
    int reps = 5;
    if (argc > 1) n = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));
    if (argc > 2) reps = std::atoi(argv[2]);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel mode falls back to serial\n");
#endif

    bench_map(n, reps);
    bench_sum(n, reps);
    bench_riemann(n / 2, reps);
    return 0;
}
