#pragma once

// Data-parallel inner loops shared by the estimators: batched net evaluation,
// deterministic chunked sums, and sample-range reductions. Every kernel has a
// serial reference path and an OpenMP path that reproduce each other bit for
// bit: sums are accumulated per fixed-size chunk and the chunk partials are
// combined in index order, so the result does not depend on the thread count;
// min/max merges are exact in any order. tools/bench_kernels.cpp compares the
// two paths.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace netlimit::kernels {

enum class Exec { Serial, Parallel, Auto };

inline const char* exec_name(Exec e) {
    switch (e) {
        case Exec::Serial: return "serial";
        case Exec::Parallel: return "parallel";
        case Exec::Auto: return "auto";
    }
    return "?";
}

inline constexpr std::size_t kChunk = 1024;
inline constexpr std::size_t kAutoGrain = 4096;

inline bool parallel_available() {
#ifdef _OPENMP
    return omp_in_parallel() == 0;
#else
    return false;
#endif
}

inline bool use_parallel(Exec mode, std::size_t n, std::size_t grain = kAutoGrain) {
    switch (mode) {
        case Exec::Serial: return false;
        case Exec::Parallel: return parallel_available() && n > 1;
        case Exec::Auto: return parallel_available() && n >= grain;
    }
    return false;
}

// out[i] = f(i) for i in [0, n). The parallel map is element-wise, so both
// paths produce identical buffers.
template <class F>
void eval_into(std::size_t n, F&& f, double* out, Exec mode,
               std::size_t grain = kAutoGrain) {
    if (use_parallel(mode, n, grain)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            out[i] = f(static_cast<std::size_t>(i));
        }
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = f(i);
    }
}

// Sum of term(i) over [0, n) in deterministic chunk order: each kChunk-sized
// chunk is accumulated left to right and the partials are added in chunk
// order regardless of which thread computed them.
template <class F>
double sum_chunked(std::size_t n, F&& term, Exec mode,
                   std::size_t grain = kAutoGrain) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);
    auto chunk_sum = [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        return acc;
    };
    if (use_parallel(mode, n, grain)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
            partial[static_cast<std::size_t>(c)] = chunk_sum(static_cast<std::size_t>(c));
        }
#endif
    } else {
        for (std::size_t c = 0; c < nchunks; ++c) partial[c] = chunk_sum(c);
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// Range statistics of a sample buffer. lo/hi run over every non-NaN value;
// +-inf are kept as extended-real values so divergence stays classifiable.
struct SampleStats {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t finite = 0;
    std::size_t nans = 0;
    std::size_t total = 0;

    bool all_nan() const { return total > 0 && nans == total; }
    bool has_value() const { return nans < total; }
    double spread() const { return hi - lo; }
    double midpoint() const { return lo + (hi - lo) / 2.0; }
};

inline SampleStats stats_of(std::span<const double> values) {
    SampleStats s;
    s.total = values.size();
    for (double v : values) {
        if (std::isnan(v)) {
            ++s.nans;
            continue;
        }
        if (std::isfinite(v)) ++s.finite;
        s.lo = std::min(s.lo, v);
        s.hi = std::max(s.hi, v);
    }
    return s;
}

// max |v - center| over the buffer; NaN counts as an unbounded deviation.
inline double max_abs_dev(std::span<const double> values, double center) {
    double dev = 0.0;
    for (double v : values) {
        if (std::isnan(v)) return std::numeric_limits<double>::infinity();
        dev = std::max(dev, std::abs(v - center));
    }
    return dev;
}

// Riemann-Stieltjes sum over the knot list: sum of f(tag_i)*(g(k_{i+1})-g(k_i)).
// tag_pos in [0,1] places the tag inside each cell (0 left, 0.5 mid, 1 right).
template <class F, class G>
double riemann_sum(F&& f, G&& g, std::span<const double> knots, double tag_pos,
                   Exec mode) {
    const std::size_t cells = knots.size() < 2 ? 0 : knots.size() - 1;
    return sum_chunked(
        cells,
        [&](std::size_t i) {
            const double x0 = knots[i];
            const double x1 = knots[i + 1];
            const double tag = x0 + tag_pos * (x1 - x0);
            return f(tag) * (g(x1) - g(x0));
        },
        mode);
}

}  // namespace netlimit::kernels
