#pragma once

// Internal chain-walking helpers shared by the estimator and the certificate
// verifier. Not installed; include only from src/.

#include <cstdint>
#include <vector>

#include "netlimit/direction.hpp"
#include "netlimit/envelope.hpp"
#include "netlimit/errors.hpp"
#include "netlimit/kernels.hpp"
#include "netlimit/net.hpp"
#include "netlimit/rng.hpp"

namespace netlimit::detail {

// Raw (per-segment) sample statistics before envelope finalization.
struct SegmentScan {
    Point anchor;
    double lo = 0.0;
    double hi = 0.0;
    double at_anchor = 0.0;
    std::size_t samples = 0;
};

inline Point start_anchor(const Net& f, const Direction& dir) {
    Point start = dir.chain_start();
    if (f.anchor()) start = dir.join(start, *f.anchor());
    return start;
}

// Probe partitions are materialized as full knot lists, so a whole segment's
// worth of them held at once can dwarf the rest of the process. Partition
// probes are therefore generated and consumed in small batches (each batch
// salted separately so the combined set stays deterministic). Point-valued
// directions keep the single generation call.
inline constexpr std::size_t kPartitionBatch = 16;

template <typename Fn>
void visit_segment_points(const Direction& dir, const Point& from, const Point& to,
                          std::size_t count, std::uint64_t salt, Fn&& fn) {
    if (dir.kind() != DirKind::PartitionsOf || count <= kPartitionBatch) {
        for (const Point& p : dir.segment_points(from, to, count, salt)) fn(p);
        return;
    }
    std::size_t done = 0;
    for (std::uint64_t batch = 1; done < count; ++batch) {
        const std::size_t take = std::min(kPartitionBatch, count - done);
        for (const Point& p :
             dir.segment_points(from, to, take, hash_mix(salt, batch))) {
            fn(p);
        }
        done += take;
    }
}

inline SegmentScan scan_segment(const Net& f, const Direction& dir,
                                const Point& from, const Point& to,
                                std::size_t count, std::uint64_t salt,
                                kernels::Exec exec, std::size_t step_index) {
    kernels::SampleStats stats;
    double at_anchor = 0.0;
    if (dir.kind() == DirKind::PartitionsOf) {
        // Fold the statistics as the probes stream by; each evaluation is a
        // full Riemann sum and parallelizes internally.
        visit_segment_points(dir, from, to, count, salt, [&](const Point& p) {
            const double v = f(p);
            if (stats.total == 0) at_anchor = v;
            ++stats.total;
            if (std::isnan(v)) {
                ++stats.nans;
                return;
            }
            if (std::isfinite(v)) ++stats.finite;
            stats.lo = std::min(stats.lo, v);
            stats.hi = std::max(stats.hi, v);
        });
    } else {
        const auto pts = dir.segment_points(from, to, count, salt);
        std::vector<double> values(pts.size());
        kernels::eval_into(
            pts.size(), [&](std::size_t i) { return f(pts[i]); }, values.data(),
            exec);
        stats = kernels::stats_of(values);
        at_anchor = values.empty() ? 0.0 : values[0];
    }
    if (stats.all_nan()) {
        throw EvaluationError("net '" + f.label() +
                              "' produced no usable samples at chain step " +
                              std::to_string(step_index) + " near " +
                              point_to_string(from));
    }
    return SegmentScan{from, stats.lo, stats.hi, at_anchor, stats.total};
}

// A convergence verdict requires this many consecutive quiet segments, so a
// single accidentally-flat segment (piecewise or sparsely sampled functions)
// cannot end the walk early.
inline constexpr std::size_t kConvergenceWindow = 3;

// Convergence test shared by the estimators: the last kConvergenceWindow
// segments each have an envelope gap within half the tolerance and their
// midpoints drift by at most the tolerance. Stopping at half-gap keeps the
// reported value well inside the tolerance of the true limit even for
// one-sided (monotone) approach.
inline bool window_converged(const std::vector<SegmentScan>& segs, double tol) {
    if (segs.size() < kConvergenceWindow) return false;
    auto mid = [](const SegmentScan& s) { return s.lo + (s.hi - s.lo) / 2.0; };
    const std::size_t first = segs.size() - kConvergenceWindow;
    for (std::size_t j = first; j < segs.size(); ++j) {
        if (!(segs[j].hi - segs[j].lo <= tol / 2.0)) return false;
        if (j > first && !(std::abs(mid(segs[j]) - mid(segs[j - 1])) <= tol)) {
            return false;
        }
    }
    return true;
}

// Tail envelopes from raw segment scans: M_k = max of hi over steps >= k,
// m_k = min of lo, computed by one suffix pass so monotonicity is exact.
inline EnvelopeTrace finalize_trace(const std::vector<SegmentScan>& segs) {
    EnvelopeTrace trace;
    trace.steps.resize(segs.size());
    double run_hi = -std::numeric_limits<double>::infinity();
    double run_lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = segs.size(); i-- > 0;) {
        run_hi = std::max(run_hi, segs[i].hi);
        run_lo = std::min(run_lo, segs[i].lo);
        trace.steps[i] =
            EnvelopeStep{segs[i].anchor, run_lo, run_hi, segs[i].at_anchor,
                         segs[i].samples};
    }
    return trace;
}

}  // namespace netlimit::detail
