#include "netlimit/envelope.hpp"

#include <cmath>
#include <string>

#include "netlimit/errors.hpp"
#include "sampling.hpp"

namespace netlimit {

namespace {

constexpr std::uint64_t kEnvelopeSalt = 0x73616d706c657221ULL;
// Divergence requires the escaping envelope to rise monotonically across this
// many steps beyond the threshold.
constexpr std::size_t kDivergenceWindow = 5;
// Oscillation requires both envelopes to be stable across this many steps.
constexpr std::size_t kStabilizationWindow = 5;
// ... while the envelope gap shrank by no more than this fraction (a gap
// still contracting faster is slow convergence, not oscillation).
constexpr double kPlateauShrink = 0.05;

double mid(double lo, double hi) { return lo + (hi - lo) / 2.0; }

bool window_increasing(const std::vector<double>& v, std::size_t w) {
    if (v.size() < w) return false;
    for (std::size_t i = v.size() - w + 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) return false;
    }
    return true;
}

bool window_decreasing(const std::vector<double>& v, std::size_t w) {
    if (v.size() < w) return false;
    for (std::size_t i = v.size() - w + 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) return false;
    }
    return true;
}

struct Walk {
    std::vector<detail::SegmentScan> segs;
    bool exhausted = false;  // chain ran out of resolution before max_steps
};

// Walks the canonical chain from the net's definition tail, scanning one
// segment per step. on_step may return a verdict to stop early.
template <class StepFn>
Walk walk_chain(const Net& f, const Direction& dir, const EstimateConfig& cfg,
                StepFn&& on_step) {
    Walk walk;
    walk.segs.reserve(cfg.max_steps);
    Point cur = detail::start_anchor(f, dir);
    for (std::size_t k = 0; k < cfg.max_steps; ++k) {
        auto next = dir.advance(cur, cfg.ratio);
        if (!next) {
            walk.exhausted = true;
            break;
        }
        walk.segs.push_back(detail::scan_segment(f, dir, cur, *next,
                                                 cfg.sub_samples,
                                                 hash_mix(kEnvelopeSalt, k),
                                                 cfg.exec, k));
        if (on_step(walk.segs)) break;
        cur = std::move(*next);
    }
    return walk;
}

LimitVerdict check_divergence(const std::vector<detail::SegmentScan>& segs,
                              double threshold) {
    const auto& last = segs.back();
    const double inf = std::numeric_limits<double>::infinity();
    if (last.lo == inf) return LimitVerdict::diverges_plus();
    if (last.hi == -inf) return LimitVerdict::diverges_minus();
    if (last.lo >= threshold && segs.size() >= kDivergenceWindow) {
        std::vector<double> lows;
        lows.reserve(segs.size());
        for (const auto& s : segs) lows.push_back(s.lo);
        if (window_increasing(lows, kDivergenceWindow)) {
            return LimitVerdict::diverges_plus();
        }
    }
    if (last.hi <= -threshold && segs.size() >= kDivergenceWindow) {
        std::vector<double> highs;
        highs.reserve(segs.size());
        for (const auto& s : segs) highs.push_back(s.hi);
        if (window_decreasing(highs, kDivergenceWindow)) {
            return LimitVerdict::diverges_minus();
        }
    }
    return LimitVerdict::inconclusive("");
}

// Classification once the walk ended without an early verdict: convergence if
// the final gap closed anyway, oscillation if both envelopes went quiet while
// the gap plateaued above tolerance, otherwise inconclusive.
LimitVerdict classify_at_horizon(const EnvelopeTrace& trace,
                                 const EstimateConfig& cfg, bool exhausted) {
    const std::size_t n = trace.steps.size();
    const auto& last = trace.steps.back();
    const double gap = last.M - last.m;
    if (gap <= cfg.tolerance) {
        return LimitVerdict::converges(mid(last.m, last.M));
    }
    if (n > kStabilizationWindow && std::isfinite(gap)) {
        const std::size_t base = n - 1 - kStabilizationWindow;
        const double slack_hi =
            cfg.stabilization_tolerance * std::max(1.0, std::abs(last.M));
        const double slack_lo =
            cfg.stabilization_tolerance * std::max(1.0, std::abs(last.m));
        bool stable = true;
        for (std::size_t j = base + 1; j < n && stable; ++j) {
            stable = std::abs(trace.steps[j].M - trace.steps[j - 1].M) <= slack_hi &&
                     std::abs(trace.steps[j].m - trace.steps[j - 1].m) <= slack_lo;
        }
        const double base_gap = trace.steps[base].M - trace.steps[base].m;
        const bool plateaued =
            std::isfinite(base_gap) && base_gap - gap <= kPlateauShrink * base_gap;
        if (stable && plateaued) {
            // Report the envelopes a window back: same limits, several times
            // the sample support under the extremes.
            return LimitVerdict::oscillates(trace.steps[base].m,
                                            trace.steps[base].M);
        }
    }
    std::string why = exhausted
                          ? "chain exhausted at floating point resolution after " +
                                std::to_string(n) + " steps"
                          : "no verdict within " + std::to_string(n) +
                                " chain steps";
    why += "; envelope gap " + point_to_string(gap) + " above tolerance " +
           point_to_string(cfg.tolerance);
    return LimitVerdict::inconclusive(why);
}

}  // namespace

const char* verdict_kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Converges: return "converges";
        case VerdictKind::DivergesToPlusInfinity: return "diverges_to_plus_infinity";
        case VerdictKind::DivergesToMinusInfinity:
            return "diverges_to_minus_infinity";
        case VerdictKind::Oscillates: return "oscillates";
        case VerdictKind::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string to_string(const LimitVerdict& v) {
    switch (v.kind) {
        case VerdictKind::Converges:
            return "Converges(" + point_to_string(v.value) + ")";
        case VerdictKind::DivergesToPlusInfinity: return "DivergesToPlusInfinity";
        case VerdictKind::DivergesToMinusInfinity: return "DivergesToMinusInfinity";
        case VerdictKind::Oscillates:
            return "Oscillates(liminf=" + point_to_string(v.liminf) +
                   ", limsup=" + point_to_string(v.limsup) + ")";
        case VerdictKind::Inconclusive: return "Inconclusive: " + v.reason;
    }
    return "Inconclusive";
}

void validate(const EstimateConfig& cfg) {
    if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) {
        throw ParamError("tolerance", "tolerance must be positive and finite");
    }
    if (cfg.max_steps < 2) {
        throw ParamError("max_steps", "need at least 2 chain steps");
    }
    if (cfg.sub_samples < 1) {
        throw ParamError("sub_samples", "need at least 1 sample per step");
    }
    if (!(cfg.divergence_threshold > 0.0)) {
        throw ParamError("divergence_threshold", "threshold must be positive");
    }
    if (!(cfg.ratio > 0.0 && cfg.ratio < 1.0)) {
        throw ParamError("ratio", "refinement ratio must lie in (0, 1)");
    }
    if (!(cfg.stabilization_tolerance > 0.0)) {
        throw ParamError("stabilization_tolerance",
                         "stabilization tolerance must be positive");
    }
}

EnvelopeTrace envelopes(const Net& f, const Direction& dir,
                        const EstimateConfig& cfg) {
    validate(cfg);
    auto walk = walk_chain(f, dir, cfg, [](const auto&) { return false; });
    return detail::finalize_trace(walk.segs);
}

EstimateResult estimate_limit(const Net& f, const Direction& dir,
                              const EstimateConfig& cfg) {
    validate(cfg);
    LimitVerdict early = LimitVerdict::inconclusive("");
    bool stopped = false;
    auto walk = walk_chain(f, dir, cfg, [&](const auto& segs) {
        LimitVerdict div = check_divergence(segs, cfg.divergence_threshold);
        if (div.kind != VerdictKind::Inconclusive) {
            early = div;
            stopped = true;
            return true;
        }
        if (detail::window_converged(segs, cfg.tolerance)) {
            const auto& s = segs.back();
            early = LimitVerdict::converges(mid(s.lo, s.hi));
            stopped = true;
            return true;
        }
        return false;
    });

    if (walk.segs.empty()) {
        return EstimateResult{
            LimitVerdict::inconclusive(
                "chain provides no segment to sample (resolution exhausted at "
                "the start anchor)"),
            EnvelopeTrace{}};
    }
    EnvelopeTrace trace = detail::finalize_trace(walk.segs);
    if (stopped) return EstimateResult{std::move(early), std::move(trace)};
    LimitVerdict verdict = classify_at_horizon(trace, cfg, walk.exhausted);
    return EstimateResult{std::move(verdict), std::move(trace)};
}

}  // namespace netlimit
