#include "netlimit/combinators.hpp"

#include <cmath>

#include "netlimit/errors.hpp"
#include "netlimit/net_ops.hpp"
#include "sampling.hpp"

namespace netlimit {

namespace {

constexpr std::uint64_t kMonotoneSalt = 0x6d6f6e6f746f6e65ULL;

std::string num(double v) { return point_to_string(v); }

// f - c with the same definition tail.
Net recentered(const Net& f, double c) {
    return Net(f.label() + " - " + num(c),
               [f, c](const Point& p) { return f(p) - c; }, f.anchor());
}

// The decomposition behind the algebra rules: an operand claiming limit c
// must vanish once recentered. Catches estimates that settled on a transient.
void require_vanishes(const Net& f, double c, const Direction& dir,
                      const EstimateConfig& cfg) {
    const Net z = recentered(f, c);
    const auto r = estimate_limit(z, dir, cfg);
    if (!r.verdict.converged() ||
        std::abs(r.verdict.value) > 4.0 * cfg.tolerance) {
        throw OperandDiverges("'" + f.label() + "' recentered by " + num(c) +
                              " does not vanish along " + dir.describe() + ": " +
                              to_string(r.verdict));
    }
}

LimitVerdict operand_verdict(const Net& f, const Direction& dir,
                             const EstimateConfig& cfg) {
    return estimate_limit(f, dir, cfg).verdict;
}

bool bounded_oscillation(const LimitVerdict& v) {
    return v.kind == VerdictKind::Oscillates && std::isfinite(v.liminf) &&
           std::isfinite(v.limsup);
}

}  // namespace

LimitVerdict mb_limit(const Net& f, const Direction& dir,
                      const EstimateConfig& cfg) {
    validate(cfg);
    std::vector<detail::SegmentScan> segs;
    segs.reserve(cfg.max_steps);

    int trend = 0;  // +1 nondecreasing so far, -1 nonincreasing, 0 all ties
    bool have_prev = false;
    double prev_value = 0.0;
    Point prev_point;

    bool exhausted = false;
    Point cur = detail::start_anchor(f, dir);
    for (std::size_t k = 0; k < cfg.max_steps; ++k) {
        auto next = dir.advance(cur, cfg.ratio);
        if (!next) {
            exhausted = true;
            break;
        }
        const auto pts = dir.segment_points(cur, *next, cfg.sub_samples,
                                            hash_mix(kMonotoneSalt, k));
        std::vector<double> values(pts.size());
        kernels::eval_into(
            pts.size(), [&](std::size_t i) { return f(pts[i]); }, values.data(),
            cfg.exec);
        const auto stats = kernels::stats_of(values);
        if (stats.all_nan()) {
            throw EvaluationError("net '" + f.label() +
                                  "' produced no usable samples at chain step " +
                                  std::to_string(k) + " near " +
                                  point_to_string(cur));
        }
        segs.push_back(detail::SegmentScan{cur, stats.lo, stats.hi,
                                           values.empty() ? 0.0 : values[0],
                                           pts.size()});

        // Monotonicity scan in chain order, carrying across segment borders.
        // Ties within tolerance-scaled slack are allowed; NaN samples are
        // skipped (they carry no order information).
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double v = values[i];
            if (std::isnan(v)) continue;
            if (have_prev && v != prev_value) {
                const double slack = cfg.tolerance *
                                     std::max({1.0, std::abs(prev_value),
                                               std::abs(v)});
                if (std::abs(v - prev_value) > slack) {
                    const int sign = v > prev_value ? 1 : -1;
                    if (trend == 0) {
                        trend = sign;
                    } else if (sign != trend) {
                        throw NotMonotone(
                            dir.progress(prev_point), dir.progress(pts[i]),
                            "'" + f.label() + "' is not monotone along " +
                                dir.describe() + ": value " + num(prev_value) +
                                " at " + point_to_string(prev_point) +
                                " versus " + num(v) + " at " +
                                point_to_string(pts[i]));
                    }
                }
            }
            have_prev = true;
            prev_value = v;
            prev_point = pts[i];
        }

        // Monotone escape past the magnitude threshold: with a witnessed
        // increase (decrease) and monotonicity verified, no multi-step window
        // is needed.
        if (trend > 0 && segs.back().lo >= cfg.divergence_threshold) {
            return LimitVerdict::diverges_plus();
        }
        if (trend < 0 && segs.back().hi <= -cfg.divergence_threshold) {
            return LimitVerdict::diverges_minus();
        }

        if (detail::window_converged(segs, cfg.tolerance)) {
            const auto& s = segs.back();
            return LimitVerdict::converges(s.lo + (s.hi - s.lo) / 2.0);
        }
        cur = std::move(*next);
    }

    if (segs.empty()) {
        return LimitVerdict::inconclusive(
            "chain provides no segment to sample (resolution exhausted at the "
            "start anchor)");
    }
    const double gap = segs.back().hi - segs.back().lo;
    std::string why = "monotone so far, but the envelope gap " + num(gap) +
                      " stayed above tolerance " + num(cfg.tolerance);
    why += exhausted ? " when the chain exhausted after " +
                           std::to_string(segs.size()) + " steps"
                     : " within " + std::to_string(segs.size()) + " chain steps";
    return LimitVerdict::inconclusive(why);
}

LimitVerdict sandwich_limit(const Net& f, const Net& g, const Net& h,
                            const Direction& dir, const EstimateConfig& cfg) {
    validate(cfg);
    const auto check_order = [&](const Net& lo, const Net& hi) {
        const auto ord = ultimately_less(lo, hi, dir, cfg.max_steps,
                                         /*strict=*/false);
        if (ord.kind == UltimatelyVerdict::Kind::RefutedAt) {
            throw OrderingViolated("'" + lo.label() + "' <= '" + hi.label() +
                                   "' fails at " + point_to_string(*ord.witness) +
                                   " along " + dir.describe());
        }
        return ord.holds();
    };
    if (!check_order(f, g) || !check_order(g, h)) {
        return LimitVerdict::inconclusive(
            "ordering of the squeeze could not be settled within budget");
    }

    const auto lower = estimate_limit(f, dir, cfg).verdict;
    const auto upper = estimate_limit(h, dir, cfg).verdict;
    if (lower.kind == VerdictKind::DivergesToPlusInfinity) {
        return LimitVerdict::diverges_plus();  // g dominates f
    }
    if (upper.kind == VerdictKind::DivergesToMinusInfinity) {
        return LimitVerdict::diverges_minus();  // g is dominated by h
    }
    if (lower.converged() && upper.converged()) {
        const double gap = std::abs(lower.value - upper.value);
        if (gap > cfg.tolerance) {
            throw SandwichGap(lower.value, upper.value,
                              "outer limits disagree: " + num(lower.value) +
                                  " versus " + num(upper.value));
        }
        return LimitVerdict::converges(lower.value +
                                       (upper.value - lower.value) / 2.0);
    }
    return LimitVerdict::inconclusive(
        "outer nets did not both converge: lower " + to_string(lower) +
        ", upper " + to_string(upper));
}

LimitVerdict limit_of_sum(const Net& f, const Net& g, const Direction& dir,
                          const EstimateConfig& cfg) {
    validate(cfg);
    const auto vf = operand_verdict(f, dir, cfg);
    if (!vf.converged()) {
        throw OperandDiverges("'" + f.label() + "' does not converge along " +
                              dir.describe() + ": " + to_string(vf));
    }
    const auto vg = operand_verdict(g, dir, cfg);
    if (!vg.converged()) {
        throw OperandDiverges("'" + g.label() + "' does not converge along " +
                              dir.describe() + ": " + to_string(vg));
    }
    require_vanishes(f, vf.value, dir, cfg);
    require_vanishes(g, vg.value, dir, cfg);
    return LimitVerdict::converges(vf.value + vg.value);
}

LimitVerdict limit_of_product(const Net& f, const Net& g, const Direction& dir,
                              const EstimateConfig& cfg) {
    validate(cfg);
    const auto vf = operand_verdict(f, dir, cfg);
    const auto vg = operand_verdict(g, dir, cfg);
    if (vf.converged() && vg.converged()) {
        require_vanishes(f, vf.value, dir, cfg);
        require_vanishes(g, vg.value, dir, cfg);
        return LimitVerdict::converges(vf.value * vg.value);
    }
    // Vanishing times bounded-oscillating still converges (to zero).
    const bool f_null = vf.converged() && std::abs(vf.value) <= cfg.tolerance;
    const bool g_null = vg.converged() && std::abs(vg.value) <= cfg.tolerance;
    if (f_null && bounded_oscillation(vg)) {
        require_vanishes(f, 0.0, dir, cfg);
        return LimitVerdict::converges(0.0);
    }
    if (g_null && bounded_oscillation(vf)) {
        require_vanishes(g, 0.0, dir, cfg);
        return LimitVerdict::converges(0.0);
    }
    const auto& bad = vf.converged() ? vg : vf;
    const auto& bad_net = vf.converged() ? g : f;
    throw OperandDiverges("'" + bad_net.label() + "' does not converge along " +
                          dir.describe() + ": " + to_string(bad));
}

LimitVerdict limit_of_quotient(const Net& f, const Net& g, const Direction& dir,
                               const EstimateConfig& cfg) {
    validate(cfg);
    const auto vg = operand_verdict(g, dir, cfg);
    if (!vg.converged()) {
        throw OperandDiverges("denominator '" + g.label() +
                              "' does not converge along " + dir.describe() +
                              ": " + to_string(vg));
    }
    if (std::abs(vg.value) <= cfg.tolerance) {
        throw ZeroDenominatorLimit("denominator '" + g.label() + "' has limit " +
                                   num(vg.value) + ", within tolerance of zero");
    }
    const auto vf = operand_verdict(f, dir, cfg);
    if (!vf.converged()) {
        throw OperandDiverges("numerator '" + f.label() +
                              "' does not converge along " + dir.describe() +
                              ": " + to_string(vf));
    }
    require_vanishes(f, vf.value, dir, cfg);
    require_vanishes(g, vg.value, dir, cfg);
    return LimitVerdict::converges(vf.value / vg.value);
}

}  // namespace netlimit
