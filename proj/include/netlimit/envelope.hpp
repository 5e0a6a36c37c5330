#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "netlimit/direction.hpp"
#include "netlimit/kernels.hpp"
#include "netlimit/net.hpp"

namespace netlimit {

enum class VerdictKind {
    Converges,
    DivergesToPlusInfinity,
    DivergesToMinusInfinity,
    Oscillates,
    Inconclusive,
};

// Classified outcome of limit estimation. `value` is meaningful only for
// Converges, `liminf`/`limsup` only for Oscillates (with liminf < limsup),
// `reason` only for Inconclusive. The error bound of a convergent estimate is
// carried by the trace, not the verdict.
struct LimitVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    double value = 0.0;
    double liminf = 0.0;
    double limsup = 0.0;
    std::string reason;

    static LimitVerdict converges(double l) {
        LimitVerdict v;
        v.kind = VerdictKind::Converges;
        v.value = l;
        return v;
    }
    static LimitVerdict diverges_plus() {
        return LimitVerdict{VerdictKind::DivergesToPlusInfinity, 0, 0, 0, {}};
    }
    static LimitVerdict diverges_minus() {
        return LimitVerdict{VerdictKind::DivergesToMinusInfinity, 0, 0, 0, {}};
    }
    static LimitVerdict oscillates(double lo, double hi) {
        return LimitVerdict{VerdictKind::Oscillates, 0, lo, hi, {}};
    }
    static LimitVerdict inconclusive(std::string why) {
        LimitVerdict v;
        v.kind = VerdictKind::Inconclusive;
        v.reason = std::move(why);
        return v;
    }

    bool converged() const { return kind == VerdictKind::Converges; }
};

const char* verdict_kind_name(VerdictKind k);
std::string to_string(const LimitVerdict& v);

// Estimation knobs. Defaults suit well-behaved functions at double precision;
// raise `tolerance` for expensive nets (Riemann sums) or slow convergence.
struct EstimateConfig {
    double tolerance = 1e-9;              // target envelope gap
    std::size_t max_steps = 200;          // chain length budget
    std::size_t sub_samples = 64;         // probe points per chain segment
    double divergence_threshold = 1e12;   // magnitude treated as unbounded
    double ratio = 0.5;                   // chain refinement ratio in (0,1)
    double stabilization_tolerance = 1e-3;  // envelope Cauchy slack (oscillation)
    kernels::Exec exec = kernels::Exec::Auto;
};

// Throws ParamError naming the offending field.
void validate(const EstimateConfig& cfg);

// One chain step: anchor x_k, tail envelopes m_k <= f(x_k) <= M_k computed
// over every sample drawn at this step or later, the net's value at the
// anchor, and how many samples this step contributed.
struct EnvelopeStep {
    Point x;
    double m = 0.0;
    double M = 0.0;
    double value = 0.0;
    std::size_t samples = 0;
};

struct EnvelopeTrace {
    std::vector<EnvelopeStep> steps;

    bool empty() const { return steps.empty(); }
    const EnvelopeStep& last() const { return steps.back(); }
    // Half of the final envelope gap: the error bound of a convergent verdict.
    double error_bound() const {
        return steps.empty() ? 0.0 : (steps.back().M - steps.back().m) / 2.0;
    }
};

// Full-horizon envelope computation (no early stopping): walks the chain for
// cfg.max_steps segments (or until the chain exhausts) and returns the trace.
// Throws EvaluationError if every sample at some step is NaN.
EnvelopeTrace envelopes(const Net& f, const Direction& dir,
                        const EstimateConfig& cfg = {});

struct EstimateResult {
    LimitVerdict verdict;
    EnvelopeTrace trace;
};

// Limit estimation with early stopping: classifies convergence, divergence to
// +-infinity, oscillation, or gives up with a reason. When the verdict is
// Converges(l), l = (M_K + m_K)/2 and M_K - m_K <= cfg.tolerance at the final
// step K.
EstimateResult estimate_limit(const Net& f, const Direction& dir,
                              const EstimateConfig& cfg = {});

}  // namespace netlimit
