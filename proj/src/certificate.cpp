#include "netlimit/certificate.hpp"

#include <cmath>
#include <limits>

#include "netlimit/errors.hpp"
#include "sampling.hpp"

namespace netlimit {

namespace {

constexpr std::uint64_t kCertifySalt = 0x63657274696679ULL;
constexpr std::size_t kVerifyDensity = 10;
// Extra verification segments probed beyond the step where the estimate
// settles. Kept small on purpose: far deeper tails can hit floating point
// cancellation that refutes a mathematically correct limit.
constexpr std::size_t kExtraSteps = 3;

}  // namespace

Certificate epsilon_delta_certificate(const Net& f, const Direction& dir,
                                      double l, const std::vector<double>& eps_list,
                                      const EstimateConfig& cfg) {
    validate(cfg);
    if (!std::isfinite(l)) {
        throw ParamError("l", "claimed limit must be finite, got " +
                                  point_to_string(l));
    }
    if (eps_list.empty()) {
        throw ParamError("eps_list", "need at least one epsilon");
    }
    for (double eps : eps_list) {
        if (!(eps > 0.0) || !std::isfinite(eps)) {
            throw ParamError("eps_list", "epsilons must be positive and finite, got " +
                                             point_to_string(eps));
        }
    }

    // Estimation pre-pass fixes the verification horizon: a few segments past
    // the step where the estimate settled, or the full estimation horizon
    // when it never did.
    const EstimateResult pre = estimate_limit(f, dir, cfg);
    std::size_t horizon = pre.trace.steps.size();
    if (pre.verdict.converged()) horizon += kExtraSteps;
    horizon = std::min(horizon, cfg.max_steps);

    // Walk the same chain with a 10x denser grid, recording per-segment
    // maximum deviation from the claimed limit (NaN counts as unbounded).
    std::vector<double> dev;
    std::vector<std::size_t> counts;
    std::vector<Point> anchors;
    Point cur = detail::start_anchor(f, dir);
    for (std::size_t k = 0; k < horizon; ++k) {
        auto next = dir.advance(cur, cfg.ratio);
        if (!next) break;
        double worst = 0.0;
        std::size_t sampled = 0;
        detail::visit_segment_points(
            dir, cur, *next, cfg.sub_samples * kVerifyDensity,
            hash_mix(kCertifySalt, k), [&](const Point& x) {
                const double v = f(x);
                const double d = std::isnan(v)
                                     ? std::numeric_limits<double>::infinity()
                                     : std::abs(v - l);
                worst = std::max(worst, d);
                ++sampled;
            });
        anchors.push_back(cur);
        dev.push_back(worst);
        counts.push_back(sampled);
        cur = std::move(*next);
    }
    if (dev.empty()) {
        throw CertificationFailure(
            eps_list.front(),
            "no chain segment available to verify the claimed limit");
    }

    // Suffix maxima: tail_dev[j] bounds |f - l| over every sample from
    // segment j onward.
    const std::size_t n = dev.size();
    std::vector<double> tail_dev(n);
    std::vector<std::size_t> tail_count(n);
    double run = 0.0;
    std::size_t cnt = 0;
    for (std::size_t j = n; j-- > 0;) {
        run = std::max(run, dev[j]);
        cnt += counts[j];
        tail_dev[j] = run;
        tail_count[j] = cnt;
    }

    Certificate cert;
    cert.limit = l;
    cert.delta_label = dir.delta_label();
    cert.entries.reserve(eps_list.size());
    for (double eps : eps_list) {
        std::size_t found = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (tail_dev[j] <= eps) {
                found = j;
                break;
            }
        }
        if (found == n) {
            throw CertificationFailure(
                eps, "epsilon " + point_to_string(eps) +
                         " not certified for claimed limit " + point_to_string(l) +
                         ": residual deviation " + point_to_string(tail_dev[n - 1]) +
                         " past the deepest probed anchor");
        }
        cert.entries.push_back(CertificateEntry{eps, anchors[found],
                                                dir.anchor_delta(anchors[found]),
                                                tail_count[found]});
    }
    return cert;
}

}  // namespace netlimit
