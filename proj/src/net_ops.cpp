#include "netlimit/net_ops.hpp"

#include <cmath>

#include "netlimit/errors.hpp"
#include "netlimit/rng.hpp"
#include "sampling.hpp"

namespace netlimit {

namespace {

constexpr std::uint64_t kProbeSalt = 0x756c74696d617465ULL;
constexpr std::uint64_t kVerifySalt = 0x76657269667921ULL;
constexpr std::size_t kProbesPerSegment = 32;
constexpr std::size_t kVerifyDensity = 10;
// Holds is only declared when at least this many clean segments follow the
// last observed violation.
constexpr std::size_t kCleanRun = 3;

Point common_start(const Direction& dir, const Net& f, const Net& g) {
    Point start = dir.chain_start();
    if (f.anchor()) start = dir.join(start, *f.anchor());
    if (g.anchor()) start = dir.join(start, *g.anchor());
    return start;
}

bool violates(double fv, double gv, bool strict, const Net& f, const Net& g,
              const Point& at) {
    if (std::isnan(fv) || std::isnan(gv)) {
        throw EvaluationError("comparison of '" + f.label() + "' and '" +
                              g.label() + "' undecidable at " +
                              point_to_string(at) + " (NaN operand)");
    }
    return strict ? !(fv < gv) : !(fv <= gv);
}

}  // namespace

Point join(const Direction& dir, const Point& x, const Point& y) {
    if (!dir.in_domain(x)) {
        throw DomainError(point_to_string(x) + " is outside the domain of '" +
                          dir.describe() + "'");
    }
    if (!dir.in_domain(y)) {
        throw DomainError(point_to_string(y) + " is outside the domain of '" +
                          dir.describe() + "'");
    }
    return dir.join(x, y);
}

std::vector<Point> cofinal_chain(const Direction& dir, std::size_t n) {
    return cofinal_chain(dir, n, dir.default_ratio());
}

std::vector<Point> cofinal_chain(const Direction& dir, std::size_t n, double ratio) {
    std::vector<Point> chain;
    chain.reserve(n);
    if (n == 0) return chain;
    Point p = dir.chain_start();
    chain.push_back(p);
    while (chain.size() < n) {
        auto next = dir.advance(p, ratio);
        if (!next) break;
        p = *next;
        chain.push_back(p);
    }
    return chain;
}

UltimatelyVerdict ultimately_less(const Net& f, const Net& g, const Direction& dir,
                                  std::size_t budget, bool strict) {
    if (budget == 0) return UltimatelyVerdict::exhausted();

    // Anchors a_0 .. a_B of the probed chain; segment k spans [a_k, a_{k+1}).
    std::vector<Point> anchors;
    anchors.push_back(common_start(dir, f, g));
    const double ratio = dir.default_ratio();
    for (std::size_t k = 0; k < budget; ++k) {
        auto next = dir.advance(anchors.back(), ratio);
        if (!next) break;
        anchors.push_back(std::move(*next));
    }
    if (anchors.size() < 2) return UltimatelyVerdict::exhausted();
    const std::size_t segments = anchors.size() - 1;

    auto scan_segment = [&](std::size_t k, std::size_t density,
                            std::uint64_t tag) -> std::optional<Point> {
        std::optional<Point> last_violation;
        detail::visit_segment_points(
            dir, anchors[k], anchors[k + 1], kProbesPerSegment * density,
            hash_mix(tag, k), [&](const Point& x) {
                if (violates(f(x), g(x), strict, f, g, x)) last_violation = x;
            });
        return last_violation;
    };

    std::optional<std::size_t> last_bad;
    std::optional<Point> last_witness;
    for (std::size_t k = 0; k < segments; ++k) {
        if (auto w = scan_segment(k, 1, kProbeSalt)) {
            last_bad = k;
            last_witness = std::move(w);
        }
    }

    if (last_bad && *last_bad == segments - 1) {
        return UltimatelyVerdict::refuted(std::move(*last_witness));
    }
    std::size_t candidate = 0;
    if (last_bad) {
        if (segments - 1 - *last_bad < kCleanRun) {
            return UltimatelyVerdict::exhausted();
        }
        candidate = *last_bad + 1;
    }

    // Denser sweep over the claimed tail before committing to Holds.
    for (std::size_t k = candidate; k < segments; ++k) {
        if (auto w = scan_segment(k, kVerifyDensity, kVerifySalt)) {
            if (k == segments - 1) return UltimatelyVerdict::refuted(std::move(*w));
            return UltimatelyVerdict::exhausted();
        }
    }
    return UltimatelyVerdict::hold(anchors[candidate]);
}

}  // namespace netlimit
