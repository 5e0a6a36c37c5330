#include "netlimit/axioms.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "netlimit/combinators.hpp"
#include "netlimit/corpus.hpp"
#include "netlimit/errors.hpp"
#include "netlimit/net_ops.hpp"
#include "netlimit/rng.hpp"

namespace netlimit {
namespace {

constexpr std::uint64_t kConstantsSalt = 0x636f6e7374736574;  // "constset"

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void add_violation(AxiomReport& report, std::string function, const Direction& dir,
                   std::string expected, std::string observed) {
    report.violations.push_back({std::move(function), dir.describe(),
                                 std::move(expected), std::move(observed)});
}

std::string ultimately_text(const UltimatelyVerdict& v) {
    switch (v.kind) {
        case UltimatelyVerdict::Kind::Holds:
            return "holds past " + point_to_string(*v.anchor);
        case UltimatelyVerdict::Kind::RefutedAt:
            return "refuted at " + point_to_string(*v.witness);
        case UltimatelyVerdict::Kind::BudgetExhausted:
            return "budget exhausted before a clean tail";
    }
    return "?";
}

// One selected inequality instance: lower's estimated limit is below upper's
// by more than 2*tolerance. `swapped` marks pairs the operator ordered
// against their construction (only a broken operator does that).
struct SelectedPair {
    const Net* lower;
    const Net* upper;
    std::string lower_desc;
    std::string upper_desc;
    double lim_lower;
    double lim_upper;
};

std::vector<SelectedPair> select_inequality_pairs(
    const LimitOperator& op,
    const std::vector<std::pair<CorpusEntry, CorpusEntry>>& pairs,
    const Direction& dir, const EstimateConfig& cfg) {
    std::vector<SelectedPair> out;
    for (const auto& pr : pairs) {
        LimitVerdict vf = op(pr.first.net, dir, cfg);
        LimitVerdict vg = op(pr.second.net, dir, cfg);
        if (!vf.converged() || !vg.converged()) continue;
        if (vf.value + 2.0 * cfg.tolerance < vg.value) {
            out.push_back({&pr.first.net, &pr.second.net, pr.first.description,
                           pr.second.description, vf.value, vg.value});
        } else if (vg.value + 2.0 * cfg.tolerance < vf.value) {
            out.push_back({&pr.second.net, &pr.first.net, pr.second.description,
                           pr.first.description, vg.value, vf.value});
        }
    }
    return out;
}

}  // namespace

LimitOperator envelope_operator() {
    return [](const Net& f, const Direction& dir, const EstimateConfig& cfg) {
        return estimate_limit(f, dir, cfg).verdict;
    };
}

LimitOperator monotone_operator() {
    return [](const Net& f, const Direction& dir,
              const EstimateConfig& cfg) -> LimitVerdict {
        try {
            return mb_limit(f, dir, cfg);
        } catch (const NotMonotone& e) {
            return LimitVerdict::inconclusive(
                std::string("not monotone along the sampled chain: ") + e.what());
        }
    };
}

namespace adversarial {

LimitOperator biased(double bias) {
    return [bias](const Net& f, const Direction& dir, const EstimateConfig& cfg) {
        LimitVerdict v = estimate_limit(f, dir, cfg).verdict;
        if (v.converged()) return LimitVerdict::converges(v.value + bias);
        return v;
    };
}

LimitOperator negated() {
    return [](const Net& f, const Direction& dir, const EstimateConfig& cfg) {
        LimitVerdict v = estimate_limit(f, dir, cfg).verdict;
        if (v.converged()) return LimitVerdict::converges(-v.value);
        return v;
    };
}

LimitOperator inconclusive() {
    return [](const Net&, const Direction&, const EstimateConfig&) {
        return LimitVerdict::inconclusive("stub refuses to classify");
    };
}

}  // namespace adversarial

AxiomReport check_constants(const LimitOperator& op, const DirectionPtr& dir,
                            std::uint64_t seed, const EstimateConfig& cfg) {
    AxiomReport report;
    report.axiom = "constants";
    report.direction = dir->describe();

    std::uint64_t state = hash_mix(seed, kConstantsSalt);
    std::vector<double> values{0.0};
    for (int i = 0; i < 7; ++i)
        values.push_back(-10.0 + 20.0 * unit_double(splitmix64(state)));

    for (double c : values) {
        Net f("constant " + fmt(c), [c](const Point&) { return c; },
              dir->chain_start());
        LimitVerdict v = op(f, *dir, cfg);
        ++report.cases;
        if (!v.converged() || std::abs(v.value - c) > 4.0 * cfg.tolerance)
            add_violation(report, f.label(), *dir, "Converges: " + fmt(c),
                          to_string(v));
    }
    return report;
}

AxiomReport check_inequality(const LimitOperator& op, const DirectionPtr& dir,
                             std::uint64_t seed, const EstimateConfig& cfg) {
    AxiomReport report;
    report.axiom = "inequality";
    report.direction = dir->describe();

    auto pairs = ordered_pairs(dir, seed);
    auto selected = select_inequality_pairs(op, pairs, *dir, cfg);
    for (const auto& s : selected) {
        ++report.cases;
        UltimatelyVerdict uv =
            ultimately_less(*s.lower, *s.upper, *dir, cfg.max_steps, true);
        if (!uv.holds())
            add_violation(report, s.lower_desc + "  ||  " + s.upper_desc, *dir,
                          "ultimately strictly below (estimated limits " +
                              fmt(s.lim_lower) + " < " + fmt(s.lim_upper) + ")",
                          ultimately_text(uv));
    }
    return report;
}

std::vector<InequalityCase> inequality_cases(const LimitOperator& op,
                                             const DirectionPtr& dir,
                                             std::uint64_t seed,
                                             const EstimateConfig& cfg) {
    auto pairs = ordered_pairs(dir, seed);
    std::vector<InequalityCase> out;
    for (const auto& s : select_inequality_pairs(op, pairs, *dir, cfg))
        out.push_back({s.lower_desc, s.upper_desc, s.lim_lower, s.lim_upper});
    return out;
}

AxiomReport check_inequality_theorem(const LimitOperator& op, const DirectionPtr& dir,
                                     std::uint64_t seed, const EstimateConfig& cfg) {
    AxiomReport report;
    report.axiom = "inequality_theorem";
    report.direction = dir->describe();

    for (const auto& pr : ordered_pairs(dir, seed)) {
        // Establish the hypothesis f <= g on a tail first; pairs the probe
        // cannot verify are skipped, not failed.
        UltimatelyVerdict uv = ultimately_less(pr.first.net, pr.second.net, *dir,
                                               cfg.max_steps, false);
        if (!uv.holds()) continue;
        LimitVerdict vf = op(pr.first.net, *dir, cfg);
        LimitVerdict vg = op(pr.second.net, *dir, cfg);
        if (!vf.converged() || !vg.converged()) continue;
        ++report.cases;
        if (vf.value > vg.value + 2.0 * cfg.tolerance)
            add_violation(report, pr.first.description + "  ||  " + pr.second.description,
                          *dir,
                          "lim f <= lim g + " + fmt(2.0 * cfg.tolerance),
                          "lim f = " + fmt(vf.value) + ", lim g = " + fmt(vg.value));
    }
    return report;
}

AxiomReport check_mb(const LimitOperator& op, const DirectionPtr& dir,
                     std::uint64_t seed, const EstimateConfig& cfg) {
    AxiomReport report;
    report.axiom = "monotone_bounded";
    report.direction = dir->describe();

    for (const auto& entry : function_corpus(dir, seed)) {
        if (!entry.monotone || !entry.bounded) continue;
        ++report.cases;
        LimitVerdict v = op(entry.net, *dir, cfg);
        if (!v.converged()) {
            add_violation(report, entry.description, *dir, "Converges", to_string(v));
        } else if (entry.limit &&
                   std::abs(v.value - *entry.limit) > 4.0 * cfg.tolerance) {
            add_violation(report, entry.description, *dir,
                          "Converges: " + fmt(*entry.limit), to_string(v));
        }
    }
    return report;
}

AxiomReport check_sandwich(const LimitOperator& op, const DirectionPtr& dir,
                           std::uint64_t seed, const EstimateConfig& cfg) {
    AxiomReport report;
    report.axiom = "sandwich";
    report.direction = dir->describe();

    for (const auto& t : squeeze_triples(dir, seed)) {
        ++report.cases;
        LimitVerdict v = op(t.middle, *dir, cfg);
        if (!v.converged() || std::abs(v.value - t.limit) > 4.0 * cfg.tolerance)
            add_violation(report, t.description, *dir, "Converges: " + fmt(t.limit),
                          to_string(v));
    }
    return report;
}

AxiomReport check_uniqueness(const LimitOperator& op_a, const LimitOperator& op_b,
                             const DirectionPtr& dir, std::uint64_t seed,
                             const EstimateConfig& cfg) {
    AxiomReport report;
    report.axiom = "uniqueness";
    report.direction = dir->describe();

    for (const auto& entry : function_corpus(dir, seed)) {
        LimitVerdict va = op_a(entry.net, *dir, cfg);
        LimitVerdict vb = op_b(entry.net, *dir, cfg);
        if (!va.converged() || !vb.converged()) continue;
        ++report.cases;
        if (std::abs(va.value - vb.value) > 4.0 * cfg.tolerance)
            add_violation(report, entry.description, *dir,
                          "agreement within " + fmt(4.0 * cfg.tolerance),
                          fmt(va.value) + " vs " + fmt(vb.value));
    }
    return report;
}

OperatorPair default_operators() {
    return {envelope_operator(), monotone_operator()};
}

std::vector<AxiomReport> run_all(const OperatorPair& ops,
                                 const std::vector<DirectionPtr>& dirs,
                                 std::uint64_t seed, const EstimateConfig& cfg) {
    std::vector<AxiomReport> reports;
    for (const auto& dir : dirs) {
        reports.push_back(check_constants(ops.primary, dir, seed, cfg));
        reports.push_back(check_inequality(ops.primary, dir, seed, cfg));
        reports.push_back(check_inequality_theorem(ops.primary, dir, seed, cfg));
        reports.push_back(check_mb(ops.primary, dir, seed, cfg));
        reports.push_back(check_sandwich(ops.primary, dir, seed, cfg));
        reports.push_back(check_uniqueness(ops.primary, ops.secondary, dir, seed, cfg));
    }
    return reports;
}

bool all_passed(const std::vector<AxiomReport>& reports) {
    for (const auto& r : reports)
        if (!r.passed()) return false;
    return true;
}

}  // namespace netlimit
