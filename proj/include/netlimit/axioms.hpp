#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "netlimit/direction.hpp"
#include "netlimit/envelope.hpp"
#include "netlimit/net.hpp"

namespace netlimit {

// Any limit-operator implementation under audit. Must be deterministic:
// identical inputs yield identical verdicts.
using LimitOperator =
    std::function<LimitVerdict(const Net&, const Direction&, const EstimateConfig&)>;

struct AxiomViolation {
    std::string function;   // description of the offending function(s)
    std::string direction;  // direction the case ran along
    std::string expected;
    std::string observed;
};

struct AxiomReport {
    std::string axiom;      // check id: "constants", "inequality", ...
    std::string direction;  // direction the check ran along
    std::size_t cases = 0;  // property instances actually tested
    std::vector<AxiomViolation> violations;

    bool passed() const { return violations.empty(); }
};

// The reference operator: sup/inf envelope estimation.
LimitOperator envelope_operator();

// Independent second route: the monotone-bounded classifier. Functions that
// are not monotone along the sampled chain come back Inconclusive, so checks
// comparing two operators simply skip them.
LimitOperator monotone_operator();

// Deliberately broken operators for harness self-tests: each check must flag
// at least one violation when audited against its designated stub.
namespace adversarial {

// Shifts every converged value by `bias` (breaks constants and uniqueness).
LimitOperator biased(double bias);

// Negates every converged value (breaks the inequality checks by reversing
// every estimated order).
LimitOperator negated();

// Refuses to classify anything (breaks the convergence checks).
LimitOperator inconclusive();

}  // namespace adversarial

// Constant functions must come back Converges(c). Samples c = 0 plus seeded
// constants.
AxiomReport check_constants(const LimitOperator& op, const DirectionPtr& dir,
                            std::uint64_t seed, const EstimateConfig& cfg = {});

// Where the operator reports lim f strictly below lim g (gap above
// 2*tolerance -- the ambiguous zone is excluded), f must be ultimately
// strictly below g along the direction.
AxiomReport check_inequality(const LimitOperator& op, const DirectionPtr& dir,
                             std::uint64_t seed, const EstimateConfig& cfg = {});

// Contrapositive direction: pairs verified f <= g on a tail must satisfy
// lim f <= lim g + 2*tolerance.
AxiomReport check_inequality_theorem(const LimitOperator& op, const DirectionPtr& dir,
                                     std::uint64_t seed,
                                     const EstimateConfig& cfg = {});

// Every generated monotone bounded function must receive a Converges verdict
// (and match the analytic limit when known). Unbounded corpus entries are
// excluded by the boundedness filter.
AxiomReport check_mb(const LimitOperator& op, const DirectionPtr& dir,
                     std::uint64_t seed, const EstimateConfig& cfg = {});

// For generated triples f <= g <= h with lim f = lim h = l, the operator must
// yield Converges near l for the squeezed middle function.
AxiomReport check_sandwich(const LimitOperator& op, const DirectionPtr& dir,
                           std::uint64_t seed, const EstimateConfig& cfg = {});

// Two operators satisfying the order properties define the same limit: where
// both converge on a corpus function, values must agree within 4*tolerance.
AxiomReport check_uniqueness(const LimitOperator& op_a, const LimitOperator& op_b,
                             const DirectionPtr& dir, std::uint64_t seed,
                             const EstimateConfig& cfg = {});

// The pairs check_inequality actually selects (estimated limits in order,
// gap above 2*tolerance), exposed so the selection rule itself is testable.
struct InequalityCase {
    std::string lower_desc;
    std::string upper_desc;
    double lim_lower = 0.0;
    double lim_upper = 0.0;
};
std::vector<InequalityCase> inequality_cases(const LimitOperator& op,
                                             const DirectionPtr& dir,
                                             std::uint64_t seed,
                                             const EstimateConfig& cfg = {});

struct OperatorPair {
    LimitOperator primary;
    LimitOperator secondary;
};

// Envelope estimator plus monotone-bounded classifier.
OperatorPair default_operators();

// Every check along every supplied direction, in a fixed order; 6 reports per
// direction. Deterministic given (seed, cfg).
std::vector<AxiomReport> run_all(const OperatorPair& ops,
                                 const std::vector<DirectionPtr>& dirs,
                                 std::uint64_t seed, const EstimateConfig& cfg = {});

bool all_passed(const std::vector<AxiomReport>& reports);

}  // namespace netlimit
