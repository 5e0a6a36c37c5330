#pragma once

#include "netlimit/envelope.hpp"

namespace netlimit {

// Limit via the monotone-bounded route: verifies monotonicity along the
// direction on every sample (with tolerance-scaled slack for ties), then
// classifies. Monotone and bounded nets converge; monotone unbounded nets get
// the matching extended verdict. Throws NotMonotone (with a witness pair of
// chain positions) when an inversion is found — use estimate_limit instead.
LimitVerdict mb_limit(const Net& f, const Direction& dir,
                      const EstimateConfig& cfg = {});

// Limit via the squeeze route: checks f <= g <= h on tail samples, requires
// the outer limits to exist and agree within cfg.tolerance, and returns their
// shared limit for g. Throws OrderingViolated when a probe breaks the
// ordering and SandwichGap when the outer limits disagree.
LimitVerdict sandwich_limit(const Net& f, const Net& g, const Net& h,
                            const Direction& dir, const EstimateConfig& cfg = {});

// Algebraic combinators: estimate each operand independently, verify the
// decomposition (operand minus its limit must vanish along the direction),
// and combine. Throws OperandDiverges when an operand fails to converge
// (except the bounded-times-vanishing product case, which converges to 0) and
// ZeroDenominatorLimit when the denominator's limit is within tolerance of 0.
LimitVerdict limit_of_sum(const Net& f, const Net& g, const Direction& dir,
                          const EstimateConfig& cfg = {});
LimitVerdict limit_of_product(const Net& f, const Net& g, const Direction& dir,
                              const EstimateConfig& cfg = {});
LimitVerdict limit_of_quotient(const Net& f, const Net& g, const Direction& dir,
                               const EstimateConfig& cfg = {});

}  // namespace netlimit
