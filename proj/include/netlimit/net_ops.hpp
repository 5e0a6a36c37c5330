#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "netlimit/direction.hpp"
#include "netlimit/net.hpp"

namespace netlimit {

// Outcome of the budgeted tail-comparison probe. Never a proof: Holds reports
// an anchor past which every probe satisfied the relation, RefutedAt reports a
// counterexample found in the latest probed tail, BudgetExhausted means the
// probes disagreed too recently to call it either way.
struct UltimatelyVerdict {
    enum class Kind { Holds, RefutedAt, BudgetExhausted };

    Kind kind;
    std::optional<Point> anchor;   // set when Holds
    std::optional<Point> witness;  // set when RefutedAt

    static UltimatelyVerdict hold(Point a) {
        return {Kind::Holds, std::move(a), std::nullopt};
    }
    static UltimatelyVerdict refuted(Point x) {
        return {Kind::RefutedAt, std::nullopt, std::move(x)};
    }
    static UltimatelyVerdict exhausted() {
        return {Kind::BudgetExhausted, std::nullopt, std::nullopt};
    }

    bool holds() const { return kind == Kind::Holds; }
};

// Domain-checked join: a point dominating both x and y.
// Throws DomainError if either point is outside the direction's domain.
Point join(const Direction& dir, const Point& x, const Point& y);

// First n points of the direction's canonical chain (fewer if floating point
// resolution runs out first), each preceding the next. `ratio` overrides the
// refinement ratio for the point directions.
std::vector<Point> cofinal_chain(const Direction& dir, std::size_t n);
std::vector<Point> cofinal_chain(const Direction& dir, std::size_t n, double ratio);

// Probes whether f < g (or f <= g with strict=false) holds on some tail,
// walking `budget` chain segments. A Holds answer is re-verified on a 10x
// denser grid before being returned. Throws EvaluationError if a probe value
// is NaN (comparison undecidable either way).
UltimatelyVerdict ultimately_less(const Net& f, const Net& g, const Direction& dir,
                                  std::size_t budget = 200, bool strict = true);

}  // namespace netlimit
