#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netlimit/point.hpp"

namespace netlimit {

enum class DirKind {
    LeftAt,
    RightAt,
    TwoSidedAt,
    ToInfinity,
    ToMinusInfinity,
    Naturals,
    PartitionsOf,
};

// A direction: a reflexive, transitive order on an index set in which any two
// points have a common dominator, together with a concrete sampling scheme
// (a cofinal chain plus per-segment probe points) so the order can be walked
// numerically. "Later" in the order means "closer to the limit target".
class Direction {
public:
    virtual ~Direction() = default;

    virtual DirKind kind() const = 0;
    virtual std::string describe() const = 0;

    virtual bool in_domain(const Point& p) const = 0;

    // a comes no later than b.
    virtual bool precedes(const Point& a, const Point& b) const = 0;

    // A point dominating both a and b. Preconditions: a, b in domain.
    virtual Point join(const Point& a, const Point& b) const = 0;

    // First point of the canonical cofinal chain.
    virtual Point chain_start() const = 0;

    // One refinement step past p. `ratio` in (0,1) controls the step for the
    // point directions (left/right/two-sided); the other directions have a
    // fixed refinement rule and ignore it. Returns nullopt once floating
    // point resolution (or an internal size cap) is exhausted.
    virtual std::optional<Point> advance(const Point& p, double ratio) const = 0;

    // Deterministic probe points for the chain segment [from, to): `count`
    // points all in the tail of `from`, none past `to`, first one == `from`.
    // `salt` keys the deterministic jitter used by partition directions.
    virtual std::vector<Point> segment_points(const Point& from, const Point& to,
                                              std::size_t count,
                                              std::uint64_t salt) const = 0;

    // Scalar rendering of a point's position for traces: the coordinate for
    // point directions, the index for sequences, the mesh for partitions.
    virtual double progress(const Point& p) const = 0;

    // Anchor translated into the classical vocabulary: delta for point
    // directions, the threshold N for infinity/sequence directions, the mesh
    // for partitions.
    virtual double anchor_delta(const Point& p) const = 0;

    // "delta", "past" or "mesh" -- how anchor_delta should read.
    virtual const char* delta_label() const = 0;

    // Default refinement ratio used when the caller does not supply one.
    virtual double default_ratio() const { return 0.5; }
};

using DirectionPtr = std::shared_ptr<const Direction>;

// The upward-closed set of all points dominating `anchor`.
struct Tail {
    Point anchor;
    const Direction* direction;

    bool contains(const Point& x) const { return direction->precedes(anchor, x); }
};

}  // namespace netlimit
