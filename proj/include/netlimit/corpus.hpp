#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netlimit/direction.hpp"
#include "netlimit/net.hpp"

namespace netlimit {

// One generated test function. `limit` is the analytic limit along the
// direction when finite and known; `monotone`/`bounded` describe the function
// on the direction's tail and drive which checks may consume it.
struct CorpusEntry {
    Net net;
    std::string description;
    std::optional<double> limit;
    bool monotone = false;
    bool bounded = true;
};

// Squeeze triple lower <= middle <= upper (pointwise on the tail), all three
// tending to `limit`; the cushion shrinks quadratically in the direction's
// vanishing coordinate.
struct SqueezeTriple {
    Net lower;
    Net middle;
    Net upper;
    double limit = 0.0;
    std::string description;
};

// Seeded families over the direction's vanishing coordinate s (distance to
// the target for point directions, 1/|x| toward infinity, 1/n for sequences,
// fourth power of the mesh for partitions): constants, affine, polynomials, rationals
// with a removable singularity, monotone power approaches, bounded
// oscillators (convergent and divergent), sums/products, and one unbounded
// entry. Reproducible from the seed; at least 20 entries carry a known limit.
std::vector<CorpusEntry> function_corpus(const DirectionPtr& dir,
                                         std::uint64_t seed);

// Pairs (f, g) with f <= g pointwise on the tail by construction; both carry
// known limits. About half the pairs have a strictly positive limit gap, the
// rest share the limit exactly.
std::vector<std::pair<CorpusEntry, CorpusEntry>> ordered_pairs(
    const DirectionPtr& dir, std::uint64_t seed);

std::vector<SqueezeTriple> squeeze_triples(const DirectionPtr& dir,
                                           std::uint64_t seed);

}  // namespace netlimit
