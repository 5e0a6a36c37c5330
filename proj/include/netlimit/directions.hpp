#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "netlimit/direction.hpp"
#include "netlimit/net.hpp"

namespace netlimit {

enum class TagRule { Left, Midpoint, Right };

struct DirectionParams {
    double x0 = 0.0;      // target for the point directions
    double offset = 0.5;  // initial offset h > 0 for the point directions
    double start = 1.0;   // first chain point for infinity/sequence directions
    double growth = 2.0;  // chain growth factor (> 1) for infinity directions
    double a = 0.0;       // partition interval
    double b = 1.0;
    TagRule tags = TagRule::Midpoint;
};

DirectionPtr make_direction(DirKind kind, const DirectionParams& params);

DirectionPtr left_at(double x0, double h = 0.5);
DirectionPtr right_at(double x0, double h = 0.5);
DirectionPtr two_sided_at(double x0, double h = 0.5);
DirectionPtr to_infinity(double start = 1.0, double growth = 2.0);
DirectionPtr to_minus_infinity(double start = -1.0, double growth = 2.0);
DirectionPtr naturals(double start = 1.0);
DirectionPtr partitions_of(double a, double b, TagRule tags = TagRule::Midpoint);

// Tag rule of a partition direction (DomainError for any other kind).
TagRule partition_tag_rule(const Direction& dir);

// Net over a partition direction whose value at partition P with tags t_i is
// sum of f(t_i) * (g(k_{i+1}) - g(k_i)). Non-finite f or g values propagate
// as non-finite net values.
Net riemann_stieltjes_net(std::function<double(double)> f,
                          std::function<double(double)> g, const Direction& dir);

}  // namespace netlimit
