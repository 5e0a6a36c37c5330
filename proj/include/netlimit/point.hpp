#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace netlimit {

// Finite sorted knot list a = x_0 < x_1 < ... < x_n = b describing a partition
// of [a, b]. Partitions are ordered by decreasing mesh.
struct Partition {
    std::vector<double> knots;

    double a() const { return knots.front(); }
    double b() const { return knots.back(); }
    std::size_t cells() const { return knots.size() - 1; }
    double mesh() const;

    bool operator==(const Partition& other) const = default;
};

// Validates and normalizes a knot list (sorts, deduplicates, checks size).
Partition make_partition(std::vector<double> knots);

// Common refinement: union of the two knot sets.
Partition refine_union(const Partition& p, const Partition& q);

// A point of some direction's index set: a real number (which also carries
// sequence indices exactly up to 2^53) or a partition.
using Point = std::variant<double, Partition>;

inline bool is_real(const Point& p) { return std::holds_alternative<double>(p); }
inline double as_real(const Point& p) { return std::get<double>(p); }
inline const Partition& as_partition(const Point& p) { return std::get<Partition>(p); }

std::string point_to_string(const Point& p);

}  // namespace netlimit
