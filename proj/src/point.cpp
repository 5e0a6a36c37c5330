#include "netlimit/point.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netlimit/errors.hpp"

namespace netlimit {

double Partition::mesh() const {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        m = std::max(m, knots[i + 1] - knots[i]);
    }
    return m;
}

Partition make_partition(std::vector<double> knots) {
    if (knots.size() < 2) {
        throw ParamError("knots", "partition needs at least two knots");
    }
    for (double k : knots) {
        if (!std::isfinite(k)) {
            throw ParamError("knots", "partition knots must be finite");
        }
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    if (knots.size() < 2) {
        throw ParamError("knots", "partition collapsed to a single point");
    }
    return Partition{std::move(knots)};
}

Partition refine_union(const Partition& p, const Partition& q) {
    std::vector<double> merged;
    merged.reserve(p.knots.size() + q.knots.size());
    std::merge(p.knots.begin(), p.knots.end(), q.knots.begin(), q.knots.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return Partition{std::move(merged)};
}

std::string point_to_string(const Point& p) {
    std::ostringstream out;
    if (is_real(p)) {
        out << as_real(p);
    } else {
        const Partition& part = as_partition(p);
        out << "partition[" << part.cells() << " cells, mesh " << part.mesh() << "]";
    }
    return out.str();
}

}  // namespace netlimit
