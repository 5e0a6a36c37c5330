#include "netlimit/directions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "netlimit/errors.hpp"
#include "netlimit/kernels.hpp"
#include "netlimit/rng.hpp"

namespace netlimit {

namespace {

constexpr double kMaxNatural = 9007199254740992.0;  // 2^53, last exact integer
// Refinement stops here: probe partitions are materialized as full knot
// lists, and a segment's worth of them must stay comfortably in memory.
constexpr std::size_t kMaxCells = std::size_t{1} << 16;

double expect_real(const Direction& dir, const Point& p) {
    if (!is_real(p)) {
        throw DomainError("direction '" + dir.describe() +
                          "' indexes real points, got " + point_to_string(p));
    }
    return as_real(p);
}

const Partition& expect_partition(const Direction& dir, const Point& p) {
    if (is_real(p)) {
        throw DomainError("direction '" + dir.describe() +
                          "' indexes partitions, got " + point_to_string(p));
    }
    return as_partition(p);
}

void check_ratio(double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ParamError("ratio", "refinement ratio must lie in (0, 1), got " +
                                      point_to_string(ratio));
    }
}

std::string num(double v) { return point_to_string(v); }

// count points from + j*(to-from)/count, j = 0..count-1. First is exactly
// `from`; in exact arithmetic all lie strictly before `to`. The rare rounding
// case where a point collapses onto `to` is mapped back to `from` (a harmless
// duplicate probe).
void linspace_half_open(double from, double to, std::size_t count,
                        std::vector<Point>& out) {
    out.reserve(out.size() + count);
    const double span = to - from;
    for (std::size_t j = 0; j < count; ++j) {
        double x = j == 0 ? from
                          : from + span * (static_cast<double>(j) /
                                           static_cast<double>(count));
        if (j > 0 && !((from < to) ? (x < to) : (x > to))) x = from;
        out.emplace_back(x);
    }
}

// ---------------------------------------------------------------------------

class LeftAtDir final : public Direction {
public:
    explicit LeftAtDir(double x0, double h) : x0_(x0), h_(h) {}

    DirKind kind() const override { return DirKind::LeftAt; }
    std::string describe() const override { return "x -> " + num(x0_) + "^-"; }

    bool in_domain(const Point& p) const override {
        return is_real(p) && std::isfinite(as_real(p)) && as_real(p) < x0_;
    }

    bool precedes(const Point& a, const Point& b) const override {
        return expect_real(*this, a) <= expect_real(*this, b);
    }

    Point join(const Point& a, const Point& b) const override {
        return std::max(expect_real(*this, a), expect_real(*this, b));
    }

    Point chain_start() const override { return x0_ - h_; }

    std::optional<Point> advance(const Point& p, double ratio) const override {
        check_ratio(ratio);
        const double x = expect_real(*this, p);
        const double next = x0_ - (x0_ - x) * ratio;
        if (!(next > x && next < x0_)) return std::nullopt;
        return Point{next};
    }

    std::vector<Point> segment_points(const Point& from, const Point& to,
                                      std::size_t count,
                                      std::uint64_t) const override {
        std::vector<Point> pts;
        linspace_half_open(expect_real(*this, from), expect_real(*this, to),
                           count, pts);
        return pts;
    }

    double progress(const Point& p) const override { return expect_real(*this, p); }
    double anchor_delta(const Point& p) const override {
        return x0_ - expect_real(*this, p);
    }
    const char* delta_label() const override { return "delta"; }

private:
    double x0_;
    double h_;
};

class RightAtDir final : public Direction {
public:
    explicit RightAtDir(double x0, double h) : x0_(x0), h_(h) {}

    DirKind kind() const override { return DirKind::RightAt; }
    std::string describe() const override { return "x -> " + num(x0_) + "^+"; }

    bool in_domain(const Point& p) const override {
        return is_real(p) && std::isfinite(as_real(p)) && as_real(p) > x0_;
    }

    bool precedes(const Point& a, const Point& b) const override {
        return expect_real(*this, b) <= expect_real(*this, a);
    }

    Point join(const Point& a, const Point& b) const override {
        return std::min(expect_real(*this, a), expect_real(*this, b));
    }

    Point chain_start() const override { return x0_ + h_; }

    std::optional<Point> advance(const Point& p, double ratio) const override {
        check_ratio(ratio);
        const double x = expect_real(*this, p);
        const double next = x0_ + (x - x0_) * ratio;
        if (!(next < x && next > x0_)) return std::nullopt;
        return Point{next};
    }

    std::vector<Point> segment_points(const Point& from, const Point& to,
                                      std::size_t count,
                                      std::uint64_t) const override {
        std::vector<Point> pts;
        linspace_half_open(expect_real(*this, from), expect_real(*this, to),
                           count, pts);
        return pts;
    }

    double progress(const Point& p) const override { return expect_real(*this, p); }
    double anchor_delta(const Point& p) const override {
        return expect_real(*this, p) - x0_;
    }
    const char* delta_label() const override { return "delta"; }

private:
    double x0_;
    double h_;
};

// Two-sided approach: points ordered by distance to the target, with the
// canonical chain and the probe points alternating sides so neither
// one-sided behavior is missed.
class TwoSidedAtDir final : public Direction {
public:
    explicit TwoSidedAtDir(double x0, double h) : x0_(x0), h_(h) {}

    DirKind kind() const override { return DirKind::TwoSidedAt; }
    std::string describe() const override { return "x -> " + num(x0_); }

    bool in_domain(const Point& p) const override {
        return is_real(p) && std::isfinite(as_real(p)) && as_real(p) != x0_;
    }

    bool precedes(const Point& a, const Point& b) const override {
        return dist(expect_real(*this, b)) <= dist(expect_real(*this, a));
    }

    Point join(const Point& a, const Point& b) const override {
        const double xa = expect_real(*this, a);
        const double xb = expect_real(*this, b);
        const double da = dist(xa);
        const double db = dist(xb);
        if (da < db) return xa;
        if (db < da) return xb;
        // Equal distance, possibly opposite sides: pick the positive side so
        // the join is a function of the pair, not of argument order.
        return x0_ + da;
    }

    Point chain_start() const override { return x0_ - h_; }

    std::optional<Point> advance(const Point& p, double ratio) const override {
        check_ratio(ratio);
        const double x = expect_real(*this, p);
        const double d = dist(x) * ratio;
        const double next = x < x0_ ? x0_ + d : x0_ - d;
        if (!(d > 0.0) || next == x0_ || dist(next) >= dist(x)) return std::nullopt;
        return Point{next};
    }

    std::vector<Point> segment_points(const Point& from, const Point& to,
                                      std::size_t count,
                                      std::uint64_t) const override {
        const double xf = expect_real(*this, from);
        const double df = dist(xf);
        const double dt = dist(expect_real(*this, to));
        std::vector<Point> pts;
        pts.reserve(count);
        pts.emplace_back(xf);
        const bool from_left = xf < x0_;
        for (std::size_t j = 1; j < count; ++j) {
            double d = df + (dt - df) * (static_cast<double>(j) /
                                         static_cast<double>(count));
            if (!(d > dt)) d = df;
            const bool left = from_left == (j % 2 == 0);
            double x = left ? x0_ - d : x0_ + d;
            if (x == x0_) x = xf;
            pts.emplace_back(x);
        }
        return pts;
    }

    double progress(const Point& p) const override { return expect_real(*this, p); }
    double anchor_delta(const Point& p) const override {
        return dist(expect_real(*this, p));
    }
    const char* delta_label() const override { return "delta"; }

private:
    double dist(double x) const { return std::abs(x - x0_); }

    double x0_;
    double h_;
};

class ToInfinityDir final : public Direction {
public:
    ToInfinityDir(double start, double growth) : start_(start), growth_(growth) {}

    DirKind kind() const override { return DirKind::ToInfinity; }
    std::string describe() const override { return "x -> +inf"; }

    bool in_domain(const Point& p) const override {
        return is_real(p) && std::isfinite(as_real(p));
    }

    bool precedes(const Point& a, const Point& b) const override {
        return expect_real(*this, a) <= expect_real(*this, b);
    }

    Point join(const Point& a, const Point& b) const override {
        return std::max(expect_real(*this, a), expect_real(*this, b));
    }

    Point chain_start() const override { return start_; }

    std::optional<Point> advance(const Point& p, double) const override {
        const double x = expect_real(*this, p);
        const double next = x < 1.0 ? x + 1.0 : x * growth_;
        if (!std::isfinite(next) || next <= x) return std::nullopt;
        return Point{next};
    }

    std::vector<Point> segment_points(const Point& from, const Point& to,
                                      std::size_t count,
                                      std::uint64_t) const override {
        std::vector<Point> pts;
        linspace_half_open(expect_real(*this, from), expect_real(*this, to),
                           count, pts);
        return pts;
    }

    double progress(const Point& p) const override { return expect_real(*this, p); }
    double anchor_delta(const Point& p) const override {
        return expect_real(*this, p);
    }
    const char* delta_label() const override { return "past"; }

private:
    double start_;
    double growth_;
};

class ToMinusInfinityDir final : public Direction {
public:
    ToMinusInfinityDir(double start, double growth)
        : start_(start), growth_(growth) {}

    DirKind kind() const override { return DirKind::ToMinusInfinity; }
    std::string describe() const override { return "x -> -inf"; }

    bool in_domain(const Point& p) const override {
        return is_real(p) && std::isfinite(as_real(p));
    }

    bool precedes(const Point& a, const Point& b) const override {
        return expect_real(*this, b) <= expect_real(*this, a);
    }

    Point join(const Point& a, const Point& b) const override {
        return std::min(expect_real(*this, a), expect_real(*this, b));
    }

    Point chain_start() const override { return start_; }

    std::optional<Point> advance(const Point& p, double) const override {
        const double x = expect_real(*this, p);
        const double next = x > -1.0 ? x - 1.0 : x * growth_;
        if (!std::isfinite(next) || next >= x) return std::nullopt;
        return Point{next};
    }

    std::vector<Point> segment_points(const Point& from, const Point& to,
                                      std::size_t count,
                                      std::uint64_t) const override {
        std::vector<Point> pts;
        linspace_half_open(expect_real(*this, from), expect_real(*this, to),
                           count, pts);
        return pts;
    }

    double progress(const Point& p) const override { return expect_real(*this, p); }
    double anchor_delta(const Point& p) const override {
        return -expect_real(*this, p);
    }
    const char* delta_label() const override { return "past"; }

private:
    double start_;
    double growth_;
};

// Sequence direction: indices are exact integers stored in doubles. The
// canonical chain doubles the index so deep tails are reachable in few steps;
// probe points are distinct integers spread across each chain gap.
class NaturalsDir final : public Direction {
public:
    explicit NaturalsDir(double start) : start_(std::ceil(start)) {}

    DirKind kind() const override { return DirKind::Naturals; }
    std::string describe() const override { return "n -> inf"; }

    bool in_domain(const Point& p) const override {
        if (!is_real(p)) return false;
        const double n = as_real(p);
        return std::isfinite(n) && n >= 1.0 && n <= kMaxNatural &&
               std::floor(n) == n;
    }

    bool precedes(const Point& a, const Point& b) const override {
        return expect_real(*this, a) <= expect_real(*this, b);
    }

    Point join(const Point& a, const Point& b) const override {
        return std::max(expect_real(*this, a), expect_real(*this, b));
    }

    Point chain_start() const override { return start_; }

    std::optional<Point> advance(const Point& p, double) const override {
        const double n = expect_real(*this, p);
        const double next = n * 2.0;
        if (next > kMaxNatural) return std::nullopt;
        return Point{next};
    }

    std::vector<Point> segment_points(const Point& from, const Point& to,
                                      std::size_t count,
                                      std::uint64_t) const override {
        const double nf = expect_real(*this, from);
        const double nt = expect_real(*this, to);
        std::vector<Point> pts;
        pts.reserve(count);
        const double step =
            std::max(1.0, std::floor((nt - nf) / static_cast<double>(count)));
        for (double n = nf; n < nt && pts.size() < count; n += step) {
            pts.emplace_back(n);
        }
        if (pts.empty()) pts.emplace_back(nf);
        return pts;
    }

    double progress(const Point& p) const override { return expect_real(*this, p); }
    double anchor_delta(const Point& p) const override {
        return expect_real(*this, p);
    }
    const char* delta_label() const override { return "past"; }

private:
    double start_;
};

// Partitions of [a, b] ordered by decreasing mesh. The canonical chain is
// uniform bisection; probe partitions perturb the knots deterministically so
// segment statistics see genuinely different partitions of comparable mesh,
// not just the uniform ones.
class PartitionsOfDir final : public Direction {
public:
    PartitionsOfDir(double a, double b, TagRule tags)
        : a_(a), b_(b), tags_(tags) {}

    DirKind kind() const override { return DirKind::PartitionsOf; }
    std::string describe() const override {
        return "partitions of [" + num(a_) + ", " + num(b_) + "], mesh -> 0";
    }

    TagRule tags() const { return tags_; }
    double interval_a() const { return a_; }
    double interval_b() const { return b_; }

    bool in_domain(const Point& p) const override {
        if (is_real(p)) return false;
        const Partition& part = as_partition(p);
        return part.knots.size() >= 2 && part.a() == a_ && part.b() == b_;
    }

    bool precedes(const Point& a, const Point& b) const override {
        return expect_partition(*this, b).mesh() <=
               expect_partition(*this, a).mesh();
    }

    Point join(const Point& a, const Point& b) const override {
        // The common refinement dominates both (each of its cells sits inside
        // a cell of either argument, so its mesh is <= both meshes).
        return refine_union(expect_partition(*this, a),
                            expect_partition(*this, b));
    }

    Point chain_start() const override { return uniform(1); }

    std::optional<Point> advance(const Point& p, double) const override {
        const std::size_t n = expect_partition(*this, p).cells() * 2;
        if (n > kMaxCells) return std::nullopt;
        return Point{uniform(n)};
    }

    std::vector<Point> segment_points(const Point& from, const Point& to,
                                      std::size_t count,
                                      std::uint64_t salt) const override {
        const Partition& pf = expect_partition(*this, from);
        const double mesh_from = pf.mesh();
        const double mesh_to = expect_partition(*this, to).mesh();
        std::vector<Point> pts;
        pts.reserve(count);
        pts.emplace_back(pf);
        // Largest cell count that still keeps the mesh strictly above
        // mesh_to, so no probe escapes the segment.
        const double width = b_ - a_;
        const std::size_t n_cap = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(width / mesh_to)) - 1);
        for (std::size_t j = 1; j < count; ++j) {
            const double frac =
                static_cast<double>(j) / static_cast<double>(count);
            const double target = mesh_from * std::pow(mesh_to / mesh_from, frac);
            std::size_t n = static_cast<std::size_t>(
                std::ceil(width / (0.75 * target)));
            n = std::clamp<std::size_t>(n, 1, n_cap);
            pts.emplace_back(jittered(n, hash_mix(salt, j)));
        }
        return pts;
    }

    double progress(const Point& p) const override {
        return expect_partition(*this, p).mesh();
    }
    double anchor_delta(const Point& p) const override {
        return expect_partition(*this, p).mesh();
    }
    const char* delta_label() const override { return "mesh"; }

private:
    Partition uniform(std::size_t n) const {
        std::vector<double> knots(n + 1);
        const double w = (b_ - a_) / static_cast<double>(n);
        for (std::size_t i = 0; i <= n; ++i) {
            knots[i] = a_ + static_cast<double>(i) * w;
        }
        knots.front() = a_;
        knots.back() = b_;
        return Partition{std::move(knots)};
    }

    // Uniform n-cell grid with each interior knot shifted by at most w/8, so
    // every cell width stays within [0.75w, 1.25w].
    Partition jittered(std::size_t n, std::uint64_t seed) const {
        std::vector<double> knots(n + 1);
        const double w = (b_ - a_) / static_cast<double>(n);
        std::uint64_t state = seed;
        knots.front() = a_;
        for (std::size_t i = 1; i < n; ++i) {
            const double u = 2.0 * unit_double(splitmix64(state)) - 1.0;
            knots[i] = a_ + static_cast<double>(i) * w + u * (w / 8.0);
        }
        knots.back() = b_;
        return Partition{std::move(knots)};
    }

    double a_;
    double b_;
    TagRule tags_;
};

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw ParamError(field, std::string(field) + " must be finite");
    }
}

}  // namespace

DirectionPtr make_direction(DirKind kind, const DirectionParams& params) {
    switch (kind) {
        case DirKind::LeftAt:
        case DirKind::RightAt:
        case DirKind::TwoSidedAt: {
            require_finite(params.x0, "x0");
            if (!std::isfinite(params.offset) || params.offset <= 0.0) {
                throw ParamError("offset", "initial offset must be positive, got " +
                                               num(params.offset));
            }
            if (kind == DirKind::LeftAt) {
                return std::make_shared<LeftAtDir>(params.x0, params.offset);
            }
            if (kind == DirKind::RightAt) {
                return std::make_shared<RightAtDir>(params.x0, params.offset);
            }
            return std::make_shared<TwoSidedAtDir>(params.x0, params.offset);
        }
        case DirKind::ToInfinity:
        case DirKind::ToMinusInfinity: {
            require_finite(params.start, "start");
            if (!std::isfinite(params.growth) || params.growth <= 1.0) {
                throw ParamError("growth", "growth factor must exceed 1, got " +
                                               num(params.growth));
            }
            if (kind == DirKind::ToInfinity) {
                return std::make_shared<ToInfinityDir>(params.start, params.growth);
            }
            return std::make_shared<ToMinusInfinityDir>(params.start,
                                                        params.growth);
        }
        case DirKind::Naturals: {
            if (!std::isfinite(params.start) || params.start < 1.0 ||
                params.start > kMaxNatural) {
                throw ParamError("start", "sequence start must be an index >= 1, got " +
                                              num(params.start));
            }
            return std::make_shared<NaturalsDir>(params.start);
        }
        case DirKind::PartitionsOf: {
            require_finite(params.a, "a");
            require_finite(params.b, "b");
            if (!(params.a < params.b)) {
                throw ParamError("b", "interval needs a < b, got [" + num(params.a) +
                                          ", " + num(params.b) + "]");
            }
            return std::make_shared<PartitionsOfDir>(params.a, params.b,
                                                     params.tags);
        }
    }
    throw ParamError("kind", "unknown direction kind");
}

DirectionPtr left_at(double x0, double h) {
    DirectionParams p;
    p.x0 = x0;
    p.offset = h;
    return make_direction(DirKind::LeftAt, p);
}

DirectionPtr right_at(double x0, double h) {
    DirectionParams p;
    p.x0 = x0;
    p.offset = h;
    return make_direction(DirKind::RightAt, p);
}

DirectionPtr two_sided_at(double x0, double h) {
    DirectionParams p;
    p.x0 = x0;
    p.offset = h;
    return make_direction(DirKind::TwoSidedAt, p);
}

DirectionPtr to_infinity(double start, double growth) {
    DirectionParams p;
    p.start = start;
    p.growth = growth;
    return make_direction(DirKind::ToInfinity, p);
}

DirectionPtr to_minus_infinity(double start, double growth) {
    DirectionParams p;
    p.start = start;
    p.growth = growth;
    return make_direction(DirKind::ToMinusInfinity, p);
}

DirectionPtr naturals(double start) {
    DirectionParams p;
    p.start = start;
    return make_direction(DirKind::Naturals, p);
}

DirectionPtr partitions_of(double a, double b, TagRule tags) {
    DirectionParams p;
    p.a = a;
    p.b = b;
    p.tags = tags;
    return make_direction(DirKind::PartitionsOf, p);
}

TagRule partition_tag_rule(const Direction& dir) {
    const auto* pd = dynamic_cast<const PartitionsOfDir*>(&dir);
    if (pd == nullptr) {
        throw DomainError("tag rule queried on non-partition direction '" +
                          dir.describe() + "'");
    }
    return pd->tags();
}

Net riemann_stieltjes_net(std::function<double(double)> f,
                          std::function<double(double)> g,
                          const Direction& dir) {
    const auto* pd = dynamic_cast<const PartitionsOfDir*>(&dir);
    if (pd == nullptr) {
        throw DomainError("Riemann-Stieltjes net needs a partition direction, got '" +
                          dir.describe() + "'");
    }
    double tag_pos = 0.5;
    switch (pd->tags()) {
        case TagRule::Left: tag_pos = 0.0; break;
        case TagRule::Midpoint: tag_pos = 0.5; break;
        case TagRule::Right: tag_pos = 1.0; break;
    }
    return Net("riemann_stieltjes",
               [f = std::move(f), g = std::move(g), tag_pos](const Point& p) {
                   const Partition& part = as_partition(p);
                   return kernels::riemann_sum(f, g, std::span(part.knots),
                                               tag_pos, kernels::Exec::Auto);
               });
}

}  // namespace netlimit
