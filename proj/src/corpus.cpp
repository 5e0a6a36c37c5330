#include "netlimit/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <utility>

#include "netlimit/directions.hpp"
#include "netlimit/rng.hpp"

namespace netlimit {
namespace {

constexpr std::uint64_t kCorpusSalt = 0x636f72707573;   // "corpus"
constexpr std::uint64_t kPairsSalt = 0x7061697273;      // "pairs"
constexpr std::uint64_t kSqueezeSalt = 0x73717565657a;  // "squeez"

struct Stream {
    std::uint64_t state;

    Stream(std::uint64_t seed, std::uint64_t salt) : state(hash_mix(seed, salt)) {}

    double unit() { return unit_double(splitmix64(state)); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    // Magnitude in [lo, hi] with a random sign.
    double signed_mag(double lo, double hi) {
        double m = uniform(lo, hi);
        return unit() < 0.5 ? -m : m;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// The direction's vanishing coordinate s > 0: s -> 0 exactly when the walk
// approaches the direction's target, so families written in s have the same
// analytic limit along every direction. The partition coordinate is the
// fourth power of the mesh: the mesh itself shrinks only geometrically under
// a bounded cell budget, and the fourth power keeps default-tolerance
// convergence — and the divergence threshold for unbounded families —
// reachable inside that budget.
struct Coord {
    std::function<double(const Point&)> s;
    std::string name;
};

Coord vanishing_coord(const DirectionPtr& dir) {
    switch (dir->kind()) {
        case DirKind::LeftAt:
            return {[dir](const Point& p) { return dir->anchor_delta(p); }, "x0-x"};
        case DirKind::RightAt:
            return {[dir](const Point& p) { return dir->anchor_delta(p); }, "x-x0"};
        case DirKind::TwoSidedAt:
            return {[dir](const Point& p) { return dir->anchor_delta(p); }, "|x-x0|"};
        case DirKind::ToInfinity:
            return {[dir](const Point& p) { return 1.0 / dir->anchor_delta(p); }, "1/x"};
        case DirKind::ToMinusInfinity:
            return {[dir](const Point& p) { return 1.0 / dir->anchor_delta(p); },
                    "1/|x|"};
        case DirKind::Naturals:
            return {[dir](const Point& p) { return 1.0 / dir->anchor_delta(p); }, "1/n"};
        case DirKind::PartitionsOf: {
            return {[dir](const Point& p) {
                        double mesh = dir->anchor_delta(p);
                        double m2 = mesh * mesh;
                        return m2 * m2;
                    },
                    "mesh^4"};
        }
    }
    return {[](const Point&) { return 0.0; }, "?"};
}

// Anchor for generated nets. The reciprocal coordinate needs |x| bounded away
// from zero, so the infinity directions anchor no earlier than |x| = 1.
Point tail_anchor(const DirectionPtr& dir) {
    Point start = dir->chain_start();
    if (dir->kind() == DirKind::ToInfinity)
        return Point(std::max(as_real(start), 1.0));
    if (dir->kind() == DirKind::ToMinusInfinity)
        return Point(std::min(as_real(start), -1.0));
    return start;
}

Net coord_net(const DirectionPtr& dir, const Coord& coord, std::string label,
              std::function<double(double)> f) {
    return Net(std::move(label),
               [s = coord.s, fn = std::move(f)](const Point& p) { return fn(s(p)); },
               tail_anchor(dir));
}

CorpusEntry make_entry(const DirectionPtr& dir, const Coord& coord,
                       const std::string& description,
                       std::function<double(double)> f,
                       std::optional<double> limit, bool monotone, bool bounded) {
    CorpusEntry entry;
    entry.net = coord_net(dir, coord, description, std::move(f));
    entry.description = description + "  [s = " + coord.name + "]";
    entry.limit = limit;
    entry.monotone = monotone;
    entry.bounded = bounded;
    return entry;
}

// Riemann-Stieltjes integrals of low-degree integrands against g(x) = x; the
// limits are the classical integrals, independent of the tag rule.
void append_integral_entries(std::vector<CorpusEntry>& out, const DirectionPtr& dir,
                             Stream& st) {
    const Point start = dir->chain_start();
    const Partition& base = as_partition(start);
    const double lo = base.a();
    const double hi = base.b();

    double c = st.uniform(-3.0, 3.0);
    Net constant = riemann_stieltjes_net([c](double) { return c; },
                                         [](double x) { return x; }, *dir);
    out.push_back({constant,
                   "integral: sum " + fmt(c) + " * dx over refining partitions",
                   c * (hi - lo), false, true});

    double c0 = st.uniform(-2.0, 2.0);
    double c1 = st.signed_mag(0.5, 2.0);
    Net linear = riemann_stieltjes_net([c0, c1](double x) { return c0 + c1 * x; },
                                       [](double x) { return x; }, *dir);
    out.push_back({linear,
                   "integral: sum (" + fmt(c0) + " + " + fmt(c1) +
                       "*x) * dx over refining partitions",
                   c0 * (hi - lo) + c1 * (hi * hi - lo * lo) / 2.0, false, true});
}

}  // namespace

std::vector<CorpusEntry> function_corpus(const DirectionPtr& dir, std::uint64_t seed) {
    Stream st(seed, kCorpusSalt);
    Coord coord = vanishing_coord(dir);
    std::vector<CorpusEntry> out;

    for (int i = 0; i < 2; ++i) {
        double c = st.uniform(-5.0, 5.0);
        out.push_back(make_entry(dir, coord, "constant: " + fmt(c),
                                 [c](double) { return c; }, c, true, true));
    }

    for (int i = 0; i < 3; ++i) {
        double c = st.uniform(-2.0, 2.0);
        double c1 = st.signed_mag(0.5, 2.0);
        out.push_back(make_entry(dir, coord,
                                 "affine: " + fmt(c) + " + " + fmt(c1) + "*s",
                                 [c, c1](double s) { return c + c1 * s; }, c, true,
                                 true));
    }

    for (int i = 0; i < 3; ++i) {
        double c = st.uniform(-2.0, 2.0);
        double c1 = st.signed_mag(0.5, 2.0);
        double c2 = st.signed_mag(0.5, 2.0);
        bool monotone = (c1 >= 0.0) == (c2 >= 0.0);
        out.push_back(make_entry(
            dir, coord,
            "polynomial: " + fmt(c) + " + " + fmt(c1) + "*s + " + fmt(c2) + "*s^2",
            [c, c1, c2](double s) { return c + s * (c1 + c2 * s); }, c, monotone,
            true));
    }

    // Removable singularity: the quotient cancels to c + c1*s everywhere on
    // the tail (s > 0) but is evaluated as written.
    for (int i = 0; i < 3; ++i) {
        double c = st.uniform(-2.0, 2.0);
        double c1 = st.signed_mag(0.5, 2.0);
        out.push_back(make_entry(
            dir, coord,
            "rational removable: (s*(" + fmt(c) + " + " + fmt(c1) + "*s))/s",
            [c, c1](double s) { return (s * (c + c1 * s)) / s; }, c, false, true));
    }

    {
        const double gammas[] = {1.25, 1.5, 2.0};
        for (double gamma : gammas) {
            double c = st.uniform(-2.0, 2.0);
            double c1 = st.signed_mag(0.5, 2.0);
            out.push_back(make_entry(
                dir, coord,
                "monotone power: " + fmt(c) + " + " + fmt(c1) + "*s^" + fmt(gamma),
                [c, c1, gamma](double s) { return c + c1 * std::pow(s, gamma); }, c,
                true, true));
        }
    }

    // Damped oscillator: converges, but along no monotone path.
    for (int i = 0; i < 2; ++i) {
        double c = st.uniform(-2.0, 2.0);
        double c1 = st.signed_mag(0.5, 2.0);
        out.push_back(make_entry(
            dir, coord,
            "damped oscillator: " + fmt(c) + " + " + fmt(c1) + "*s*sin(1/s)",
            [c, c1](double s) { return c + c1 * s * std::sin(1.0 / s); }, c, false,
            true));
    }

    for (int i = 0; i < 2; ++i) {
        double c = st.uniform(-2.0, 2.0);
        double c1 = st.signed_mag(0.5, 2.0);
        double d = st.uniform(-2.0, 2.0);
        double d1 = st.signed_mag(0.5, 2.0);
        double d2 = st.signed_mag(0.5, 2.0);
        bool monotone = (c1 + d1 >= 0.0) == (d2 >= 0.0);
        out.push_back(make_entry(
            dir, coord,
            "sum: (" + fmt(c) + " + " + fmt(c1) + "*s) + (" + fmt(d) + " + " +
                fmt(d1) + "*s + " + fmt(d2) + "*s^2)",
            [c, c1, d, d1, d2](double s) {
                return (c + c1 * s) + (d + s * (d1 + d2 * s));
            },
            c + d, monotone, true));
    }

    for (int i = 0; i < 2; ++i) {
        double c = st.uniform(-2.0, 2.0);
        double c1 = st.signed_mag(0.5, 2.0);
        double d = st.uniform(-2.0, 2.0);
        double d1 = st.signed_mag(0.5, 2.0);
        double u = c * d1 + d * c1;
        double v = c1 * d1;
        bool monotone = (u >= 0.0) == (v >= 0.0);
        out.push_back(make_entry(dir, coord,
                                 "product: (" + fmt(c) + " + " + fmt(c1) + "*s)*(" +
                                     fmt(d) + " + " + fmt(d1) + "*s)",
                                 [c, c1, d, d1](double s) {
                                     return (c + c1 * s) * (d + d1 * s);
                                 },
                                 c * d, monotone, true));
    }

    // No limit: bounded oscillation between c - |c1| and c + |c1|.
    {
        double c = st.uniform(-1.0, 1.0);
        double c1 = st.uniform(0.5, 1.0);
        out.push_back(make_entry(
            dir, coord, "bounded oscillator: " + fmt(c) + " + " + fmt(c1) + "*sin(1/s)",
            [c, c1](double s) { return c + c1 * std::sin(1.0 / s); }, std::nullopt,
            false, true));
    }

    // No limit: grows without bound; the boundedness filter must exclude it.
    {
        double c = st.uniform(-1.0, 1.0);
        double c1 = st.uniform(0.5, 2.0);
        out.push_back(make_entry(dir, coord,
                                 "unbounded: " + fmt(c) + " + " + fmt(c1) + "/s",
                                 [c, c1](double s) { return c + c1 / s; },
                                 std::nullopt, true, false));
    }

    if (dir->kind() == DirKind::PartitionsOf) append_integral_entries(out, dir, st);

    return out;
}

std::vector<std::pair<CorpusEntry, CorpusEntry>> ordered_pairs(const DirectionPtr& dir,
                                                               std::uint64_t seed) {
    Stream st(seed, kPairsSalt);
    Coord coord = vanishing_coord(dir);
    std::vector<std::pair<CorpusEntry, CorpusEntry>> out;

    for (int i = 0; i < 6; ++i) {
        double c = st.uniform(-2.0, 2.0);
        double c1 = st.signed_mag(0.5, 2.0);
        double gap = i < 3 ? st.uniform(0.5, 1.5) : 0.0;
        double bump = st.uniform(0.2, 1.0);

        CorpusEntry f = make_entry(dir, coord,
                                   "pair lower: " + fmt(c) + " + " + fmt(c1) + "*s",
                                   [c, c1](double s) { return c + c1 * s; }, c, true,
                                   true);
        CorpusEntry g = make_entry(
            dir, coord,
            "pair upper: lower + " + fmt(gap) + " + " + fmt(bump) + "*s^2",
            [c, c1, gap, bump](double s) { return c + c1 * s + gap + bump * s * s; },
            c + gap, true, true);
        out.emplace_back(std::move(f), std::move(g));
    }
    return out;
}

std::vector<SqueezeTriple> squeeze_triples(const DirectionPtr& dir,
                                           std::uint64_t seed) {
    Stream st(seed, kSqueezeSalt);
    Coord coord = vanishing_coord(dir);
    std::vector<SqueezeTriple> out;

    for (int i = 0; i < 3; ++i) {
        double l = st.uniform(-2.0, 2.0);
        double e0 = st.uniform(0.3, 1.0);

        SqueezeTriple t;
        t.limit = l;
        t.description = "squeeze around " + fmt(l) + " with cushion " + fmt(e0) +
                        "*s^2  [s = " + coord.name + "]";
        // The cushion is identical on both sides so the two envelope
        // estimates stop at the same chain step with symmetric offsets and
        // the certified gap stays within tolerance.
        t.lower = coord_net(dir, coord, "squeeze lower",
                            [l, e0](double s) { return l - e0 * s * s; });
        t.middle =
            coord_net(dir, coord, "squeeze middle", [l, e0](double s) {
                return l + e0 * s * s * std::sin(1.0 / s);
            });
        t.upper = coord_net(dir, coord, "squeeze upper",
                            [l, e0](double s) { return l + e0 * s * s; });
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace netlimit
