#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "netlimit/point.hpp"

namespace netlimit {

// A real-valued function defined on a tail of a direction. The optional
// anchor marks where the definition tail starts; estimators skip chain
// points not dominated by it. Non-finite values are ordinary outputs here;
// classification happens in the samplers.
class Net {
public:
    Net() = default;
    Net(std::string label, std::function<double(const Point&)> eval,
        std::optional<Point> anchor = std::nullopt)
        : label_(std::move(label)), eval_(std::move(eval)), anchor_(std::move(anchor)) {}

    double operator()(const Point& p) const { return eval_(p); }
    const std::string& label() const { return label_; }
    const std::optional<Point>& anchor() const { return anchor_; }

    Net with_anchor(Point a) const {
        Net copy = *this;
        copy.anchor_ = std::move(a);
        return copy;
    }

private:
    std::string label_;
    std::function<double(const Point&)> eval_;
    std::optional<Point> anchor_;
};

// Wraps a plain function of a real coordinate as a net over a direction
// whose points are reals (everything except partitions).
inline Net real_net(std::string label, std::function<double(double)> f,
                    std::optional<Point> anchor = std::nullopt) {
    return Net(std::move(label),
               [fn = std::move(f)](const Point& p) { return fn(as_real(p)); },
               std::move(anchor));
}

}  // namespace netlimit
