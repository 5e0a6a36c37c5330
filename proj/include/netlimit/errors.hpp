#pragma once

#include <stdexcept>
#include <string>

namespace netlimit {

// Base for all library errors so callers can catch everything from one place.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid construction parameter; carries the offending field name.
class ParamError : public Error {
public:
    ParamError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// A point handed to a direction lies outside that direction's domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Function evaluation produced no usable value where one was required.
class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& what) : Error(what) {}
};

// No probed anchor certifies the claimed limit for this epsilon.
class CertificationFailure : public Error {
public:
    CertificationFailure(double epsilon, const std::string& what)
        : Error(what), epsilon_(epsilon) {}
    double epsilon() const { return epsilon_; }

private:
    double epsilon_;
};

// Monotonicity probe found an inversion; carries the witness pair values.
class NotMonotone : public Error {
public:
    NotMonotone(double x_before, double x_after, const std::string& what)
        : Error(what), before_(x_before), after_(x_after) {}
    double witness_before() const { return before_; }
    double witness_after() const { return after_; }

private:
    double before_;
    double after_;
};

// Squeeze ordering f <= g <= h failed at a probed point.
class OrderingViolated : public Error {
public:
    explicit OrderingViolated(const std::string& what) : Error(what) {}
};

// Outer squeeze limits disagree.
class SandwichGap : public Error {
public:
    SandwichGap(double lower_limit, double upper_limit, const std::string& what)
        : Error(what), lower_(lower_limit), upper_(upper_limit) {}
    double lower_limit() const { return lower_; }
    double upper_limit() const { return upper_; }

private:
    double lower_;
    double upper_;
};

// Quotient combinator: denominator limit is zero within tolerance.
class ZeroDenominatorLimit : public Error {
public:
    explicit ZeroDenominatorLimit(const std::string& what) : Error(what) {}
};

// Algebra combinator: an operand did not converge.
class OperandDiverges : public Error {
public:
    explicit OperandDiverges(const std::string& what) : Error(what) {}
};

}  // namespace netlimit
