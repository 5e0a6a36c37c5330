#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "netlimit/errors.hpp"
#include "netlimit/net.hpp"

namespace netlimit {

// Parse failure; `offset` is the byte position in the input (length of the
// input when something was expected past its end).
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string expected);
    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

enum class AstKind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

struct AstNode {
    AstKind kind = AstKind::Number;
    double number = 0.0;          // Number
    std::string call_name;        // Call
    double (*call_fn)(double) = nullptr;
    std::shared_ptr<const AstNode> left;   // unary/call child, binary lhs
    std::shared_ptr<const AstNode> right;  // binary rhs
};

// Immutable expression in one real variable; cheap to copy into net lambdas.
class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const AstNode> root) : root_(std::move(root)) {}

    bool valid() const { return root_ != nullptr; }
    const AstNode& root() const { return *root_; }
    double operator()(double x) const;

private:
    std::shared_ptr<const AstNode> root_;
};

// Grammar, loosest to tightest binding: '+' '-' | '*' '/' | unary '-' |
// '^' (right-associative) | calls and parentheses. One free variable `x`
// (alias `n`); constants `pi`, `e` folded to numbers at parse time; builtins
// sin cos tan exp ln sqrt abs floor sign.
Expr parse(const std::string& input);

// Standard double-precision semantics; non-finite results are ordinary
// values for the caller to classify, never errors.
double evaluate(const Expr& e, double x);

// Canonical fully parenthesized rendering; reparsing it yields a
// structurally identical tree.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

const std::vector<std::string>& builtin_functions();

// The expression as a net over a direction with real points.
Net expr_net(const Expr& e, std::string label);

}  // namespace netlimit
