#include "netlimit/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace netlimit {
namespace {

using NodePtr = std::shared_ptr<const AstNode>;

double sign_fn(double x) {
    if (std::isnan(x)) return x;
    return static_cast<double>((x > 0.0) - (x < 0.0));
}

double ln_fn(double x) { return std::log(x); }
double abs_fn(double x) { return std::fabs(x); }

struct Builtin {
    const char* name;
    double (*fn)(double);
};

constexpr Builtin kBuiltins[] = {
    {"sin", std::sin}, {"cos", std::cos},     {"tan", std::tan},
    {"exp", std::exp}, {"ln", ln_fn},         {"sqrt", std::sqrt},
    {"abs", abs_fn},   {"floor", std::floor}, {"sign", sign_fn},
};

const Builtin* find_builtin(const std::string& name) {
    for (const Builtin& b : kBuiltins)
        if (name == b.name) return &b;
    return nullptr;
}

NodePtr number_node(double v) {
    auto n = std::make_shared<AstNode>();
    n->kind = AstKind::Number;
    n->number = v;
    return n;
}

NodePtr unary_node(AstKind kind, NodePtr child) {
    auto n = std::make_shared<AstNode>();
    n->kind = kind;
    n->left = std::move(child);
    return n;
}

NodePtr binary_node(AstKind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<AstNode>();
    n->kind = kind;
    n->left = std::move(lhs);
    n->right = std::move(rhs);
    return n;
}

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(std::size_t at, std::string expected) const {
        throw ParseError(at, std::move(expected));
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }

    bool take(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr parse_expression() {
        NodePtr node = parse_term();
        for (;;) {
            if (take('+'))
                node = binary_node(AstKind::Add, node, parse_term());
            else if (take('-'))
                node = binary_node(AstKind::Sub, node, parse_term());
            else
                return node;
        }
    }

    NodePtr parse_term() {
        NodePtr node = parse_unary();
        for (;;) {
            if (take('*'))
                node = binary_node(AstKind::Mul, node, parse_unary());
            else if (take('/'))
                node = binary_node(AstKind::Div, node, parse_unary());
            else
                return node;
        }
    }

    NodePtr parse_unary() {
        if (take('-')) return unary_node(AstKind::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        // Right-associative: the exponent may itself be a power or signed.
        if (take('^')) return binary_node(AstKind::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail(pos, "a number, name, or '('");
        char c = s[pos];

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0.0;
            auto [ptr, ec] =
                std::from_chars(s.data() + pos, s.data() + s.size(), value);
            if (ec != std::errc()) fail(pos, "a number");
            pos = static_cast<std::size_t>(ptr - s.data());
            return number_node(value);
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);

            if (name == "x" || name == "n") {
                auto n = std::make_shared<AstNode>();
                n->kind = AstKind::Var;
                return n;
            }
            if (name == "pi") return number_node(std::numbers::pi);
            if (name == "e") return number_node(std::numbers::e);

            if (const Builtin* b = find_builtin(name)) {
                skip_ws();
                if (!take('(')) fail(pos, "'(' after function name");
                NodePtr arg = parse_expression();
                skip_ws();
                if (!take(')')) fail(pos, "')'");
                auto n = std::make_shared<AstNode>();
                n->kind = AstKind::Call;
                n->call_name = b->name;
                n->call_fn = b->fn;
                n->left = std::move(arg);
                return n;
            }
            fail(start, "a known function or variable");
        }

        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expression();
            skip_ws();
            if (!take(')')) fail(pos, "')'");
            return inner;
        }

        fail(pos, "a number, name, or '('");
    }
};

double eval_node(const AstNode& n, double x) {
    switch (n.kind) {
        case AstKind::Number:
            return n.number;
        case AstKind::Var:
            return x;
        case AstKind::Neg:
            return -eval_node(*n.left, x);
        case AstKind::Add:
            return eval_node(*n.left, x) + eval_node(*n.right, x);
        case AstKind::Sub:
            return eval_node(*n.left, x) - eval_node(*n.right, x);
        case AstKind::Mul:
            return eval_node(*n.left, x) * eval_node(*n.right, x);
        case AstKind::Div:
            return eval_node(*n.left, x) / eval_node(*n.right, x);
        case AstKind::Pow:
            return std::pow(eval_node(*n.left, x), eval_node(*n.right, x));
        case AstKind::Call:
            return n.call_fn(eval_node(*n.left, x));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

void print_node(const AstNode& n, std::string& out) {
    auto number_text = [](double v) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        (void)ec;
        return std::string(buf, ptr);
    };
    switch (n.kind) {
        case AstKind::Number:
            if (n.number < 0.0 || std::signbit(n.number)) {
                out += "(-" + number_text(-n.number) + ")";
            } else {
                out += number_text(n.number);
            }
            return;
        case AstKind::Var:
            out += 'x';
            return;
        case AstKind::Neg:
            out += "(-";
            print_node(*n.left, out);
            out += ')';
            return;
        case AstKind::Call:
            out += n.call_name;
            out += '(';
            print_node(*n.left, out);
            out += ')';
            return;
        default:
            break;
    }
    const char* op = n.kind == AstKind::Add   ? "+"
                     : n.kind == AstKind::Sub ? "-"
                     : n.kind == AstKind::Mul ? "*"
                     : n.kind == AstKind::Div ? "/"
                                              : "^";
    out += '(';
    print_node(*n.left, out);
    out += op;
    print_node(*n.right, out);
    out += ')';
}

bool equal_nodes(const AstNode& a, const AstNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case AstKind::Number:
            return a.number == b.number ||
                   (std::isnan(a.number) && std::isnan(b.number));
        case AstKind::Var:
            return true;
        case AstKind::Neg:
            return equal_nodes(*a.left, *b.left);
        case AstKind::Call:
            return a.call_name == b.call_name && equal_nodes(*a.left, *b.left);
        default:
            return equal_nodes(*a.left, *b.left) && equal_nodes(*a.right, *b.right);
    }
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::string expected)
    : Error("parse error at offset " + std::to_string(offset) + ": expected " +
            expected),
      offset_(offset),
      expected_(std::move(expected)) {}

double Expr::operator()(double x) const { return eval_node(*root_, x); }

Expr parse(const std::string& input) {
    Parser p{input};
    NodePtr root = p.parse_expression();
    p.skip_ws();
    if (p.pos != input.size()) p.fail(p.pos, "end of input");
    return Expr(std::move(root));
}

double evaluate(const Expr& e, double x) { return e(x); }

std::string to_string(const Expr& e) {
    std::string out;
    print_node(e.root(), out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.valid() != b.valid()) return false;
    if (!a.valid()) return true;
    return equal_nodes(a.root(), b.root());
}

const std::vector<std::string>& builtin_functions() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const Builtin& b : kBuiltins) v.emplace_back(b.name);
        return v;
    }();
    return names;
}

Net expr_net(const Expr& e, std::string label) {
    return real_net(std::move(label), [e](double x) { return e(x); });
}

}  // namespace netlimit
