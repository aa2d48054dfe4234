#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "contin/errors.hpp"

namespace contin {

using Complex = std::complex<double>;

// Parsed expression in one complex variable z. Grammar, loosest to tightest:
// '+' '-', then '*' '/', then unary minus, then right-associative '^'.
// Constants i, pi, e; calls exp log sin cos sinh cosh sqrt. Evaluation is
// total except at singularities, which propagate as inf/nan; '^' with a
// non-integer exponent takes the principal branch.
class FunctionExpr {
public:
    static FunctionExpr parse(std::string_view src);

    Complex operator()(Complex z) const { return eval_node(*root_, z); }

    // Fully parenthesized; reparsing yields a structurally identical tree.
    std::string to_string() const { return print_node(*root_); }

    bool same_structure(const FunctionExpr& other) const {
        return nodes_equal(*root_, *other.root_);
    }

    const std::string& source() const { return source_; }

private:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Number { double value; };
    struct Constant { int id; };    // index into kConstants
    struct Variable {};
    struct Negate { NodePtr arg; };
    struct Binary { char op; NodePtr lhs, rhs; };
    struct Call { int fn; NodePtr arg; }; // index into kFunctions

    struct Node {
        std::variant<Number, Constant, Variable, Negate, Binary, Call> v;
    };

    static constexpr std::array<std::string_view, 3> kConstants{"i", "pi", "e"};
    static constexpr std::array<std::string_view, 7> kFunctions{
        "exp", "log", "sin", "cos", "sinh", "cosh", "sqrt"};

    FunctionExpr(NodePtr root, std::string source)
        : root_(std::move(root)), source_(std::move(source)) {}

    static Complex eval_node(const Node& n, Complex z);
    static std::string print_node(const Node& n);
    static bool nodes_equal(const Node& a, const Node& b);

    class Parser;

    NodePtr root_;
    std::string source_;
};

class FunctionExpr::Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr run() {
        NodePtr e = parse_sum();
        if (pos() < src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw precondition_error("expr_syntax",
                                 "syntax error at offset " + std::to_string(pos()) + ": " + what);
    }

    std::size_t pos() const { return cursor_; }

    void skip_space() {
        while (cursor_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[cursor_])))
            ++cursor_;
    }

    char peek() {
        skip_space();
        return cursor_ < src_.size() ? src_[cursor_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++cursor_;
        return true;
    }

    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++cursor_;
            lhs = make(Node{Binary{c, lhs, parse_product()}});
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++cursor_;
            lhs = make(Node{Binary{c, lhs, parse_unary()}});
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make(Node{Negate{parse_unary()}});
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (!accept('^')) return base;
        // right-associative, and "2^-3" keeps the exponent's sign
        return make(Node{Binary{'^', base, parse_unary()}});
    }

    NodePtr parse_atom() {
        const char c = peek();
        if (c == '(') {
            ++cursor_;
            NodePtr e = parse_sum();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const char* first = src_.data() + cursor_;
        const char* last = src_.data() + src_.size();
        double value = 0.0;
        const auto res = std::from_chars(first, last, value);
        if (res.ec != std::errc{}) fail("malformed number");
        cursor_ = static_cast<std::size_t>(res.ptr - src_.data());
        return make(Node{Number{value}});
    }

    NodePtr parse_ident() {
        const std::size_t start = cursor_;
        while (cursor_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[cursor_])) || src_[cursor_] == '_'))
            ++cursor_;
        const std::string_view name = src_.substr(start, cursor_ - start);

        if (name == "z") return make(Node{Variable{}});
        for (std::size_t k = 0; k < kConstants.size(); ++k)
            if (name == kConstants[k]) return make(Node{Constant{static_cast<int>(k)}});

        for (std::size_t k = 0; k < kFunctions.size(); ++k) {
            if (name != kFunctions[k]) continue;
            if (!accept('(')) fail("expected '(' after function name");
            NodePtr arg = parse_sum();
            int arity = 1;
            while (accept(',')) {
                parse_sum();
                ++arity;
            }
            if (!accept(')')) fail("expected ')'");
            if (arity != 1)
                throw precondition_error(
                    "expr_arity", std::string(name) + " takes exactly one argument, got " +
                                      std::to_string(arity));
            return make(Node{Call{static_cast<int>(k), arg}});
        }
        throw precondition_error("expr_unknown_ident",
                                 "unknown identifier '" + std::string(name) + "' at offset " +
                                     std::to_string(start));
    }

    std::string_view src_;
    std::size_t cursor_ = 0;
};

inline FunctionExpr FunctionExpr::parse(std::string_view src) {
    detail::require(!src.empty(), "expr_empty", "expression must not be empty");
    Parser p(src);
    return FunctionExpr(p.run(), std::string(src));
}

inline Complex FunctionExpr::eval_node(const Node& n, Complex z) {
    struct Visitor {
        Complex z;

        Complex operator()(const Number& x) const { return Complex{x.value, 0.0}; }
        Complex operator()(const Constant& c) const {
            switch (c.id) {
                case 0: return Complex{0.0, 1.0};
                case 1: return Complex{std::numbers::pi, 0.0};
                default: return Complex{std::numbers::e, 0.0};
            }
        }
        Complex operator()(const Variable&) const { return z; }
        Complex operator()(const Negate& u) const { return -eval_node(*u.arg, z); }
        Complex operator()(const Binary& b) const {
            const Complex l = eval_node(*b.lhs, z);
            const Complex r = eval_node(*b.rhs, z);
            switch (b.op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                case '/': return l / r;
                default: return power(l, r);
            }
        }
        Complex operator()(const Call& c) const {
            const Complex a = eval_node(*c.arg, z);
            switch (c.fn) {
                case 0: return std::exp(a);
                case 1: return std::log(principal(a));
                case 2: return std::sin(a);
                case 3: return std::cos(a);
                case 4: return std::sinh(a);
                case 5: return std::cosh(a);
                default: return std::sqrt(principal(a));
            }
        }

        // take the negative real axis from above, so e.g. sqrt(-1) is +i even
        // when a negative zero imaginary part crept in through unary minus
        static Complex principal(Complex a) {
            return a.imag() == 0.0 ? Complex{a.real(), 0.0} : a;
        }

        static Complex power(Complex base, Complex expo) {
            // exact repeated multiplication for small integer exponents
            if (expo.imag() == 0.0 && expo.real() == std::floor(expo.real()) &&
                std::abs(expo.real()) <= 1024.0) {
                long n = static_cast<long>(expo.real());
                const bool invert = n < 0;
                if (invert) n = -n;
                Complex acc{1.0, 0.0};
                for (Complex b = base; n > 0; n >>= 1, b *= b)
                    if (n & 1) acc *= b;
                return invert ? 1.0 / acc : acc;
            }
            return std::pow(principal(base), expo);
        }
    };
    return std::visit(Visitor{z}, n.v);
}

inline std::string FunctionExpr::print_node(const Node& n) {
    struct Visitor {
        std::string operator()(const Number& x) const {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", x.value);
            return buf;
        }
        std::string operator()(const Constant& c) const { return std::string(kConstants[static_cast<std::size_t>(c.id)]); }
        std::string operator()(const Variable&) const { return "z"; }
        std::string operator()(const Negate& u) const { return "(-" + print_node(*u.arg) + ")"; }
        std::string operator()(const Binary& b) const {
            return "(" + print_node(*b.lhs) + b.op + print_node(*b.rhs) + ")";
        }
        std::string operator()(const Call& c) const {
            return std::string(kFunctions[static_cast<std::size_t>(c.fn)]) + "(" + print_node(*c.arg) + ")";
        }
    };
    return std::visit(Visitor{}, n.v);
}

inline bool FunctionExpr::nodes_equal(const Node& a, const Node& b) {
    if (a.v.index() != b.v.index()) return false;
    struct Visitor {
        const Node& other;

        bool operator()(const Number& x) const { return std::get<Number>(other.v).value == x.value; }
        bool operator()(const Constant& c) const { return std::get<Constant>(other.v).id == c.id; }
        bool operator()(const Variable&) const { return true; }
        bool operator()(const Negate& u) const {
            return nodes_equal(*u.arg, *std::get<Negate>(other.v).arg);
        }
        bool operator()(const Binary& x) const {
            const auto& o = std::get<Binary>(other.v);
            return x.op == o.op && nodes_equal(*x.lhs, *o.lhs) && nodes_equal(*x.rhs, *o.rhs);
        }
        bool operator()(const Call& c) const {
            const auto& o = std::get<Call>(other.v);
            return c.fn == o.fn && nodes_equal(*c.arg, *o.arg);
        }
    };
    return std::visit(Visitor{b}, a.v);
}

} // namespace contin
