#include "qecon/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "qecon/error.hpp"
#include "qecon/matrix_io.hpp"

namespace qecon::calculus {

struct Node {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

const std::shared_ptr<const Node>& zero_node() {
    static const auto node = std::make_shared<const Node>();
    return node;
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

std::string describe(const Node& n);

[[noreturn]] void domain_fail(const Node& n, const std::string& why, double x) {
    throw DomainError(why + " in '" + describe(n) + "' at x = " + io::format_number(x));
}

double eval(const Node& n, double x) {
    double r = 0.0;
    switch (n.kind) {
        case NodeKind::Constant: return n.value;
        case NodeKind::Variable: return x;
        case NodeKind::Sum: r = eval(*n.a, x) + eval(*n.b, x); break;
        case NodeKind::Product: r = eval(*n.a, x) * eval(*n.b, x); break;
        case NodeKind::Quotient: {
            const double num = eval(*n.a, x);
            const double den = eval(*n.b, x);
            if (den == 0.0) domain_fail(n, "division by zero", x);
            r = num / den;
            break;
        }
        case NodeKind::Power: {
            const double base = eval(*n.a, x);
            const double ex = eval(*n.b, x);
            if (base < 0.0 && !is_integer(ex)) domain_fail(n, "negative base with non-integer exponent", x);
            if (base == 0.0 && ex < 0.0) domain_fail(n, "zero base with negative exponent", x);
            r = std::pow(base, ex);
            break;
        }
        case NodeKind::Exp: r = std::exp(eval(*n.a, x)); break;
        case NodeKind::Ln: {
            const double u = eval(*n.a, x);
            if (!(u > 0.0)) domain_fail(n, "logarithm of a non-positive value", x);
            r = std::log(u);
            break;
        }
        case NodeKind::Abs: r = std::abs(eval(*n.a, x)); break;
        case NodeKind::Negation: r = -eval(*n.a, x); break;
    }
    if (!std::isfinite(r)) domain_fail(n, "non-finite result", x);
    return r;
}

int precedence(const Node& n) {
    switch (n.kind) {
        case NodeKind::Sum: return 1;
        case NodeKind::Product:
        case NodeKind::Quotient: return 2;
        case NodeKind::Negation: return 3;
        case NodeKind::Power: return 4;
        case NodeKind::Constant: return n.value < 0.0 ? 3 : 5;
        default: return 5;
    }
}

void print(const Node& n, std::string_view var, std::string& out);

void print_wrapped(const Node& n, bool wrap, std::string_view var, std::string& out) {
    if (wrap) out += '(';
    print(n, var, out);
    if (wrap) out += ')';
}

void print(const Node& n, std::string_view var, std::string& out) {
    switch (n.kind) {
        case NodeKind::Constant: out += io::format_number(n.value); return;
        case NodeKind::Variable: out += var; return;
        case NodeKind::Sum: {
            print(*n.a, var, out);
            const Node& r = *n.b;
            if (r.kind == NodeKind::Negation) {
                out += " - ";
                print_wrapped(*r.a, precedence(*r.a) <= 1, var, out);
            } else if (r.kind == NodeKind::Constant && r.value < 0.0) {
                out += " - ";
                out += io::format_number(-r.value);
            } else {
                out += " + ";
                print_wrapped(r, precedence(r) <= 1, var, out);
            }
            return;
        }
        case NodeKind::Product:
        case NodeKind::Quotient:
            print_wrapped(*n.a, precedence(*n.a) < 2, var, out);
            out += n.kind == NodeKind::Product ? "*" : "/";
            print_wrapped(*n.b, precedence(*n.b) <= 2, var, out);
            return;
        case NodeKind::Power:
            print_wrapped(*n.a, precedence(*n.a) < 5, var, out);
            out += '^';
            print_wrapped(*n.b, precedence(*n.b) < 4, var, out);
            return;
        case NodeKind::Exp:
        case NodeKind::Ln:
        case NodeKind::Abs:
            out += n.kind == NodeKind::Exp ? "exp(" : n.kind == NodeKind::Ln ? "ln(" : "abs(";
            print(*n.a, var, out);
            out += ')';
            return;
        case NodeKind::Negation:
            out += '-';
            print_wrapped(*n.a, precedence(*n.a) < 3, var, out);
            return;
    }
}

std::string describe(const Node& n) {
    std::string s;
    print(n, "x", s);
    return s;
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr Expr::constant(double value) {
    if (!std::isfinite(value)) throw InvalidInput("expression constants must be finite");
    if (value == 0.0) value = 0.0;  // fold -0
    return Expr(std::make_shared<const Node>(Node{NodeKind::Constant, value, nullptr, nullptr}));
}

Expr Expr::variable() { return Expr(std::make_shared<const Node>(Node{NodeKind::Variable, 0.0, nullptr, nullptr})); }

Expr Expr::make(NodeKind kind, const Expr& a, const Expr* b) {
    Expr e(std::make_shared<const Node>(Node{kind, 0.0, a.node_, b ? b->node_ : nullptr}));
    if (a.is_constant() && (!b || b->is_constant())) {
        try {
            return constant(e(0.0));
        } catch (const DomainError&) {
            // Left unfolded; evaluation reports the domain violation.
        }
    }
    return e;
}

Expr Expr::sum(Expr a, Expr b) { return make(NodeKind::Sum, a, &b); }
Expr Expr::product(Expr a, Expr b) { return make(NodeKind::Product, a, &b); }
Expr Expr::quotient(Expr a, Expr b) { return make(NodeKind::Quotient, a, &b); }
Expr Expr::power(Expr base, Expr exponent) { return make(NodeKind::Power, base, &exponent); }
Expr Expr::exp(Expr arg) { return make(NodeKind::Exp, arg); }
Expr Expr::ln(Expr arg) { return make(NodeKind::Ln, arg); }
Expr Expr::abs(Expr arg) { return make(NodeKind::Abs, arg); }
Expr Expr::negate(Expr arg) { return make(NodeKind::Negation, arg); }

Expr Expr::log(double base, Expr arg) {
    if (!(base > 0.0) || base == 1.0 || !std::isfinite(base))
        throw InvalidInput("logarithm base must be positive and different from 1");
    return quotient(ln(std::move(arg)), constant(std::log(base)));
}

NodeKind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }

Expr Expr::lhs() const {
    if (!node_->a) throw InvalidInput("expression node has no children");
    return Expr(node_->a);
}

Expr Expr::rhs() const {
    if (!node_->b) throw InvalidInput("expression node has no second child");
    return Expr(node_->b);
}

double Expr::operator()(double x) const { return eval(*node_, x); }

std::string Expr::to_string(std::string_view variable) const {
    std::string s;
    print(*node_, variable, s);
    return s;
}

Expr operator+(Expr a, Expr b) { return Expr::sum(std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::sum(std::move(a), Expr::negate(std::move(b))); }
Expr operator*(Expr a, Expr b) { return Expr::product(std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::quotient(std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::negate(std::move(a)); }

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case NodeKind::Constant: return a.value() == b.value();
        case NodeKind::Variable: return true;
        case NodeKind::Exp:
        case NodeKind::Ln:
        case NodeKind::Abs:
        case NodeKind::Negation: return structurally_equal(a.lhs(), b.lhs());
        default: return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
    }
}

// --- Parser ----------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(std::string_view text, std::string_view var) : s_(text), var_(var) {}

    Expr run() {
        Expr e = expr();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "'");
        }
    }

    Expr expr() {
        Expr e = term();
        while (true) {
            if (accept('+'))
                e = e + term();
            else if (accept('-'))
                e = e - term();
            else
                return e;
        }
    }

    Expr term() {
        Expr e = unary();
        while (true) {
            if (accept('*'))
                e = e * unary();
            else if (accept('/'))
                e = e / unary();
            else
                return e;
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (accept('^')) return Expr::power(base, unary());
        return base;
    }

    static bool digit(char c) { return c >= '0' && c <= '9'; }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    Expr number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
            if (p < s_.size() && digit(s_[p])) {
                pos_ = p;
                while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
            }
        }
        const std::string_view tok = s_.substr(start, pos_ - start);
        if (tok == ".") {
            pos_ = start;
            fail("malformed number");
        }
        try {
            return Expr::constant(io::parse_number(tok));
        } catch (const InvalidInput&) {
            pos_ = start;
            fail("malformed number '" + std::string(tok) + "'");
        }
    }

    Expr call_argument() {
        expect('(');
        Expr e = expr();
        expect(')');
        return e;
    }

    Expr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (digit(c) || c == '.') return number();
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        if (ident_start(c)) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
            const std::string_view id = s_.substr(start, pos_ - start);
            if (id == var_) return Expr::variable();
            if (id == "e") return Expr::constant(std::numbers::e);
            if (id == "exp") return Expr::exp(call_argument());
            if (id == "ln") return Expr::ln(call_argument());
            if (id == "abs") return Expr::abs(call_argument());
            if (id == "log") {
                expect('(');
                skip();
                const std::size_t base_pos = pos_;
                const Expr base = simplify(expr());
                if (!accept(';') && !accept(',')) fail("expected ';' after logarithm base");
                Expr arg = expr();
                expect(')');
                if (!base.is_constant() || !(base.value() > 0.0) || base.value() == 1.0) {
                    pos_ = base_pos;
                    fail("logarithm base must be a positive constant other than 1");
                }
                return Expr::log(base.value(), std::move(arg));
            }
            pos_ = start;
            fail("unknown identifier '" + std::string(id) + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::string_view var_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, std::string_view variable) {
    if (variable.empty()) throw InvalidInput("variable name must not be empty");
    return Parser(text, variable).run();
}

// --- Simplification ----------------------------------------------------------

Expr simplify(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Constant:
        case NodeKind::Variable: return e;
        case NodeKind::Sum: {
            const Expr a = simplify(e.lhs());
            const Expr b = simplify(e.rhs());
            if (a.is_constant(0.0)) return b;
            if (b.is_constant(0.0)) return a;
            return a + b;
        }
        case NodeKind::Product: {
            Expr a = simplify(e.lhs());
            Expr b = simplify(e.rhs());
            if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
            if (b.is_constant() && !a.is_constant()) std::swap(a, b);
            if (a.is_constant(1.0)) return b;
            if (b.is_constant(1.0)) return a;
            if (a.is_constant() && b.kind() == NodeKind::Product && b.lhs().is_constant())
                return simplify(Expr::constant(a.value()) * b.lhs() * b.rhs());
            if (a.is_constant(-1.0)) return simplify(-b);
            if (b.kind() == NodeKind::Quotient && b.lhs().is_constant(1.0)) return simplify(a / b.rhs());
            if (a.kind() == NodeKind::Quotient && a.lhs().is_constant(1.0)) return simplify(b / a.rhs());
            return a * b;
        }
        case NodeKind::Quotient: {
            const Expr a = simplify(e.lhs());
            const Expr b = simplify(e.rhs());
            if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
            if (b.is_constant(1.0)) return a;
            if (b.is_constant(-1.0)) return simplify(-a);
            if (!b.is_constant(0.0) && structurally_equal(a, b)) return Expr::constant(1.0);
            return a / b;
        }
        case NodeKind::Power: {
            const Expr a = simplify(e.lhs());
            const Expr b = simplify(e.rhs());
            if (b.is_constant(1.0)) return a;
            if (b.is_constant(0.0)) return Expr::constant(1.0);
            if (a.is_constant(1.0)) return Expr::constant(1.0);
            if (a.kind() == NodeKind::Power && a.rhs().is_constant() && b.is_constant() && is_integer(b.value()))
                return simplify(Expr::power(a.lhs(), Expr::constant(a.rhs().value() * b.value())));
            return Expr::power(a, b);
        }
        case NodeKind::Exp: return Expr::exp(simplify(e.lhs()));
        case NodeKind::Ln: return Expr::ln(simplify(e.lhs()));
        case NodeKind::Abs: return Expr::abs(simplify(e.lhs()));
        case NodeKind::Negation: {
            const Expr a = simplify(e.lhs());
            if (a.kind() == NodeKind::Negation) return a.lhs();
            return -a;
        }
    }
    return e;
}

// --- Differentiation ---------------------------------------------------------

namespace {

Expr derive(const Expr& e) {
    using K = NodeKind;
    switch (e.kind()) {
        case K::Constant: return Expr::constant(0.0);
        case K::Variable: return Expr::constant(1.0);
        case K::Sum: return derive(e.lhs()) + derive(e.rhs());
        case K::Negation: return -derive(e.lhs());
        case K::Product: {
            const Expr u = e.lhs(), v = e.rhs();
            if (u.is_constant()) return u * derive(v);
            if (v.is_constant()) return v * derive(u);
            return derive(u) * v + u * derive(v);
        }
        case K::Quotient: {
            const Expr u = e.lhs(), v = e.rhs();
            if (v.is_constant()) return derive(u) / v;
            if (u.is_constant()) return -(u * derive(v)) / Expr::power(v, Expr::constant(2.0));
            return (derive(u) * v - u * derive(v)) / Expr::power(v, Expr::constant(2.0));
        }
        case K::Power: {
            const Expr u = e.lhs(), v = e.rhs();
            if (v.is_constant())
                return Expr::constant(v.value()) * Expr::power(u, Expr::constant(v.value() - 1.0)) * derive(u);
            if (u.is_constant()) return e * Expr::ln(u) * derive(v);
            return e * (derive(v) * Expr::ln(u) + v * derive(u) / u);
        }
        case K::Exp: return e * derive(e.lhs());
        case K::Ln: return derive(e.lhs()) / e.lhs();
        case K::Abs: return e.lhs() / e * derive(e.lhs());
    }
    return Expr::constant(0.0);
}

}  // namespace

Expr differentiate(const Expr& e) { return simplify(derive(e)); }

}  // namespace qecon::calculus
