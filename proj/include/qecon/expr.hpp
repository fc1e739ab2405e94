#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace qecon::calculus {

enum class NodeKind { Constant, Variable, Sum, Product, Quotient, Power, Exp, Ln, Abs, Negation };

struct Node;

/// Immutable expression tree in one real variable. Copies share structure.
///
/// The combinators fold constants eagerly: a node whose children are all
/// constants becomes a constant whenever the folded value is finite.
class Expr {
public:
    /// The constant 0.
    Expr();

    static Expr constant(double value);
    static Expr variable();

    static Expr sum(Expr a, Expr b);
    static Expr product(Expr a, Expr b);
    static Expr quotient(Expr a, Expr b);
    static Expr power(Expr base, Expr exponent);
    static Expr exp(Expr arg);
    static Expr ln(Expr arg);
    static Expr abs(Expr arg);
    static Expr negate(Expr arg);
    /// log to base `base`, stored as ln(arg)/ln(base).
    static Expr log(double base, Expr arg);

    NodeKind kind() const noexcept;
    bool is_constant() const noexcept { return kind() == NodeKind::Constant; }
    bool is_constant(double v) const noexcept { return is_constant() && value() == v; }
    /// Constant value; only meaningful for constants.
    double value() const noexcept;
    /// First child (the only child of unary nodes).
    Expr lhs() const;
    Expr rhs() const;

    /// Throws DomainError naming the offending node when x lies outside the
    /// expression's domain.
    double operator()(double x) const;

    /// Text in the parser's grammar; parse(to_string()) rebuilds an equal tree.
    std::string to_string(std::string_view variable = "x") const;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr make(NodeKind kind, const Expr& a, const Expr* b = nullptr);

    std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

/// Grammar: numbers, the variable, `e`, `+ - * / ^`, `exp( )`, `ln( )`,
/// `abs( )`, `log(a; u)` and parentheses. `^` binds tightest and is
/// right-associative; unary minus sits between `^` and `* /`.
Expr parse(std::string_view text, std::string_view variable = "x");

bool structurally_equal(const Expr& a, const Expr& b);

/// Constant folding, 0/1 identities and merging of nested constant powers.
Expr simplify(const Expr& e);

/// Symbolic derivative d/dx, simplified.
Expr differentiate(const Expr& e);

}  // namespace qecon::calculus
