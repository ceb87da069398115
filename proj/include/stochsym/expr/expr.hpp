#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stochsym/expr/number.hpp"

namespace stochsym::expr {

/// The three independent variables of the problem: state x, time t and the
/// Wiener coordinate w.
enum class Var : std::uint8_t { X, T, W };

const char* var_name(Var v) noexcept;

/// Node kinds. The declaration order is the kind rank used by the canonical
/// term ordering.
enum class Kind : std::uint8_t {
    Constant,
    Variable,
    Parameter,
    Power,
    Exp,
    Log,
    Integral,  // integral of a function of t over [0, t]
    Product,
    Sum,
    Neg,
};

/// Immutable expression tree with value semantics; copies share nodes.
class Expr {
public:
    Expr();  // the exact constant 0

    static Expr constant(Number n);
    static Expr integer(std::int64_t n) { return constant(Number::rational(n)); }
    static Expr rational(std::int64_t num, std::int64_t den) { return constant(Number::rational(num, den)); }
    static Expr real(double v);
    static Expr variable(Var v);
    static Expr parameter(std::string name);

    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(Expr base, Expr exponent);
    static Expr exp(Expr arg);
    static Expr log(Expr arg);
    static Expr neg(Expr arg);
    static Expr integral(Expr integrand);

    /// Builds a composite node and flags it as already canonical. Only the
    /// simplifier calls this.
    static Expr canonical_node(Kind kind, std::vector<Expr> args);

    Kind kind() const noexcept;
    const Number& number() const;
    Var variable() const;
    const std::string& name() const;
    std::span<const Expr> args() const noexcept;
    const Expr& arg(std::size_t i) const;
    std::size_t hash() const noexcept;
    bool is_canonical() const noexcept;

    bool is_constant() const noexcept { return kind() == Kind::Constant; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool is_var(Var v) const noexcept;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node);
    static Expr composite(Kind kind, std::vector<Expr> args, bool canonical);

    std::shared_ptr<const Node> node_;
};

/// Canonical total order: node kind rank first, then contents.
int compare(const Expr& a, const Expr& b);
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Convenience leaves.
Expr x();
Expr t();
Expr w();
Expr num(std::int64_t n);
Expr num(std::int64_t n, std::int64_t d);
Expr param(std::string name);

// Raw (unsimplified) builders.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& a);
Expr log(const Expr& a);

bool depends_on(const Expr& e, Var v);
bool depends_on_parameter(const Expr& e, std::string_view name);
std::set<std::string> parameters(const Expr& e);
bool contains_integral(const Expr& e);
bool contains_log(const Expr& e);
std::size_t node_count(const Expr& e);

/// True when e is provably positive on the domain x > 0 (x, exp(.), positive
/// constants and products/powers/sums of those).
bool is_positive(const Expr& e);

/// Canonical form: flattened sums and products, like terms collected,
/// constants folded, terms sorted by the canonical order, products
/// distributed over sums. Idempotent.
Expr simplify(const Expr& e);

/// Simplified partial derivative; parameters are constants.
Expr differentiate(const Expr& e, Var v);

/// Capture-free replacement followed by simplify.
Expr substitute(const Expr& e, Var v, const Expr& replacement);
Expr substitute(const Expr& e, std::string_view parameter, const Expr& replacement);

/// Infix text that parse() reads back.
std::string print(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace stochsym::expr
