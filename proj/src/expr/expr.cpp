#include "stochsym/expr/expr.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace stochsym::expr {

struct Expr::Node {
    Kind kind = Kind::Constant;
    Number number;
    Var var = Var::X;
    std::string name;
    std::vector<Expr> args;
    std::size_t hash = 0;
    bool canonical = false;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

int kind_rank(Kind k) { return static_cast<int>(k); }

}  // namespace

const char* var_name(Var v) noexcept {
    switch (v) {
        case Var::X: return "x";
        case Var::T: return "t";
        case Var::W: return "w";
    }
    return "?";
}

Expr::Expr() : Expr(constant(Number::rational(0))) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(Number n) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Constant;
    node->number = n;
    node->hash = mix(std::hash<double>{}(n.to_double()), n.exact() ? 1 : 2);
    node->canonical = true;
    return Expr(std::move(node));
}

Expr Expr::real(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite constant");
    // Integral doubles of moderate size are exact integers.
    if (v == std::floor(v) && std::fabs(v) < 1e15) return integer(static_cast<std::int64_t>(v));
    return constant(Number::real(v));
}

Expr Expr::variable(Var v) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Variable;
    node->var = v;
    node->hash = mix(17, static_cast<std::size_t>(v));
    node->canonical = true;
    return Expr(std::move(node));
}

Expr Expr::parameter(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty parameter name");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Parameter;
    node->hash = mix(31, std::hash<std::string>{}(name));
    node->name = std::move(name);
    node->canonical = true;
    return Expr(std::move(node));
}

Expr Expr::composite(Kind kind, std::vector<Expr> args, bool canonical) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    std::size_t h = mix(97, static_cast<std::size_t>(kind));
    for (const auto& a : args) h = mix(h, a.hash());
    node->hash = h;
    node->args = std::move(args);
    node->canonical = canonical;
    return Expr(std::move(node));
}

Expr Expr::sum(std::vector<Expr> terms) {
    if (terms.empty()) return integer(0);
    if (terms.size() == 1) return terms.front();
    return composite(Kind::Sum, std::move(terms), false);
}

Expr Expr::product(std::vector<Expr> factors) {
    if (factors.empty()) return integer(1);
    if (factors.size() == 1) return factors.front();
    return composite(Kind::Product, std::move(factors), false);
}

Expr Expr::power(Expr base, Expr exponent) {
    return composite(Kind::Power, {std::move(base), std::move(exponent)}, false);
}
Expr Expr::exp(Expr arg) { return composite(Kind::Exp, {std::move(arg)}, false); }
Expr Expr::log(Expr arg) { return composite(Kind::Log, {std::move(arg)}, false); }
Expr Expr::neg(Expr arg) { return composite(Kind::Neg, {std::move(arg)}, false); }
Expr Expr::integral(Expr integrand) { return composite(Kind::Integral, {std::move(integrand)}, false); }

Expr Expr::canonical_node(Kind kind, std::vector<Expr> args) { return composite(kind, std::move(args), true); }

Kind Expr::kind() const noexcept { return node_->kind; }

const Number& Expr::number() const {
    if (node_->kind != Kind::Constant) throw std::logic_error("number() on non-constant");
    return node_->number;
}

Var Expr::variable() const {
    if (node_->kind != Kind::Variable) throw std::logic_error("variable() on non-variable");
    return node_->var;
}

const std::string& Expr::name() const {
    if (node_->kind != Kind::Parameter) throw std::logic_error("name() on non-parameter");
    return node_->name;
}

std::span<const Expr> Expr::args() const noexcept { return node_->args; }
const Expr& Expr::arg(std::size_t i) const { return node_->args.at(i); }
std::size_t Expr::hash() const noexcept { return node_->hash; }
bool Expr::is_canonical() const noexcept { return node_->canonical; }

bool Expr::is_zero() const noexcept { return kind() == Kind::Constant && node_->number.is_zero(); }
bool Expr::is_one() const noexcept { return kind() == Kind::Constant && node_->number.is_one(); }
bool Expr::is_var(Var v) const noexcept { return kind() == Kind::Variable && node_->var == v; }

int compare(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return kind_rank(a.kind()) < kind_rank(b.kind()) ? -1 : 1;
    switch (a.kind()) {
        case Kind::Constant: return compare(a.number(), b.number());
        case Kind::Variable: {
            int l = static_cast<int>(a.variable());
            int r = static_cast<int>(b.variable());
            return l < r ? -1 : (l > r ? 1 : 0);
        }
        case Kind::Parameter: {
            int c = a.name().compare(b.name());
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        default: break;
    }
    auto la = a.args();
    auto lb = b.args();
    std::size_t n = std::min(la.size(), lb.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(la[i], lb[i]);
        if (c != 0) return c;
    }
    if (la.size() != lb.size()) return la.size() < lb.size() ? -1 : 1;
    return 0;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.hash() != b.hash()) return false;
    return compare(a, b) == 0;
}

Expr x() { return Expr::variable(Var::X); }
Expr t() { return Expr::variable(Var::T); }
Expr w() { return Expr::variable(Var::W); }
Expr num(std::int64_t n) { return Expr::integer(n); }
Expr num(std::int64_t n, std::int64_t d) { return Expr::rational(n, d); }
Expr param(std::string name) { return Expr::parameter(std::move(name)); }

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::neg(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::product({a, Expr::power(b, num(-1))}); }
Expr operator-(const Expr& a) { return Expr::neg(a); }
Expr pow(const Expr& base, const Expr& exponent) { return Expr::power(base, exponent); }
Expr exp(const Expr& a) { return Expr::exp(a); }
Expr log(const Expr& a) { return Expr::log(a); }

bool depends_on(const Expr& e, Var v) {
    if (e.kind() == Kind::Variable) return e.variable() == v;
    if (e.kind() == Kind::Integral) return v == Var::T;
    for (const auto& a : e.args())
        if (depends_on(a, v)) return true;
    return false;
}

bool depends_on_parameter(const Expr& e, std::string_view name) {
    if (e.kind() == Kind::Parameter) return e.name() == name;
    for (const auto& a : e.args())
        if (depends_on_parameter(a, name)) return true;
    return false;
}

namespace {
void collect_parameters(const Expr& e, std::set<std::string>& out) {
    if (e.kind() == Kind::Parameter) out.insert(e.name());
    for (const auto& a : e.args()) collect_parameters(a, out);
}
}  // namespace

std::set<std::string> parameters(const Expr& e) {
    std::set<std::string> out;
    collect_parameters(e, out);
    return out;
}

bool contains_integral(const Expr& e) {
    if (e.kind() == Kind::Integral) return true;
    for (const auto& a : e.args())
        if (contains_integral(a)) return true;
    return false;
}

bool contains_log(const Expr& e) {
    if (e.kind() == Kind::Log) return true;
    for (const auto& a : e.args())
        if (contains_log(a)) return true;
    return false;
}

std::size_t node_count(const Expr& e) {
    std::size_t n = 1;
    for (const auto& a : e.args()) n += node_count(a);
    return n;
}

bool is_positive(const Expr& e) {
    switch (e.kind()) {
        case Kind::Constant: return e.number().is_positive();
        case Kind::Variable: return e.variable() == Var::X;
        case Kind::Exp: return true;
        case Kind::Power: return is_positive(e.arg(0));
        case Kind::Product:
        case Kind::Sum:
            for (const auto& a : e.args())
                if (!is_positive(a)) return false;
            return true;
        default: return false;
    }
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << print(e); }

}  // namespace stochsym::expr
