#include <cmath>
#include <optional>

#include "stochsym/classifier/classifier.hpp"
#include "stochsym/errors.hpp"
#include "stochsym/expr/collect.hpp"

namespace stochsym::classifier {

using expr::Kind;
using expr::Var;

namespace {

constexpr int kGridPoints = 20;

// Values of e on the t-grid, or nothing when e cannot be evaluated.
std::optional<std::vector<long double>> on_grid(const Expr& e, const Bindings& bindings) {
    try {
        expr::CompiledExpr<long double> c(e, bindings);
        std::vector<long double> out;
        for (int i = 0; i < kGridPoints; ++i) {
            long double t = 2.0L * i / (kGridPoints - 1);
            out.push_back(c(1, t, 0));
        }
        return out;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<int> standard_exponent(const Expr& e, const Bindings& bindings) {
    for (int n : {0, 1, 2})
        if (equal_in_t(e, expr::num(n), bindings)) return n;
    return std::nullopt;
}

}  // namespace

bool zero_in_t(const Expr& e, const Bindings& bindings) {
    Expr s = expr::simplify(e);
    if (s.is_zero()) return true;
    if (s.kind() == Kind::Constant) return false;
    auto v = on_grid(s, bindings);
    if (!v) return false;
    for (long double y : *v)
        if (std::fabs(y) > 1e-9L) return false;
    return true;
}

bool equal_in_t(const Expr& a, const Expr& b, const Bindings& bindings) {
    Expr d = expr::simplify(a - b);
    if (d.is_zero()) return true;
    if (d.kind() == Kind::Constant) return false;
    auto va = on_grid(a, bindings);
    auto vb = on_grid(b, bindings);
    if (!va || !vb) return false;
    for (int i = 0; i < kGridPoints; ++i) {
        long double x = (*va)[i], y = (*vb)[i];
        if (std::fabs(x - y) > 1e-9L * (1 + std::fabs(x) + std::fabs(y))) return false;
    }
    return true;
}

bool constant_in_t(const Expr& e, const Bindings& bindings) {
    if (!expr::depends_on(e, Var::T)) return true;
    auto v = on_grid(e, bindings);
    if (!v) return false;
    for (long double y : *v)
        if (std::fabs(y - v->front()) > 1e-10L * (1 + std::fabs(v->front()))) return false;
    return true;
}

const char* basis_name(Basis b) noexcept {
    switch (b) {
        case Basis::One: return "1";
        case Basis::X: return "x";
        case Basis::X2: return "x^2";
        case Basis::XLogX: return "x*log(x)";
        case Basis::X2LogX: return "x^2*log(x)";
        case Basis::LogX: return "log(x)";
        case Basis::XPow: return "x^(1+beta)";
    }
    return "?";
}

Expr DriftDecomposition::coeff(Basis b) const {
    auto it = coeffs.find(b);
    return it == coeffs.end() ? expr::num(0) : it->second;
}

Expr DriftDecomposition::reconstruct() const {
    using expr::x;
    Expr out = remainder;
    for (const auto& [b, c] : coeffs) {
        Expr term;
        switch (b) {
            case Basis::One: term = expr::num(1); break;
            case Basis::X: term = x(); break;
            case Basis::X2: term = expr::pow(x(), expr::num(2)); break;
            case Basis::XLogX: term = x() * expr::log(x()); break;
            case Basis::X2LogX: term = expr::pow(x(), expr::num(2)) * expr::log(x()); break;
            case Basis::LogX: term = expr::log(x()); break;
            case Basis::XPow: term = expr::pow(x(), expr::num(1) + beta); break;
        }
        out = out + c * term;
    }
    return expr::simplify(out);
}

DriftDecomposition decompose(const Expr& f, const Expr& S, const Bindings& bindings) {
    if (expr::depends_on(f, Var::W)) throw UnclassifiableDrift("drift depends on w");
    expr::XCollection col = expr::collect_x(f);
    if (!col.remainder.is_zero()) {
        throw UnclassifiableDrift("drift term outside the basis: " + expr::print(col.remainder));
    }
    DriftDecomposition d;
    d.remainder = expr::num(0);
    std::optional<Expr> generic;
    std::vector<Expr> generic_coeffs;
    std::map<Basis, std::vector<Expr>> parts;
    for (const auto& term : col.terms) {
        if (term.log_power < 0 || term.log_power > 1) {
            throw UnclassifiableDrift("power of log(x) outside the basis: " + expr::print(term.coeff));
        }
        auto n = standard_exponent(term.exponent, bindings);
        if (n) {
            static const Basis plain[] = {Basis::One, Basis::X, Basis::X2};
            static const Basis logged[] = {Basis::LogX, Basis::XLogX, Basis::X2LogX};
            parts[term.log_power ? logged[*n] : plain[*n]].push_back(term.coeff);
            continue;
        }
        if (term.log_power != 0) {
            throw UnclassifiableDrift("log(x) times a generic power of x: " + expr::print(term.exponent));
        }
        if (generic && !equal_in_t(*generic, term.exponent, bindings)) {
            throw UnclassifiableDrift("more than one generic power of x: " + expr::print(*generic) + ", " +
                                      expr::print(term.exponent));
        }
        if (!generic) generic = term.exponent;
        generic_coeffs.push_back(term.coeff);
    }
    for (auto& [b, cs] : parts) {
        Expr c = expr::simplify(Expr::sum(cs));
        if (!zero_in_t(c, bindings)) d.coeffs[b] = c;
    }
    if (generic) {
        Expr c = expr::simplify(Expr::sum(generic_coeffs));
        if (!zero_in_t(c, bindings)) {
            d.beta = expr::simplify(*generic - expr::num(1));
            Expr k = expr::simplify(d.beta * S);
            if (!constant_in_t(k, bindings)) {
                throw UnclassifiableDrift("exponent of x is not 1 + k/S with constant k: " + expr::print(*generic));
            }
            if (expr::depends_on(k, Var::T)) {
                k = Expr::real(static_cast<double>(expr::CompiledExpr<long double>(k, bindings)(1, 0, 0)));
            }
            d.k = k;
            d.coeffs[Basis::XPow] = c;
        }
    }
    return d;
}

}  // namespace stochsym::classifier
