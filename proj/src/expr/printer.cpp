#include <span>
#include <string>
#include <vector>

#include "stochsym/expr/expr.hpp"

namespace stochsym::expr {

namespace {

enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

std::string emit(const Expr& e, int context);

// Magnitude of a term plus its sign; used so sums print "a - b".
std::string emit_unsigned(const Expr& e, bool& negative, int& prec);

std::string paren(const std::string& s, bool wrap) { return wrap ? "(" + s + ")" : s; }

// Negative exponents print as denominators, except integer powers of sums
// below -1: "1/(a + b)^2" would read back as an expanded square.
bool negative_numeric_exponent(const Expr& e) {
    if (e.kind() != Kind::Power || e.arg(1).kind() != Kind::Constant) return false;
    const Number& n = e.arg(1).number();
    if (!n.is_negative()) return false;
    if (e.arg(0).kind() == Kind::Sum && n.is_integer() && !n.is_minus_one()) return false;
    return true;
}

std::string emit_product(std::span<const Expr> factors, bool& negative, int& prec) {
    Number coeff = Number::rational(1);
    std::vector<std::string> numer;
    std::vector<std::string> denom;
    bool sum_in_denom = false;
    for (const auto& f : factors) {
        if (f.kind() == Kind::Constant) {
            coeff = coeff * f.number();
            continue;
        }
        if (negative_numeric_exponent(f)) {
            Number inv = -f.arg(1).number();
            if (inv.is_one()) {
                sum_in_denom = sum_in_denom || f.arg(0).kind() == Kind::Sum;
                denom.push_back(emit(f.arg(0), kPower));
            } else {
                denom.push_back(emit(Expr::canonical_node(Kind::Power, {f.arg(0), Expr::constant(inv)}), kProduct + 1));
            }
            continue;
        }
        numer.push_back(emit(f, kProduct));
    }
    negative = coeff.is_negative();
    Number mag = negative ? -coeff : coeff;
    bool coeff_inexact = !mag.exact();
    std::vector<std::string> num_parts;
    std::vector<std::string> den_parts;
    if (coeff_inexact) {
        num_parts.push_back(mag.to_string());
    } else {
        if (mag.num() != 1) num_parts.push_back(std::to_string(mag.num()));
        if (mag.den() != 1) den_parts.push_back(std::to_string(mag.den()));
    }
    for (auto& s : numer) num_parts.push_back(std::move(s));
    for (auto& s : denom) den_parts.push_back(std::move(s));

    std::string out;
    if (num_parts.empty()) {
        out = "1";
    } else {
        for (std::size_t i = 0; i < num_parts.size(); ++i) out += (i ? "*" : "") + num_parts[i];
    }
    if (sum_in_denom && den_parts.size() > 1) {
        // "a/(b*(c + d))" would read back with the sum expanded
        for (const auto& d : den_parts) out += "/" + d;
    } else if (!den_parts.empty()) {
        std::string den;
        for (std::size_t i = 0; i < den_parts.size(); ++i) den += (i ? "*" : "") + den_parts[i];
        out += "/" + paren(den, den_parts.size() > 1);
    }
    prec = kProduct;
    return out;
}

std::string emit_unsigned(const Expr& e, bool& negative, int& prec) {
    negative = false;
    switch (e.kind()) {
        case Kind::Constant: {
            const Number& n = e.number();
            negative = n.is_negative();
            Number mag = negative ? -n : n;
            prec = (mag.exact() && mag.den() != 1) ? kProduct : kAtom;
            return mag.to_string();
        }
        case Kind::Product: return emit_product(e.args(), negative, prec);
        case Kind::Power:
            if (negative_numeric_exponent(e)) {
                std::vector<Expr> one{e};
                return emit_product(one, negative, prec);
            }
            break;
        case Kind::Neg: {
            bool inner = false;
            int p = 0;
            std::string s = emit_unsigned(e.arg(0), inner, p);
            negative = !inner;
            prec = p;
            if (p <= kSum) prec = kSum;
            return s;
        }
        default: break;
    }
    prec = e.kind() == Kind::Sum ? kSum : (e.kind() == Kind::Power ? kPower : kAtom);
    return emit(e, 0);
}

std::string emit(const Expr& e, int context) {
    switch (e.kind()) {
        case Kind::Variable: return var_name(e.variable());
        case Kind::Parameter: return e.name();
        case Kind::Exp: return "exp(" + emit(e.arg(0), 0) + ")";
        case Kind::Log: return "log(" + emit(e.arg(0), 0) + ")";
        case Kind::Integral: return "integral(" + emit(e.arg(0), 0) + ")";
        case Kind::Power: {
            if (negative_numeric_exponent(e)) break;
            const Expr& ex = e.arg(1);
            bool plain = ex.kind() == Kind::Constant && ex.number().is_integer() && ex.number().is_positive();
            bool simple_exp = plain || ex.kind() == Kind::Variable || ex.kind() == Kind::Parameter;
            std::string s = emit(e.arg(0), kAtom) + "^" + paren(emit(ex, 0), !simple_exp);
            return paren(s, context > kPower);
        }
        case Kind::Sum: {
            std::string out;
            bool first = true;
            for (const auto& term : e.args()) {
                bool neg = false;
                int p = 0;
                std::string s = emit_unsigned(term, neg, p);
                if (p <= kSum) s = "(" + s + ")";
                if (first) {
                    out = (neg ? "-" : "") + s;
                } else {
                    out += neg ? " - " : " + ";
                    out += s;
                }
                first = false;
            }
            return paren(out, context > kSum);
        }
        default: break;
    }
    bool neg = false;
    int p = 0;
    std::string s = emit_unsigned(e, neg, p);
    if (neg) {
        if (p <= kSum) s = "(" + s + ")";
        s = "-" + s;
        return paren(s, context > kSum);
    }
    return paren(s, context > p);
}

}  // namespace

std::string print(const Expr& e) { return emit(e, 0); }

}  // namespace stochsym::expr
