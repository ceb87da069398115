#include <map>
#include <optional>
#include <stdexcept>

#include "stochsym/expr/collect.hpp"

namespace stochsym::expr {

namespace {

std::vector<Expr> terms_of(const Expr& e) {
    if (e.kind() == Kind::Sum) return {e.args().begin(), e.args().end()};
    if (e.is_zero()) return {};
    return {e};
}

std::vector<Expr> factors_of(const Expr& e) {
    if (e.kind() == Kind::Product) return {e.args().begin(), e.args().end()};
    return {e};
}

// a with e = a*t + b, a a nonzero numeric constant.
std::optional<Number> linear_slope(const Expr& e) {
    Expr a = differentiate(e, Var::T);
    if (a.kind() != Kind::Constant || a.is_zero()) return std::nullopt;
    Expr rest = simplify(e - a * t());
    if (depends_on(rest, Var::T)) return std::nullopt;
    return a.number();
}

bool bad_at_zero(const Expr& e) {
    if (e.kind() == Kind::Log && e.arg(0).is_zero()) return true;
    if (e.kind() == Kind::Power && e.arg(0).is_zero()) return true;
    for (const auto& a : e.args())
        if (bad_at_zero(a)) return true;
    return false;
}

// lambda with numer = lambda * denom and lambda free of t.
std::optional<Expr> proportionality(const Expr& numer, const Expr& denom) {
    if (denom.is_zero() || numer.is_zero()) return std::nullopt;
    auto dterms = terms_of(denom);
    for (const auto& n : terms_of(numer)) {
        Expr r = simplify(n / dterms.front());
        if (depends_on(r, Var::T) || contains_integral(r)) continue;
        if (simplify(numer - r * denom).is_zero()) return r;
    }
    return std::nullopt;
}

// Antiderivative of a single term, or nothing when no rule applies.
std::optional<Expr> antiderivative(const Expr& term) {
    std::vector<Expr> coeff;
    std::optional<Number> t_power;
    std::optional<Expr> exp_arg;
    std::optional<std::pair<Expr, Expr>> lin_power;
    int t_dependent = 0;
    for (const auto& f : factors_of(term)) {
        if (!depends_on(f, Var::T)) {
            coeff.push_back(f);
            continue;
        }
        ++t_dependent;
        if (f.is_var(Var::T)) {
            t_power = Number::rational(1);
        } else if (f.kind() == Kind::Power && f.arg(0).is_var(Var::T) && f.arg(1).kind() == Kind::Constant) {
            t_power = f.arg(1).number();
        } else if (f.kind() == Kind::Exp) {
            exp_arg = f.arg(0);
        } else if (f.kind() == Kind::Power && f.arg(1).kind() == Kind::Constant) {
            lin_power = std::make_pair(f.arg(0), f.arg(1));
        } else {
            return std::nullopt;
        }
    }
    Expr c = Expr::product(coeff);
    if (t_dependent == 0) return simplify(c * t());
    if (t_dependent == 1 && t_power) {
        if (t_power->is_minus_one()) return std::nullopt;
        Number p = *t_power + Number::rational(1);
        return simplify(c * pow(t(), Expr::constant(p)) * Expr::constant(p.reciprocal()));
    }
    if (exp_arg && t_dependent <= 2 && !lin_power) {
        auto a = linear_slope(*exp_arg);
        if (!a) return std::nullopt;
        std::int64_t n = 0;
        if (t_power) {
            if (!t_power->is_integer() || t_power->is_negative()) return std::nullopt;
            n = t_power->num();
        } else if (t_dependent != 1) {
            return std::nullopt;
        }
        if (n > 12) return std::nullopt;
        // integral of t^n e^{at} = e^{at} sum_k (-1)^k n!/(n-k)! t^{n-k} / a^{k+1}
        std::vector<Expr> poly;
        Number falling = Number::rational(1);
        for (std::int64_t k = 0; k <= n; ++k) {
            Number sign = Number::rational(k % 2 == 0 ? 1 : -1);
            Number scale = sign * falling * a->pow(-(k + 1));
            poly.push_back(Expr::constant(scale) * pow(t(), num(n - k)));
            falling = falling * Number::rational(n - k);
        }
        return simplify(c * exp(*exp_arg) * Expr::sum(poly));
    }
    if (lin_power && t_dependent == 1) {
        auto a = linear_slope(lin_power->first);
        if (!a) return std::nullopt;
        const Number& n = lin_power->second.number();
        if (n.is_minus_one()) return std::nullopt;
        Number p = n + Number::rational(1);
        return simplify(c * pow(lin_power->first, Expr::constant(p)) * Expr::constant((p * *a).reciprocal()));
    }
    return std::nullopt;
}

}  // namespace

Expr integrate_t(const Expr& g) {
    Expr s = simplify(g);
    if (depends_on(s, Var::X) || depends_on(s, Var::W)) {
        throw std::invalid_argument("integrate_t: integrand depends on x or w");
    }
    std::vector<Expr> pieces;
    std::vector<Expr> leftovers;

    auto add_closed = [&](const Expr& anti, const Expr& original) {
        Expr at0 = substitute(anti, Var::T, num(0));
        if (bad_at_zero(at0)) {
            leftovers.push_back(original);
            return;
        }
        pieces.push_back(anti - at0);
    };

    // Group terms sharing a reciprocal factor 1/h to catch h'/h.
    std::map<Expr, std::vector<Expr>, ExprLess> by_denominator;
    std::vector<Expr> plain;
    for (const auto& term : terms_of(s)) {
        std::optional<Expr> h;
        int count = 0;
        for (const auto& f : factors_of(term)) {
            if (f.kind() == Kind::Power && f.arg(1).kind() == Kind::Constant && f.arg(1).number().is_minus_one() &&
                depends_on(f.arg(0), Var::T)) {
                h = f.arg(0);
                ++count;
            }
        }
        if (count == 1) {
            by_denominator[*h].push_back(term);
        } else {
            plain.push_back(term);
        }
    }
    for (auto& [h, group] : by_denominator) {
        std::vector<Expr> stripped;
        for (const auto& term : group) {
            std::vector<Expr> rest;
            for (const auto& f : factors_of(term))
                if (!(f.kind() == Kind::Power && f.arg(0) == h)) rest.push_back(f);
            stripped.push_back(Expr::product(rest));
        }
        Expr numer = simplify(Expr::sum(stripped));
        Expr dh = differentiate(h, Var::T);
        auto ratio = proportionality(numer, dh);
        if (ratio) {
            Expr h0 = substitute(h, Var::T, num(0));
            Expr arg = (h0.kind() == Kind::Constant && h0.number().is_negative()) ? simplify(-h) : h;
            add_closed(simplify(*ratio * log(arg)), Expr::sum(group));
        } else {
            for (const auto& term : group) plain.push_back(term);
        }
    }
    for (const auto& term : plain) {
        auto anti = antiderivative(term);
        if (anti) {
            add_closed(*anti, term);
        } else {
            leftovers.push_back(term);
        }
    }
    for (const auto& term : leftovers) pieces.push_back(Expr::integral(term));
    return simplify(Expr::sum(pieces));
}

}  // namespace stochsym::expr
