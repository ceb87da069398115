#include <functional>
#include <stdexcept>

#include "stochsym/expr/expr.hpp"

namespace stochsym::expr {

namespace {

Expr d(const Expr& e, Var v) {
    if (!depends_on(e, v)) return num(0);
    switch (e.kind()) {
        case Kind::Variable: return num(1);
        case Kind::Sum: {
            std::vector<Expr> terms;
            for (const auto& a : e.args()) terms.push_back(d(a, v));
            return Expr::sum(std::move(terms));
        }
        case Kind::Product: {
            std::vector<Expr> terms;
            auto args = e.args();
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (!depends_on(args[i], v)) continue;
                std::vector<Expr> f(args.begin(), args.end());
                f[i] = d(args[i], v);
                terms.push_back(Expr::product(std::move(f)));
            }
            return Expr::sum(std::move(terms));
        }
        case Kind::Power: {
            const Expr& b = e.arg(0);
            const Expr& p = e.arg(1);
            if (!depends_on(p, v)) return p * pow(b, p - num(1)) * d(b, v);
            return e * (d(p, v) * log(b) + p * d(b, v) / b);
        }
        case Kind::Exp: return e * d(e.arg(0), v);
        case Kind::Log: return d(e.arg(0), v) / e.arg(0);
        case Kind::Neg: return -d(e.arg(0), v);
        case Kind::Integral: return e.arg(0);  // only t reaches here
        default: return num(0);
    }
}

Expr replace(const Expr& e, const std::function<bool(const Expr&)>& match, const Expr& r) {
    if (match(e)) return r;
    if (e.args().empty()) return e;
    std::vector<Expr> args;
    for (const auto& a : e.args()) args.push_back(replace(a, match, r));
    switch (e.kind()) {
        case Kind::Sum: return Expr::sum(std::move(args));
        case Kind::Product: return Expr::product(std::move(args));
        case Kind::Power: return Expr::power(args[0], args[1]);
        case Kind::Exp: return Expr::exp(args[0]);
        case Kind::Log: return Expr::log(args[0]);
        case Kind::Neg: return Expr::neg(args[0]);
        case Kind::Integral: return Expr::integral(args[0]);
        default: return e;
    }
}

}  // namespace

Expr differentiate(const Expr& e, Var v) { return simplify(d(simplify(e), v)); }

Expr substitute(const Expr& e, Var v, const Expr& replacement) {
    if (v == Var::T && contains_integral(e) && !(replacement.is_var(Var::T))) {
        throw std::invalid_argument("cannot substitute t inside an integral");
    }
    return simplify(replace(e, [v](const Expr& n) { return n.is_var(v); }, replacement));
}

Expr substitute(const Expr& e, std::string_view parameter, const Expr& replacement) {
    return simplify(replace(
        e, [parameter](const Expr& n) { return n.kind() == Kind::Parameter && n.name() == parameter; }, replacement));
}

}  // namespace stochsym::expr
