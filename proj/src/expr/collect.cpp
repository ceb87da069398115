#include "stochsym/expr/collect.hpp"

#include <map>
#include <utility>

namespace stochsym::expr {

namespace {

struct Key {
    Expr exponent;
    int log_power;
};

struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
        int c = compare(a.exponent, b.exponent);
        if (c != 0) return c < 0;
        return a.log_power < b.log_power;
    }
};

bool is_log_x(const Expr& e) { return e.kind() == Kind::Log && e.arg(0).is_var(Var::X); }

}  // namespace

XCollection collect_x(const Expr& e) {
    Expr s = simplify(e);
    std::vector<Expr> terms;
    if (s.kind() == Kind::Sum) {
        terms.assign(s.args().begin(), s.args().end());
    } else if (!s.is_zero()) {
        terms.push_back(s);
    }
    std::map<Key, std::vector<Expr>, KeyLess> groups;
    std::vector<Expr> remainder;
    for (const auto& term : terms) {
        std::vector<Expr> factors;
        if (term.kind() == Kind::Product) {
            factors.assign(term.args().begin(), term.args().end());
        } else {
            factors.push_back(term);
        }
        std::vector<Expr> exponent;
        std::vector<Expr> coeff;
        int log_power = 0;
        bool ok = true;
        for (const auto& f : factors) {
            if (f.is_var(Var::X)) {
                exponent.push_back(num(1));
            } else if (f.kind() == Kind::Power && f.arg(0).is_var(Var::X) && !depends_on(f.arg(1), Var::X)) {
                exponent.push_back(f.arg(1));
            } else if (is_log_x(f)) {
                log_power += 1;
            } else if (f.kind() == Kind::Power && is_log_x(f.arg(0)) && f.arg(1).kind() == Kind::Constant &&
                       f.arg(1).number().is_integer() && f.arg(1).number().is_positive()) {
                log_power += static_cast<int>(f.arg(1).number().num());
            } else if (depends_on(f, Var::X)) {
                ok = false;
                break;
            } else {
                coeff.push_back(f);
            }
        }
        if (!ok) {
            remainder.push_back(term);
            continue;
        }
        Key key{simplify(Expr::sum(exponent)), log_power};
        groups[key].push_back(simplify(Expr::product(coeff)));
    }
    XCollection out;
    for (auto& [key, coeffs] : groups) {
        Expr c = simplify(Expr::sum(coeffs));
        if (c.is_zero()) continue;
        out.terms.push_back({key.exponent, key.log_power, c});
    }
    out.remainder = simplify(Expr::sum(remainder));
    return out;
}

}  // namespace stochsym::expr
