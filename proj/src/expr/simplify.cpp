#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "stochsym/expr/expr.hpp"

namespace stochsym::expr {

namespace {

Expr simplify_sum(std::vector<Expr> terms);
Expr simplify_product(std::vector<Expr> factors, int depth = 0);
Expr simplify_power(const Expr& base, const Expr& exponent);
Expr simplify_exp(const Expr& arg);
Expr simplify_log(const Expr& arg);
Expr simplify_integral(const Expr& integrand);

Expr make_const(const Number& n) { return Expr::constant(n); }

// term = coeff * monomial, monomial free of numeric factors
std::pair<Number, Expr> split_coefficient(const Expr& term) {
    if (term.kind() == Kind::Constant) return {term.number(), Expr::integer(1)};
    if (term.kind() == Kind::Product && term.arg(0).kind() == Kind::Constant) {
        auto args = term.args();
        std::vector<Expr> rest(args.begin() + 1, args.end());
        if (rest.size() == 1) return {args[0].number(), rest.front()};
        return {args[0].number(), Expr::canonical_node(Kind::Product, std::move(rest))};
    }
    return {Number::rational(1), term};
}

Expr scale(const Number& c, const Expr& mono) {
    if (c.is_zero()) return Expr::integer(0);
    if (mono.is_one()) return make_const(c);
    if (c.is_one()) return mono;
    std::vector<Expr> f{make_const(c)};
    if (mono.kind() == Kind::Product) {
        for (const auto& a : mono.args()) f.push_back(a);
    } else {
        f.push_back(mono);
    }
    return Expr::canonical_node(Kind::Product, std::move(f));
}

Expr simplify_sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    for (auto& term : terms) {
        if (term.kind() == Kind::Sum) {
            for (const auto& a : term.args()) flat.push_back(a);
        } else {
            flat.push_back(std::move(term));
        }
    }
    std::map<Expr, Number, ExprLess> collected;
    for (const auto& term : flat) {
        auto [c, mono] = split_coefficient(term);
        auto it = collected.find(mono);
        if (it == collected.end()) {
            collected.emplace(mono, c);
        } else {
            it->second = it->second + c;
        }
    }
    std::vector<Expr> out;
    for (const auto& [mono, c] : collected) {
        if (c.is_zero()) continue;
        out.push_back(scale(c, mono));
    }
    if (out.empty()) return Expr::integer(0);
    if (out.size() == 1) return out.front();
    std::sort(out.begin(), out.end(), ExprLess{});
    return Expr::canonical_node(Kind::Sum, std::move(out));
}

// Multiplies a list of canonical factors where at least one is a Sum.
Expr distribute(const Number& coeff, const std::vector<Expr>& factors, int depth) {
    std::vector<Expr> partial{make_const(coeff)};
    for (const auto& f : factors) {
        std::vector<Expr> next;
        if (f.kind() == Kind::Sum) {
            for (const auto& p : partial)
                for (const auto& term : f.args()) next.push_back(simplify_product({p, term}, depth + 1));
        } else {
            for (const auto& p : partial) next.push_back(simplify_product({p, f}, depth + 1));
        }
        partial = std::move(next);
    }
    return simplify_sum(std::move(partial));
}

Expr simplify_product(std::vector<Expr> factors, int depth) {
    if (depth > 64) throw std::runtime_error("simplify: product recursion limit");
    Number coeff = Number::rational(1);
    std::vector<Expr> exp_args;
    std::map<Expr, std::vector<Expr>, ExprLess> groups;

    std::vector<Expr> stack(factors.rbegin(), factors.rend());
    while (!stack.empty()) {
        Expr f = std::move(stack.back());
        stack.pop_back();
        switch (f.kind()) {
            case Kind::Constant: coeff = coeff * f.number(); break;
            case Kind::Product:
                for (auto it = f.args().rbegin(); it != f.args().rend(); ++it) stack.push_back(*it);
                break;
            case Kind::Exp: exp_args.push_back(f.arg(0)); break;
            case Kind::Power: groups[f.arg(0)].push_back(f.arg(1)); break;
            default: groups[f].push_back(Expr::integer(1)); break;
        }
    }
    if (coeff.is_zero()) return Expr::integer(0);

    std::vector<Expr> rest;
    bool reprocess = false;
    for (auto& [base, exps] : groups) {
        Expr e = exps.size() == 1 ? exps.front() : simplify_sum(exps);
        Expr p = simplify_power(base, e);
        if (p.kind() == Kind::Constant || p.kind() == Kind::Product || p.kind() == Kind::Exp ||
            (p.kind() == Kind::Power && p.arg(0) != base)) {
            reprocess = true;
        }
        rest.push_back(std::move(p));
    }
    if (!exp_args.empty()) {
        Expr merged = simplify_exp(exp_args.size() == 1 ? exp_args.front() : simplify_sum(exp_args));
        if (merged.kind() != Kind::Exp) reprocess = true;
        rest.push_back(std::move(merged));
    }
    if (reprocess) {
        // Powers or exponentials produced new numeric, product or rebased factors.
        rest.insert(rest.begin(), make_const(coeff));
        return simplify_product(std::move(rest), depth + 1);
    }
    rest.erase(std::remove_if(rest.begin(), rest.end(), [](const Expr& r) { return r.is_one(); }), rest.end());

    bool has_sum = std::any_of(rest.begin(), rest.end(), [](const Expr& r) { return r.kind() == Kind::Sum; });
    if (has_sum) return distribute(coeff, rest, depth);

    std::sort(rest.begin(), rest.end(), ExprLess{});
    if (rest.empty()) return make_const(coeff);
    if (!coeff.is_one()) rest.insert(rest.begin(), make_const(coeff));
    if (rest.size() == 1) return rest.front();
    return Expr::canonical_node(Kind::Product, std::move(rest));
}

Expr expand_sum_power(const Expr& base, std::int64_t n) {
    Expr acc = base;
    for (std::int64_t i = 1; i < n; ++i) acc = distribute(Number::rational(1), {acc, base}, 0);
    return acc;
}

// Argument of an exp factor shared by every term of a sum.
std::optional<Expr> common_exp(const Expr& sum) {
    std::optional<Expr> arg;
    for (const auto& term : sum.args()) {
        std::optional<Expr> mine;
        if (term.kind() == Kind::Exp) mine = term.arg(0);
        if (term.kind() == Kind::Product) {
            for (const auto& f : term.args())
                if (f.kind() == Kind::Exp) mine = f.arg(0);
        }
        if (!mine || (arg && *arg != *mine)) return std::nullopt;
        arg = mine;
    }
    return arg;
}

Expr simplify_power(const Expr& base, const Expr& exponent) {
    if (exponent.is_zero()) return Expr::integer(1);
    if (exponent.is_one()) return base;
    if (base.is_one()) return Expr::integer(1);

    if (base.kind() == Kind::Constant && exponent.kind() == Kind::Constant) {
        const Number& b = base.number();
        const Number& e = exponent.number();
        if (b.is_zero()) {
            if (e.is_positive()) return Expr::integer(0);
            return Expr::canonical_node(Kind::Power, {base, exponent});
        }
        if (e.is_integer()) return make_const(b.pow(e.num()));
        if ((!b.exact() || !e.exact()) && b.is_positive()) {
            return make_const(Number::real(std::pow(b.to_double(), e.to_double())));
        }
        return Expr::canonical_node(Kind::Power, {base, exponent});
    }

    bool int_exp = exponent.kind() == Kind::Constant && exponent.number().is_integer();

    switch (base.kind()) {
        case Kind::Power:
            if (int_exp || is_positive(base.arg(0))) {
                return simplify_power(base.arg(0), simplify_product({base.arg(1), exponent}));
            }
            break;
        case Kind::Product: {
            bool all_positive = true;
            for (const auto& f : base.args()) {
                if (!is_positive(f)) all_positive = false;
            }
            if (int_exp || all_positive) {
                std::vector<Expr> parts;
                for (const auto& f : base.args()) parts.push_back(simplify_power(f, exponent));
                return simplify_product(std::move(parts));
            }
            break;
        }
        case Kind::Exp: return simplify_exp(simplify_product({base.arg(0), exponent}));
        case Kind::Sum:
            if (int_exp && exponent.number().num() >= 2 && exponent.number().num() <= 4) {
                return expand_sum_power(base, exponent.number().num());
            }
            if (auto common = common_exp(base)) {
                Expr inverse = simplify_exp(simplify_product({Expr::integer(-1), *common}));
                std::vector<Expr> rest;
                for (const auto& term : base.args()) rest.push_back(simplify_product({term, inverse}));
                return simplify_product(
                    {simplify_exp(simplify_product({*common, exponent})), simplify_power(simplify_sum(rest), exponent)});
            }
            break;
        default: break;
    }
    return Expr::canonical_node(Kind::Power, {base, exponent});
}

// Returns the u of a term c*log(u) with u positive, and c.
bool match_log_term(const Expr& term, Expr& u, Expr& coeff) {
    if (term.kind() == Kind::Log && is_positive(term.arg(0))) {
        u = term.arg(0);
        coeff = Expr::integer(1);
        return true;
    }
    if (term.kind() != Kind::Product) return false;
    int found = -1;
    auto args = term.args();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].kind() == Kind::Log) {
            if (found >= 0) return false;
            found = static_cast<int>(i);
        } else if (contains_log(args[i])) {
            return false;
        }
    }
    if (found < 0 || !is_positive(args[found].arg(0))) return false;
    u = args[found].arg(0);
    std::vector<Expr> rest;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (static_cast<int>(i) != found) rest.push_back(args[i]);
    coeff = simplify_product(std::move(rest));
    return true;
}

Expr simplify_exp(const Expr& arg) {
    if (arg.is_zero()) return Expr::integer(1);
    if (arg.kind() == Kind::Constant && !arg.number().exact()) {
        return make_const(Number::real(std::exp(arg.number().to_double())));
    }
    std::vector<Expr> terms;
    if (arg.kind() == Kind::Sum) {
        terms.assign(arg.args().begin(), arg.args().end());
    } else {
        terms.push_back(arg);
    }
    std::vector<Expr> powers;
    std::vector<Expr> remaining;
    for (const auto& term : terms) {
        Expr u, c;
        if (match_log_term(term, u, c)) {
            powers.push_back(simplify_power(u, c));
        } else {
            remaining.push_back(term);
        }
    }
    if (powers.empty()) return Expr::canonical_node(Kind::Exp, {arg});
    Expr rest = simplify_sum(std::move(remaining));
    if (!rest.is_zero()) powers.push_back(Expr::canonical_node(Kind::Exp, {rest}));
    return simplify_product(std::move(powers));
}

Expr simplify_log(const Expr& arg) {
    switch (arg.kind()) {
        case Kind::Constant: {
            const Number& c = arg.number();
            if (c.is_zero()) return Expr::canonical_node(Kind::Log, {arg});
            if (!c.exact()) return make_const(Number::real(std::log(std::fabs(c.to_double()))));
            if (c.is_one() || c.is_minus_one()) return Expr::integer(0);
            if (c.is_negative()) return simplify_log(make_const(-c));
            return Expr::canonical_node(Kind::Log, {arg});
        }
        case Kind::Exp: return arg.arg(0);
        case Kind::Power: return simplify_product({arg.arg(1), simplify_log(arg.arg(0))});
        case Kind::Product: {
            std::vector<Expr> logs;
            for (const auto& f : arg.args()) logs.push_back(simplify_log(f));
            return simplify_sum(std::move(logs));
        }
        default: return Expr::canonical_node(Kind::Log, {arg});
    }
}

Expr simplify_integral(const Expr& integrand) {
    if (depends_on(integrand, Var::X) || depends_on(integrand, Var::W)) {
        throw std::invalid_argument("integral integrand must depend on t only");
    }
    std::vector<Expr> terms;
    if (integrand.kind() == Kind::Sum) {
        terms.assign(integrand.args().begin(), integrand.args().end());
    } else {
        terms.push_back(integrand);
    }
    std::vector<Expr> out;
    for (const auto& term : terms) {
        std::vector<Expr> factors;
        if (term.kind() == Kind::Product) {
            factors.assign(term.args().begin(), term.args().end());
        } else {
            factors.push_back(term);
        }
        std::vector<Expr> outside;
        std::vector<Expr> inside;
        for (const auto& f : factors) (depends_on(f, Var::T) ? inside : outside).push_back(f);
        if (inside.empty()) {
            outside.push_back(t());
        } else {
            Expr g = inside.size() == 1 ? inside.front() : Expr::canonical_node(Kind::Product, std::move(inside));
            outside.push_back(Expr::canonical_node(Kind::Integral, {g}));
        }
        out.push_back(simplify_product(std::move(outside)));
    }
    return simplify_sum(std::move(out));
}

}  // namespace

Expr simplify(const Expr& e) {
    if (e.is_canonical()) return e;
    std::vector<Expr> args;
    args.reserve(e.args().size());
    for (const auto& a : e.args()) args.push_back(simplify(a));
    switch (e.kind()) {
        case Kind::Sum: return simplify_sum(std::move(args));
        case Kind::Product: return simplify_product(std::move(args));
        case Kind::Neg: return simplify_product({Expr::integer(-1), args[0]});
        case Kind::Power: return simplify_power(args[0], args[1]);
        case Kind::Exp: return simplify_exp(args[0]);
        case Kind::Log: return simplify_log(args[0]);
        case Kind::Integral: return simplify_integral(args[0]);
        default: return e;
    }
}

}  // namespace stochsym::expr
