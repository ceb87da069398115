#include <cmath>

#include "stochsym/errors.hpp"
#include "stochsym/expr/collect.hpp"
#include "stochsym/kozlov/kozlov.hpp"

namespace stochsym::kozlov {

using expr::Var;
using expr::num;
using expr::x;

const char* to_string(Shape s) noexcept {
    switch (s) {
        case Shape::Linear: return "linear";
        case Shape::LogLinear: return "log-linear";
        case Shape::Power: return "power";
        case Shape::Mixed: return "mixed";
        case Shape::XFree: return "x-free";
        case Shape::LinearPlusXFree: return "linear plus x-free";
    }
    return "?";
}

namespace {

Expr y_param() { return expr::param(kY); }

bool is_const_exponent(const Expr& e, std::int64_t n) {
    return e.kind() == expr::Kind::Constant && e.number().exact() && e.number() == expr::Number::rational(n);
}

[[noreturn]] void unsupported(const Expr& phi) {
    throw UnsupportedPhiShape("no closed-form integral of 1/phi for phi = " + expr::print(phi));
}

}  // namespace

Transform integrate_inverse_phi(const SymmetryCandidate& cand) {
    const Expr& phi = cand.phi();
    expr::XCollection col = expr::collect_x(phi);
    if (!col.remainder.is_zero()) unsupported(phi);
    for (const auto& term : col.terms)
        if (expr::depends_on(term.coeff, Var::X)) unsupported(phi);

    std::optional<Expr> lin, logc, other_exp, other;
    for (const auto& term : col.terms) {
        bool one = is_const_exponent(term.exponent, 1);
        if (one && term.log_power == 0) {
            lin = term.coeff;
        } else if (one && term.log_power == 1) {
            logc = term.coeff;
        } else if (term.log_power == 0 && !other) {
            other_exp = term.exponent;
            other = term.coeff;
        } else {
            unsupported(phi);
        }
    }

    Transform tr;
    Expr y = y_param();
    std::vector<int> signs = {1, -1};
    if (logc) {
        if (other) unsupported(phi);
        const Expr& rho = *logc;
        if (expr::depends_on(rho, Var::T) || expr::depends_on(rho, Var::W)) unsupported(phi);
        Expr m = lin ? *lin : num(0);
        tr.shape = Shape::LogLinear;
        tr.y_of = expr::simplify(expr::log(rho * expr::log(x()) + m) / rho);
        for (int s : signs)
            tr.x_of.push_back(expr::simplify(expr::exp((num(s) * expr::exp(rho * y) - m) / rho)));
        tr.valid_domain = "x > 0 with rho*log(x) + theta != 0";
        return tr;
    }
    if (lin && !other) {
        tr.shape = Shape::Linear;
        tr.y_of = expr::simplify(expr::log(x()) / *lin);
        tr.x_of.push_back(expr::simplify(expr::exp(*lin * y)));
        tr.valid_domain = "x > 0";
        return tr;
    }
    if (!other) unsupported(phi);
    const Expr& C = *other;
    Expr beta = expr::simplify(*other_exp - num(1));
    bool xfree = is_const_exponent(*other_exp, 0);
    if (!lin) {
        if (xfree) {
            tr.shape = Shape::XFree;
            tr.y_of = expr::simplify(x() / C);
            tr.x_of.push_back(expr::simplify(C * y));
            tr.valid_domain = "x > 0";
        } else {
            tr.shape = Shape::Power;
            tr.y_of = expr::simplify(num(-1) * expr::pow(x(), num(-1) * beta) / (beta * C));
            tr.x_of.push_back(expr::simplify(expr::pow(num(-1) * beta * C * y, num(-1) / beta)));
            tr.valid_domain = "x > 0";
        }
        return tr;
    }
    const Expr& K = *lin;
    if (xfree) {
        tr.shape = Shape::LinearPlusXFree;
        tr.y_of = expr::simplify(expr::log(K * x() + C) / K);
        for (int s : signs) tr.x_of.push_back(expr::simplify((num(s) * expr::exp(K * y) - C) / K));
        tr.valid_domain = "x > 0 with K*x + C != 0";
        return tr;
    }
    tr.shape = Shape::Mixed;
    Expr xb = expr::pow(x(), beta);
    tr.y_of = expr::simplify(expr::log(xb / (K + C * xb)) / (K * beta));
    Expr E = expr::exp(K * beta * y);
    for (int s : signs) {
        tr.x_of.push_back(expr::simplify(expr::pow(num(s) * K * E / (num(1) - num(s) * C * E), num(1) / beta)));
    }
    tr.valid_domain = "x > 0 with K + C*x^beta != 0";
    return tr;
}

std::size_t select_branch(const Transform& tr, double x0, double t, double w, const Bindings& bindings) {
    double y0 = expr::CompiledExpr<double>(tr.y_of, bindings)(x0, t, w);
    std::vector<std::string> slots{kY};
    for (std::size_t i = 0; i < tr.x_of.size(); ++i) {
        try {
            double extra[] = {y0};
            double xb = expr::CompiledExpr<double>(tr.x_of[i], bindings, slots)(1.0, t, w, extra);
            if (std::fabs(xb - x0) <= 1e-8 * std::fabs(x0)) return i;
        } catch (const DomainError&) {
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "no inverse branch reproduces x0 = %.6g", x0);
    throw DomainError(buf);
}

}  // namespace stochsym::kozlov
