#include <cmath>
#include <cstdio>

#include "stochsym/errors.hpp"
#include "stochsym/kozlov/kozlov.hpp"

namespace stochsym::kozlov {

using expr::Var;
using expr::num;

std::pair<Expr, Expr> ito_transform(const SdeProblem& problem, const Expr& y_of) {
    Expr yx = expr::differentiate(y_of, Var::X);
    Expr a = expr::differentiate(y_of, Var::T) + problem.f() * yx + num(1, 2) * sde::ito_laplacian(y_of, problem);
    Expr b = problem.S() * expr::x() * yx + expr::differentiate(y_of, Var::W);
    return {expr::simplify(a), expr::simplify(b)};
}

namespace {

constexpr double kT[] = {0.25, 1.0, 1.75};
constexpr double kW[] = {-1.0, 0.5};

// Spread of e over 10 geometric x in [0.1, 10] at fixed (t, w).
bool x_independent(const Expr& e, const char* name, const Bindings& bindings, double rel_tol,
                   std::vector<std::string>& diag) {
    expr::CompiledExpr<long double> c(e, bindings);
    if (!c.uses(Var::X)) return true;
    bool ok = true;
    for (double t : kT) {
        for (double w : kW) {
            std::vector<std::pair<double, long double>> vals;
            for (int i = 0; i < 10; ++i) {
                double x = 0.1 * std::pow(100.0, i / 9.0);
                try {
                    vals.emplace_back(x, c(x, t, w));
                } catch (const DomainError&) {
                }
            }
            if (vals.size() < 2) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "%s: fewer than two evaluable x at t=%g w=%g", name, t, w);
                diag.emplace_back(buf);
                ok = false;
                continue;
            }
            // unit floor: coefficients that cancel to zero leave roundoff only
            long double scale = 1;
            for (const auto& v : vals) scale = std::max(scale, std::fabs(v.second));
            for (const auto& v : vals) {
                if (std::fabs(v.second - vals.front().second) > rel_tol * scale) {
                    char buf[200];
                    std::snprintf(buf, sizeof buf, "%s depends on y at t=%g w=%g: %.10Lg at x=%g vs %.10Lg at x=%g",
                                  name, t, w, vals.front().second, vals.front().first, v.second, v.first);
                    diag.emplace_back(buf);
                    ok = false;
                    break;
                }
            }
        }
    }
    return ok;
}

bool free_of_y(const Expr& e) {
    return !expr::depends_on(e, Var::X) && !expr::depends_on_parameter(e, kY);
}

}  // namespace

ReducedEquation reduce_unchecked(const SdeProblem& problem, const Transform& tr, const ReduceOptions& opts) {
    ReducedEquation red;
    auto [ax, bx] = ito_transform(problem, tr.y_of);
    const Bindings& b = problem.bindings();

    std::optional<Expr> ay, by;
    if (free_of_y(ax)) ay = ax;
    if (free_of_y(bx)) by = bx;
    if ((!ay || !by) && !tr.x_of.empty()) {
        try {
            if (!ay) {
                Expr s = expr::substitute(ax, Var::X, tr.x_of.front());
                if (free_of_y(s)) ay = s;
            }
            if (!by) {
                Expr s = expr::substitute(bx, Var::X, tr.x_of.front());
                if (free_of_y(s)) by = s;
            }
        } catch (const std::exception&) {
        }
    }
    red.symbolic = ay && by;

    bool ok_a = x_independent(ax, "a", b, opts.rel_tol, red.diagnostics);
    bool ok_b = x_independent(bx, "b", b, opts.rel_tol, red.diagnostics);
    red.y_dependent = !(ok_a && ok_b);
    // x-independent values can be read off at any x in the domain
    red.a = ay ? *ay : expr::substitute(ax, Var::X, num(1));
    red.b = by ? *by : expr::substitute(bx, Var::X, num(1));
    if (!red.symbolic) red.diagnostics.emplace_back("x eliminated numerically; coefficients read off at x = 1");
    return red;
}

ReducedEquation reduce(const SdeProblem& problem, const SymmetryCandidate& cand, const Transform& tr,
                       const ReduceOptions& opts) {
    Expr check = expr::simplify(expr::differentiate(tr.y_of, Var::X) * cand.phi());
    if (!check.is_one()) {
        expr::CompiledExpr<double> c(check, problem.bindings());
        for (double x : {0.5, 1.7, 4.0}) {
            double v = 1;
            try {
                v = c(x, 0.7, 0.3);
            } catch (const DomainError&) {
            }
            if (std::fabs(v - 1) > 1e-9) throw std::invalid_argument("transform does not belong to phi");
        }
    }
    ReducedEquation red = reduce_unchecked(problem, tr, opts);
    if (red.y_dependent) {
        std::string msg = "reduced coefficients depend on y";
        for (const auto& d : red.diagnostics) msg += "; " + d;
        throw ReductionFailed(msg);
    }
    return red;
}

}  // namespace stochsym::kozlov
