#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "stochsym/errors.hpp"
#include "stochsym/expr/collect.hpp"
#include "stochsym/expr/quadrature.hpp"
#include "stochsym/kozlov/kozlov.hpp"

namespace stochsym::kozlov {

using expr::Var;

PathSolution solve_pathwise(const ReducedEquation& red, const Transform& tr, double x0, const std::vector<double>& grid,
                            const std::vector<double>& wpath, const Bindings& bindings) {
    if (grid.empty() || grid.size() != wpath.size()) throw std::invalid_argument("grid and Wiener path sizes differ");
    if (grid.front() != 0.0) throw std::invalid_argument("grid must start at 0");
    if (wpath.front() != 0.0) throw std::invalid_argument("Wiener path must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
    if (!(x0 > 0)) throw std::invalid_argument("x0 must be positive");
    if (red.y_dependent) throw ReductionFailed("cannot integrate a y-dependent reduced equation");

    std::size_t branch = select_branch(tr, x0, 0.0, 0.0, bindings);
    std::vector<std::string> slots{kY};
    expr::CompiledExpr<double> x_of(tr.x_of[branch], bindings, slots);
    expr::CompiledExpr<double> a(red.a, bindings);
    expr::CompiledExpr<double> b(red.b, bindings);

    // dt part: closed form, per-step quadrature, or trapezoid rule
    enum class Mode { Closed, Quadrature, Trapezoid } amode = Mode::Trapezoid;
    expr::CompiledExpr<double> a_int;
    if (!expr::depends_on(red.a, Var::W)) {
        Expr A = expr::integrate_t(red.a);
        if (!expr::contains_integral(A)) {
            amode = Mode::Closed;
            a_int = expr::CompiledExpr<double>(A, bindings);
        } else {
            amode = Mode::Quadrature;
        }
    }
    bool b_const = !expr::depends_on(red.b, Var::T) && !expr::depends_on(red.b, Var::W);
    double b0 = b_const ? b(1.0, 0.0, 0.0) : 0.0;

    PathSolution out;
    double y0 = expr::CompiledExpr<double>(tr.y_of, bindings)(x0, 0.0, 0.0);
    double a_sum = 0;
    double b_sum = 0;
    double a_prev = amode == Mode::Trapezoid && !grid.empty() ? a(1.0, grid[0], wpath[0]) : 0.0;
    for (std::size_t n = 0; n < grid.size(); ++n) {
        double tn = grid[n];
        double wn = wpath[n];
        if (n > 0) {
            double tp = grid[n - 1];
            double wp = wpath[n - 1];
            double dt = tn - tp;
            switch (amode) {
                case Mode::Closed: a_sum = a_int(1.0, tn, 0.0); break;
                case Mode::Quadrature:
                    a_sum += expr::adaptive_simpson<double>([&](double s) { return a(1.0, s, 0.0); }, tp, tn, 1e-10);
                    break;
                case Mode::Trapezoid: {
                    double an = a(1.0, tn, wn);
                    a_sum += 0.5 * (a_prev + an) * dt;
                    a_prev = an;
                    break;
                }
            }
            if (b_const) {
                b_sum = b0 * wn;
            } else {
                b_sum += b(1.0, tp, wp) * (wn - wp);
            }
        }
        double yn = y0 + a_sum + b_sum;
        double xn;
        try {
            double extra[] = {yn};
            xn = x_of(1.0, tn, wn, extra);
        } catch (const DomainError&) {
            out.exited = true;
            break;
        }
        if (!(xn > 0) || !std::isfinite(xn)) {
            out.exited = true;
            break;
        }
        out.t.push_back(tn);
        out.w.push_back(wn);
        out.y.push_back(yn);
        out.x.push_back(xn);
    }
    return out;
}

std::string to_csv(const PathSolution& p, std::optional<int> path_id, bool header) {
    std::string out;
    if (header) out += path_id ? "path,t,w,y,x\n" : "t,w,y,x\n";
    char buf[160];
    for (std::size_t i = 0; i < p.t.size(); ++i) {
        if (path_id) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", *path_id, p.t[i], p.w[i], p.y[i], p.x[i]);
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p.t[i], p.w[i], p.y[i], p.x[i]);
        }
        out += buf;
    }
    return out;
}

}  // namespace stochsym::kozlov
