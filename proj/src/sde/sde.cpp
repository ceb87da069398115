#include "stochsym/sde/sde.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "stochsym/errors.hpp"

namespace stochsym::sde {

using expr::Kind;
using expr::Var;

SdeProblem SdeProblem::make(const Expr& f, const Expr& S, Bindings bindings) {
    Expr fs = expr::simplify(f);
    Expr ss = expr::simplify(S);
    if (expr::depends_on(fs, Var::W)) throw std::invalid_argument("drift must not depend on w");
    if (expr::depends_on(ss, Var::X) || expr::depends_on(ss, Var::W)) {
        throw std::invalid_argument("noise factor S must depend on t only");
    }
    if (ss.is_zero()) throw std::invalid_argument("noise factor S is identically zero");
    // Numeric check on [0,2] when every parameter is bound.
    try {
        expr::CompiledExpr<double> s(ss, bindings);
        bool all_zero = true;
        for (int i = 0; i <= 20 && all_zero; ++i) {
            try {
                if (s(1.0, 0.1 * i, 0.0) != 0.0) all_zero = false;
            } catch (const DomainError&) {
                all_zero = false;
            }
        }
        if (all_zero) throw std::invalid_argument("noise factor S vanishes on [0,2]");
    } catch (const UnboundParameter&) {
    }
    return SdeProblem(fs, ss, std::move(bindings));
}

Expr SdeProblem::sigma() const { return expr::simplify(S_ * expr::x()); }

SymmetryCandidate::SymmetryCandidate(double R, const Expr& phi) : R_(R), phi_(expr::simplify(phi)) {
    if (!std::isfinite(R)) throw std::invalid_argument("R must be finite");
    if (phi_.is_zero()) throw std::invalid_argument("phi is identically zero: no symmetry");
}

const char* to_string(ZeroState z) noexcept {
    switch (z) {
        case ZeroState::Zero: return "zero";
        case ZeroState::Nonzero: return "nonzero";
        case ZeroState::Undecided: return "undecided";
    }
    return "undecided";
}

nlohmann::json to_json(const ResidualReport& r) {
    return {
        {"res1", expr::print(r.res1)},
        {"res2", expr::print(r.res2)},
        {"symbolic_zero1", to_string(r.symbolic_zero1)},
        {"symbolic_zero2", to_string(r.symbolic_zero2)},
        {"numeric_max1", r.numeric_max1},
        {"numeric_max2", r.numeric_max2},
        {"seed", r.seed},
        {"samples", r.samples},
        {"tol", r.tol},
        {"verdict", r.pass ? "pass" : "fail"},
    };
}

Expr ito_laplacian(const Expr& psi, const SdeProblem& problem) {
    using expr::differentiate;
    Expr sigma = problem.sigma();
    Expr px = differentiate(psi, Var::X);
    Expr pww = differentiate(differentiate(psi, Var::W), Var::W);
    Expr pxw = differentiate(px, Var::W);
    Expr pxx = differentiate(px, Var::X);
    return expr::simplify(pww + expr::num(2) * sigma * pxw + sigma * sigma * pxx);
}

Expr residual_deq1(const SdeProblem& problem, const SymmetryCandidate& cand) {
    using expr::differentiate;
    const Expr& phi = cand.phi();
    const Expr& f = problem.f();
    Expr e = differentiate(phi, Var::T) + f * differentiate(phi, Var::X) - phi * differentiate(f, Var::X) +
             expr::num(1, 2) * ito_laplacian(phi, problem);
    return expr::simplify(e);
}

Expr residual_deq2(const SdeProblem& problem, const SymmetryCandidate& cand) {
    using expr::differentiate;
    const Expr& phi = cand.phi();
    const Expr& S = problem.S();
    Expr e = differentiate(phi, Var::W) + S * expr::x() * differentiate(phi, Var::X) - S * phi -
             Expr::real(cand.R()) * S * expr::x();
    return expr::simplify(e);
}

ZeroState symbolic_zero(const Expr& e, const Bindings& bindings) {
    Expr s = expr::simplify(e);
    if (s.is_zero()) return ZeroState::Zero;
    if (s.kind() == Kind::Constant) return ZeroState::Nonzero;
    if (!expr::depends_on(s, Var::X) && !expr::depends_on(s, Var::T) && !expr::depends_on(s, Var::W)) {
        try {
            long double v = expr::CompiledExpr<long double>(s, bindings)(1, 0, 0);
            return v != 0 ? ZeroState::Nonzero : ZeroState::Undecided;
        } catch (const std::exception&) {
            return ZeroState::Undecided;
        }
    }
    return ZeroState::Undecided;
}

ResidualReport verify(const SdeProblem& problem, const SymmetryCandidate& cand, const VerifyOptions& opts) {
    if (opts.samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(opts.tol > 0)) throw std::invalid_argument("tol must be positive");
    ResidualReport r;
    r.res1 = residual_deq1(problem, cand);
    r.res2 = residual_deq2(problem, cand);
    r.symbolic_zero1 = symbolic_zero(r.res1, problem.bindings());
    r.symbolic_zero2 = symbolic_zero(r.res2, problem.bindings());
    r.seed = opts.seed;
    r.samples = opts.samples;
    r.tol = opts.tol;

    expr::CompiledExpr<long double> e1(r.res1, problem.bindings());
    expr::CompiledExpr<long double> e2(r.res2, problem.bindings());
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> ux(0.1, 10.0);
    std::uniform_real_distribution<double> ut(0.0, 2.0);
    std::uniform_real_distribution<double> uw(-2.0, 2.0);
    long double m1 = 0;
    long double m2 = 0;
    for (int i = 0; i < opts.samples; ++i) {
        long double x = ux(rng);
        long double t = ut(rng);
        long double w = uw(rng);
        try {
            m1 = std::max(m1, std::fabs(e1(x, t, w)));
            m2 = std::max(m2, std::fabs(e2(x, t, w)));
        } catch (const DomainError& err) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "residual not evaluable at x=%.6Lg t=%.6Lg w=%.6Lg: ", x, t, w);
            throw DomainError(buf + std::string(err.what()));
        }
    }
    r.numeric_max1 = static_cast<double>(m1);
    r.numeric_max2 = static_cast<double>(m2);
    auto ok = [&](ZeroState z, double m) {
        if (z == ZeroState::Zero) return true;
        if (z == ZeroState::Nonzero) return false;
        return m <= opts.tol;
    };
    r.pass = ok(r.symbolic_zero1, r.numeric_max1) && ok(r.symbolic_zero2, r.numeric_max2);
    return r;
}

}  // namespace stochsym::sde
