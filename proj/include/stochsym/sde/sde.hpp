#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "stochsym/expr/evaluate.hpp"
#include "stochsym/expr/expr.hpp"

namespace stochsym::sde {

using expr::Bindings;
using expr::Expr;

/// dx = f(x,t) dt + S(t) x dw on x > 0.
class SdeProblem {
public:
    /// Throws std::invalid_argument when f depends on w, S depends on x or
    /// w, or S is identically zero.
    static SdeProblem make(const Expr& f, const Expr& S, Bindings bindings = {});

    const Expr& f() const noexcept { return f_; }
    const Expr& S() const noexcept { return S_; }
    const Bindings& bindings() const noexcept { return bindings_; }
    Expr sigma() const;  // S(t) x

private:
    SdeProblem(Expr f, Expr S, Bindings b) : f_(std::move(f)), S_(std::move(S)), bindings_(std::move(b)) {}
    Expr f_;
    Expr S_;
    Bindings bindings_;
};

/// Vector field phi d/dx + R w d/dw.
class SymmetryCandidate {
public:
    /// Throws std::invalid_argument for a phi that simplifies to zero.
    SymmetryCandidate(double R, const Expr& phi);

    double R() const noexcept { return R_; }
    const Expr& phi() const noexcept { return phi_; }

private:
    double R_;
    Expr phi_;
};

enum class ZeroState { Zero, Nonzero, Undecided };
const char* to_string(ZeroState z) noexcept;

struct ResidualReport {
    Expr res1;
    Expr res2;
    ZeroState symbolic_zero1 = ZeroState::Undecided;
    ZeroState symbolic_zero2 = ZeroState::Undecided;
    double numeric_max1 = 0;
    double numeric_max2 = 0;
    std::uint64_t seed = 0;
    int samples = 0;
    double tol = 0;
    bool pass = false;
};

nlohmann::json to_json(const ResidualReport& r);

/// psi_ww + 2 sigma psi_xw + sigma^2 psi_xx with sigma = S x.
Expr ito_laplacian(const Expr& psi, const SdeProblem& problem);

/// phi_t + f phi_x - phi f_x + Laplacian(phi)/2
Expr residual_deq1(const SdeProblem& problem, const SymmetryCandidate& cand);

/// phi_w + S x phi_x - S phi - R S x
Expr residual_deq2(const SdeProblem& problem, const SymmetryCandidate& cand);

struct VerifyOptions {
    int samples = 100;
    double tol = 1e-9;
    std::uint64_t seed = 20240617;
};

/// Symbolic zero test of both residuals with a numeric fallback over
/// x in [0.1,10], t in [0,2], w in [-2,2]. Throws DomainError when a
/// residual cannot be evaluated at a sample point.
ResidualReport verify(const SdeProblem& problem, const SymmetryCandidate& cand, const VerifyOptions& opts = {});

/// Zero for a canonical zero, Nonzero for an expression free of x, t, w
/// that evaluates to a nonzero value, Undecided otherwise.
ZeroState symbolic_zero(const Expr& e, const Bindings& bindings);

}  // namespace stochsym::sde
