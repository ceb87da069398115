#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stochsym/sde/sde.hpp"

namespace stochsym::kozlov {

using expr::Bindings;
using expr::Expr;
using sde::SdeProblem;
using sde::SymmetryCandidate;

/// Name of the parameter standing for the new variable in x_of.
inline constexpr const char* kY = "y";

enum class Shape {
    Linear,           // c(t,w) x
    LogLinear,        // x (rho log x + theta(t,w)), rho constant
    Power,            // C(t,w) x^(1+beta)
    Mixed,            // a(t,w) x + C(t,w) x^(1+beta)
    XFree,            // C(t,w)
    LinearPlusXFree,  // K(t,w) x + C(t,w)
};
const char* to_string(Shape s) noexcept;

/// y = integral of dx / phi with the integration constant set to zero.
struct Transform {
    Shape shape = Shape::Linear;
    Expr y_of;                    // in x, t, w
    std::vector<Expr> x_of;       // inverse branches in y, t, w
    std::string valid_domain;
};

/// Throws UnsupportedPhiShape when phi is outside the closed-form catalog.
Transform integrate_inverse_phi(const SymmetryCandidate& cand);

/// Index of the branch of x_of that maps y_of(x0, t, w) back to x0.
/// Throws DomainError when none does.
std::size_t select_branch(const Transform& tr, double x0, double t, double w, const Bindings& bindings);

/// dy = a dt + b dw
struct ReducedEquation {
    Expr a;
    Expr b;
    bool y_dependent = false;
    bool symbolic = false;  // a and b came out free of x symbolically
    std::vector<std::string> diagnostics;
};

struct ReduceOptions {
    double rel_tol = 1e-8;
};

/// a, b in (x, t, w) before elimination of x.
std::pair<Expr, Expr> ito_transform(const SdeProblem& problem, const Expr& y_of);

/// Reduced coefficients with the y-independence check. Never throws on a
/// y-dependent result; reduce() does.
ReducedEquation reduce_unchecked(const SdeProblem& problem, const Transform& tr, const ReduceOptions& opts = {});

/// Throws ReductionFailed when the reduced coefficients depend on y.
ReducedEquation reduce(const SdeProblem& problem, const SymmetryCandidate& cand, const Transform& tr,
                       const ReduceOptions& opts = {});

struct PathSolution {
    std::vector<double> t;
    std::vector<double> w;
    std::vector<double> y;
    std::vector<double> x;
    bool exited = false;  // x left the valid domain; arrays are truncated
};

/// Quadrature of dy = a dt + b dw along the Wiener values wpath on grid.
PathSolution solve_pathwise(const ReducedEquation& red, const Transform& tr, double x0, const std::vector<double>& grid,
                            const std::vector<double>& wpath, const Bindings& bindings);

/// CSV with header t,w,y,x, or path,t,w,y,x when path_id is given.
std::string to_csv(const PathSolution& p, std::optional<int> path_id = std::nullopt, bool header = true);

}  // namespace stochsym::kozlov
