#pragma once

#include <vector>

#include "stochsym/expr/expr.hpp"

namespace stochsym::expr {

/// One term coeff(t,w) * x^exponent * log(x)^log_power.
struct XTerm {
    Expr exponent;
    int log_power = 0;
    Expr coeff;
};

struct XCollection {
    std::vector<XTerm> terms;  // ordered by (exponent, log_power)
    Expr remainder;            // terms not of the above shape
};

/// Splits e into x-monomials with x-free coefficients.
XCollection collect_x(const Expr& e);

/// Definite integral from 0 to t of g(t). Closed form when table rules
/// apply (polynomials, t^n exp(c t), powers of linear functions,
/// logarithmic derivatives); remaining terms become Integral nodes.
/// Throws std::invalid_argument when g depends on x or w.
Expr integrate_t(const Expr& g);

}  // namespace stochsym::expr
