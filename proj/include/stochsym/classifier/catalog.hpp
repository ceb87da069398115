#pragma once

#include <random>
#include <string>
#include <vector>

#include "stochsym/expr/expr.hpp"

namespace stochsym::classifier::catalog {

using expr::Expr;

/// Random smooth functions of t for instantiating the symmetry table.
/// Coefficients are multiples of 1/10 with magnitude in [0.2, 2].
Expr random_coefficient(std::mt19937_64& rng);
Expr random_poly(std::mt19937_64& rng, int max_degree = 2);
/// Polynomial, optionally times exp(c t) with c in [-1, 1].
Expr random_function(std::mt19937_64& rng);
/// Noise factor with 0.5 <= |S| <= 4 on [0, 2].
Expr random_noise(std::mt19937_64& rng, bool constant);
/// Function with 0.5 <= g <= 8 on [0, 2]; used where a positive factor is needed.
Expr random_positive(std::mt19937_64& rng);
/// k in [-1.5, -0.3] or [0.3, 1.5].
Expr random_k(std::mt19937_64& rng);

/// One draw of a row of the symmetry table, as printed and as it verifies.
struct RowInstance {
    char row = '?';
    Expr S;
    Expr f_printed;
    Expr phi_printed;
    double R_printed = 0;
    Expr f;
    Expr phi;
    double R = 0;
    std::string repair;  // empty when the printed form is kept
};

extern const char kRows[8];

RowInstance row_instance(char row, std::mt19937_64& rng);

struct FamilyInstance {
    std::string name;
    char row = '?';  // assigned row
    Expr S;
    Expr f;
};

const std::vector<std::string>& family_names();
char family_row(const std::string& name);
FamilyInstance family_instance(const std::string& name, std::mt19937_64& rng);

/// Drift outside the classifiable basis: one of several non-basis x-terms
/// plus a random basis part.
Expr random_unclassifiable_drift(std::mt19937_64& rng);

}  // namespace stochsym::classifier::catalog
