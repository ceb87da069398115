#pragma once

#include <random>
#include <vector>

#include "stochsym/expr/expr.hpp"

namespace stochsym::testing {

using expr::Expr;

/// Random expressions in x, t, w that are finite for x in [0.5, 3],
/// t in [0, 2], w in [-1.5, 1.5]. Logs and fractional powers only see
/// positive arguments.
class RandomExpr {
public:
    explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

    Expr operator()(int depth = 3) { return any(depth); }

    Expr positive(int depth) {
        switch (pick(depth > 0 ? 5 : 2)) {
            case 0: return expr::x();
            case 1: return expr::num(1 + pick(4), 1 + pick(3));
            case 2: return expr::exp(bounded(depth - 1));
            case 3: return expr::num(1) + expr::pow(any(depth - 1), expr::num(2));
            default: return positive(depth - 1) * positive(depth - 1);
        }
    }

    std::mt19937_64& rng() { return rng_; }

private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    Expr leaf() {
        switch (pick(5)) {
            case 0: return expr::x();
            case 1: return expr::t();
            case 2: return expr::w();
            case 3: return expr::num(pick(9) - 4, 1 + pick(3));
            default: return Expr::real(std::uniform_real_distribution<double>(-2, 2)(rng_));
        }
    }

    // |value| stays below a few units on the sample box
    Expr bounded(int depth) {
        if (depth <= 0) return expr::num(1, 1 + pick(3)) * leaf();
        switch (pick(3)) {
            case 0: return expr::num(1, 2) * bounded(depth - 1) - expr::num(1, 3) * bounded(depth - 1);
            case 1: return expr::log(positive(depth - 1)) / expr::num(2);
            default: return expr::num(1, 2) * expr::x() * expr::t() - expr::num(1, 4) * expr::w();
        }
    }

    Expr any(int depth) {
        if (depth <= 0) return leaf();
        switch (pick(9)) {
            case 0:
            case 1: return any(depth - 1) + any(depth - 1);
            case 2: return any(depth - 1) - any(depth - 1);
            case 3:
            case 4: return any(depth - 1) * any(depth - 1);
            case 5: return any(depth - 1) / positive(depth - 1);
            case 6: return expr::pow(positive(depth - 1), expr::num(pick(7) - 3, 1 + pick(2)));
            case 7: return expr::exp(bounded(depth - 1));
            default: return expr::log(positive(depth - 1));
        }
    }

    std::mt19937_64 rng_;
};

}  // namespace stochsym::testing
