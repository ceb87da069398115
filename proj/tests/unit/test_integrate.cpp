#include <cmath>

#include "doctest.h"
#include "stochsym/expr/collect.hpp"
#include "stochsym/expr/evaluate.hpp"
#include "stochsym/expr/parser.hpp"

using namespace stochsym::expr;

namespace {

Expr S(const char* text) { return simplify(parse(text)); }

// d/dt of the antiderivative against the integrand, and value 0 at t = 0
void check_antiderivative(const char* g, const Bindings& b = {}) {
    Expr G = integrate_t(S(g));
    INFO(g, " -> ", print(G));
    CHECK(evaluate(G, 1, 0, 0, b) == doctest::Approx(0).epsilon(1e-14));
    Expr dG = differentiate(G, Var::T);
    for (double t : {0.1, 0.7, 1.9}) CHECK(evaluate(dG, 1, t, 0, b) == doctest::Approx(evaluate(S(g), 1, t, 0, b)));
}

}  // namespace

TEST_CASE("closed forms") {
    CHECK(integrate_t(S("3*t^2")) == S("t^3"));
    CHECK(integrate_t(S("a")) == S("a*t"));
    CHECK_FALSE(contains_integral(integrate_t(S("t*exp(2*t)"))));
    CHECK_FALSE(contains_integral(integrate_t(S("1/(1 + t)"))));
    CHECK_FALSE(contains_integral(integrate_t(S("(2 + 3*t)^(1/2)"))));
    CHECK_FALSE(contains_integral(integrate_t(S("2*t/(1 + t^2)"))));
}

TEST_CASE("antiderivatives differentiate back") {
    check_antiderivative("t^2*exp(-t/2) - 3");
    check_antiderivative("a*exp(c*t)", {{"a", 0.3}, {"c", -0.7}});
    check_antiderivative("(1 + t)^-3");
    check_antiderivative("-4*t/(3 - t^2)");
    check_antiderivative("mu^2/2 - A", {{"mu", 0.3}, {"A", 1}});
}

TEST_CASE("fallback to integral nodes") {
    Expr G = integrate_t(S("exp(t^2)"));
    CHECK(contains_integral(G));
    CHECK(evaluate(G, 1, 1, 0) == doctest::Approx(1.4626517459071816));
}

TEST_CASE("integrands depending on x or w are rejected") {
    CHECK_THROWS_AS(integrate_t(S("x*t")), std::invalid_argument);
    CHECK_THROWS_AS(integrate_t(S("w")), std::invalid_argument);
}

TEST_CASE("collect_x splits monomials") {
    auto c = collect_x(S("a*x + b*x^2 + c*x*log(x) + exp(t) + d*x^(3/2)"));
    CHECK(c.remainder.is_zero());
    REQUIRE(c.terms.size() == 5);
    int logs = 0;
    for (const auto& term : c.terms) logs += term.log_power;
    CHECK(logs == 1);
}

TEST_CASE("collect_x remainder") {
    auto c = collect_x(S("x + exp(x)"));
    CHECK_FALSE(c.remainder.is_zero());
    REQUIRE(c.terms.size() == 1);
}
