#include <algorithm>

#include "doctest.h"
#include "stochsym/classifier/classifier.hpp"
#include "stochsym/errors.hpp"
#include "stochsym/expr/parser.hpp"

using namespace stochsym;
using namespace stochsym::classifier;
using expr::parse;

namespace {

Expr S(const char* text) { return expr::simplify(parse(text)); }

std::string rows_of(const std::vector<Classification>& cs) {
    std::string r;
    for (const auto& c : cs) r += c.row;
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace

TEST_CASE("decomposition into the drift basis") {
    auto d = decompose(S("a*x + b*x^2 + exp(t)*x*log(x) + 3 + x^(1 + k/s)"), S("s"), {{"a", 1}, {"b", 2}, {"k", 0.5}, {"s", 2}});
    CHECK(d.coeff(Basis::X) == S("a"));
    CHECK(d.coeff(Basis::X2) == S("b"));
    CHECK(d.coeff(Basis::XLogX) == S("exp(t)"));
    CHECK(d.coeff(Basis::One) == S("3"));
    CHECK(d.has(Basis::XPow));
    CHECK(d.k == S("k"));
    CHECK(d.remainder.is_zero());
    CHECK(expr::simplify(d.reconstruct()) == S("a*x + b*x^2 + exp(t)*x*log(x) + 3 + x^(1 + k/s)"));
}

TEST_CASE("x^(1+beta) needs beta*S constant") {
    CHECK_THROWS_AS(decompose(S("x^(3/2)"), S("1 + t"), {}), UnclassifiableDrift);
    CHECK_NOTHROW(decompose(S("x^(3/2)"), S("2"), {}));
}

TEST_CASE("drifts outside the basis") {
    for (const char* f : {"x + exp(x)", "x*log(x)^2", "1/(1 + x)", "x^3*log(x)"}) {
        INFO(f);
        CHECK_THROWS_AS(decompose(S(f), S("1"), {}), UnclassifiableDrift);
    }
}

TEST_CASE("t-predicates") {
    expr::Bindings b{{"a", 2}};
    CHECK(zero_in_t(S("exp(t)*exp(-t) - 1"), b));
    CHECK(equal_in_t(S("a*t"), S("2*t"), b));
    CHECK(constant_in_t(S("a + 0*t"), b));
    CHECK_FALSE(constant_in_t(S("a*t"), b));
}

TEST_CASE("logistic equation is case f with the known phi") {
    expr::Bindings b{{"A", 1}, {"B", 0.5}, {"mu", 0.3}};
    auto p = sde::SdeProblem::make(parse("A*x - B*x^2"), parse("mu"), b);
    auto cs = classify(p);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].row == 'f');
    CHECK(cs[0].verified);
    CHECK(cs[0].R == 0);
    CHECK(cs[0].candidate->phi() == S("exp((mu^2/2 - A)*t - mu*w)*x^2"));
    CHECK(cs[0].report->symbolic_zero1 == sde::ZeroState::Zero);
    auto j = to_json(cs[0]);
    CHECK(j["case"] == "f");
    CHECK(j["verified"] == true);
}

TEST_CASE("geometric Brownian motion admits several cases") {
    auto p = sde::SdeProblem::make(parse("a*x"), parse("s0"), {{"a", 0.05}, {"s0", 0.2}});
    auto rows = rows_of(classify(p));
    CHECK(rows.find('c') != std::string::npos);
    CHECK(rows.find('d') != std::string::npos);
    for (const auto& c : classify(p)) CHECK(c.report->pass);
}

TEST_CASE("every returned candidate verifies") {
    auto p = sde::SdeProblem::make(parse("(1 + t)*x + exp(-t)*x*log(x)"), parse("2 + t"), {});
    auto cs = classify(p);
    CHECK_FALSE(cs.empty());
    for (const auto& c : cs) {
        INFO(c.row, " ", c.variant);
        CHECK(sde::verify(p, *c.candidate).pass);
    }
}

TEST_CASE("repair notes are kept") {
    auto p = sde::SdeProblem::make(parse("x - x^2/2"), parse("1/4"), {});
    auto cs = classify(p);
    REQUIRE_FALSE(cs.empty());
    bool printed_noted = false;
    for (const auto& n : cs[0].notes) printed_noted = printed_noted || n.rfind("printed", 0) == 0;
    CHECK(printed_noted);
}

TEST_CASE("x^2 log x matches no case") {
    auto p = sde::SdeProblem::make(parse("x^2*log(x)"), parse("1"), {});
    auto d = decompose(p.f(), p.S(), {});
    CHECK(match_rows(p, d).empty());
    CHECK(classify(p).empty());
}

TEST_CASE("failed verification lists every attempt") {
    auto p = sde::SdeProblem::make(parse("x - x^2/2"), parse("1/4"), {});
    auto d = decompose(p.f(), p.S(), {});
    auto rows = match_rows(p, d);
    REQUIRE_FALSE(rows.empty());
    auto other = sde::SdeProblem::make(parse("2*x - x^2/2"), parse("1/4"), {});
    try {
        build_phi(rows[0], other);
        FAIL("no throw");
    } catch (const VerificationFailed& e) {
        CHECK(e.attempts().size() >= 2);
    }
}
