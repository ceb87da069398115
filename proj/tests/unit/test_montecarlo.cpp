#include <cmath>

#include "doctest.h"
#include "stochsym/expr/parser.hpp"
#include "stochsym/montecarlo/montecarlo.hpp"
#include "stochsym/montecarlo/parallel.hpp"
#include "stochsym/montecarlo/philox.hpp"

using namespace stochsym;
using namespace stochsym::montecarlo;

TEST_CASE("Philox4x32-10 known answers") {
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal draws have unit variance") {
    PathStream s(9, 0);
    double sum = 0, sq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double z = s.normal(0, static_cast<std::uint32_t>(i));
        sum += z;
        sq += z * z;
    }
    CHECK(std::fabs(sum / n) < 0.01);
    CHECK(std::fabs(sq / n - 1) < 0.01);
    CHECK(s.normal(0, 5) == PathStream(9, 0).normal(0, 5));
    CHECK(s.normal(0, 5) != PathStream(9, 1).normal(0, 5));
}

TEST_CASE("ensembles do not depend on the thread count") {
    PathGrid g{1.0, 8, 2};
    auto a = generate(3, 17, g, 1);
    auto b = generate(3, 17, g, 5);
    CHECK(a.w == b.w);
}

TEST_CASE("refinement keeps coarse values") {
    auto coarse = generate(4, 6, PathGrid{2.0, 4, 0});
    auto fine = generate(4, 6, PathGrid{2.0, 4, 3});
    for (int p = 0; p < 6; ++p) {
        CHECK(fine.w[p].size() == 33);
        CHECK(coarsen(fine.w[p], 3, 0) == coarse.w[p]);
    }
}

TEST_CASE("increments have variance h") {
    PathGrid g{1.0, 16, 2};
    auto e = generate(5, 2000, g);
    double sq = 0;
    int n = 0;
    for (int p = 0; p < e.n_paths; ++p)
        for (double d : e.increments(p)) {
            sq += d * d;
            ++n;
        }
    CHECK(sq / n == doctest::Approx(g.h()).epsilon(0.02));
}

TEST_CASE("Euler-Maruyama on GBM approaches the closed form") {
    auto p = sde::SdeProblem::make(expr::parse("a*x"), expr::parse("s"), {{"a", 0.1}, {"s", 0.3}});
    double prev = 1e9;
    for (int level : {0, 4}) {
        auto e = generate(6, 50, PathGrid{1.0, 16, level});
        auto em = euler_maruyama(p, 1.0, e);
        auto times = e.grid.times();
        double err = 0;
        for (int k = 0; k < 50; ++k) {
            double exact = std::exp((0.1 - 0.045) * 1.0 + 0.3 * e.w[k].back());
            err += std::fabs(em.x[k].back() - exact) / 50;
        }
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("paths leaving x > 0 are truncated") {
    auto p = sde::SdeProblem::make(expr::parse("-5*x^2"), expr::parse("3"), {});
    auto e = generate(7, 40, PathGrid{2.0, 4, 0});
    auto em = euler_maruyama(p, 1.0, e);
    CHECK(em.exit_count() > 0);
    for (std::size_t k = 0; k < em.x.size(); ++k)
        if (em.exited[k]) CHECK(em.x[k].size() < 5);
}

TEST_CASE("strong error on nested grids") {
    std::vector<std::vector<double>> ref{{0, 1, 2, 3, 4}, {0, 0, 0, 0, 0}, {0, 1}};
    std::vector<std::vector<double>> app{{0, 2.5, 4}, {0, 1, 0}, {0, 0, 0}};
    auto se = strong_error(ref, app);
    CHECK(se.paths_used == 2);
    CHECK(se.paths_excluded == 1);
    CHECK(se.mean_max_error == doctest::Approx(0.75));
    CHECK_THROWS_AS(strong_error(ref, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("order estimate is the least-squares slope") {
    std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> e;
    for (double v : h) e.push_back(3 * std::sqrt(v));
    CHECK(order_estimate(h, e) == doctest::Approx(0.5));
    ConvergenceTable t{10, h, e, 0.5, {}};
    auto j = to_json(t);
    CHECK(j["levels"].size() == 4);
    CHECK(j["n_paths"] == 10);
}

TEST_CASE("parallel_for rethrows") {
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](std::size_t i) {
                                     if (i == 57) throw std::runtime_error("x");
                                 }),
                    std::runtime_error);
}
