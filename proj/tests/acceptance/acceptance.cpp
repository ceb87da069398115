// Acceptance checks 1-8. One PASS/FAIL line per criterion; exit status 1
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "stochsym/classifier/catalog.hpp"
#include "stochsym/classifier/classifier.hpp"
#include "stochsym/cli/cli.hpp"
#include "stochsym/errors.hpp"
#include "stochsym/expr/collect.hpp"
#include "stochsym/expr/evaluate.hpp"
#include "stochsym/expr/parser.hpp"
#include "stochsym/kozlov/kozlov.hpp"
#include "support/random_expr.hpp"

using namespace stochsym;
using expr::Expr;
namespace catalog = classifier::catalog;

namespace {

// pinned tolerances and sizes
constexpr int kRowInstances = 20;
constexpr int kSamplePoints = 100;
constexpr double kResidualTol = 1e-9;
constexpr int kFamilyInstances = 5;
constexpr double kReduceRelTol = 1e-8;
constexpr double kGbmTol = 1e-12;
constexpr double kOrderLo = 0.35;
constexpr double kOrderHi = 0.65;
constexpr int kMinPaths = 200;
constexpr double kMaxSeconds = 60;
constexpr int kNegativeDrifts = 20;
constexpr int kDerivativeCases = 200;
constexpr double kDerivativeTol = 1e-6;
constexpr int kSimplifyExprs = 200;
constexpr int kSimplifyPoints = 50;
constexpr double kSimplifyTol = 1e-12;

constexpr std::uint64_t kSeed = 20240617;

int failures = 0;

void report(int n, bool pass, const std::string& summary) {
    std::printf("C%d %s: %s\n", n, pass ? "PASS" : "FAIL", summary.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

sde::VerifyOptions verify_opts() {
    sde::VerifyOptions o;
    o.samples = kSamplePoints;
    o.tol = kResidualTol;
    o.seed = kSeed;
    return o;
}

// A verified (problem, phi) pair collected by criteria 1-3 for criterion 4.
struct Verified {
    std::string origin;
    char row;
    sde::SdeProblem problem;
    sde::SymmetryCandidate cand;
};

std::vector<Verified> verified_pairs;

// ---------------------------------------------------------------------------

void criterion1() {
    std::mt19937_64 rng(kSeed + 1);
    bool pass = true;
    std::string summary;
    for (char row : catalog::kRows) {
        int printed = 0, repaired = 0, errors = 0;
        std::string repair;
        for (int i = 0; i < kRowInstances; ++i) {
            auto in = catalog::row_instance(row, rng);
            if (!in.repair.empty()) repair = in.repair;
            try {
                auto pp = sde::SdeProblem::make(in.f_printed, in.S);
                printed += sde::verify(pp, sde::SymmetryCandidate(in.R_printed, in.phi_printed), verify_opts()).pass;
            } catch (const DomainError&) {
            }
            try {
                auto p = sde::SdeProblem::make(in.f, in.S);
                sde::SymmetryCandidate c(in.R, in.phi);
                if (sde::verify(p, c, verify_opts()).pass) {
                    ++repaired;
                    verified_pairs.push_back({std::string("row ") + row, row, p, c});
                }
            } catch (const DomainError&) {
                ++errors;
            }
        }
        bool ok = repaired == kRowInstances;
        pass = pass && ok;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s%c %d/%d (printed %d/%d%s%s)", summary.empty() ? "" : "; ", row, repaired,
                      kRowInstances, printed, kRowInstances, repair.empty() ? "" : ", verified form: ", repair.c_str());
        summary += buf;
        if (errors) summary += fmt(" [%g not evaluable]", errors);
    }
    report(1, pass, summary);
}

// ---------------------------------------------------------------------------

void criterion2() {
    expr::Bindings b{{"A", 1}, {"B", 0.5}, {"mu", 0.3}};
    auto p = sde::SdeProblem::make(expr::parse("A*x - B*x^2"), expr::parse("mu"), b);
    classifier::ClassifyOptions opts;
    opts.verify = verify_opts();
    auto cs = classifier::classify(p, opts);
    Expr expected = expr::simplify(expr::parse("exp((mu^2/2 - A)*t - mu*w)*x^2"));
    bool pass = cs.size() == 1 && cs[0].row == 'f';
    std::string summary;
    if (!cs.empty()) {
        const auto& c = cs[0];
        bool equal = c.candidate->phi() == expected;
        bool zero = c.report->symbolic_zero1 == sde::ZeroState::Zero && c.report->symbolic_zero2 == sde::ZeroState::Zero;
        pass = pass && equal && zero;
        summary = std::string("case ") + c.row + ", phi = " + expr::print(c.candidate->phi()) +
                  (equal ? " (canonical match)" : " (differs from " + expr::print(expected) + ")") +
                  ", residuals " + sde::to_string(c.report->symbolic_zero1) + "/" +
                  sde::to_string(c.report->symbolic_zero2);
        for (const auto& v : cs) verified_pairs.push_back({"logistic", v.row, p, *v.candidate});
    } else {
        summary = "no classification";
    }
    if (cs.size() > 1) summary += fmt(", %g cases returned", static_cast<double>(cs.size()));
    report(2, pass, summary);
}

// ---------------------------------------------------------------------------

void criterion3() {
    std::mt19937_64 rng(kSeed + 3);
    int routed = 0, total = 0;
    std::string misses;
    for (const auto& name : catalog::family_names()) {
        int ok = 0;
        for (int i = 0; i < kFamilyInstances; ++i) {
            auto in = catalog::family_instance(name, rng);
            auto p = sde::SdeProblem::make(in.f, in.S);
            classifier::ClassifyOptions opts;
            opts.verify = verify_opts();
            std::vector<classifier::Classification> cs;
            try {
                cs = classifier::classify(p, opts);
            } catch (const UnclassifiableDrift&) {
            }
            bool hit = false;
            for (const auto& c : cs) {
                hit = hit || c.row == in.row;
                verified_pairs.push_back({name, c.row, p, *c.candidate});
            }
            ok += hit;
        }
        routed += ok;
        total += kFamilyInstances;
        if (ok != kFamilyInstances) misses += " " + name + fmt("(%g)", ok);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu families, %d/%d instances routed to their table row", catalog::family_names().size(),
                  routed, total);
    report(3, routed == total, buf + (misses.empty() ? "" : "; short:" + misses));
}

// ---------------------------------------------------------------------------

// Relative spread across the 10-point x-grid, with unit floor on the scale.
bool y_independent(const sde::SdeProblem& p, const kozlov::Transform& tr) {
    kozlov::ReduceOptions opts;
    opts.rel_tol = kReduceRelTol;
    return !kozlov::reduce_unchecked(p, tr, opts).y_dependent;
}

void criterion4() {
    struct Tally {
        int ok = 0, unsupported = 0, ydep = 0, domain = 0;
    };
    std::map<char, Tally> by_row;
    for (const auto& v : verified_pairs) {
        auto& t = by_row[v.row];
        try {
            auto tr = kozlov::integrate_inverse_phi(v.cand);
            if (y_independent(v.problem, tr)) ++t.ok;
            else ++t.ydep;
        } catch (const UnsupportedPhiShape&) {
            ++t.unsupported;
        } catch (const DomainError&) {
            ++t.domain;
        }
    }
    bool pass = true;
    std::string summary;
    for (const auto& [row, t] : by_row) {
        int n = t.ok + t.unsupported + t.ydep + t.domain;
        pass = pass && t.ok == n;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s%c %d/%d", summary.empty() ? "" : "; ", row, t.ok, n);
        summary += buf;
        if (t.unsupported) summary += fmt(" [%g no closed-form y]", t.unsupported);
        if (t.ydep) summary += fmt(" [%g y-dependent]", t.ydep);
        if (t.domain) summary += fmt(" [%g not evaluable]", t.domain);
    }

    // The W rows reduce only through x(log x + theta); that part alone is
    // not a symmetry and leaves y in the diffusion coefficient.
    int wonly = 0, wonly_ydep = 0;
    for (const auto& v : verified_pairs) {
        if (v.cand.R() == 0 || wonly >= 20) continue;
        auto lin = expr::collect_x(v.cand.phi());
        Expr part;
        for (const auto& term : lin.terms) {
            bool one = term.exponent.is_one();
            if (one) part = part + term.coeff * expr::x() * (term.log_power ? expr::log(expr::x()) : expr::num(1));
        }
        try {
            sde::SymmetryCandidate c(v.cand.R(), expr::simplify(part));
            auto tr = kozlov::integrate_inverse_phi(c);
            ++wonly;
            wonly_ydep += !y_independent(v.problem, tr);
        } catch (const std::exception&) {
        }
    }
    if (wonly) summary += fmt("; log-linear part alone y-dependent in %g", wonly_ydep) + fmt("/%g", wonly);
    report(4, pass, summary);
}

// ---------------------------------------------------------------------------

void criterion5() {
    struct Case {
        double a, s, x0;
        std::uint64_t seed;
    };
    double worst = 0;
    bool ran = true;
    int runs = 0;
    for (auto c : {Case{0.05, 0.2, 1.0, 1}, Case{-0.3, 0.5, 2.5, 2}, Case{1.0, -0.4, 0.7, 3}, Case{0.2, 1.5, 1.0, 99}}) {
        char text[512];
        std::snprintf(text, sizeof text,
                      "[problem]\ndrift = a*x\nnoise_S = s0\n[params]\na = %.17g\ns0 = %.17g\n"
                      "[simulate]\nx0 = %.17g\nt_end = 1\nsteps = 64\nn_paths = 100\nseed = %llu\n"
                      "refinement_levels = 1\nreference_levels = 2\n",
                      c.a, c.s, c.x0, static_cast<unsigned long long>(c.seed));
        auto r = cli::cmd_simulate(cli::parse_problem_text(text), "");
        if (!r.report.contains("exact_gbm") || r.report["reference"]["kind"] != "kozlov") {
            ran = false;
            continue;
        }
        worst = std::max(worst, r.report["exact_gbm"]["max_abs_error"].get<double>());
        ++runs;
    }
    report(5, ran && worst <= kGbmTol,
           fmt("%g parameter/seed sets, ", runs) + fmt("max |x_kozlov - x_exact| = %.3g", worst) +
               fmt(" (tol %.0e)", kGbmTol));
}

// ---------------------------------------------------------------------------

void criterion6() {
    const char* text =
        "[problem]\ndrift = A*x - B*x^2\nnoise_S = mu\n[params]\nA = 1\nB = 0.5\nmu = 0.3\n"
        "[simulate]\nx0 = 0.2\nt_end = 1\nsteps = 32\nn_paths = 400\nseed = 42\n"
        "refinement_levels = 3\nreference_levels = 7\n";
    auto pf = cli::parse_problem_text(text);
    auto start = std::chrono::steady_clock::now();
    auto r = cli::cmd_simulate(pf, "");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto& conv = r.report["convergence"];
    double order = conv["order_estimate"].is_number() ? conv["order_estimate"].get<double>() : std::nan("");
    bool kozlov_ref = r.report["reference"]["kind"] == "kozlov";
    bool pass = kozlov_ref && order >= kOrderLo && order <= kOrderHi && pf.simulate->n_paths >= kMinPaths &&
                secs < kMaxSeconds;
    std::string errs;
    for (const auto& l : conv["levels"]) errs += fmt(" %.3g", l["strong_error"].get<double>());
    report(6, pass,
           fmt("order %.3f", order) + fmt(" over levels 0..3 with %g paths", pf.simulate->n_paths) + ", errors" + errs + (kozlov_ref ? ", Kozlov reference" : ", EM reference") +
               fmt(", %.1f s", secs));
}

// ---------------------------------------------------------------------------

void criterion7() {
    std::mt19937_64 rng(kSeed + 7);
    int no_case = 0, phi_x_fails = 0;
    for (int i = 0; i < kNegativeDrifts; ++i) {
        Expr f = catalog::random_unclassifiable_drift(rng);
        Expr S = catalog::random_noise(rng, i % 2 == 0);
        auto p = sde::SdeProblem::make(f, S);
        classifier::ClassifyOptions opts;
        opts.verify = verify_opts();
        try {
            no_case += classifier::classify(p, opts).empty();
        } catch (const UnclassifiableDrift&) {
            ++no_case;
        }
        try {
            phi_x_fails += !sde::verify(p, sde::SymmetryCandidate(0, expr::x()), verify_opts()).pass;
        } catch (const DomainError&) {
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%d drifts without a case, phi = x rejected for %d/%d", no_case, kNegativeDrifts,
                  phi_x_fails, kNegativeDrifts);
    report(7, no_case == kNegativeDrifts && phi_x_fails == kNegativeDrifts, buf);
}

// ---------------------------------------------------------------------------

void criterion8() {
    testing::RandomExpr gen(kSeed + 8);
    std::uniform_real_distribution<double> ux(0.5, 3), ut(0, 2), uw(-1.5, 1.5);

    // derivatives
    int d_cases = 0, d_bad = 0;
    while (d_cases < kDerivativeCases) {
        Expr e = gen(3);
        auto v = static_cast<expr::Var>(d_cases % 3);
        Expr d = expr::differentiate(e, v);
        double p[3] = {ux(gen.rng()), ut(gen.rng()), uw(gen.rng())};
        const double h = 1e-5;
        auto at = [&](const Expr& g, double shift) {
            double q[3] = {p[0], p[1], p[2]};
            q[static_cast<int>(v)] += shift;
            return expr::evaluate(g, q[0], q[1], q[2]);
        };
        double fd, ex, f0;
        try {
            fd = (at(e, h) - at(e, -h)) / (2 * h);
            ex = at(d, 0);
            f0 = at(e, 0);
        } catch (const DomainError&) {
            continue;
        }
        ++d_cases;
        if (std::fabs(fd - ex) > kDerivativeTol * std::max({1.0, std::fabs(ex), std::fabs(f0)})) ++d_bad;
    }

    // value preservation
    int s_bad = 0, s_points = 0;
    for (int i = 0; i < kSimplifyExprs; ++i) {
        Expr e = gen(3);
        Expr s = expr::simplify(e);
        for (int k = 0; k < kSimplifyPoints; ++k) {
            double x = ux(gen.rng()), t = ut(gen.rng()), w = uw(gen.rng());
            double a, b;
            try {
                a = expr::evaluate(e, x, t, w);
            } catch (const DomainError&) {
                continue;
            }
            try {
                b = expr::evaluate(s, x, t, w);
            } catch (const DomainError&) {
                ++s_bad;
                continue;
            }
            ++s_points;
            if (std::fabs(a - b) > kSimplifyTol * std::max(1.0, std::fabs(a))) ++s_bad;
        }
    }

    // round trip over the corpus: catalog rows, families, negative drifts,
    // and random expressions
    std::vector<Expr> corpus;
    std::mt19937_64 rng(kSeed + 9);
    for (char row : catalog::kRows) {
        for (int i = 0; i < 5; ++i) {
            auto in = catalog::row_instance(row, rng);
            for (const auto& e : {in.S, in.f_printed, in.phi_printed, in.f, in.phi}) corpus.push_back(e);
        }
    }
    for (const auto& name : catalog::family_names()) {
        auto in = catalog::family_instance(name, rng);
        corpus.push_back(in.f);
        corpus.push_back(in.S);
    }
    for (int i = 0; i < 20; ++i) corpus.push_back(catalog::random_unclassifiable_drift(rng));
    for (int i = 0; i < 300; ++i) corpus.push_back(gen(3));
    int rt_bad = 0;
    for (const auto& e : corpus) {
        Expr s = expr::simplify(e);
        try {
            if (expr::simplify(expr::parse(expr::print(s))) != s) ++rt_bad;
        } catch (const ParseError&) {
            ++rt_bad;
        }
    }

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "derivatives %d/%d within %.0e, simplify %d/%d points within %.0e, round trip %zu/%zu",
                  d_cases - d_bad, d_cases, kDerivativeTol, s_points - s_bad, s_points, kSimplifyTol,
                  corpus.size() - rt_bad, corpus.size());
    report(8, d_bad == 0 && s_bad == 0 && rt_bad == 0, buf);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures ? 1 : 0;
}
