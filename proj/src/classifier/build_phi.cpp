#include <cstdio>

#include "stochsym/classifier/classifier.hpp"
#include "stochsym/errors.hpp"
#include "stochsym/expr/collect.hpp"

namespace stochsym::classifier {

using expr::Var;
using expr::num;
using expr::w;
using expr::x;

namespace {

struct Variant {
    std::string label;
    double R;
    Expr phi;
};

Expr get(const Classification& c, const char* name) {
    const Expr* e = c.find(name);
    if (!e) throw std::logic_error(std::string("classification lacks ") + name);
    return *e;
}

Expr q_of(const Expr& chi) { return expr::simplify(expr::exp(expr::integrate_t(chi))); }

// Q e^{-k w} x^{1+k/S}
Expr power_term(const Expr& Q, const Expr& k, const Expr& S) {
    return Q * expr::exp(num(-1) * k * w()) * expr::pow(x(), num(1) + k / S);
}

std::vector<Variant> variants(const Classification& c, const SdeProblem& p) {
    const Expr S = p.S();
    const Expr xlogx = x() * expr::log(x());
    const Bindings& b = p.bindings();
    std::vector<Variant> out;
    switch (c.row) {
        case 'a': {
            out.push_back({"printed", 0, power_term(get(c, "Q"), get(c, "k"), S)});
            break;
        }
        case 'b': {
            Expr pt = power_term(get(c, "Q"), get(c, "k"), S);
            out.push_back({"printed", 0, S + pt});
            out.push_back({"linear x", 0, S * x() + pt});
            out.push_back({"scaling only", 0, S * x()});
            break;
        }
        case 'c': {
            out.push_back({"printed", 0, get(c, "K") * S * x()});
            break;
        }
        case 'd': {
            out.push_back({"printed", 0, get(c, "Lambda") * x()});
            out.push_back({"exponential theta", 0, get(c, "theta") * x()});
            break;
        }
        case 'e': {
            Expr k = get(c, "k");
            Expr sigma = get(c, "Sigma");
            // chi read from the x coefficient as -Gamma_-
            Expr cx = expr::simplify(num(-1) * get(c, "GammaMinus"));
            Expr chi_minus = expr::simplify(sigma - k * (cx + S * S / num(2)) / S);
            Expr Qm = q_of(chi_minus);
            out.push_back({"printed", 1, power_term(Qm, k, S) + xlogx});
            Expr theta = get(c, "theta");
            Expr base = xlogx + theta * x();
            out.push_back({"log plus power", 1, base + power_term(get(c, "Q"), k, S)});
            out.push_back({"log only", 1, base});
            break;
        }
        case 'f': {
            Expr pt = get(c, "Q") * expr::exp(num(-1) * S * w()) * expr::pow(x(), num(2));
            out.push_back({"printed", 0, S * x() + pt});
            out.push_back({"quadratic only", 0, pt});
            break;
        }
        case 'g': {
            Expr Q = get(c, "Q");
            Expr chi_printed = expr::simplify(num(-1) * get(c, "chi"));
            out.push_back({"printed", 0, x() + q_of(chi_printed) * expr::exp(S * w())});
            Expr pt = Q * expr::exp(S * w());
            if (zero_in_t(get(c, "F"), b)) out.push_back({"exponential plus x", 0, x() + pt});
            out.push_back({"exponential only", 0, pt});
            break;
        }
        case 'h': {
            Expr Q = get(c, "Q");
            Expr theta = get(c, "theta");
            Expr base = xlogx + theta * x();
            out.push_back({"printed", 1, base + Q * expr::exp(S * w()) * expr::pow(x(), num(2))});
            Expr theta_p = expr::simplify(expr::log(Q) - S * S * expr::t());
            out.push_back({"log plus quadratic", 1,
                           xlogx + theta_p * x() + Q * expr::exp(num(-1) * S * w()) * expr::pow(x(), num(2))});
            out.push_back({"log only", 1, base});
            out.push_back({"log plus exponential", 1, base + expr::exp(S * w()) / Q});
            break;
        }
        default: throw std::logic_error("unknown row");
    }
    return out;
}

}  // namespace

SymmetryCandidate build_phi(Classification& c, const SdeProblem& problem, const ClassifyOptions& opts) {
    std::vector<Variant> vs = variants(c, problem);
    std::vector<Attempt> attempts;
    for (const auto& v : vs) {
        char buf[200];
        Expr phi = v.R != 0 && v.R != 1 ? expr::simplify(Expr::real(v.R) * v.phi) : expr::simplify(v.phi);
        if (phi.is_zero()) {
            c.notes.push_back(v.label + ": phi vanishes identically");
            continue;
        }
        SymmetryCandidate cand(v.R, phi);
        try {
            ResidualReport r = sde::verify(problem, cand, opts.verify);
            std::snprintf(buf, sizeof buf, ": %s (max |res1| = %.3g, max |res2| = %.3g)", r.pass ? "pass" : "fail",
                          r.numeric_max1, r.numeric_max2);
            c.notes.push_back(v.label + buf);
            attempts.push_back({v.label, cand.phi(), v.R, r});
            if (r.pass) {
                c.R = v.R;
                c.candidate = cand;
                c.variant = v.label;
                c.report = r;
                c.verified = true;
                return cand;
            }
        } catch (const DomainError& e) {
            c.notes.push_back(v.label + ": not evaluable, " + e.what());
        }
    }
    throw VerificationFailed(std::string("no phi form of row ") + c.row + " satisfies the determining equations",
                             std::move(attempts));
}

}  // namespace stochsym::classifier
