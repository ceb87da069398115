#include "stochsym/classifier/classifier.hpp"
#include "stochsym/errors.hpp"
#include "stochsym/expr/collect.hpp"

namespace stochsym::classifier {

using expr::Var;
using expr::num;

const Expr* Classification::find(const std::string& name) const {
    for (const auto& [n, e] : extracted)
        if (n == name) return &e;
    return nullptr;
}

nlohmann::json to_json(const Classification& c) {
    nlohmann::json extracted = nlohmann::json::object();
    for (const auto& [n, e] : c.extracted) extracted[n] = expr::print(e);
    nlohmann::json j = {
        {"case", std::string(1, c.row)},
        {"R", c.R},
        {"extracted", extracted},
        {"notes", c.notes},
        {"verified", c.verified},
    };
    if (c.candidate) {
        j["phi"] = expr::print(c.candidate->phi());
        j["variant"] = c.variant;
    }
    j["residual_report"] = c.report ? sde::to_json(*c.report) : nlohmann::json(nullptr);
    return j;
}

std::vector<Classification> match_rows(const SdeProblem& problem, const DriftDecomposition& d) {
    const Bindings& b = problem.bindings();
    std::vector<Classification> out;
    if (d.has(Basis::X2LogX) || d.has(Basis::LogX)) return out;

    const Expr& S = problem.S();
    Expr sigma = expr::simplify(expr::differentiate(S, Var::T) / S);
    bool s_const = constant_in_t(S, b);
    bool has1 = d.has(Basis::One);
    bool has2 = d.has(Basis::X2);
    bool hasl = d.has(Basis::XLogX);
    bool hasg = d.has(Basis::XPow);
    Expr cx = d.coeff(Basis::X);
    bool log_is_sigma = equal_in_t(d.coeff(Basis::XLogX), sigma, b);

    auto make = [&](char row) {
        Classification c;
        c.row = row;
        c.extracted.emplace_back("S", S);
        return c;
    };

    if (s_const && !has1 && !has2 && !hasl && !hasg) {
        Classification c = make('h');
        c.R = 1;
        c.extracted.emplace_back("chi", expr::simplify(S * S / num(2) - cx));
        out.push_back(std::move(c));
    }
    if (s_const && !has1 && !hasl && !hasg) {
        Classification c = make('f');
        c.extracted.emplace_back("F", d.coeff(Basis::X2));
        c.extracted.emplace_back("chi", expr::simplify(S * S / num(2) - cx));
        out.push_back(std::move(c));
    }
    if (s_const && !has2 && !hasl && !hasg) {
        Classification c = make('g');
        c.extracted.emplace_back("F", d.coeff(Basis::One));
        c.extracted.emplace_back("chi", expr::simplify(cx - S * S / num(2)));
        out.push_back(std::move(c));
    }
    if (hasg && !has1 && !has2 && log_is_sigma) {
        Classification c = make('a');
        c.extracted.emplace_back("Sigma", sigma);
        c.extracted.emplace_back("k", d.k);
        c.extracted.emplace_back("G", d.coeff(Basis::XPow));
        c.extracted.emplace_back("GammaPlus", cx);
        c.extracted.emplace_back("chi", expr::simplify(sigma - d.k * (cx - S * S / num(2)) / S));
        out.push_back(std::move(c));
    }
    if (!hasg && !has1 && !has2 && log_is_sigma) {
        Expr k = num(1);
        Classification cb = make('b');
        cb.extracted.emplace_back("Sigma", sigma);
        cb.extracted.emplace_back("k", k);
        cb.extracted.emplace_back("GammaPlus", cx);
        cb.extracted.emplace_back("chi", expr::simplify(sigma - k * (cx - S * S / num(2)) / S));
        cb.notes.emplace_back("k is free in this row; k = 1 chosen");
        out.push_back(std::move(cb));

        Classification ce = make('e');
        ce.R = 1;
        ce.extracted.emplace_back("Sigma", sigma);
        ce.extracted.emplace_back("k", k);
        ce.extracted.emplace_back("GammaMinus", expr::simplify(num(-1) * cx));
        ce.extracted.emplace_back("chi", expr::simplify(sigma - k * (cx - S * S / num(2)) / S));
        ce.extracted.emplace_back("theta",
                                  expr::simplify(S * expr::integrate_t((num(-1) * S * S / num(2) - cx) / S)));
        ce.notes.emplace_back("R is free in this row; R = 1 chosen");
        out.push_back(std::move(ce));

        Classification cc = make('c');
        cc.extracted.emplace_back("Sigma", sigma);
        cc.extracted.emplace_back("F", cx);
        cc.extracted.emplace_back("K", num(1));
        out.push_back(std::move(cc));
    }
    if (!hasg && !has1 && !has2) {
        Classification c = make('d');
        c.extracted.emplace_back("F", cx);
        c.extracted.emplace_back("Lambda", d.coeff(Basis::XLogX));
        c.extracted.emplace_back("theta", expr::simplify(expr::exp(expr::integrate_t(d.coeff(Basis::XLogX)))));
        out.push_back(std::move(c));
    }
    for (auto& c : out) {
        if (c.row == 'h') {
            Expr chi = *c.find("chi");
            Expr Q = expr::simplify(expr::exp(expr::integrate_t(chi)));
            c.extracted.emplace_back("Q", Q);
            c.extracted.emplace_back("theta", expr::simplify(expr::integrate_t(num(-1) * S * S / num(2) - cx)));
            c.notes.emplace_back("R is free in this row; R = 1 chosen");
        } else if (const Expr* chi = c.find("chi")) {
            c.extracted.emplace_back("Q", expr::simplify(expr::exp(expr::integrate_t(*chi))));
        }
    }
    return out;
}

std::vector<Classification> classify(const SdeProblem& problem, const ClassifyOptions& opts) {
    DriftDecomposition d = decompose(problem.f(), problem.S(), problem.bindings());
    std::vector<Classification> out;
    for (auto& c : match_rows(problem, d)) {
        try {
            build_phi(c, problem, opts);
            out.push_back(std::move(c));
        } catch (const VerificationFailed&) {
        }
    }
    return out;
}

}  // namespace stochsym::classifier
