#include "stochsym/classifier/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "stochsym/expr/collect.hpp"
#include "stochsym/expr/evaluate.hpp"

namespace stochsym::classifier::catalog {

using expr::Var;
using expr::num;
using expr::t;
using expr::w;
using expr::x;

const char kRows[8] = {'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'};

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(std::mt19937_64& rng) { return uniform_int(rng, 0, 1) == 1; }

Expr signed_tenths(std::mt19937_64& rng, int lo, int hi) {
    int n = uniform_int(rng, lo, hi);
    return Expr::rational(coin(rng) ? n : -n, 10);
}

// min and max of e over 41 points on [0, 2]
std::pair<double, double> range(const Expr& e) {
    expr::CompiledExpr<double> c(e, {});
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i <= 40; ++i) {
        double v = c(1, 0.05 * i, 0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

Expr sigma_of(const Expr& S) { return expr::simplify(expr::differentiate(S, Var::T) / S); }
Expr chi_of(const Expr& Q) { return expr::simplify(expr::differentiate(Q, Var::T) / Q); }

Expr gamma_plus(const Expr& S, const Expr& k, const Expr& chi) {
    return expr::simplify(S * S / num(2) + S / k * (sigma_of(S) - chi));
}
Expr gamma_minus(const Expr& S, const Expr& k, const Expr& chi) {
    return expr::simplify(S * S / num(2) - S / k * (sigma_of(S) - chi));
}

Expr power_term(const Expr& C, const Expr& k, const Expr& S) {
    return C * expr::exp(num(-1) * k * w()) * expr::pow(x(), num(1) + k / S);
}

Expr xlogx() { return x() * expr::log(x()); }

// |S| as an expression, S of fixed sign on [0, 2]
Expr abs_noise(const Expr& S) { return range(S).first < 0 ? expr::simplify(num(-1) * S) : S; }

}  // namespace

Expr random_coefficient(std::mt19937_64& rng) { return signed_tenths(rng, 2, 20); }

Expr random_poly(std::mt19937_64& rng, int max_degree) {
    int deg = uniform_int(rng, 0, max_degree);
    Expr p = num(0);
    for (int i = 0; i <= deg; ++i) p = p + random_coefficient(rng) * expr::pow(t(), num(i));
    return expr::simplify(p);
}

Expr random_function(std::mt19937_64& rng) {
    Expr p = random_poly(rng);
    if (coin(rng)) p = p * expr::exp(signed_tenths(rng, 1, 10) * t());
    return expr::simplify(p);
}

Expr random_noise(std::mt19937_64& rng, bool constant) {
    if (constant) return signed_tenths(rng, 5, 20);
    for (;;) {
        Expr S = random_function(rng);
        if (!expr::depends_on(S, Var::T)) continue;
        auto [lo, hi] = range(S);
        if ((lo >= 0.5 && hi <= 4) || (hi <= -0.5 && lo >= -4)) return S;
    }
}

Expr random_positive(std::mt19937_64& rng) {
    for (;;) {
        Expr p = random_poly(rng);
        auto [lo, hi] = range(p);
        if (lo < 0.5 || hi > 4) continue;
        if (coin(rng)) p = p * expr::exp(Expr::rational(uniform_int(rng, -5, 5), 10) * t());
        return expr::simplify(p);
    }
}

Expr random_k(std::mt19937_64& rng) { return signed_tenths(rng, 3, 15); }

RowInstance row_instance(char row, std::mt19937_64& rng) {
    RowInstance in;
    in.row = row;
    bool s_const = row == 'f' || row == 'g' || row == 'h';
    Expr S = random_noise(rng, s_const);
    in.S = S;
    Expr sigma = sigma_of(S);
    auto keep_printed = [&in]() {
        in.f = in.f_printed;
        in.phi = in.phi_printed;
        in.R = in.R_printed;
    };
    switch (row) {
        case 'a': {
            Expr k = random_k(rng);
            Expr Q = random_positive(rng);
            Expr G = random_function(rng);
            in.f_printed = gamma_plus(S, k, chi_of(Q)) * x() + sigma * xlogx() + G * expr::pow(x(), num(1) + k / S);
            in.phi_printed = power_term(Q, k, S);
            keep_printed();
            break;
        }
        case 'b': {
            Expr k = random_k(rng);
            Expr Q = random_positive(rng);
            Expr K = random_coefficient(rng);
            in.f_printed = gamma_plus(S, k, chi_of(Q)) * x() + sigma * xlogx();
            in.phi_printed = K * S + power_term(Q, k, S);
            in.f = in.f_printed;
            in.phi = K * S * x() + power_term(Q, k, S);
            in.repair = "constant term K S replaced by K S x";
            break;
        }
        case 'c': {
            Expr F = random_function(rng);
            Expr K = random_coefficient(rng);
            in.f_printed = F * x() + sigma * xlogx();
            in.phi_printed = K * S * x();
            keep_printed();
            break;
        }
        case 'd': {
            Expr F = random_function(rng);
            Expr theta = random_function(rng);
            in.f_printed = F * x() + theta * xlogx();
            in.phi_printed = theta * x();
            Expr th = random_positive(rng);
            in.f = F * x() + chi_of(th) * xlogx();
            in.phi = th * x();
            in.repair = "x log x coefficient is theta'/theta, not theta";
            break;
        }
        case 'e': {
            // keep exp(k * integral of S) moderate so residuals stay above roundoff
            Expr k = random_k(rng);
            for (;;) {
                auto [lo, hi] = range(expr::simplify(k * expr::integrate_t(S)));
                if (lo >= -2 && hi <= 2) break;
                S = random_noise(rng, false);
                k = random_k(rng);
            }
            in.S = S;
            sigma = sigma_of(S);
            Expr Q = random_positive(rng);
            Expr F = random_function(rng);
            Expr theta = random_function(rng);
            double R = random_coefficient(rng).number().to_double();
            in.f_printed = num(-1) * gamma_minus(S, k, chi_of(Q)) * x() + sigma * xlogx();
            in.phi_printed = Expr::real(R) * (power_term(F, k, S) + theta * x() + xlogx());
            in.R_printed = R;
            in.f = in.f_printed;
            Expr theta_e = S / k * (expr::log(Q) - expr::log(abs_noise(S)));
            Expr C = Q * expr::exp(k * expr::integrate_t(S));
            in.phi = Expr::real(R) * (xlogx() + theta_e * x() + power_term(C, k, S));
            in.R = R;
            in.repair = "theta and the power coefficient are fixed by S, k and Q";
            break;
        }
        case 'f': {
            Expr Q = random_positive(rng);
            Expr F = random_function(rng);
            Expr K = random_coefficient(rng);
            Expr quad = Q * expr::exp(num(-1) * S * w()) * expr::pow(x(), num(2));
            in.f_printed = F * expr::pow(x(), num(2)) + (S * S / num(2) - chi_of(Q)) * x();
            in.phi_printed = K * S * x() + quad;
            in.f = in.f_printed;
            in.phi = quad;
            in.repair = "K s0 x dropped; it is a symmetry only when F = 0";
            break;
        }
        case 'g': {
            Expr Q = random_positive(rng);
            Expr F = random_function(rng);
            Expr K = random_coefficient(rng);
            in.f_printed = F + (S * S / num(2) - chi_of(Q)) * x();
            in.phi_printed = K * x() + Q * expr::exp(S * w());
            in.f = F + (S * S / num(2) + chi_of(Q)) * x();
            in.phi = Q * expr::exp(S * w());
            in.repair = "sign of chi in the x coefficient flipped; K x dropped since F != 0";
            break;
        }
        case 'h': {
            Expr Q = random_positive(rng);
            Expr theta = random_function(rng);
            Expr J = random_function(rng);
            Expr K = random_coefficient(rng);
            double R = random_coefficient(rng).number().to_double();
            in.f_printed = (S * S / num(2) - chi_of(Q)) * x();
            in.phi_printed = Expr::real(R) * (theta * x() + J * expr::exp(S * w()) * expr::pow(x(), num(2)) + xlogx());
            in.R_printed = R;
            in.f = in.f_printed;
            Expr theta_p = expr::log(Q) - S * S * t();
            in.phi = Expr::real(R) *
                     (theta_p * x() + K * Q * expr::exp(num(-1) * S * w()) * expr::pow(x(), num(2)) + xlogx());
            in.R = R;
            in.repair = "x^2 term carries exp(-s0 w) and Q; theta = log Q - s0^2 t";
            break;
        }
        default: throw std::invalid_argument(std::string("unknown row ") + row);
    }
    in.f_printed = expr::simplify(in.f_printed);
    in.phi_printed = expr::simplify(in.phi_printed);
    in.f = expr::simplify(in.f);
    in.phi = expr::simplify(in.phi);
    return in;
}

namespace {

struct Family {
    const char* name;
    char row;
};

const Family kFamilies[] = {
    {"a1", 'a'}, {"e1", 'e'}, {"e2", 'e'}, {"c1", 'c'}, {"b1", 'b'}, {"b2", 'b'}, {"e3", 'e'},
    {"h1", 'h'}, {"c2", 'c'}, {"f1", 'f'}, {"f2", 'f'}, {"e4", 'e'}, {"h2", 'h'}, {"c3", 'c'},
    {"c4", 'c'}, {"g1", 'g'}, {"g2", 'g'}, {"e5", 'e'}, {"d1", 'd'},
};

}  // namespace

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& f : kFamilies) v.emplace_back(f.name);
        return v;
    }();
    return names;
}

char family_row(const std::string& name) {
    for (const auto& f : kFamilies)
        if (name == f.name) return f.row;
    throw std::invalid_argument("unknown family " + name);
}

FamilyInstance family_instance(const std::string& name, std::mt19937_64& rng) {
    FamilyInstance in;
    in.name = name;
    in.row = family_row(name);
    bool s_const = in.row == 'f' || in.row == 'g' || in.row == 'h';
    Expr S = random_noise(rng, s_const);
    in.S = S;
    Expr sigma = sigma_of(S);
    Expr f;
    if (name == "a1") {
        Expr k, eta, Q;
        for (;;) {
            k = random_k(rng);
            auto [lo, hi] = range(expr::simplify(k * k - S * S));
            if (lo > 0.1 || hi < -0.1) break;
            S = random_noise(rng, false);
        }
        in.S = S;
        sigma = sigma_of(S);
        eta = random_function(rng);
        Q = random_positive(rng);
        Expr chi = chi_of(Q);
        Expr xk = expr::pow(x(), k / S);
        f = x() * (S * S * (num(1, 2) + xk * eta / (k * (k * k - S * S))) + expr::differentiate(S, Var::T) / k +
                   sigma * expr::log(x()) - S * chi / k);
    } else if (name == "e1" || name == "e2" || name == "e5" || name == "e3" || name == "e4") {
        Expr theta = random_function(rng);
        Expr dS = expr::differentiate(S, Var::T);
        Expr dth = expr::differentiate(theta, Var::T);
        if (name == "e4") {
            f = sigma * xlogx() + x() * (theta * sigma - dth - S * S / num(2));
        } else {
            f = num(-1) * x() * (S * S * S - num(2) * (expr::log(x()) + theta) * dS + num(2) * S * dth) / (num(2) * S);
        }
    } else if (name == "c1") {
        f = x() * random_function(rng) + x() * (expr::log(x()) - num(1)) * sigma;
    } else if (name == "b1" || name == "b2") {
        Expr k = random_k(rng);
        Expr chi = chi_of(random_positive(rng));
        f = (S * S + num(2) / k * (expr::differentiate(S, Var::T) - S * chi) + num(2) * sigma * expr::log(x())) * x() /
            num(2);
    } else if (name == "h1" || name == "h2") {
        Expr dth = expr::differentiate(random_function(rng), Var::T);
        if (name == "h1") {
            f = num(-1) * (S * S / num(2) + dth) * x();
        } else {
            f = (S * S / num(2) - (S * S + dth)) * x();
        }
    } else if (name == "c2") {
        f = (random_function(rng) - sigma) * x() + sigma * xlogx();
    } else if (name == "f1") {
        f = (S * S / num(2) - chi_of(random_positive(rng))) * x();
    } else if (name == "f2") {
        f = (S * S / num(2) - chi_of(random_positive(rng))) * x() + random_function(rng) * expr::pow(x(), num(2));
    } else if (name == "c3" || name == "c4") {
        f = (random_function(rng) + sigma) * x() + sigma * xlogx();
    } else if (name == "g1") {
        Expr F1 = random_function(rng);
        f = F1 + (S * S / num(2) + chi_of(random_positive(rng))) * x();
    } else if (name == "g2") {
        f = (S * S / num(2) + chi_of(random_positive(rng))) * x();
    } else if (name == "d1") {
        Expr theta = random_positive(rng);
        f = (random_function(rng) + (expr::log(x()) - num(1)) * chi_of(theta)) * x();
    }
    in.f = expr::simplify(f);
    return in;
}

Expr random_unclassifiable_drift(std::mt19937_64& rng) {
    Expr base = random_function(rng) * x() + random_function(rng) * expr::pow(x(), num(2));
    Expr extra;
    switch (uniform_int(rng, 0, 5)) {
        case 0: extra = expr::exp(x()); break;
        case 1: extra = expr::pow(expr::log(x()), num(3)); break;
        case 2: extra = expr::pow(expr::log(x()), num(2)) * x(); break;
        case 3: extra = expr::pow(num(1) + x(), num(-1)); break;
        case 4: extra = expr::exp(num(-1) * x()) * x(); break;
        default: extra = expr::pow(x(), num(3)) * expr::log(x()); break;
    }
    return expr::simplify(base + random_function(rng) * extra);
}

}  // namespace stochsym::classifier::catalog
