#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stochsym/sde/sde.hpp"

namespace stochsym::classifier {

using expr::Bindings;
using expr::Expr;
using sde::ResidualReport;
using sde::SdeProblem;
using sde::SymmetryCandidate;

enum class Basis { One, X, X2, XLogX, X2LogX, LogX, XPow };
const char* basis_name(Basis b) noexcept;

/// f = sum coeff(term) * term + G * x^(1+beta) + remainder.
struct DriftDecomposition {
    std::map<Basis, Expr> coeffs;  // nonzero coefficients only, functions of t
    Expr beta;                     // exponent - 1 of the XPow term
    Expr k;                        // beta * S, constant
    Expr remainder;

    Expr coeff(Basis b) const;
    bool has(Basis b) const { return coeffs.count(b) != 0; }
    Expr reconstruct() const;
};

/// Throws UnclassifiableDrift when f leaves a nonzero remainder.
DriftDecomposition decompose(const Expr& f, const Expr& S, const Bindings& bindings = {});

struct Classification {
    char row = '?';  // 'a'..'h'
    double R = 0;
    std::vector<std::pair<std::string, Expr>> extracted;
    std::vector<std::string> notes;
    std::optional<SymmetryCandidate> candidate;
    std::string variant;  // label of the verified phi form
    std::optional<ResidualReport> report;
    bool verified = false;

    const Expr* find(const std::string& name) const;
};

nlohmann::json to_json(const Classification& c);

struct Attempt {
    std::string variant;
    Expr phi;
    double R = 0;
    ResidualReport report;
};

/// No phi variant of a matched row passes the determining equations.
class VerificationFailed : public std::runtime_error {
public:
    VerificationFailed(const std::string& what, std::vector<Attempt> attempts)
        : std::runtime_error(what), attempts_(std::move(attempts)) {}
    const std::vector<Attempt>& attempts() const noexcept { return attempts_; }

private:
    std::vector<Attempt> attempts_;
};

struct ClassifyOptions {
    sde::VerifyOptions verify;
};

/// Rows whose drift shape matches, with extracted functions but before
/// any phi is built. Most specific first: h, f, g, a, b, e, c, d.
std::vector<Classification> match_rows(const SdeProblem& problem, const DriftDecomposition& d);

/// Tries the phi variants of c.row in a fixed order, records every verdict
/// in c.notes and stores the first passing one. Throws VerificationFailed
/// with all attempts if none passes.
SymmetryCandidate build_phi(Classification& c, const SdeProblem& problem, const ClassifyOptions& opts = {});

/// Every matched row with a verified phi. Empty means no symmetry.
/// Throws UnclassifiableDrift when f is outside the basis.
std::vector<Classification> classify(const SdeProblem& problem, const ClassifyOptions& opts = {});

/// Numeric helpers shared with the catalog and kozlov modules.
bool zero_in_t(const Expr& e, const Bindings& bindings);
bool equal_in_t(const Expr& a, const Expr& b, const Bindings& bindings);
bool constant_in_t(const Expr& e, const Bindings& bindings);

}  // namespace stochsym::classifier
