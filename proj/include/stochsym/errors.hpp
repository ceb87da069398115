#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stochsym {

/// Syntax error in an expression or problem file.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
        : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Evaluation outside the domain of an expression: log of zero, zero to a
/// negative power, negative base with fractional exponent, x <= 0, or a
/// non-finite result.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnboundParameter : public std::invalid_argument {
public:
    explicit UnboundParameter(const std::string& name)
        : std::invalid_argument("unbound parameter: " + name), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Drift outside the basis {1, x, x^2, x log x, x^2 log x, log x, x^(1+b)}.
class UnclassifiableDrift : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedPhiShape : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ReductionFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace stochsym
