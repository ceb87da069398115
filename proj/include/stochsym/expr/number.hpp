#pragma once

#include <cstdint>
#include <string>

namespace stochsym::expr {

/// Numeric constant of an expression tree: an exact rational with 64-bit
/// numerator/denominator, or an IEEE double. Arithmetic stays exact while
/// both operands are exact and the result fits; otherwise it promotes to
/// double.
class Number {
public:
    constexpr Number() = default;

    static Number rational(std::int64_t num, std::int64_t den = 1);
    static Number real(double value);

    bool exact() const noexcept { return exact_; }
    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept;
    long double to_long_double() const noexcept;

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool is_minus_one() const noexcept;
    bool is_integer() const noexcept { return exact_ && den_ == 1; }
    bool is_negative() const noexcept;
    bool is_positive() const noexcept;

    Number operator-() const;
    Number reciprocal() const;
    Number pow(std::int64_t n) const;

    friend Number operator+(const Number& a, const Number& b);
    friend Number operator-(const Number& a, const Number& b) { return a + (-b); }
    friend Number operator*(const Number& a, const Number& b);

    /// Total order: by value, then exact before inexact.
    friend int compare(const Number& a, const Number& b) noexcept;
    friend bool operator==(const Number& a, const Number& b) noexcept { return compare(a, b) == 0; }

    std::string to_string() const;

private:
    bool exact_ = true;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    double value_ = 0.0;
};

}  // namespace stochsym::expr
