#include "stochsym/expr/number.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace stochsym::expr {

namespace {

__extension__ typedef __int128 i128;

bool fits(i128 v) {
    return v >= static_cast<i128>(INT64_MIN) + 1 && v <= static_cast<i128>(INT64_MAX);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// Normalizes num/den; falls back to double when the reduced fraction does not fit.
Number make(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (fits(num) && fits(den)) {
        return Number::rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
    }
    return Number::real(static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den)));
}

}  // namespace

Number Number::rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    Number n;
    n.exact_ = true;
    n.num_ = g > 1 ? num / g : num;
    n.den_ = g > 1 ? den / g : den;
    n.value_ = static_cast<double>(n.num_) / static_cast<double>(n.den_);
    return n;
}

Number Number::real(double value) {
    Number n;
    n.exact_ = false;
    n.value_ = value;
    n.num_ = 0;
    n.den_ = 1;
    return n;
}

double Number::to_double() const noexcept { return value_; }

long double Number::to_long_double() const noexcept {
    if (exact_) return static_cast<long double>(num_) / static_cast<long double>(den_);
    return value_;
}

bool Number::is_zero() const noexcept { return exact_ ? num_ == 0 : value_ == 0.0; }
bool Number::is_one() const noexcept { return exact_ && num_ == 1 && den_ == 1; }
bool Number::is_minus_one() const noexcept { return exact_ && num_ == -1 && den_ == 1; }
bool Number::is_negative() const noexcept { return exact_ ? num_ < 0 : value_ < 0.0; }
bool Number::is_positive() const noexcept { return exact_ ? num_ > 0 : value_ > 0.0; }

Number Number::operator-() const {
    if (exact_) return make(-static_cast<i128>(num_), den_);
    return real(-value_);
}

Number Number::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    if (exact_) return make(den_, num_);
    return real(1.0 / value_);
}

Number Number::pow(std::int64_t n) const {
    if (n == 0) return rational(1);
    if (n < 0) return reciprocal().pow(-n);
    if (!exact_) return real(std::pow(value_, static_cast<double>(n)));
    Number result = rational(1);
    Number base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

Number operator+(const Number& a, const Number& b) {
    if (a.exact_ && b.exact_) {
        i128 num = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
        i128 den = static_cast<i128>(a.den_) * b.den_;
        return make(num, den);
    }
    return Number::real(a.to_double() + b.to_double());
}

Number operator*(const Number& a, const Number& b) {
    if (a.exact_ && b.exact_) {
        return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
    }
    return Number::real(a.to_double() * b.to_double());
}

int compare(const Number& a, const Number& b) noexcept {
    if (a.exact_ && b.exact_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l < r ? -1 : (l > r ? 1 : 0);
    }
    long double x = a.to_long_double();
    long double y = b.to_long_double();
    if (x < y) return -1;
    if (x > y) return 1;
    if (a.exact_ != b.exact_) return a.exact_ ? -1 : 1;
    return 0;
}

std::string Number::to_string() const {
    if (exact_) {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    // Exponent notation marks the literal as inexact when it is parsed back.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", value_);
    return buf;
}

}  // namespace stochsym::expr
