#pragma once

#include <cmath>
#include <limits>

namespace stochsym::expr {

namespace detail {

template <class T, class F>
T simpson_step(F& f, T a, T fa, T b, T fb, T m, T fm, T whole, T eps, int depth) {
    T lm = (a + m) / 2;
    T rm = (m + b) / 2;
    T flm = f(lm);
    T frm = f(rm);
    T left = (m - a) / 6 * (fa + 4 * flm + fm);
    T right = (b - m) / 6 * (fm + 4 * frm + fb);
    T delta = left + right - whole;
    T noise = 64 * std::numeric_limits<T>::epsilon() * (std::fabs(left) + std::fabs(right));
    if (depth <= 0 || std::fabs(delta) <= 15 * eps || std::fabs(delta) <= noise) return left + right + delta / 15;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, eps / 2, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, eps / 2, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance eps,
/// with Richardson correction on accepted panels.
template <class T, class F>
T adaptive_simpson(F f, T a, T b, T eps, int max_depth = 40) {
    if (a == b) return T(0);
    T m = (a + b) / 2;
    T fa = f(a);
    T fb = f(b);
    T fm = f(m);
    T whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, eps, max_depth);
}

}  // namespace stochsym::expr
