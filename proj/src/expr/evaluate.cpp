#include "stochsym/expr/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stochsym/errors.hpp"

namespace stochsym::expr {

namespace {

template <class T>
constexpr T kQuadTol = std::max(T(1e-15), 64 * std::numeric_limits<T>::epsilon());

template <class T>
std::string fmt(T v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6Lg", static_cast<long double>(v));
    return buf;
}

}  // namespace

template <class T>
CompiledExpr<T>::CompiledExpr(const Expr& e, const Bindings& bindings, const std::vector<std::string>& extra_slots) {
    emit(e, bindings, extra_slots, 1);
}

template <class T>
void CompiledExpr<T>::emit(const Expr& e, const Bindings& bindings, const std::vector<std::string>& extra_slots,
                           std::size_t depth) {
    max_stack_ = std::max(max_stack_, depth);
    auto args = e.args();
    switch (e.kind()) {
        case Kind::Constant:
            code_.push_back({Op::Const, 0, static_cast<T>(e.number().to_long_double())});
            return;
        case Kind::Variable: {
            auto idx = static_cast<std::uint32_t>(e.variable());
            uses_[idx] = true;
            code_.push_back({Op::Load, idx, T(0)});
            return;
        }
        case Kind::Parameter: {
            auto slot = std::find(extra_slots.begin(), extra_slots.end(), e.name());
            if (slot != extra_slots.end()) {
                code_.push_back({Op::Load, static_cast<std::uint32_t>(3 + (slot - extra_slots.begin())), T(0)});
                return;
            }
            auto it = bindings.find(e.name());
            if (it == bindings.end()) throw UnboundParameter(e.name());
            if (!std::isfinite(it->second)) throw DomainError("parameter " + e.name() + " is not finite");
            code_.push_back({Op::Const, 0, static_cast<T>(it->second)});
            return;
        }
        case Kind::Sum:
        case Kind::Product:
            for (std::size_t i = 0; i < args.size(); ++i) emit(args[i], bindings, extra_slots, depth + i);
            code_.push_back({e.kind() == Kind::Sum ? Op::Add : Op::Mul, static_cast<std::uint32_t>(args.size()), T(0)});
            return;
        case Kind::Power:
            emit(args[0], bindings, extra_slots, depth);
            emit(args[1], bindings, extra_slots, depth + 1);
            code_.push_back({Op::Pow, 0, T(0)});
            return;
        case Kind::Exp:
        case Kind::Log:
        case Kind::Neg:
            emit(args[0], bindings, extra_slots, depth);
            code_.push_back({e.kind() == Kind::Exp ? Op::Exp : (e.kind() == Kind::Log ? Op::Log : Op::Neg), 0, T(0)});
            return;
        case Kind::Integral: {
            uses_[static_cast<int>(Var::T)] = true;
            std::size_t idx = 0;
            while (idx < integrands_.size() && integrands_[idx] != args[0]) ++idx;
            if (idx == integrands_.size()) {
                integrals_.push_back(std::make_shared<CompiledExpr>(args[0], bindings, extra_slots));
                integrands_.push_back(args[0]);
            }
            code_.push_back({Op::Integral, static_cast<std::uint32_t>(idx), T(0)});
            return;
        }
    }
}

template <class T>
T CompiledExpr<T>::operator()(T x, T t, T w, std::span<const T> extra) const {
    if (code_.empty()) throw std::logic_error("evaluating an empty compiled expression");
    if (uses_[0] && !(x > 0)) throw DomainError("x must be positive, got " + fmt(x));
    std::array<T, 64> small{};
    std::vector<T> big;
    std::vector<T> cache;
    T* stack = small.data();
    if (max_stack_ > small.size()) {
        big.resize(max_stack_);
        stack = big.data();
    }
    std::size_t sp = 0;
    for (const auto& ins : code_) {
        switch (ins.op) {
            case Op::Const: stack[sp++] = ins.value; break;
            case Op::Load:
                if (ins.n == 0) {
                    stack[sp++] = x;
                } else if (ins.n == 1) {
                    stack[sp++] = t;
                } else if (ins.n == 2) {
                    stack[sp++] = w;
                } else {
                    std::size_t k = ins.n - 3;
                    if (k >= extra.size()) throw std::invalid_argument("missing value for extra slot");
                    stack[sp++] = extra[k];
                }
                break;
            case Op::Add: {
                T acc = 0;
                for (std::uint32_t i = 0; i < ins.n; ++i) acc += stack[sp - ins.n + i];
                sp -= ins.n;
                stack[sp++] = acc;
                break;
            }
            case Op::Mul: {
                T acc = 1;
                for (std::uint32_t i = 0; i < ins.n; ++i) acc *= stack[sp - ins.n + i];
                sp -= ins.n;
                stack[sp++] = acc;
                break;
            }
            case Op::Pow: {
                T e = stack[--sp];
                T b = stack[sp - 1];
                bool integral_exp = std::nearbyint(e) == e;
                if (b < 0 && !integral_exp) throw DomainError("negative base " + fmt(b) + " with fractional exponent");
                if (b == 0 && e < 0) throw DomainError("zero raised to a negative power");
                T r;
                if (integral_exp && std::fabs(e) <= 64) {
                    // Repeated multiplication keeps integer powers exact.
                    auto n = static_cast<long long>(std::fabs(e));
                    T acc = 1;
                    T base = b;
                    while (n > 0) {
                        if (n & 1) acc *= base;
                        base *= base;
                        n >>= 1;
                    }
                    r = e < 0 ? T(1) / acc : acc;
                } else {
                    r = std::pow(b, e);
                }
                stack[sp - 1] = r;
                break;
            }
            case Op::Exp: stack[sp - 1] = std::exp(stack[sp - 1]); break;
            case Op::Log:
                if (stack[sp - 1] == 0) throw DomainError("log of zero");
                stack[sp - 1] = std::log(std::fabs(stack[sp - 1]));
                break;
            case Op::Neg: stack[sp - 1] = -stack[sp - 1]; break;
            case Op::Integral: {
                if (cache.empty()) cache.assign(integrals_.size(), std::numeric_limits<T>::quiet_NaN());
                T& v = cache[ins.n];
                if (std::isnan(v)) {
                    const auto& sub = *integrals_[ins.n];
                    auto g = [&](T s) { return sub(x, s, w, extra); };
                    v = boost::math::quadrature::gauss_kronrod<T, 15>::integrate(g, T(0), t, 10, kQuadTol<T>);
                }
                stack[sp++] = v;
                break;
            }
        }
    }
    T result = stack[0];
    if (!std::isfinite(result)) throw DomainError("non-finite value");
    return result;
}

template class CompiledExpr<double>;
template class CompiledExpr<long double>;

double evaluate(const Expr& e, double x, double t, double w, const Bindings& bindings) {
    return CompiledExpr<double>(e, bindings)(x, t, w);
}

}  // namespace stochsym::expr
