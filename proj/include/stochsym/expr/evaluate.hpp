#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "stochsym/expr/expr.hpp"

namespace stochsym::expr {

using Bindings = std::map<std::string, double, std::less<>>;

/// Expression compiled to a postfix program. Bound parameters are folded in
/// as constants; names listed in extra_slots stay free and are supplied per
/// call. Every domain violation throws DomainError; the result is always
/// finite. Integral nodes are evaluated by adaptive Gauss-Kronrod quadrature.
template <class T>
class CompiledExpr {
public:
    CompiledExpr() = default;
    CompiledExpr(const Expr& e, const Bindings& bindings, const std::vector<std::string>& extra_slots = {});

    T operator()(T x, T t, T w, std::span<const T> extra = {}) const;

    bool uses(Var v) const noexcept { return uses_[static_cast<int>(v)]; }

private:
    enum class Op : std::uint8_t { Const, Load, Add, Mul, Pow, Exp, Log, Neg, Integral };
    struct Instr {
        Op op;
        std::uint32_t n;
        T value;
    };

    void emit(const Expr& e, const Bindings& bindings, const std::vector<std::string>& extra_slots, std::size_t depth);

    std::vector<Instr> code_;
    std::vector<std::shared_ptr<const CompiledExpr>> integrals_;
    std::vector<Expr> integrands_;
    std::size_t max_stack_ = 0;
    std::array<bool, 3> uses_{};
};

extern template class CompiledExpr<double>;
extern template class CompiledExpr<long double>;

/// One-shot double evaluation.
double evaluate(const Expr& e, double x, double t, double w, const Bindings& bindings = {});

}  // namespace stochsym::expr
