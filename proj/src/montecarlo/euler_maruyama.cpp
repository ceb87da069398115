#include <cmath>
#include <stdexcept>

#include "stochsym/errors.hpp"
#include "stochsym/montecarlo/montecarlo.hpp"
#include "stochsym/montecarlo/parallel.hpp"

namespace stochsym::montecarlo {

int EmPaths::exit_count() const {
    int n = 0;
    for (bool e : exited) n += e ? 1 : 0;
    return n;
}

EmPaths euler_maruyama(const sde::SdeProblem& problem, double x0, const WienerEnsemble& ensemble, int threads) {
    if (!(x0 > 0)) throw std::invalid_argument("x0 must be positive");
    expr::CompiledExpr<double> f(problem.f(), problem.bindings());
    expr::CompiledExpr<double> S(problem.S(), problem.bindings());
    std::vector<double> t = ensemble.grid.times();
    double h = ensemble.grid.h();

    EmPaths out;
    out.x.resize(ensemble.w.size());
    std::vector<char> exited(ensemble.w.size(), 0);
    parallel_for(ensemble.w.size(), threads, [&](std::size_t p) {
        const auto& w = ensemble.w[p];
        std::vector<double> x;
        x.reserve(w.size());
        x.push_back(x0);
        for (std::size_t n = 0; n + 1 < w.size(); ++n) {
            double xn = x.back();
            double next;
            try {
                next = xn + f(xn, t[n], 0.0) * h + S(xn, t[n], 0.0) * xn * (w[n + 1] - w[n]);
            } catch (const DomainError&) {
                exited[p] = 1;
                break;
            }
            if (!(next > 0) || !std::isfinite(next)) {
                exited[p] = 1;
                break;
            }
            x.push_back(next);
        }
        out.x[p] = std::move(x);
    });
    out.exited.assign(exited.begin(), exited.end());
    return out;
}

}  // namespace stochsym::montecarlo
