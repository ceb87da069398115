#include <cmath>
#include <stdexcept>
#include <thread>

#include "stochsym/montecarlo/montecarlo.hpp"
#include "stochsym/montecarlo/parallel.hpp"
#include "stochsym/montecarlo/philox.hpp"

namespace stochsym::montecarlo {

std::size_t PathGrid::intervals() const { return static_cast<std::size_t>(steps) << level; }

double PathGrid::h() const { return t_end / static_cast<double>(intervals()); }

std::vector<double> PathGrid::times() const {
    std::size_t n = intervals();
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) t[i] = t_end * static_cast<double>(i) / static_cast<double>(n);
    return t;
}

PathGrid PathGrid::refined(int extra_levels) const {
    PathGrid g = *this;
    g.level += extra_levels;
    return g;
}

std::vector<double> WienerEnsemble::increments(int path) const {
    const auto& v = w.at(static_cast<std::size_t>(path));
    std::vector<double> d(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) d[i] = v[i + 1] - v[i];
    return d;
}

int default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(std::min(n, 16u));
}

WienerEnsemble generate(std::uint64_t seed, int n_paths, const PathGrid& grid, int threads) {
    if (n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
    if (grid.steps < 1 || grid.level < 0 || !(grid.t_end > 0)) throw std::invalid_argument("invalid path grid");
    WienerEnsemble e;
    e.seed = seed;
    e.n_paths = n_paths;
    e.grid = grid;
    e.w.resize(static_cast<std::size_t>(n_paths));
    double h0 = grid.t_end / grid.steps;
    parallel_for(static_cast<std::size_t>(n_paths), threads, [&](std::size_t p) {
        PathStream s(seed, p);
        std::vector<double> w(static_cast<std::size_t>(grid.steps) + 1, 0.0);
        double sd = std::sqrt(h0);
        for (int i = 0; i < grid.steps; ++i) w[i + 1] = w[i] + sd * s.normal(0, static_cast<std::uint32_t>(i));
        double parent = h0;
        for (int l = 1; l <= grid.level; ++l) {
            std::vector<double> next(2 * (w.size() - 1) + 1);
            double bridge_sd = 0.5 * std::sqrt(parent);
            for (std::size_t j = 0; j + 1 < w.size(); ++j) {
                next[2 * j] = w[j];
                next[2 * j + 1] = 0.5 * (w[j] + w[j + 1]) +
                                  bridge_sd * s.normal(static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(j));
            }
            next.back() = w.back();
            w = std::move(next);
            parent *= 0.5;
        }
        e.w[p] = std::move(w);
    });
    return e;
}

std::vector<double> coarsen(const std::vector<double>& fine, int from_level, int to_level) {
    if (to_level > from_level || to_level < 0) throw std::invalid_argument("can only coarsen to a lower level");
    std::size_t stride = std::size_t{1} << (from_level - to_level);
    if ((fine.size() - 1) % stride != 0) throw std::invalid_argument("path length does not match level");
    std::vector<double> out;
    for (std::size_t i = 0; i < fine.size(); i += stride) out.push_back(fine[i]);
    return out;
}

}  // namespace stochsym::montecarlo
