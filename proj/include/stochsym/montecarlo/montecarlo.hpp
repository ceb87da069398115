#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "stochsym/sde/sde.hpp"

namespace stochsym::montecarlo {

/// Uniform grid of steps * 2^level intervals on [0, t_end].
struct PathGrid {
    double t_end = 1.0;
    int steps = 1;
    int level = 0;

    std::size_t intervals() const;
    double h() const;
    std::vector<double> times() const;
    PathGrid refined(int extra_levels) const;
};

/// Brownian paths on a grid. w[p][0] = 0; w[p] has intervals()+1 values.
struct WienerEnsemble {
    std::uint64_t seed = 0;
    int n_paths = 0;
    PathGrid grid;
    std::vector<std::vector<double>> w;

    std::vector<double> increments(int path) const;
};

/// Each path comes from its own counter-based stream keyed by
/// (seed, path). Level-0 values are scaled normals; every further level
/// inserts Brownian-bridge midpoints, so coarse values never change.
WienerEnsemble generate(std::uint64_t seed, int n_paths, const PathGrid& grid, int threads = 0);

/// Values of a path restricted to a coarser level of the same grid family.
std::vector<double> coarsen(const std::vector<double>& fine, int from_level, int to_level);

struct EmPaths {
    std::vector<std::vector<double>> x;  // truncated at the first x <= 0
    std::vector<bool> exited;
    int exit_count() const;
};

/// x_{n+1} = x_n + f(x_n, t_n) dt + S(t_n) x_n dw_n
EmPaths euler_maruyama(const sde::SdeProblem& problem, double x0, const WienerEnsemble& ensemble, int threads = 0);

struct StrongError {
    double mean_max_error = 0;  // mean over paths of max over grid
    double std_error = 0;
    int paths_used = 0;
    int paths_excluded = 0;  // exited in either input
};

/// Compares on the coarser of the two grids; the finer one must be a
/// dyadic refinement of it. Throws std::invalid_argument on a mismatch.
StrongError strong_error(const std::vector<std::vector<double>>& reference,
                         const std::vector<std::vector<double>>& approx);

struct ConvergenceTable {
    int n_paths = 0;
    std::vector<double> h;
    std::vector<double> errors;
    double order_estimate = 0;       // least-squares slope of log err against log h
    std::vector<double> pairwise;    // log2(err(h) / err(h/2))
};

double order_estimate(const std::vector<double>& h, const std::vector<double>& errors);
nlohmann::json to_json(const ConvergenceTable& t);

/// Number of worker threads to use when 0 is passed.
int default_threads();

}  // namespace stochsym::montecarlo
