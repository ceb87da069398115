#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "stochsym/sde/sde.hpp"

namespace stochsym::cli {

using expr::Bindings;
using expr::Expr;

struct SimulateBlock {
    double x0 = 1.0;
    double t_end = 1.0;
    int steps = 32;
    int n_paths = 200;
    std::uint64_t seed = 1;
    int refinement_levels = 3;  // EM levels 0..refinement_levels
    int reference_levels = 5;   // extra levels of the reference solution
    int csv_paths = 10;
};

/// Sections [problem] drift, noise_S; [params] name = value;
/// optional [simulate] and [tolerance] samples, tol, seed.
struct ProblemFile {
    std::string drift_text;
    std::string noise_text;
    Expr drift;
    Expr noise;
    Bindings params;
    std::optional<SimulateBlock> simulate;
    sde::VerifyOptions verify;
};

/// Throws ParseError for malformed files or expressions and
/// std::invalid_argument for missing keys or bad values.
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem_file(const std::string& path);

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<int> samples;
};

struct CommandResult {
    int exit_code = 0;
    nlohmann::json report;
};

CommandResult cmd_classify(const ProblemFile& pf, const Overrides& ov = {});
CommandResult cmd_verify(const ProblemFile& pf, const std::string& phi, double R, const Overrides& ov = {});
CommandResult cmd_integrate(const ProblemFile& pf, const std::string& out_dir, const Overrides& ov = {});
CommandResult cmd_simulate(const ProblemFile& pf, const std::string& out_dir, const Overrides& ov = {});

/// Sorted keys, floats at 17 significant digits, two-space indent.
std::string write_json(const nlohmann::json& j);

/// Entry point of the stochsym executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stochsym::cli
