#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "stochsym/classifier/classifier.hpp"
#include "stochsym/cli/cli.hpp"
#include "stochsym/errors.hpp"
#include "stochsym/expr/parser.hpp"
#include "stochsym/kozlov/kozlov.hpp"
#include "stochsym/montecarlo/montecarlo.hpp"
#include "stochsym/montecarlo/parallel.hpp"

namespace stochsym::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNone = 2;
constexpr int kExitDomain = 3;

sde::VerifyOptions verify_options(const ProblemFile& pf, const Overrides& ov) {
    sde::VerifyOptions v = pf.verify;
    if (ov.seed) v.seed = *ov.seed;
    if (ov.tol) v.tol = *ov.tol;
    if (ov.samples) v.samples = *ov.samples;
    return v;
}

json problem_json(const ProblemFile& pf) {
    json params = json::object();
    for (const auto& [k, v] : pf.params) params[k] = v;
    return {{"drift", pf.drift_text}, {"noise_S", pf.noise_text}, {"params", params}};
}

json error_json(const std::string& type, const std::string& message) {
    return {{"error", {{"type", type}, {"message", message}}}};
}

sde::SdeProblem make_problem(const ProblemFile& pf) { return sde::SdeProblem::make(pf.drift, pf.noise, pf.params); }

struct ClassifyOutcome {
    std::vector<classifier::Classification> found;
    std::string reason;
    std::string message;
};

ClassifyOutcome run_classify(const sde::SdeProblem& problem, const sde::VerifyOptions& vopts) {
    ClassifyOutcome out;
    try {
        auto d = classifier::decompose(problem.f(), problem.S(), problem.bindings());
        if (classifier::match_rows(problem, d).empty()) {
            out.reason = "NoMatchingCase";
            out.message = "drift decomposes but matches no case of the classification table";
            return out;
        }
        classifier::ClassifyOptions copts;
        copts.verify = vopts;
        out.found = classifier::classify(problem, copts);
        if (out.found.empty()) {
            out.reason = "VerificationFailed";
            out.message = "no candidate form of phi satisfies the determining equations";
        }
    } catch (const UnclassifiableDrift& e) {
        out.reason = "UnclassifiableDrift";
        out.message = e.what();
    }
    return out;
}

int shape_rank(kozlov::Shape s) {
    switch (s) {
        case kozlov::Shape::Linear: return 0;
        case kozlov::Shape::Power: return 1;
        case kozlov::Shape::XFree: return 2;
        case kozlov::Shape::LinearPlusXFree: return 3;
        case kozlov::Shape::Mixed: return 4;
        case kozlov::Shape::LogLinear: return 5;
    }
    return 6;
}

struct Reduction {
    const classifier::Classification* cls = nullptr;
    sde::SymmetryCandidate cand{0.0, expr::x()};
    kozlov::Transform tr;
    kozlov::ReducedEquation red;
};

// phi = c x with c constant and R = 0 is replaced by x
sde::SymmetryCandidate normalized(const sde::SymmetryCandidate& c, kozlov::Shape shape) {
    if (shape != kozlov::Shape::Linear || c.R() != 0) return c;
    Expr ratio = expr::simplify(c.phi() / expr::x());
    if (expr::depends_on(ratio, expr::Var::X) || expr::depends_on(ratio, expr::Var::T) ||
        expr::depends_on(ratio, expr::Var::W)) {
        return c;
    }
    return sde::SymmetryCandidate(0.0, expr::x());
}

// Tries verified classifications in order of preference: R = 0 first,
// then by shape. Records every attempt.
std::optional<Reduction> choose_reduction(const sde::SdeProblem& problem,
                                          const std::vector<classifier::Classification>& found, json& log) {
    log = {{"transforms", json::array()}, {"reductions", json::array()}};
    struct Option {
        const classifier::Classification* cls;
        kozlov::Transform tr;
    };
    std::vector<Option> options;
    for (const auto& c : found) {
        json a = {{"case", std::string(1, c.row)}, {"phi", expr::print(c.candidate->phi())}, {"R", c.R}};
        try {
            options.push_back({&c, kozlov::integrate_inverse_phi(*c.candidate)});
            a["shape"] = kozlov::to_string(options.back().tr.shape);
        } catch (const UnsupportedPhiShape& e) {
            a["status"] = "UnsupportedPhiShape";
            a["message"] = e.what();
        }
        log["transforms"].push_back(a);
    }
    std::stable_sort(options.begin(), options.end(), [](const Option& l, const Option& r) {
        bool lw = l.cls->R != 0, rw = r.cls->R != 0;
        if (lw != rw) return !lw;
        return shape_rank(l.tr.shape) < shape_rank(r.tr.shape);
    });
    for (auto& o : options) {
        auto cand = normalized(*o.cls->candidate, o.tr.shape);
        json a = {{"case", std::string(1, o.cls->row)}, {"phi", expr::print(cand.phi())}, {"R", cand.R()}};
        try {
            kozlov::Transform tr = expr::print(cand.phi()) == expr::print(o.cls->candidate->phi())
                                       ? o.tr
                                       : kozlov::integrate_inverse_phi(cand);
            auto red = kozlov::reduce(problem, cand, tr);
            a["status"] = "reduced";
            log["reductions"].push_back(a);
            return Reduction{o.cls, cand, tr, red};
        } catch (const ReductionFailed& e) {
            a["status"] = "ReductionFailed";
            a["message"] = e.what();
            log["reductions"].push_back(a);
        }
    }
    return std::nullopt;
}

json transform_json(const kozlov::Transform& tr) {
    json branches = json::array();
    for (const auto& b : tr.x_of) branches.push_back(expr::print(b));
    return {{"shape", kozlov::to_string(tr.shape)},
            {"y_of", expr::print(tr.y_of)},
            {"x_of", branches},
            {"valid_domain", tr.valid_domain}};
}

json reduced_json(const kozlov::ReducedEquation& r) {
    return {{"a", expr::print(r.a)},
            {"b", expr::print(r.b)},
            {"y_dependent", r.y_dependent},
            {"symbolic", r.symbolic},
            {"diagnostics", r.diagnostics}};
}

void write_file(const std::string& out_dir, const std::string& name, const std::string& content, json& written) {
    fs::create_directories(out_dir);
    fs::path p = fs::path(out_dir) / name;
    std::ofstream f(p);
    if (!f) throw std::invalid_argument("cannot write " + p.string());
    f << content;
    written.push_back(p.string());
}

std::vector<kozlov::PathSolution> kozlov_paths(const Reduction& r, double x0, const montecarlo::WienerEnsemble& ens,
                                               int n, const Bindings& bindings) {
    auto times = ens.grid.times();
    std::vector<kozlov::PathSolution> out(static_cast<std::size_t>(n));
    montecarlo::parallel_for(out.size(), 0, [&](std::size_t p) {
        out[p] = kozlov::solve_pathwise(r.red, r.tr, x0, times, ens.w[p], bindings);
    });
    return out;
}

std::string paths_csv(const std::vector<kozlov::PathSolution>& paths, std::size_t n) {
    std::string s;
    for (std::size_t p = 0; p < std::min(n, paths.size()); ++p) s += kozlov::to_csv(paths[p], static_cast<int>(p), p == 0);
    return s;
}

std::string em_csv(const montecarlo::EmPaths& em, const montecarlo::WienerEnsemble& ens, std::size_t n) {
    std::string s = "path,t,w,x\n";
    auto times = ens.grid.times();
    char buf[96];
    for (std::size_t p = 0; p < std::min(n, em.x.size()); ++p) {
        for (std::size_t i = 0; i < em.x[p].size(); ++i) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", p, times[i], ens.w[p][i], em.x[p][i]);
            s += buf;
        }
    }
    return s;
}

// constant-coefficient GBM: f = a x with a and S free of t
std::optional<std::pair<double, double>> gbm_coefficients(const sde::SdeProblem& problem) {
    Expr ratio = expr::simplify(problem.f() / expr::x());
    for (auto v : {expr::Var::X, expr::Var::T, expr::Var::W})
        if (expr::depends_on(ratio, v) || expr::depends_on(problem.S(), v)) return std::nullopt;
    return std::make_pair(expr::evaluate(ratio, 1, 0, 0, problem.bindings()),
                          expr::evaluate(problem.S(), 1, 0, 0, problem.bindings()));
}

}  // namespace

CommandResult cmd_classify(const ProblemFile& pf, const Overrides& ov) {
    auto problem = make_problem(pf);
    auto outcome = run_classify(problem, verify_options(pf, ov));
    json list = json::array();
    for (const auto& c : outcome.found) list.push_back(classifier::to_json(c));
    json report = {{"command", "classify"}, {"problem", problem_json(pf)}, {"classifications", list}};
    if (!outcome.reason.empty()) {
        report["reason"] = outcome.reason;
        report["message"] = outcome.message;
    }
    return {outcome.found.empty() ? kExitNone : kExitOk, report};
}

CommandResult cmd_verify(const ProblemFile& pf, const std::string& phi, double R, const Overrides& ov) {
    auto problem = make_problem(pf);
    Expr e = expr::parse(phi);
    for (const auto& name : expr::parameters(e))
        if (!pf.params.count(name)) throw UnboundParameter(name);
    sde::SymmetryCandidate cand(R, e);
    auto rep = sde::verify(problem, cand, verify_options(pf, ov));
    json report = {{"command", "verify"},
                   {"problem", problem_json(pf)},
                   {"phi", expr::print(cand.phi())},
                   {"R", R},
                   {"residual_report", sde::to_json(rep)}};
    return {rep.pass ? kExitOk : kExitNone, report};
}

CommandResult cmd_integrate(const ProblemFile& pf, const std::string& out_dir, const Overrides& ov) {
    auto problem = make_problem(pf);
    auto outcome = run_classify(problem, verify_options(pf, ov));
    json report = {{"command", "integrate"}, {"problem", problem_json(pf)}};
    if (outcome.found.empty()) {
        report["reason"] = outcome.reason;
        report["message"] = outcome.message;
        return {kExitNone, report};
    }
    json attempts;
    auto r = choose_reduction(problem, outcome.found, attempts);
    report["attempts"] = attempts;
    if (!r) {
        report["reason"] = "ReductionFailed";
        report["message"] = "no verified symmetry gives a y-independent reduced equation";
        return {kExitNone, report};
    }
    report["case"] = std::string(1, r->cls->row);
    report["phi"] = expr::print(r->cand.phi());
    report["R"] = r->cand.R();
    report["transform"] = transform_json(r->tr);
    report["reduced"] = reduced_json(r->red);

    if (pf.simulate) {
        const auto& s = *pf.simulate;
        int n = std::min(s.n_paths, s.csv_paths);
        montecarlo::PathGrid grid{s.t_end, s.steps, s.refinement_levels};
        auto ens = montecarlo::generate(ov.seed.value_or(s.seed), n, grid);
        auto paths = kozlov_paths(*r, s.x0, ens, n, pf.params);
        int exits = 0;
        for (const auto& p : paths) exits += p.exited;
        report["paths"] = {{"n_paths", n}, {"exited", exits}, {"h", grid.h()}};
        json written = json::array();
        if (!out_dir.empty()) write_file(out_dir, "kozlov_paths.csv", paths_csv(paths, paths.size()), written);
        report["files"] = written;
    }
    return {kExitOk, report};
}

CommandResult cmd_simulate(const ProblemFile& pf, const std::string& out_dir, const Overrides& ov) {
    if (!pf.simulate) throw std::invalid_argument("simulate requires a [simulate] section");
    const auto& s = *pf.simulate;
    auto problem = make_problem(pf);
    std::uint64_t seed = ov.seed.value_or(s.seed);
    int top = s.refinement_levels;
    int ref_level = top + s.reference_levels;

    json report = {{"command", "simulate"},
                   {"problem", problem_json(pf)},
                   {"settings",
                    {{"x0", s.x0},
                     {"t_end", s.t_end},
                     {"steps", s.steps},
                     {"n_paths", s.n_paths},
                     {"seed", seed},
                     {"refinement_levels", s.refinement_levels},
                     {"reference_level", ref_level}}}};

    montecarlo::PathGrid fine{s.t_end, s.steps, ref_level};
    auto ens = montecarlo::generate(seed, s.n_paths, fine);

    std::optional<Reduction> r;
    auto outcome = run_classify(problem, verify_options(pf, ov));
    json attempts;
    if (!outcome.found.empty()) r = choose_reduction(problem, outcome.found, attempts);

    std::vector<std::vector<double>> reference(static_cast<std::size_t>(s.n_paths));
    std::vector<kozlov::PathSolution> kpaths;
    json ref = json::object();
    if (r) {
        kpaths = kozlov_paths(*r, s.x0, ens, s.n_paths, pf.params);
        int exits = 0;
        for (std::size_t p = 0; p < kpaths.size(); ++p) {
            reference[p] = kpaths[p].x;
            exits += kpaths[p].exited;
        }
        ref = {{"kind", "kozlov"},
               {"case", std::string(1, r->cls->row)},
               {"phi", expr::print(r->cand.phi())},
               {"reduced", reduced_json(r->red)},
               {"exited", exits}};
    } else {
        auto em = montecarlo::euler_maruyama(problem, s.x0, ens);
        reference = em.x;
        ref = {{"kind", "euler_maruyama"},
               {"reason", outcome.found.empty() ? outcome.reason : "ReductionFailed"},
               {"exited", em.exit_count()}};
    }
    ref["level"] = ref_level;
    ref["h"] = fine.h();
    report["reference"] = ref;

    montecarlo::ConvergenceTable table;
    table.n_paths = s.n_paths;
    json em_levels = json::array();
    int worst_exits = 0;
    montecarlo::EmPaths top_em;
    montecarlo::WienerEnsemble top_ens;
    for (int level = 0; level <= top; ++level) {
        montecarlo::WienerEnsemble e = ens;
        e.grid.level = level;
        for (auto& w : e.w) w = montecarlo::coarsen(w, ref_level, level);
        auto em = montecarlo::euler_maruyama(problem, s.x0, e);
        auto se = montecarlo::strong_error(reference, em.x);
        table.h.push_back(e.grid.h());
        table.errors.push_back(se.mean_max_error);
        worst_exits = std::max(worst_exits, em.exit_count());
        em_levels.push_back({{"level", level},
                             {"h", e.grid.h()},
                             {"strong_error", se.mean_max_error},
                             {"std_error", se.std_error},
                             {"paths_used", se.paths_used},
                             {"paths_excluded", se.paths_excluded},
                             {"exited", em.exit_count()}});
        if (level == top) {
            top_em = std::move(em);
            top_ens = std::move(e);
        }
    }
    bool usable = table.h.size() >= 2 && std::all_of(table.errors.begin(), table.errors.end(), [](double v) {
                      return v > 0 && std::isfinite(v);
                  });
    table.order_estimate = usable ? montecarlo::order_estimate(table.h, table.errors) : std::nan("");
    for (std::size_t i = 0; i + 1 < table.errors.size(); ++i)
        table.pairwise.push_back(std::log2(table.errors[i] / table.errors[i + 1]));
    json conv = montecarlo::to_json(table);
    conv["pairwise_orders"] = table.pairwise;
    conv["em_levels"] = em_levels;
    report["convergence"] = conv;

    if (auto gbm = gbm_coefficients(problem); gbm && r) {
        auto [a, sig] = *gbm;
        auto times = fine.times();
        double max_abs = 0, max_rel = 0;
        for (std::size_t p = 0; p < kpaths.size(); ++p) {
            for (std::size_t i = 0; i < kpaths[p].x.size(); ++i) {
                double exact = s.x0 * std::exp((a - 0.5 * sig * sig) * times[i] + sig * ens.w[p][i]);
                double d = std::fabs(kpaths[p].x[i] - exact);
                max_abs = std::max(max_abs, d);
                max_rel = std::max(max_rel, d / std::fabs(exact));
            }
        }
        report["exact_gbm"] = {{"max_abs_error", max_abs}, {"max_rel_error", max_rel}};
    }

    json written = json::array();
    if (!out_dir.empty()) {
        auto n = static_cast<std::size_t>(s.csv_paths);
        write_file(out_dir, "em_paths.csv", em_csv(top_em, top_ens, n), written);
        if (r) write_file(out_dir, "kozlov_paths.csv", paths_csv(kpaths, n), written);
    }
    report["files"] = written;

    if (2 * worst_exits > s.n_paths) {
        report["warning"] = "more than half of the paths left the domain x > 0";
        return {kExitDomain, report};
    }
    return {kExitOk, report};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetry classification and reduction of scalar Ito SDEs", "stochsym"};
    app.require_subcommand(1);
    Overrides ov;
    std::uint64_t seed = 0;
    double tol = 0;
    int samples = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Seed for sampling and simulation");
    auto* tol_opt = app.add_option("--tol", tol, "Residual tolerance");
    auto* samples_opt = app.add_option("--samples", samples, "Number of residual sample points");

    std::string file, phi, out_dir;
    double R = 0;
    auto* classify = app.add_subcommand("classify", "Classify the drift and list verified symmetries");
    classify->add_option("file", file, "Problem file")->required();
    auto* verify = app.add_subcommand("verify", "Check a candidate symmetry against the determining equations");
    verify->add_option("file", file, "Problem file")->required();
    verify->add_option("--phi", phi, "phi(x, t, w)")->required();
    verify->add_option("--R", R, "Coefficient of w d/dw")->required();
    auto* integrate = app.add_subcommand("integrate", "Reduce the equation and solve it pathwise");
    integrate->add_option("file", file, "Problem file")->required();
    integrate->add_option("--out-dir", out_dir, "Directory for CSV output");
    auto* simulate = app.add_subcommand("simulate", "Euler-Maruyama convergence against the reduced solution");
    simulate->add_option("file", file, "Problem file")->required();
    simulate->add_option("--out-dir", out_dir, "Directory for CSV output");
    for (auto* sub : {classify, verify, integrate, simulate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "stochsym: " << e.what() << "\n";
        return kExitInput;
    }
    if (*seed_opt) ov.seed = seed;
    if (*tol_opt) ov.tol = tol;
    if (*samples_opt) ov.samples = samples;

    try {
        ProblemFile pf = load_problem_file(file);
        CommandResult res;
        if (*classify) res = cmd_classify(pf, ov);
        else if (*verify) res = cmd_verify(pf, phi, R, ov);
        else if (*integrate) res = cmd_integrate(pf, out_dir, ov);
        else res = cmd_simulate(pf, out_dir, ov);
        out << write_json(res.report);
        return res.exit_code;
    } catch (const ParseError& e) {
        json j = error_json("ParseError", e.what());
        j["error"]["offset"] = e.offset();
        j["error"]["expected"] = e.expected();
        out << write_json(j);
        err << "stochsym: " << e.what() << "\n";
    } catch (const UnboundParameter& e) {
        out << write_json(error_json("UnboundParameter", e.what()));
        err << "stochsym: " << e.what() << "\n";
    } catch (const DomainError& e) {
        out << write_json(error_json("DomainError", e.what()));
        err << "stochsym: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        out << write_json(error_json("InputError", e.what()));
        err << "stochsym: " << e.what() << "\n";
    }
    return kExitInput;
}

}  // namespace stochsym::cli
