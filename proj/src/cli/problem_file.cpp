#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "stochsym/cli/cli.hpp"
#include "stochsym/errors.hpp"
#include "stochsym/expr/parser.hpp"
#include "stochsym/kozlov/kozlov.hpp"

namespace stochsym::cli {

namespace pt = boost::property_tree;

namespace {

double to_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used == 0 || used != text.size()) throw std::invalid_argument(key + ": not a number: '" + text + "'");
    return v;
}

long long to_int(const std::string& key, const std::string& text) {
    double v = to_real(key, text);
    if (v != std::floor(v)) throw std::invalid_argument(key + ": not an integer: '" + text + "'");
    return static_cast<long long>(v);
}

std::string require(const pt::ptree& tree, const std::string& path) {
    auto v = tree.get_optional<std::string>(path);
    if (!v) throw std::invalid_argument("missing required key " + path);
    return *v;
}

Expr parse_field(const std::string& key, const std::string& text) {
    try {
        return expr::parse(text);
    } catch (const ParseError& e) {
        throw ParseError(e.offset(), e.expected(), key + ": " + e.what());
    }
}

}  // namespace

ProblemFile parse_problem_text(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(0, {"key = value"}, std::string("problem file: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
        if (section != "problem" && section != "params" && section != "simulate" && section != "tolerance") {
            throw std::invalid_argument("unknown section [" + section + "]");
        }
        if (body.empty()) throw std::invalid_argument("key outside a section: " + section);
    }

    ProblemFile pf;
    pf.drift_text = require(tree, "problem.drift");
    pf.noise_text = require(tree, "problem.noise_S");
    pf.drift = parse_field("problem.drift", pf.drift_text);
    pf.noise = parse_field("problem.noise_S", pf.noise_text);

    if (auto params = tree.get_child_optional("params")) {
        for (const auto& [name, v] : *params) {
            if (name == kozlov::kY || name == "x" || name == "t" || name == "w") {
                throw std::invalid_argument("reserved parameter name: " + name);
            }
            pf.params[name] = to_real("params." + name, v.data());
        }
    }
    for (const auto& name : expr::parameters(pf.drift))
        if (!pf.params.count(name)) throw UnboundParameter(name);
    for (const auto& name : expr::parameters(pf.noise))
        if (!pf.params.count(name)) throw UnboundParameter(name);

    if (auto sim = tree.get_child_optional("simulate")) {
        SimulateBlock s;
        for (const auto& [key, v] : *sim) {
            const std::string k = "simulate." + key;
            if (key == "x0") s.x0 = to_real(k, v.data());
            else if (key == "t_end") s.t_end = to_real(k, v.data());
            else if (key == "steps") s.steps = static_cast<int>(to_int(k, v.data()));
            else if (key == "n_paths") s.n_paths = static_cast<int>(to_int(k, v.data()));
            else if (key == "seed") s.seed = static_cast<std::uint64_t>(to_int(k, v.data()));
            else if (key == "refinement_levels") s.refinement_levels = static_cast<int>(to_int(k, v.data()));
            else if (key == "reference_levels") s.reference_levels = static_cast<int>(to_int(k, v.data()));
            else if (key == "csv_paths") s.csv_paths = static_cast<int>(to_int(k, v.data()));
            else throw std::invalid_argument("unknown key " + k);
        }
        if (!(s.x0 > 0)) throw std::invalid_argument("simulate.x0 must be positive");
        if (!(s.t_end > 0)) throw std::invalid_argument("simulate.t_end must be positive");
        if (s.steps < 1 || s.n_paths < 1) throw std::invalid_argument("simulate.steps and n_paths must be >= 1");
        if (s.refinement_levels < 0 || s.refinement_levels > 12) {
            throw std::invalid_argument("simulate.refinement_levels must be in [0, 12]");
        }
        if (s.reference_levels < 0 || s.reference_levels > 8) {
            throw std::invalid_argument("simulate.reference_levels must be in [0, 8]");
        }
        if (s.csv_paths < 0) throw std::invalid_argument("simulate.csv_paths must be >= 0");
        pf.simulate = s;
    }
    if (auto tol = tree.get_child_optional("tolerance")) {
        for (const auto& [key, v] : *tol) {
            const std::string k = "tolerance." + key;
            if (key == "samples") pf.verify.samples = static_cast<int>(to_int(k, v.data()));
            else if (key == "tol") pf.verify.tol = to_real(k, v.data());
            else if (key == "seed") pf.verify.seed = static_cast<std::uint64_t>(to_int(k, v.data()));
            else throw std::invalid_argument("unknown key " + k);
        }
    }

    // S must not vanish identically on [0, t_end]
    double t_end = pf.simulate ? pf.simulate->t_end : 2.0;
    expr::CompiledExpr<double> S(expr::simplify(pf.noise), pf.params);
    bool all_zero = true;
    for (int i = 0; i <= 40 && all_zero; ++i) {
        try {
            if (S(1.0, t_end * i / 40.0, 0.0) != 0.0) all_zero = false;
        } catch (const DomainError&) {
            all_zero = false;
        }
    }
    if (all_zero) throw std::invalid_argument("noise_S vanishes identically on [0, t_end]");
    return pf;
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

}  // namespace stochsym::cli
