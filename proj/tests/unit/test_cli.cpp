#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "stochsym/cli/cli.hpp"
#include "stochsym/errors.hpp"

using namespace stochsym;
using namespace stochsym::cli;

namespace {

const std::string kData = STOCHSYM_DATA_DIR;

struct Run {
    int status;
    std::string out;
};

Run run_cli(const std::string& args) {
    std::string cmd = std::string(STOCHSYM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

const char* kLogistic = R"([problem]
drift = A*x - B*x^2
noise_S = mu
[params]
A = 1
B = 0.5
mu = 0.3
)";

}  // namespace

TEST_CASE("problem file parsing") {
    auto pf = parse_problem_text(std::string(kLogistic) + "[simulate]\nx0 = 0.5\nn_paths = 12\n[tolerance]\nsamples = 20\n");
    CHECK(pf.params.at("B") == 0.5);
    REQUIRE(pf.simulate);
    CHECK(pf.simulate->x0 == 0.5);
    CHECK(pf.simulate->n_paths == 12);
    CHECK(pf.simulate->steps == 32);
    CHECK(pf.verify.samples == 20);
}

TEST_CASE("problem file errors") {
    CHECK_THROWS_AS(parse_problem_text("[problem]\ndrift = x\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_problem_text("[problem]\ndrift = x +\nnoise_S = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_problem_text("[problem]\ndrift = a*x\nnoise_S = 1\n"), UnboundParameter);
    CHECK_THROWS_AS(parse_problem_text("[problem]\ndrift = x\nnoise_S = t - t\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_problem_text("[problem]\ndrift = x\nnoise_S = 1\n[params]\ny = 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_problem_text("[problem]\ndrift = x\nnoise_S = 1\n[simulate]\nsteps = 2.5\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_problem_text("[problem]\ndrift = x\nnoise_S = 1\n[other]\nk = 1\n"), std::invalid_argument);
}

TEST_CASE("noise vanishing only on part of the horizon is accepted") {
    CHECK_NOTHROW(parse_problem_text("[problem]\ndrift = x\nnoise_S = t - 1\n"));
}

TEST_CASE("JSON writer sorts keys and prints 17 digits") {
    nlohmann::json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", "s"}, {"d", nlohmann::json::object()}};
    CHECK(write_json(j) == "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 0.10000000000000001,\n  \"c\": \"s\",\n  \"d\": {}\n}\n");
}

TEST_CASE("classify command") {
    auto r = cmd_classify(parse_problem_text(kLogistic));
    CHECK(r.exit_code == 0);
    REQUIRE(r.report["classifications"].size() == 1);
    CHECK(r.report["classifications"][0]["case"] == "f");
    auto none = cmd_classify(parse_problem_text("[problem]\ndrift = x + exp(x)\nnoise_S = 1\n"));
    CHECK(none.exit_code == 2);
    CHECK(none.report["reason"] == "UnclassifiableDrift");
}

TEST_CASE("verify command") {
    auto pf = parse_problem_text(kLogistic);
    CHECK(cmd_verify(pf, "exp((mu^2/2 - A)*t - mu*w)*x^2", 0).exit_code == 0);
    auto fail = cmd_verify(pf, "x", 0);
    CHECK(fail.exit_code == 2);
    CHECK(fail.report["residual_report"]["res1"] == "B*x^2");
    CHECK_THROWS_AS(cmd_verify(pf, "0", 0), std::invalid_argument);
    CHECK_THROWS_AS(cmd_verify(pf, "x*q", 0), UnboundParameter);
}

TEST_CASE("integrate command on GBM") {
    auto r = cmd_integrate(parse_problem_text("[problem]\ndrift = a*x\nnoise_S = s0\n[params]\na = 0.05\ns0 = 0.2\n"), "");
    CHECK(r.exit_code == 0);
    CHECK(r.report["reduced"]["a"] == "a - s0^2/2");
    CHECK(r.report["reduced"]["b"] == "s0");
    CHECK(r.report["transform"]["y_of"] == "log(x)");
}

TEST_CASE("simulate command") {
    auto pf = parse_problem_text(std::string(kLogistic) +
                                 "[simulate]\nx0 = 0.2\nsteps = 8\nn_paths = 40\nrefinement_levels = 2\n"
                                 "reference_levels = 3\nseed = 3\n");
    auto r = cmd_simulate(pf, "");
    CHECK(r.exit_code == 0);
    CHECK(r.report["reference"]["kind"] == "kozlov");
    CHECK(r.report["convergence"]["levels"].size() == 3);
    auto again = cmd_simulate(pf, "");
    CHECK(write_json(r.report) == write_json(again.report));
    Overrides ov;
    ov.seed = 4;
    CHECK(write_json(cmd_simulate(pf, "", ov).report) != write_json(r.report));
    CHECK_THROWS_AS(cmd_simulate(parse_problem_text(kLogistic), ""), std::invalid_argument);
}

TEST_CASE("domain exits above half of the paths give exit code 3") {
    auto pf = parse_problem_text("[problem]\ndrift = -5*x^2\nnoise_S = 3\n[simulate]\nsteps = 2\nn_paths = 30\n"
                                 "refinement_levels = 1\nreference_levels = 1\nt_end = 2\n");
    auto r = cmd_simulate(pf, "");
    CHECK(r.exit_code == 3);
    CHECK(r.report.contains("warning"));
}

TEST_CASE("executable exit codes") {
    CHECK(run_cli("classify " + kData + "/logistic.ini").status == 0);
    CHECK(run_cli("classify " + kData + "/unclassifiable.ini").status == 2);
    CHECK(run_cli("classify " + kData + "/bad_syntax.ini").status == 1);
    CHECK(run_cli("classify " + kData + "/missing.ini").status == 1);
    CHECK(run_cli("verify " + kData + "/logistic.ini --phi x --R 0").status == 2);
    CHECK(run_cli("verify " + kData + "/logistic.ini --phi 0 --R 0").status == 1);
    CHECK(run_cli("verify " + kData + "/logistic.ini --phi 'exp((mu^2/2 - A)*t - mu*w)*x^2' --R 0").status == 0);
    CHECK(run_cli("integrate " + kData + "/unclassifiable.ini").status == 2);
    CHECK(run_cli("simulate " + kData + "/no_simulate.ini").status == 1);
    CHECK(run_cli("frobnicate").status == 1);
}

TEST_CASE("reports are byte-identical across runs") {
    auto a = run_cli("classify " + kData + "/logistic.ini --seed 5 --samples 30");
    auto b = run_cli("--seed 5 --samples 30 classify " + kData + "/logistic.ini");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"samples\": 30") != std::string::npos);
}

TEST_CASE("integrate writes ten paths") {
    auto dir = std::filesystem::temp_directory_path() / "stochsym_test_integrate";
    std::filesystem::remove_all(dir);
    auto r = run_cli("integrate " + kData + "/logistic.ini --out-dir " + dir.string());
    CHECK(r.status == 0);
    std::ifstream f(dir / "kozlov_paths.csv");
    REQUIRE(f.good());
    std::string line, last;
    std::getline(f, line);
    CHECK(line == "path,t,w,y,x");
    while (std::getline(f, line)) last = line;
    CHECK(last.rfind("9,1,", 0) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("GBM simulate reproduces the closed form") {
    auto r = run_cli("simulate " + kData + "/gbm.ini");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["exact_gbm"]["max_abs_error"].get<double>() <= 1e-12);
}
