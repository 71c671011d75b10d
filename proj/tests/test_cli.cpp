#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "cli.hpp"

using nnm::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& contents) {
    const std::string path = (std::filesystem::temp_directory_path() / ("nnm_test_" + name)).string();
    std::ofstream(path) << contents;
    return path;
}

std::string human_number(double v) { return fmt::format("{:.12g}", v); }

/// Every number in a structured document, rendered as the human mode renders them.
void collect_numbers(const nlohmann::json& j, std::set<std::string>& out) {
    if (j.is_number()) {
        out.insert(human_number(j.get<double>()));
    } else if (j.is_structured()) {
        for (const auto& item : j)
            collect_numbers(item, out);
    }
}

/// Standalone numeric tokens of human output.
std::vector<std::string> human_numbers(const std::string& text) {
    static const std::regex token(R"((^|[\s(=,])(-?[0-9]+(\.[0-9]+)?(e[-+]?[0-9]+)?)(?=[\s,)]|$))");
    std::vector<std::string> out;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), token); it != std::sregex_iterator(); ++it)
        out.push_back(human_number(std::stod((*it)[2].str())));
    return out;
}

} // namespace

TEST_CASE("arith examples") {
    CHECK(invoke({"arith", "--gen", "exp", "add", "2", "3"}).out == "6\n");
    CHECK(invoke({"arith", "--gen", "identity", "mul", "2", "3"}).out == "6\n");
    CHECK(invoke({"arith", "--gen", "cube", "cmp", "-8", "27"}).out == "less\n");
    const auto div = invoke({"arith", "--gen", "exp", "div", "5", "1"});
    CHECK(div.code == nnm::cli::kDivisionByAlphaZero);
    CHECK(div.err.find("alpha-zero") != std::string::npos);
    CHECK(invoke({"arith", "--gen", "exp", "add", "-2", "3"}).code == nnm::cli::kRange);
    CHECK(invoke({"arith", "--gen", "exp", "pow", "2", "3"}).code == nnm::cli::kUsage);
    CHECK(invoke({"arith", "--gen", "log", "add", "2", "3"}).code == nnm::cli::kUsage);
    const auto verbose = invoke({"arith", "--gen", "cube", "-v", "add", "8", "27"});
    CHECK(verbose.out.find("cube^-1(8) = 2") != std::string::npos);
}

TEST_CASE("verify examples") {
    CHECK(invoke({"verify", "--space", "mult-absdiff", "--points", "0,1,2"}).code == nnm::cli::kOk);
    const auto broken = invoke({"verify", "--space", "broken-asym", "--points", "0,1"});
    CHECK(broken.code == nnm::cli::kCheckFailed);
    CHECK(broken.out.find("αm2  FAIL") != std::string::npos);
    const auto empty = write_temp("empty.txt", "\n\n");
    CHECK(invoke({"verify", "--space", "mult-absdiff", "--sample", empty}).code == nnm::cli::kUsage);
    CHECK(invoke({"verify", "--space", "mult-absdiff", "--points", "0,x"}).code == nnm::cli::kUsage);
    const auto file = write_temp("pts.txt", "1\n2\n4\n");
    CHECK(invoke({"verify", "--space", "max-ratio", "--checker", "mult", "--sample", file}).code == nnm::cli::kOk);
    CHECK(invoke({"verify", "--space", "euclidean", "--gen", "cube", "--points", "0,1,5"}).code == nnm::cli::kOk);
    CHECK(invoke({"verify", "--space", "euclidean", "--checker", "classical", "--points", "0,1,5"}).code ==
          nnm::cli::kOk);
    CHECK(invoke({"verify", "--space", "max-ratio", "--gen", "cube", "--points", "1,2"}).code == nnm::cli::kDomain);
    CHECK(invoke({"verify", "--space", "max-ratio", "--points", "-1,2"}).code == nnm::cli::kRange);
}

TEST_CASE("convert, ball and seq subcommands") {
    const auto radius = invoke({"convert", "--gen", "exp", "radius", "2", "--format", "json"});
    CHECK(radius.code == 0);
    CHECK(nlohmann::json::parse(radius.out)["epsilon"].get<double>() == doctest::Approx(std::exp(2.0)));
    CHECK(invoke({"convert", "--gen", "exp", "alpha-radius", "1"}).code == nnm::cli::kDomain);
    CHECK(invoke({"convert", "--gen", "exp", "constant", "1.6487212707001282"}).out.find("lambda = 0.5") !=
          std::string::npos);
    CHECK(invoke({"convert", "--gen", "exp", "constant", "3"}).code == nnm::cli::kCheckFailed);
    CHECK(invoke({"convert", "--gen", "cube", "pull", "8"}).out == "distance = 2\n");

    const auto ball = invoke({"ball", "--space", "mult-absdiff", "--center", "0", "--radius", "2",
                              "--points=-3,-1,0,1,3", "--format", "json"});
    CHECK(ball.code == 0);
    const auto doc = nlohmann::json::parse(ball.out);
    std::vector<bool> inside;
    for (const auto& e : doc["entries"])
        inside.push_back(e["in_alpha_ball"].get<bool>());
    CHECK(inside == std::vector<bool>{false, true, true, true, false});

    std::string prefix;
    for (int n = 1; n <= 200; ++n)
        prefix += fmt::format("{}\n", 1.0 / n);
    const auto harmonic = write_temp("harmonic.txt", prefix);
    const auto seq = invoke({"seq", "--gen", "exp", "--sample", harmonic, "--limit", "0", "--schedule",
                             "0.5,0.1,0.01", "--cauchy-tol", "0.02", "--window", "50", "--format", "json"});
    CHECK(seq.code == 0);
    const auto seq_doc = nlohmann::json::parse(seq.out);
    CHECK(seq_doc["cauchy"]["classical"].get<bool>());
    CHECK(seq_doc["cauchy"]["alpha"].get<bool>());
    std::vector<int> n0;
    for (const auto& s : seq_doc["convergence"])
        n0.push_back(s["alpha_n0"].get<int>());
    CHECK(n0 == std::vector<int>{3, 11, 101});
    CHECK(invoke({"seq", "--sample", harmonic, "--cauchy-tol", "0.02", "--window", "500"}).code == nnm::cli::kDomain);
    CHECK(invoke({"seq", "--sample", harmonic}).code == nnm::cli::kUsage);
    const auto human = invoke({"seq", "--sample", harmonic, "--cauchy-tol", "0.02"});
    CHECK(human.out.find("finite-prefix heuristic") != std::string::npos);
}

TEST_CASE("fixpoint examples and exit codes") {
    const auto sqrt_run = invoke({"fixpoint", "--gen", "exp", "--map", "sqrt", "--x0", "16", "--tol", "1e-8",
                                  "--format", "json"});
    CHECK(sqrt_run.code == nnm::cli::kOk);
    const auto doc = nlohmann::json::parse(sqrt_run.out);
    CHECK(doc["status"] == "converged");
    CHECK(std::abs(doc["final"].get<double>() - 1.0) < 1e-7);

    const auto affine = invoke({"fixpoint", "--gen", "identity", "--map", "affine:0.5,1", "--x0", "0", "--tol", "1e-8"});
    CHECK(affine.code == nnm::cli::kOk);
    CHECK(affine.out.find("status: converged") != std::string::npos);
    CHECK(affine.out.find("final iterate 1.99999999255") != std::string::npos);

    const auto diverged = invoke({"fixpoint", "--map", "double", "--x0", "1"});
    CHECK(diverged.code == nnm::cli::kDiverged);
    CHECK(invoke({"fixpoint", "--map", "double", "--x0", "1", "--max-iters", "3"}).code == nnm::cli::kMaxIters);
    CHECK(invoke({"fixpoint", "--map", "triple", "--x0", "1"}).code == nnm::cli::kUsage);
    CHECK(invoke({"fixpoint", "--gen", "exp", "--map", "sqrt", "--x0", "-4"}).code == nnm::cli::kNumeric);

    const auto dual = invoke({"fixpoint", "--gen", "cube", "--map", "affine:0.5,1", "--x0", "0", "--dual"});
    CHECK(dual.code == nnm::cli::kOk);
    CHECK(dual.out.find("iterates identical yes") != std::string::npos);
}

TEST_CASE("structured output reproduces every number printed in human mode") {
    const std::vector<std::vector<std::string>> commands{
        {"fixpoint", "--gen", "exp", "--map", "sqrt", "--x0", "16"},
        {"arith", "--gen", "cube", "-v", "div", "27", "-8"},
        {"verify", "--space", "broken-asym", "--points", "0,1,2.5"},
        {"ball", "--space", "euclidean", "--gen", "cube", "--center", "1", "--radius", "0.75", "--points", "0,0.5,1.9"},
    };
    for (auto args : commands) {
        CAPTURE(args.front());
        const auto human = invoke(args);
        args.insert(args.end(), {"--format", "json"});
        const auto structured = invoke(args);
        const auto doc = nlohmann::json::parse(structured.out);
        std::set<std::string> structured_numbers;
        collect_numbers(doc, structured_numbers);
        const auto printed = human_numbers(human.out);
        REQUIRE(printed.size() >= 3);
        for (const auto& n : printed) {
            CAPTURE(n);
            CHECK(structured_numbers.count(n) == 1);
        }
        // Full precision survives the text round trip.
        CHECK(nlohmann::json::parse(doc.dump()) == doc);
    }
}

TEST_CASE("parse_number_list accepts newline, comma and whitespace separators") {
    CHECK(nnm::cli::parse_number_list("1,2\n3  4;5\r\n# comment 9\n+6") ==
          std::vector<double>{1, 2, 3, 4, 5, 6});
    CHECK(nnm::cli::parse_number_list("").empty());
}
