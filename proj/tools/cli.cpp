#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "nnm/arithmetic.hpp"
#include "nnm/builtins.hpp"
#include "nnm/errors.hpp"
#include "nnm/fixedpoint.hpp"
#include "nnm/metric.hpp"
#include "nnm/topology.hpp"

namespace nnm::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Human-mode rendering; structured mode keeps full round-trip precision.
std::string num(double v) { return fmt::format("{:.12g}", v); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

bool structured(const std::string& format) { return format != "human"; }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::vector<double> load_points(const std::string& file, const std::string& inline_list) {
    std::string text = inline_list;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in)
            throw UsageError("cannot read sample file '" + file + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        text += "\n" + buffer.str();
    }
    auto points = parse_number_list(text);
    if (points.empty())
        throw UsageError("sample is empty (give --points or a non-empty --sample file)");
    return points;
}

std::string optional_index(const std::optional<std::size_t>& n) {
    return n ? std::to_string(*n) : std::string("none");
}

Json optional_index_json(const std::optional<std::size_t>& n) { return n ? Json(*n) : Json(nullptr); }

// ---------------------------------------------------------------- arith

struct ArithConfig {
    std::string gen = "identity";
    std::string op;
    double x = 0.0;
    double y = 0.0;
    bool verbose = false;
    std::string format = "human";
};

int cmd_arith(const ArithConfig& c, std::ostream& out) {
    const Generator g = generator_by_name(c.gen);
    const AlphaNumber x = g.make(c.x);
    const AlphaNumber y = g.make(c.y);
    const double u = g.inverse(x.value);
    const double v = g.inverse(y.value);

    Json j{{"command", "arith"}, {"generator", g.name()}, {"op", c.op}, {"x", c.x}, {"y", c.y}};
    if (c.op == "cmp") {
        const Ordering o = alpha_compare(g, x, y);
        j["result"] = std::string(to_string(o));
        j["pulled"] = {{"x", u}, {"y", v}};
        if (structured(c.format)) {
            emit(out, j);
        } else {
            out << to_string(o) << '\n';
            if (c.verbose)
                out << fmt::format("{0}^-1({1}) = {2}, {0}^-1({3}) = {4}\n", g.name(), num(c.x), num(u), num(c.y),
                                   num(v));
        }
        return kOk;
    }

    AlphaNumber result;
    char symbol = '?';
    if (c.op == "add") {
        result = alpha_add(g, x, y);
        symbol = '+';
    } else if (c.op == "sub") {
        result = alpha_sub(g, x, y);
        symbol = '-';
    } else if (c.op == "mul") {
        result = alpha_mul(g, x, y);
        symbol = '*';
    } else {
        result = alpha_div(g, x, y);
        symbol = '/';
    }
    const double w = g.inverse(result.value);
    j["result"] = result.value;
    j["pulled"] = {{"x", u}, {"y", v}, {"result", w}};
    if (structured(c.format)) {
        emit(out, j);
        return kOk;
    }
    out << num(result.value) << '\n';
    if (c.verbose)
        out << fmt::format("{0}^-1({1}) = {2}, {0}^-1({3}) = {4}, {2} {5} {4} = {6}, {0}({6}) = {7}\n", g.name(),
                           num(c.x), num(u), num(c.y), num(v), symbol, num(w), num(result.value));
    return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyConfig {
    std::string gen = "exp";
    std::string space;
    std::string sample_file;
    std::string points;
    std::string checker = "alpha";
    std::size_t max_witnesses = 8;
    double rtol = kDefaultRtol;
    std::string format = "human";
};

Json witness_json(const Witness& w, const std::vector<double>& sample) {
    Json j{{"x_index", w.x}, {"y_index", w.y}};
    if (w.z != Witness::none)
        j["z_index"] = w.z;
    j["x"] = sample[w.x];
    j["y"] = sample[w.y];
    if (w.z != Witness::none)
        j["z"] = sample[w.z];
    j["residual"] = w.residual;
    return j;
}

std::string witness_text(const Witness& w, const std::vector<double>& sample) {
    if (w.z == Witness::none)
        return fmt::format("(x={}, y={}) residual {}", num(sample[w.x]), num(sample[w.y]), num(w.residual));
    return fmt::format("(x={}, y={}, z={}) residual {}", num(sample[w.x]), num(sample[w.y]), num(sample[w.z]),
                       num(w.residual));
}

int cmd_verify(const VerifyConfig& c, std::ostream& out) {
    const Generator g = generator_by_name(c.gen);
    const auto sample = load_points(c.sample_file, c.points);
    const CheckOptions options{Tolerance{c.rtol}, c.max_witnesses};
    const std::span<const double> view(sample);

    AxiomReport report;
    if (c.checker == "classical") {
        report = builtin::is_classical_space(c.space)
                     ? check_metric_axioms(builtin::classical_space(c.space), view, options)
                     : check_metric_axioms(pull_back_metric(g, builtin::alpha_space(c.space, g)), view, options);
    } else if (c.checker == "mult") {
        report = check_multiplicative_axioms(builtin::alpha_space(c.space, g), view, options);
    } else {
        report = check_alpha_axioms(builtin::alpha_space(c.space, g), view, options);
    }

    if (structured(c.format)) {
        Json axioms = Json::array();
        for (const auto& a : report.axioms) {
            Json witnesses = Json::array();
            for (const auto& w : a.witnesses)
                witnesses.push_back(witness_json(w, sample));
            axioms.push_back({{"name", a.name},
                              {"description", a.description},
                              {"status", a.passed ? "pass" : "fail"},
                              {"worst_residual", a.worst_residual},
                              {"evaluations", a.evaluations},
                              {"witnesses", witnesses}});
        }
        emit(out, Json{{"command", "verify"},
                       {"checker", report.checker},
                       {"space", c.space},
                       {"generator", g.name()},
                       {"sample_size", report.sample_size},
                       {"sample", sample},
                       {"all_passed", report.all_passed()},
                       {"axioms", axioms}});
    } else {
        out << fmt::format("{} axioms on space '{}' (generator {}), finite sample of {} points\n", report.checker,
                           c.space, g.name(), report.sample_size);
        for (const auto& a : report.axioms) {
            out << fmt::format("  {:<4} {}  worst residual {}  evaluations {}  [{}]\n", a.name,
                               a.passed ? "pass" : "FAIL", num(a.worst_residual), a.evaluations, a.description);
            for (const auto& w : a.witnesses)
                out << "       witness " << witness_text(w, sample) << '\n';
        }
        out << (report.all_passed() ? "result: all axioms hold on the sample\n" : "result: axiom failure\n");
    }
    return report.all_passed() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- convert

struct ConvertConfig {
    std::string gen = "exp";
    std::string kind;
    double value = 0.0;
    std::string format = "human";
};

int cmd_convert(const ConvertConfig& c, std::ostream& out) {
    const Generator g = generator_by_name(c.gen);
    Json j{{"command", "convert"}, {"generator", g.name()}, {"kind", c.kind}, {"input", c.value}};
    std::string text;
    int code = kOk;
    if (c.kind == "radius" || c.kind == "alpha-radius") {
        const RadiusPair r = c.kind == "radius" ? convert_radius(g, c.value) : convert_radius(g, g.make(c.value));
        j["delta"] = r.classical;
        j["epsilon"] = r.alpha.value;
        text = fmt::format("delta = {}\nepsilon = {}\n", num(r.classical), num(r.alpha.value));
    } else if (c.kind == "push") {
        if (!(c.value >= 0.0))
            throw DomainError(fmt::format("distance {} is negative", c.value));
        const double pushed = g.forward(c.value);
        j["distance"] = c.value;
        j["alpha_distance"] = pushed;
        text = fmt::format("alpha distance = {}\n", num(pushed));
    } else if (c.kind == "pull") {
        const double pulled = g.inverse(c.value);
        if (!(pulled >= 0.0))
            throw DomainError(fmt::format("{} lies below the alpha-zero of generator '{}'", c.value, g.name()));
        j["alpha_distance"] = c.value;
        j["distance"] = pulled;
        text = fmt::format("distance = {}\n", num(pulled));
    } else {
        const ConstantConversion conv = convert_contraction_constant(g, g.make(c.value));
        j["lambda"] = conv.lambda;
        j["valid_banach_constant"] = conv.valid;
        text = fmt::format("lambda = {}\nvalid Banach constant: {}\n", num(conv.lambda), yes_no(conv.valid));
        code = conv.valid ? kOk : kCheckFailed;
    }
    if (structured(c.format))
        emit(out, j);
    else
        out << text;
    return code;
}

// ---------------------------------------------------------------- ball

struct BallConfig {
    std::string gen = "exp";
    std::string space;
    double center = 0.0;
    double radius = 0.0;
    std::string sample_file;
    std::string points;
    double band = kDefaultBoundaryBand;
    std::string format = "human";
};

int cmd_ball(const BallConfig& c, std::ostream& out) {
    const Generator g = generator_by_name(c.gen);
    const auto sample = load_points(c.sample_file, c.points);
    const auto s_alpha = builtin::alpha_space(c.space, g);
    const auto s_classical = pull_back_metric(g, s_alpha);
    const auto report =
        check_ball_equivalence(g, s_alpha, s_classical, c.center, c.radius, std::span<const double>(sample), c.band);

    if (structured(c.format)) {
        Json entries = Json::array();
        for (const auto& e : report.entries)
            entries.push_back({{"point", sample[e.index]},
                               {"distance", e.classical_distance},
                               {"in_alpha_ball", e.in_alpha_ball},
                               {"in_classical_ball", e.in_classical_ball},
                               {"near_boundary", e.near_boundary}});
        emit(out, Json{{"command", "ball"},
                       {"generator", g.name()},
                       {"space", c.space},
                       {"center", c.center},
                       {"delta", report.radius.classical},
                       {"epsilon", report.radius.alpha.value},
                       {"entries", entries},
                       {"discrepancies", report.discrepancies},
                       {"boundary_discrepancies", report.boundary_discrepancies},
                       {"equivalent", report.equivalent()}});
    } else {
        out << fmt::format("B_alpha({0}, {1}) in '{2}' vs B({0}, {3}) in its pull-back\n", num(c.center),
                           num(report.radius.alpha.value), c.space, num(report.radius.classical));
        for (const auto& e : report.entries)
            out << fmt::format("  {:>14}  d = {:<14}  alpha {:<3}  classical {:<3}{}\n", num(sample[e.index]),
                               num(e.classical_distance), e.in_alpha_ball ? "in" : "out",
                               e.in_classical_ball ? "in" : "out", e.near_boundary ? "  (boundary)" : "");
        out << fmt::format("equivalent: {} ({} discrepancies, {} at the boundary)\n", yes_no(report.equivalent()),
                           report.discrepancies, report.boundary_discrepancies);
    }
    return report.equivalent() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- seq

struct SeqConfig {
    std::string gen = "exp";
    std::string metric = "euclidean";
    std::string sample_file;
    std::string points;
    std::optional<double> limit;
    std::string schedule;
    std::optional<double> cauchy_tol;
    std::optional<std::size_t> window;
    std::string format = "human";
};

int cmd_seq(const SeqConfig& c, std::ostream& out) {
    const Generator g = generator_by_name(c.gen);
    SequencePrefix<double> seq{load_points(c.sample_file, c.points), c.limit};
    if (!c.cauchy_tol && !c.limit)
        throw UsageError("seq needs --cauchy-tol and/or --limit with --schedule");
    const auto classical = builtin::classical_space(c.metric);
    const auto alpha = push_forward_metric(g, classical);

    Json j{{"command", "seq"}, {"generator", g.name()}, {"metric", c.metric}, {"length", seq.points.size()}};
    std::string text = fmt::format("sequence prefix of {} points, metric '{}' and its {} push-forward\n",
                                   seq.points.size(), c.metric, g.name());
    bool agree = true;

    if (c.cauchy_tol) {
        const std::size_t window = c.window.value_or(std::min<std::size_t>(50, seq.points.size()));
        const bool in_classical = is_cauchy_prefix(classical, seq, *c.cauchy_tol, window);
        const bool in_alpha = is_cauchy_prefix(alpha, seq, *c.cauchy_tol, window);
        agree = agree && in_classical == in_alpha;
        j["cauchy"] = {{"heuristic", "finite-prefix"},
                       {"window", window},
                       {"tolerance", *c.cauchy_tol},
                       {"classical", in_classical},
                       {"alpha", in_alpha},
                       {"agree", in_classical == in_alpha}};
        text += fmt::format("cauchy (finite-prefix heuristic, window {}, tolerance {}): classical {}, alpha {}, {}\n",
                            window, num(*c.cauchy_tol), yes_no(in_classical), yes_no(in_alpha),
                            in_classical == in_alpha ? "agree" : "DISAGREE");
    }

    if (c.limit) {
        const auto schedule = parse_number_list(c.schedule);
        const auto report = check_convergence_equivalence(classical, alpha, seq, std::span<const double>(schedule));
        agree = agree && report.equivalent();
        Json steps = Json::array();
        text += fmt::format("convergence to {} (1-based entry index n0 per radius):\n", num(*c.limit));
        for (const auto& s : report.steps) {
            steps.push_back({{"delta", s.delta},
                             {"epsilon", s.epsilon.value},
                             {"classical_n0", optional_index_json(s.classical_index)},
                             {"alpha_n0", optional_index_json(s.alpha_index)},
                             {"match", s.match()}});
            text += fmt::format("  delta {:<10} epsilon {:<14} n0 classical {:<6} alpha {:<6} {}\n", num(s.delta),
                                num(s.epsilon.value), optional_index(s.classical_index),
                                optional_index(s.alpha_index), s.match() ? "match" : "MISMATCH");
        }
        j["limit"] = *c.limit;
        j["convergence"] = steps;
    }
    j["equivalent"] = agree;
    text += fmt::format("equivalent: {}\n", yes_no(agree));
    if (structured(c.format))
        emit(out, j);
    else
        out << text;
    return agree ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- fixpoint

struct FixpointConfig {
    std::string gen = "identity";
    std::string map;
    std::string metric;
    double x0 = 0.0;
    double tol = 1e-8;
    std::size_t max_iters = 1000;
    bool dual = false;
    std::string format = "human";
};

int cmd_fixpoint(const FixpointConfig& c, std::ostream& out) {
    const Generator g = generator_by_name(c.gen);
    builtin::NamedMap named = [&] {
        try {
            return builtin::map_by_spec(c.map);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }();
    const std::string metric = c.metric.empty() ? named.natural_metric : c.metric;
    const AlphaContraction<double> spec{named.map, push_forward_metric(g, builtin::classical_space(metric)),
                                        g.lift(named.lipschitz)};
    const IterationOptions options{c.tol, c.max_iters, 10};

    std::optional<DualRunReport<double>> dual;
    IterationTrace<double> trace;
    if (c.dual) {
        dual = compare_dual_runs(spec, g, c.x0, options);
        trace = dual->alpha_run;
    } else {
        trace = banach_iterate(spec, c.x0, options);
    }

    if (structured(c.format)) {
        Json rows = Json::array();
        rows.push_back({{"iter", 0}, {"iterate", trace.iterates[0]}});
        for (std::size_t i = 0; i < trace.distances.size(); ++i)
            rows.push_back({{"iter", i + 1},
                            {"iterate", trace.iterates[i + 1]},
                            {"alpha_distance", trace.alpha_distances[i]},
                            {"distance", trace.distances[i]}});
        Json j{{"command", "fixpoint"},  {"map", named.name},  {"generator", g.name()},
               {"metric", metric},       {"x0", c.x0},         {"tolerance", c.tol},
               {"max_iters", c.max_iters}, {"trace", rows},    {"status", std::string(to_string(trace.reason))},
               {"iterations", trace.iterations}, {"final", trace.final_point()}};
        if (dual)
            j["dual"] = {{"iterates_identical", dual->iterates_identical},
                         {"stop_index_alpha", dual->alpha_run.iterations},
                         {"stop_index_classical", dual->classical_run.iterations},
                         {"consistent", dual->consistent()}};
        emit(out, j);
    } else {
        out << fmt::format("# map {}, generator {}, metric {}, tolerance {}\n", named.name, g.name(), metric,
                           num(c.tol));
        out << "# iter iterate alpha_distance distance\n";
        out << fmt::format("0 {} - -\n", num(trace.iterates[0]));
        for (std::size_t i = 0; i < trace.distances.size(); ++i)
            out << fmt::format("{} {} {} {}\n", i + 1, num(trace.iterates[i + 1]), num(trace.alpha_distances[i]),
                               num(trace.distances[i]));
        out << fmt::format("status: {} after {} iterations, final iterate {}\n", to_string(trace.reason),
                           trace.iterations, num(trace.final_point()));
        if (dual)
            out << fmt::format("dual run: iterates identical {}, stop index alpha {} classical {}, {}\n",
                               yes_no(dual->iterates_identical), dual->alpha_run.iterations,
                               dual->classical_run.iterations, dual->consistent() ? "match" : "MISMATCH");
    }

    if (dual && !dual->consistent())
        return kCheckFailed;
    switch (trace.reason) {
    case Termination::converged:
        return kOk;
    case Termination::diverged:
        return kDiverged;
    case Termination::max_iters:
        return kMaxIters;
    }
    return kMaxIters;
}

const std::vector<std::string> kGenerators{"identity", "exp", "cube"};
const std::vector<std::string> kFormats{"human", "json", "structured"};

std::vector<std::string> all_space_names() {
    auto names = builtin::classical_space_names();
    const auto mult = builtin::multiplicative_space_names();
    names.insert(names.end(), mult.begin(), mult.end());
    return names;
}

void add_format(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Output format: human, or json/structured")
        ->check(CLI::IsMember(kFormats));
}

void add_gen(CLI::App* cmd, std::string& gen) {
    cmd->add_option("--gen", gen, "Generator: identity, exp or cube")->check(CLI::IsMember(kGenerators));
}

int report_error(std::ostream& err, std::string_view kind, const std::exception& e, int code) {
    err << "error (" << kind << "): " << e.what() << '\n';
    return code;
}

} // namespace

std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    const auto is_separator = [](char ch) {
        return ch == ',' || ch == ';' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
    };
    while (pos < text.size()) {
        if (is_separator(text[pos])) {
            ++pos;
            continue;
        }
        if (text[pos] == '#') {
            while (pos < text.size() && text[pos] != '\n')
                ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && !is_separator(text[end]))
            ++end;
        std::string_view token = text.substr(pos, end - pos);
        if (!token.empty() && token.front() == '+')
            token.remove_prefix(1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value))
            throw UsageError(fmt::format("'{}' is not a finite number", text.substr(pos, end - pos)));
        out.push_back(value);
        pos = end;
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generator arithmetic, non-Newtonian metric checks and Banach iteration", "nnm"};
    app.require_subcommand(1);
    std::function<int()> action;

    ArithConfig arith;
    auto* arith_cmd = app.add_subcommand("arith", "Evaluate an alpha-arithmetic operation");
    add_gen(arith_cmd, arith.gen);
    add_format(arith_cmd, arith.format);
    arith_cmd->add_flag("-v,--verbose", arith.verbose, "Show the pulled-back computation");
    arith_cmd->add_option("op", arith.op, "add, sub, mul, div or cmp")
        ->required()
        ->check(CLI::IsMember({"add", "sub", "mul", "div", "cmp"}));
    arith_cmd->add_option("x", arith.x, "Left operand")->required();
    arith_cmd->add_option("y", arith.y, "Right operand")->required();
    arith_cmd->callback([&] { action = [&] { return cmd_arith(arith, out); }; });

    VerifyConfig verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check metric axioms on a finite sample");
    add_gen(verify_cmd, verify.gen);
    add_format(verify_cmd, verify.format);
    verify_cmd->add_option("--space", verify.space, "Built-in space")->required()->check(CLI::IsMember(all_space_names()));
    verify_cmd->add_option("--sample", verify.sample_file, "File of newline- or comma-separated points");
    verify_cmd->add_option("--points", verify.points, "Inline comma-separated points");
    verify_cmd->add_option("--checker", verify.checker, "alpha, mult or classical")
        ->check(CLI::IsMember({"alpha", "mult", "classical"}));
    verify_cmd->add_option("--max-witnesses", verify.max_witnesses, "Witnesses kept per failing axiom");
    verify_cmd->add_option("--rtol", verify.rtol, "Relative tolerance")->check(CLI::PositiveNumber);
    verify_cmd->callback([&] { action = [&] { return cmd_verify(verify, out); }; });

    ConvertConfig convert;
    auto* convert_cmd = app.add_subcommand("convert", "Transport radii, distances and contraction constants");
    add_gen(convert_cmd, convert.gen);
    add_format(convert_cmd, convert.format);
    convert_cmd->add_option("kind", convert.kind, "radius, alpha-radius, push, pull or constant")
        ->required()
        ->check(CLI::IsMember({"radius", "alpha-radius", "push", "pull", "constant"}));
    convert_cmd->add_option("value", convert.value, "Value to convert")->required();
    convert_cmd->callback([&] { action = [&] { return cmd_convert(convert, out); }; });

    BallConfig ball;
    auto* ball_cmd = app.add_subcommand("ball", "Compare alpha-ball and classical-ball membership");
    add_gen(ball_cmd, ball.gen);
    add_format(ball_cmd, ball.format);
    ball_cmd->add_option("--space", ball.space, "Built-in space")->required()->check(CLI::IsMember(all_space_names()));
    ball_cmd->add_option("--center", ball.center, "Ball center")->required();
    ball_cmd->add_option("--radius", ball.radius, "Classical radius delta")->required();
    ball_cmd->add_option("--sample", ball.sample_file, "File of candidate points");
    ball_cmd->add_option("--points", ball.points, "Inline comma-separated candidate points");
    ball_cmd->add_option("--band", ball.band, "Boundary band");
    ball_cmd->callback([&] { action = [&] { return cmd_ball(ball, out); }; });

    SeqConfig seq;
    auto* seq_cmd = app.add_subcommand("seq", "Cauchy and convergence equivalence on a sequence prefix");
    add_gen(seq_cmd, seq.gen);
    add_format(seq_cmd, seq.format);
    seq_cmd->add_option("--metric", seq.metric, "Classical metric")
        ->check(CLI::IsMember(builtin::classical_space_names()));
    seq_cmd->add_option("--sample", seq.sample_file, "File with the sequence prefix");
    seq_cmd->add_option("--points", seq.points, "Inline comma-separated prefix");
    seq_cmd->add_option("--limit", seq.limit, "Limit candidate");
    seq_cmd->add_option("--schedule", seq.schedule, "Comma-separated radii");
    seq_cmd->add_option("--cauchy-tol", seq.cauchy_tol, "Tail tolerance for the Cauchy heuristic");
    seq_cmd->add_option("--window", seq.window, "Tail window for the Cauchy heuristic");
    seq_cmd->callback([&] { action = [&] { return cmd_seq(seq, out); }; });

    FixpointConfig fix;
    auto* fix_cmd = app.add_subcommand("fixpoint", "Banach iteration with an alpha-distance trace");
    add_gen(fix_cmd, fix.gen);
    add_format(fix_cmd, fix.format);
    fix_cmd->add_option("--map", fix.map, "affine:a,b, sqrt or double")->required();
    fix_cmd->add_option("--metric", fix.metric, "Classical metric (default: the map's natural one)")
        ->check(CLI::IsMember(builtin::classical_space_names()));
    fix_cmd->add_option("--x0", fix.x0, "Starting point")->required();
    fix_cmd->add_option("--tol", fix.tol, "Successive-distance tolerance")->check(CLI::PositiveNumber);
    fix_cmd->add_option("--max-iters", fix.max_iters, "Iteration budget")->check(CLI::PositiveNumber);
    fix_cmd->add_flag("--dual", fix.dual, "Also run on the pull-back and compare");
    fix_cmd->callback([&] { action = [&] { return cmd_fixpoint(fix, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        return report_error(err, "usage", e, kUsage);
    } catch (const DivisionByAlphaZero& e) {
        return report_error(err, "division by alpha-zero", e, kDivisionByAlphaZero);
    } catch (const RangeError& e) {
        return report_error(err, "range", e, kRange);
    } catch (const NumericError& e) {
        return report_error(err, "numeric", e, kNumeric);
    } catch (const DomainError& e) {
        return report_error(err, "domain", e, kDomain);
    }
}

} // namespace nnm::cli
