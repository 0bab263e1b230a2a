// maxeig: solve / table / gen front end.
//
// exit codes: 0 converged, 1 bad input, 2 max_iter, 3 numeric failure.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "maxeig/io.hpp"
#include "maxeig/iterations.hpp"
#include "maxeig/models.hpp"
#include "maxeig/tables.hpp"
#include "maxeig/tridiag.hpp"

using namespace maxeig;

namespace {

enum Exit { kOk = 0, kBadInput = 1, kMaxIter = 2, kNumeric = 3 };

struct SolveArgs {
    std::string input;
    std::string algorithm;
    double tol = 1e-6;
    std::size_t max_iter = 100;
    std::optional<double> xi;
    std::string format = "json";
    std::optional<std::string> stop;
};

struct TableArgs {
    int id = 0;
    std::size_t max_n = kDefaultTableMaxN;
};

struct GenArgs {
    std::string model;
    std::size_t n = 0;
    std::string a_rule = "reciprocal";
    double alpha = 1.0;
    std::string out;
};

StopRule parse_stop(const std::string& s) {
    for (StopRule r : {StopRule::ratio_gap, StopRule::shift_delta, StopRule::complex_y_delta})
        if (s == to_string(r)) return r;
    throw InvalidArgument("unknown stop rule '" + s + "'");
}

const Matrix& need_dense(const MatrixFile& f, const std::string& algo) {
    if (const auto* m = std::get_if<Matrix>(&f)) return *m;
    throw InvalidArgument("algorithm " + algo + " needs a dense real matrix");
}

ComplexMatrix need_complex(const MatrixFile& f) {
    if (const auto* m = std::get_if<ComplexMatrix>(&f)) return *m;
    if (const auto* m = std::get_if<Matrix>(&f)) return to_complex(*m);
    throw InvalidArgument("algorithm complex needs a dense matrix");
}

SolveReport run_solve(const SolveArgs& args) {
    const MatrixFile file = load_matrix_file(args.input);
    IterationConfig cfg;
    cfg.tol = args.tol;
    cfg.max_iter = args.max_iter;
    if (args.stop) cfg.stop_rule = parse_stop(*args.stop);
    if (args.xi) {
        if (args.algorithm != "sii-q") throw InvalidArgument("--xi applies to sii-q only");
        cfg.xi = *args.xi;
        cfg.shift_strategy = ShiftStrategy::convex;
    }
    const auto& a = args.algorithm;
    if (a == "rqi") return make_report(rqi_nonneg(need_dense(file, a), cfg));
    if (a == "sii") return make_report(sii_nonneg(need_dense(file, a), cfg));
    if (a == "rqi-q") return make_report(rqi_q(need_dense(file, a), cfg));
    if (a == "sii-q") return make_report(sii_q(need_dense(file, a), cfg));
    if (a == "complex") return make_report(sii_complex(need_complex(file), cfg));
    const Variant v = a == "tri17a" ? Variant::a : Variant::b;
    if (const auto* q = std::get_if<TridiagonalQ>(&file)) return make_report(algorithm17(*q, v, cfg), false);
    return make_report(algorithm17(need_dense(file, a), v, cfg), true);
}

int solve(const SolveArgs& args) {
    SolveReport r;
    try {
        r = run_solve(args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const RowSumViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    }
    std::cout << (args.format == "csv" ? format_trace_csv(r) : format_trace_json(r));
    if (args.format == "csv") {
        std::cerr << "value=" << format_double(r.value.real());
        if (r.complex_valued) std::cerr << (r.value.imag() < 0 ? "-" : "+") << format_double(std::abs(r.value.imag())) << "i";
        std::cerr << " solves=" << r.solves << " stop=" << to_string(r.stop_reason) << "\n";
    }
    switch (r.stop_reason) {
        case StopReason::converged_gap:
        case StopReason::converged_delta: return kOk;
        case StopReason::max_iter: return kMaxIter;
        case StopReason::singular_stop: return kNumeric;
    }
    return kNumeric;
}

int table(const TableArgs& args) {
    try {
        std::cout << format_table_csv(make_table(args.id, args.max_n));
        return kOk;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    }
}

int gen(const GenArgs& args) {
    try {
        Matrix q;
        if (args.model == "single-birth")
            q = single_birth_q({args.n, parse_a_rule(args.a_rule)});
        else
            q = branching_q({args.n, args.alpha});
        save_matrix_file(args.out, q);
        return kOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximal eigenpairs of nonnegative, Q- and complex matrices by shifted inverse iteration"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "run one engine on a matrix file and print its trace");
    solve_cmd->add_option("--input", sa.input, "matrix file (JSON)")->required();
    solve_cmd->add_option("--algorithm", sa.algorithm, "engine")
        ->required()
        ->check(CLI::IsMember({"rqi", "sii", "rqi-q", "sii-q", "complex", "tri17a", "tri17b"}));
    solve_cmd->add_option("--tol", sa.tol, "stopping tolerance")->capture_default_str();
    solve_cmd->add_option("--max-iter", sa.max_iter, "iteration cap")->capture_default_str();
    solve_cmd->add_option("--xi", sa.xi, "convex weight of the first sii-q shift");
    solve_cmd->add_option("--format", sa.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    solve_cmd->add_option("--stop", sa.stop, "stop rule: ratio_gap | shift_delta | complex_y_delta");

    TableArgs ta;
    auto* table_cmd = app.add_subcommand("table", "regenerate a table of outputs as CSV");
    table_cmd->add_option("--id", ta.id, "table id")->required();
    table_cmd->add_option("--max-n", ta.max_n, "largest model size")->capture_default_str();

    GenArgs ga;
    auto* gen_cmd = app.add_subcommand("gen", "write a model Q-matrix to a file");
    gen_cmd->add_option("--model", ga.model, "model")->required()->check(CLI::IsMember({"single-birth", "branching"}));
    gen_cmd->add_option("--n", ga.n, "matrix dimension")->required();
    gen_cmd->add_option("--a-rule", ga.a_rule, "single-birth a_k rule")
        ->check(CLI::IsMember({"reciprocal", "one", "linear", "quadratic"}))
        ->capture_default_str();
    gen_cmd->add_option("--alpha", ga.alpha, "branching alpha in (0, 2)")->capture_default_str();
    gen_cmd->add_option("--out", ga.out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kBadInput;
    }

    if (*solve_cmd) return solve(sa);
    if (*table_cmd) return table(ta);
    return gen(ga);
}
