#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "maxeig/iterations.hpp"
#include "maxeig/linalg.hpp"
#include "maxeig/tridiag.hpp"

namespace maxeig {

/// Raised for unreadable or ill-formed matrix files; the message names the
/// first offending token or key.
class ParseError : public Error {
public:
    using Error::Error;
};

/// {"kind": "dense", "rows": [[..], ..]}
/// {"kind": "dense_complex", "rows": [[[re, im], ..], ..]}
/// {"kind": "tridiagonal", "a": [a_1..a_N], "b": [b_0..b_N], "c": [c_0..c_N]}
using MatrixFile = std::variant<Matrix, ComplexMatrix, TridiagonalQ>;

MatrixFile parse_matrix_file(std::string_view text);
MatrixFile load_matrix_file(const std::filesystem::path& path);

/// Shortest round-trip decimal for every entry, so parsing gives back the same bits.
std::string format_matrix_file(const MatrixFile& m);
void save_matrix_file(const std::filesystem::path& path, const MatrixFile& m);

/// Engine-independent view of a run, ready for serialization.
struct SolveReport {
    struct Row {
        std::size_t n = 0;
        double x = 0.0;
        Complex y;
        double z = 0.0;
    };

    Algorithm algorithm = Algorithm::rqi_nonneg;
    std::vector<Row> rows;
    StopReason stop_reason = StopReason::max_iter;
    std::size_t solves = 0;
    Complex value;
    ComplexVector vector;
    bool complex_valued = false;
    /// Set for the tridiagonal engine on a nonnegative A.
    std::optional<double> shift_m;
    std::optional<double> lambda_min;
};

SolveReport make_report(const Eigenpair& e);
SolveReport make_report(const ComplexEigenpair& e);
/// with_shift: report rho(A) = m - lambda_min as the value, with m and lambda_min alongside.
SolveReport make_report(const Algo17Result& r, bool with_shift);

/// Fields in fixed order, floats with 17 significant digits, NaN/Inf as null.
std::string format_trace_json(const SolveReport& r);
/// Header n,x,y_re,y_im,z,stop_reason,solves; stop_reason is filled on the last row only.
std::string format_trace_csv(const SolveReport& r);

/// "%.17g"
std::string format_double(double x);

}  // namespace maxeig
