#include "maxeig/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace maxeig {

using nlohmann::json;

namespace {

std::string describe(const json& j) {
    std::string s = j.dump();
    if (s.size() > 40) s = s.substr(0, 37) + "...";
    return s;
}

double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number, got " + describe(j));
    return j.get<double>();
}

const json& member(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

const json& array_at(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array, got " + describe(j));
    return j;
}

Vector number_array(const json& j, const std::string& where) {
    array_at(j, where);
    Vector out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_at(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

template <class T, class Cell>
BasicMatrix<T> parse_rows(const json& doc, Cell cell) {
    const json& rows = array_at(member(doc, "rows"), "rows");
    const std::size_t n = rows.size();
    if (n == 0) throw ParseError("rows: empty matrix");
    BasicMatrix<T> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string ri = "rows[" + std::to_string(i) + "]";
        const json& row = array_at(rows[i], ri);
        if (row.size() != n)
            throw ParseError(ri + ": expected " + std::to_string(n) + " entries, got " + std::to_string(row.size()));
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cell(row[j], ri + "[" + std::to_string(j) + "]");
    }
    return m;
}

Complex complex_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [re, im], got " + describe(j));
    return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
}

json to_json(const MatrixFile& m) {
    json doc;
    std::visit(
        [&](const auto& x) {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, TridiagonalQ>) {
                doc["kind"] = "tridiagonal";
                doc["a"] = Vector(x.a().begin() + 1, x.a().end());
                doc["b"] = x.b();
                doc["c"] = x.c();
            } else {
                constexpr bool cplx = std::is_same_v<X, ComplexMatrix>;
                doc["kind"] = cplx ? "dense_complex" : "dense";
                json rows = json::array();
                for (std::size_t i = 0; i < x.size(); ++i) {
                    json row = json::array();
                    for (const auto& v : x.row(i)) {
                        if constexpr (cplx)
                            row.push_back({v.real(), v.imag()});
                        else
                            row.push_back(v);
                    }
                    rows.push_back(std::move(row));
                }
                doc["rows"] = std::move(rows);
            }
        },
        m);
    return doc;
}

void append_number(std::string& out, double x) {
    if (std::isfinite(x))
        out += format_double(x);
    else
        out += "null";
}

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

MatrixFile parse_matrix_file(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("top level: expected an object, got " + describe(doc));
    const json& kind = member(doc, "kind");
    if (!kind.is_string()) throw ParseError("kind: expected a string, got " + describe(kind));
    const auto k = kind.get<std::string>();

    try {
        if (k == "dense") return parse_rows<double>(doc, number_at);
        if (k == "dense_complex") return parse_rows<Complex>(doc, complex_at);
        if (k == "tridiagonal") {
            Vector a = number_array(member(doc, "a"), "a");
            Vector b = number_array(member(doc, "b"), "b");
            Vector c = number_array(member(doc, "c"), "c");
            if (b.size() != a.size() + 1)
                throw ParseError("b: expected " + std::to_string(a.size() + 1) + " entries (one more than a), got " + std::to_string(b.size()));
            if (c.size() != b.size())
                throw ParseError("c: expected " + std::to_string(b.size()) + " entries, got " + std::to_string(c.size()));
            a.insert(a.begin(), 0.0);
            return TridiagonalQ(std::move(a), std::move(b), std::move(c));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(k + ": " + e.what());
    }
    throw ParseError("kind: unknown value " + json_string(k));
}

MatrixFile load_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix_file(ss.str());
}

std::string format_matrix_file(const MatrixFile& m) { return to_json(m).dump() + "\n"; }

void save_matrix_file(const std::filesystem::path& path, const MatrixFile& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << format_matrix_file(m);
    if (!out) throw Error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------

namespace {

template <class T>
SolveReport report_from(const BasicEigenpair<T>& e) {
    SolveReport r;
    r.algorithm = e.algorithm;
    r.stop_reason = e.trace.stop_reason;
    r.solves = e.trace.solves_performed;
    r.value = e.value;
    r.vector.assign(e.vector.begin(), e.vector.end());
    r.complex_valued = std::is_same_v<T, Complex>;
    for (const auto& s : e.trace.steps) r.rows.push_back({s.n, s.x, Complex(s.y), s.z});
    return r;
}

}  // namespace

SolveReport make_report(const Eigenpair& e) { return report_from(e); }
SolveReport make_report(const ComplexEigenpair& e) { return report_from(e); }

SolveReport make_report(const Algo17Result& res, bool with_shift) {
    SolveReport r = report_from(res.eigenpair_for_qt);
    if (with_shift) {
        r.shift_m = res.m;
        r.lambda_min = res.eigenpair_for_qt.value;
        r.value = res.rho_a;
        r.vector.assign(res.g.begin(), res.g.end());
    }
    return r;
}

std::string format_trace_json(const SolveReport& r) {
    std::string out = "{\"algorithm\":" + json_string(to_string(r.algorithm));
    out += ",\"stop_reason\":" + json_string(to_string(r.stop_reason));
    out += ",\"converged\":";
    out += (r.stop_reason == StopReason::converged_gap || r.stop_reason == StopReason::converged_delta) ? "true" : "false";
    out += ",\"solves\":" + std::to_string(r.solves);

    const auto put_scalar = [&](Complex v) {
        if (r.complex_valued) {
            out += '[';
            append_number(out, v.real());
            out += ',';
            append_number(out, v.imag());
            out += ']';
        } else {
            append_number(out, v.real());
        }
    };

    out += ",\"value\":";
    put_scalar(r.value);
    if (r.shift_m) {
        out += ",\"shift_m\":";
        append_number(out, *r.shift_m);
    }
    if (r.lambda_min) {
        out += ",\"lambda_min\":";
        append_number(out, *r.lambda_min);
    }
    out += ",\"vector\":[";
    for (std::size_t i = 0; i < r.vector.size(); ++i) {
        if (i) out += ',';
        put_scalar(r.vector[i]);
    }
    out += "],\"steps\":[";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        if (i) out += ',';
        out += "{\"n\":" + std::to_string(row.n) + ",\"x\":";
        append_number(out, row.x);
        out += ",\"y\":";
        put_scalar(row.y);
        out += ",\"z\":";
        append_number(out, row.z);
        out += '}';
    }
    out += "]}\n";
    return out;
}

std::string format_trace_csv(const SolveReport& r) {
    std::string out = "n,x,y_re,y_im,z,stop_reason,solves\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        const bool last = i + 1 == r.rows.size();
        out += std::to_string(row.n) + ',';
        if (std::isfinite(row.x)) out += format_double(row.x);
        out += ',' + format_double(row.y.real()) + ',' + format_double(row.y.imag()) + ',' + format_double(row.z) + ',';
        if (last) out += to_string(r.stop_reason);
        out += ',' + std::to_string(row.n == 0 ? 0 : std::min(row.n, r.solves)) + '\n';
    }
    return out;
}

}  // namespace maxeig
