#include "maxeig/tables.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <future>

#include "maxeig/models.hpp"
#include "maxeig/tridiag.hpp"

namespace maxeig {

namespace {

using Row = std::vector<std::string>;

template <class T>
std::vector<T> shifts_of(const BasicEigenpair<T>& e) {
    std::vector<T> out;
    for (std::size_t i = 1; i < e.trace.steps.size(); ++i) {
        if constexpr (std::is_same_v<T, Complex>)
            out.push_back(e.trace.steps[i].y);
        else
            out.push_back(e.trace.steps[i].z);
    }
    return out;
}

Row labelled(std::string label, std::vector<std::string> cells) {
    cells.insert(cells.begin(), std::move(label));
    return cells;
}

// Runs every row job on its own thread, collects in submission order.
std::vector<Row> run_rows(const std::vector<std::function<Row()>>& jobs) {
    std::vector<std::future<Row>> futures;
    futures.reserve(jobs.size());
    for (const auto& job : jobs) futures.push_back(std::async(std::launch::async, job));
    std::vector<Row> rows;
    rows.reserve(jobs.size());
    for (auto& f : futures) rows.push_back(f.get());
    return rows;
}

Table with_z_header(std::string first, std::vector<Row> rows) {
    Table t;
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.size() - 1);
    t.header.push_back(std::move(first));
    for (std::size_t k = 1; k <= width; ++k) t.header.push_back("z" + std::to_string(k));
    for (auto& r : rows) r.resize(width + 1);
    t.rows = std::move(rows);
    return t;
}

std::string b4_label(double b4) { return b4 == 1e4 ? "1e4" : display6(b4); }

Table example1_table(bool safe) {
    std::vector<std::function<Row()>> jobs;
    for (double b4 : kTableB4)
        jobs.push_back([b4, safe] {
            const auto q = example1(b4);
            const auto e = safe ? sii_q(q, example1_table_config()) : rqi_q(q, example1_table_config());
            return labelled(b4_label(b4), display_sequence(shifts_of(e)));
        });
    return with_z_header("b4", run_rows(jobs));
}

template <class Make>
Table sized_table(std::vector<std::size_t> sizes, std::size_t max_n, Make make_row) {
    std::vector<std::function<Row()>> jobs;
    for (std::size_t n : sizes)
        if (n <= max_n) jobs.push_back([n, make_row] { return make_row(n); });
    return with_z_header("N", run_rows(jobs));
}

Table table4(std::size_t max_n) {
    return sized_table({std::begin(kTableSizes), std::end(kTableSizes)}, max_n, [](std::size_t n) {
        const auto e = sii_q(single_birth_q({n, ARule::reciprocal}));
        return labelled(std::to_string(n), display_sequence(shifts_of(e)));
    });
}

Table table6(std::size_t max_n) {
    return sized_table({8, 16}, max_n, [](std::size_t n) {
        const auto e = sii_q(branching_q({n, 1.0}));
        return labelled(std::to_string(n), display_sequence(shifts_of(e)));
    });
}

Table table7(std::size_t max_n) {
    return sized_table({8, 16, 50, 100, 500, 1000, 5000, 10000}, max_n, [](std::size_t n) {
        IterationConfig cfg;
        cfg.shift_strategy = ShiftStrategy::convex;
        const auto e = sii_q(branching_q({n, 1.75}), cfg);
        return labelled(std::to_string(n), display_sequence(shifts_of(e)));
    });
}

Table table8() {
    const auto a = example6();
    auto f1 = std::async(std::launch::async, [&] { return display_sequence(shifts_of(rqi_nonneg(a))); });
    auto f2 = std::async(std::launch::async, [&] { return display_sequence(shifts_of(sii_nonneg(a))); });
    const auto c1 = f1.get();
    const auto c2 = f2.get();
    Table t;
    t.header = {"n", "rqi", "sii"};
    for (std::size_t k = 0; k < std::max(c1.size(), c2.size()); ++k)
        t.rows.push_back({std::to_string(k + 1), k < c1.size() ? c1[k] : "", k < c2.size() ? c2[k] : ""});
    return t;
}

Table table9() {
    const auto ys = display_sequence(shifts_of(sii_complex(example9())));
    Table t;
    for (std::size_t k = 1; k <= ys.size(); ++k) t.header.push_back("y" + std::to_string(k));
    t.rows.push_back(ys);
    return t;
}

Table table10() {
    const auto a = example18();
    const auto tri = [a](Variant v) {
        const auto r = algorithm17(a, v);
        std::vector<double> zs;
        const auto& steps = r.eigenpair_for_qt.trace.steps;
        for (std::size_t i = 1; i < steps.size(); ++i) zs.push_back(r.m - steps[i].z);
        return display_sequence(zs);
    };
    std::vector<std::function<Row()>> jobs = {
        [a] { return labelled("rqi", display_sequence(shifts_of(rqi_nonneg(a)))); },
        [a] { return labelled("sii", display_sequence(shifts_of(sii_nonneg(a)))); },
        [tri] { return labelled("tri17a", tri(Variant::a)); },
        [tri] { return labelled("tri17b", tri(Variant::b)); },
    };
    return with_z_header("algorithm", run_rows(jobs));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

IterationConfig example1_table_config() {
    IterationConfig cfg;
    cfg.tol = 1e-9;
    cfg.stop_rule = StopRule::shift_delta;
    return cfg;
}

Table make_table(int id, std::size_t max_n) {
    switch (id) {
        case 1: return example1_table(false);
        case 2: return example1_table(true);
        case 4: return table4(max_n);
        case 6: return table6(max_n);
        case 7: return table7(max_n);
        case 8: return table8();
        case 9: return table9();
        case 10: return table10();
        case 3:
        case 5:
            throw InvalidArgument("table " + std::to_string(id) +
                                  " comes from an external initialization that is not implemented");
        default: throw InvalidArgument("table id must be one of 1, 2, 4, 6, 7, 8, 9, 10; got " + std::to_string(id));
    }
}

std::string format_table_csv(const Table& t) {
    std::string out;
    const auto line = [&](const Row& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            out += csv_field(r[i]);
        }
        out += '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return out;
}

std::string display6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string display6(Complex y) {
    const double mag = std::abs(y);
    if (std::abs(y.imag()) < 5e-6 * mag) return display6(y.real());
    const std::string im = display6(std::abs(y.imag()));
    return display6(y.real()) + (y.imag() < 0 ? "-" : "+") + im + "i";
}

std::vector<std::string> display_sequence(const std::vector<double>& zs) {
    std::vector<std::string> out;
    for (double z : zs) out.push_back(display6(z));
    while (out.size() > 1 && out.back() == out[out.size() - 2]) out.pop_back();
    return out;
}

std::vector<std::string> display_sequence(const std::vector<Complex>& ys) {
    std::vector<std::string> out;
    for (const auto& y : ys) out.push_back(display6(y));
    while (out.size() > 1 && out.back() == out[out.size() - 2]) out.pop_back();
    return out;
}

}  // namespace maxeig
