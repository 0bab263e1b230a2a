#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include <json.hpp>

#include "maxeig/io.hpp"
#include "maxeig/models.hpp"

using namespace maxeig;

TEST_CASE("dense round trip is bit exact") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    Matrix m(7);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) m(i, j) = u(rng) * std::pow(10.0, static_cast<double>(i) - 3.0);
    m(0, 0) = 0.1;
    m(1, 1) = -0.0;
    m(2, 2) = 5e-324;
    const auto back = std::get<Matrix>(parse_matrix_file(format_matrix_file(m)));
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) CHECK(std::bit_cast<std::uint64_t>(back(i, j)) == std::bit_cast<std::uint64_t>(m(i, j)));

    const auto q = branching_q({30, 1.75});
    CHECK(std::get<Matrix>(parse_matrix_file(format_matrix_file(q))) == q);
}

TEST_CASE("complex and tridiagonal round trips") {
    const auto a9 = example9();
    CHECK(std::get<ComplexMatrix>(parse_matrix_file(format_matrix_file(a9))) == a9);

    const TridiagonalQ t({0, 0.5, 1.0 / 3}, {1, 2, 0}, {0, 0.1, 7});
    const auto back = std::get<TridiagonalQ>(parse_matrix_file(format_matrix_file(t)));
    CHECK(back.a() == t.a());
    CHECK(back.b() == t.b());
    CHECK(back.c() == t.c());
}

TEST_CASE("file form") {
    const auto parsed = parse_matrix_file(R"({"kind":"dense","rows":[[1,2],[3,4]]})");
    CHECK(std::get<Matrix>(parsed) == Matrix{{1, 2}, {3, 4}});
    const auto c = parse_matrix_file(R"({"kind":"dense_complex","rows":[[[1,2]]]})");
    CHECK(std::get<ComplexMatrix>(c)(0, 0) == Complex(1, 2));
    const auto t = parse_matrix_file(R"({"kind":"tridiagonal","a":[1],"b":[1,0],"c":[0,1]})");
    CHECK(std::get<TridiagonalQ>(t).to_dense() == Matrix{{-1, 1}, {1, -2}});

    const auto path = std::filesystem::temp_directory_path() / "maxeig_test_io.json";
    save_matrix_file(path, example6());
    CHECK(std::get<Matrix>(load_matrix_file(path)) == example6());
    std::filesystem::remove(path);
}

TEST_CASE("parse errors name the offending token") {
    const auto message = [](std::string_view text) {
        try {
            parse_matrix_file(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(R"({"kind":"dense","rows":[[1,2],[3,"x"]]})").find("rows[1][1]") != std::string::npos);
    CHECK(message(R"({"kind":"dense","rows":[[1,2],[3,"x"]]})").find("\"x\"") != std::string::npos);
    CHECK(message(R"({"kind":"dense","rows":[[1,2],[3]]})").find("rows[1]") != std::string::npos);
    CHECK(message(R"({"kind":"sparse","rows":[]})").find("sparse") != std::string::npos);
    CHECK(message(R"({"rows":[[1]]})").find("kind") != std::string::npos);
    CHECK(message(R"({"kind":"dense","rows":[[1,tru]]})").find("tru") != std::string::npos);
    CHECK(message(R"({"kind":"dense_complex","rows":[[[1]]]})").find("rows[0][0]") != std::string::npos);
    CHECK(message(R"({"kind":"tridiagonal","a":[1],"b":[1],"c":[0,1]})").find("b:") != std::string::npos);
    CHECK(message(R"({"kind":"tridiagonal","a":[-1],"b":[1,0],"c":[0,1]})").find("a[1]") != std::string::npos);
    CHECK_THROWS_AS(load_matrix_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("trace JSON") {
    const auto e = sii_nonneg(example6());
    const auto text = format_trace_json(make_report(e));
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["algorithm"] == "sii");
    CHECK(doc["converged"] == true);
    CHECK(doc["solves"] == e.trace.solves_performed);
    CHECK(doc["value"].get<double>() == e.value);
    CHECK(doc["steps"].size() == e.trace.steps.size());
    CHECK(doc["steps"][1]["z"].get<double>() == e.trace.steps[1].z);
    CHECK(text == format_trace_json(make_report(sii_nonneg(example6()))));

    const auto c = format_trace_json(make_report(sii_complex(example9())));
    const auto dc = nlohmann::json::parse(c);
    CHECK(dc["value"].is_array());
    CHECK(dc["steps"][1]["y"][0].get<double>() == doctest::Approx(3.03949).epsilon(1e-5));

    const auto r = algorithm17(example18(), Variant::b);
    const auto dt = nlohmann::json::parse(format_trace_json(make_report(r, true)));
    CHECK(dt["value"].get<double>() == r.rho_a);
    CHECK(dt["shift_m"].get<double>() == r.m);
    CHECK(dt["lambda_min"].get<double>() == r.eigenpair_for_qt.value);
}

TEST_CASE("trace JSON writes non-finite numbers as null") {
    SolveReport r;
    r.rows.push_back({0, std::nan(""), Complex(1, 0), 2.0});
    const auto doc = nlohmann::json::parse(format_trace_json(r));
    CHECK(doc["steps"][0]["x"].is_null());
}

TEST_CASE("trace CSV") {
    const auto e = rqi_nonneg(example6());
    const auto csv = format_trace_csv(make_report(e));
    CHECK(csv.rfind("n,x,y_re,y_im,z,stop_reason,solves\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == e.trace.steps.size() + 1);
    CHECK(csv.find("converged_") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("format_double keeps 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
