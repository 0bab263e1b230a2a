#include <doctest.h>

#include <cmath>
#include <random>

#include "maxeig/iterations.hpp"
#include "maxeig/models.hpp"
#include "maxeig/spectra.hpp"
#include "maxeig/tables.hpp"

using namespace maxeig;

namespace {

std::vector<double> zs(const Eigenpair& e) {
    std::vector<double> out;
    for (std::size_t i = 1; i < e.trace.steps.size(); ++i) out.push_back(e.trace.steps[i].z);
    return out;
}

void check_prefix(const std::vector<double>& got, std::initializer_list<double> printed, double tol) {
    REQUIRE(got.size() >= printed.size());
    std::size_t i = 0;
    for (double p : printed) {
        INFO("z(" << i + 1 << ")");
        CHECK(std::abs(got[i] - p) <= tol);
        ++i;
    }
}

Matrix random_primitive(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng) < 0.5 ? u(rng) : 0.0;
        a(i, (i + 1) % n) += 0.5;
        a(i, i) += 0.1;
    }
    return a;
}

}  // namespace

TEST_CASE("config validation") {
    IterationConfig c;
    c.tol = 0;
    CHECK_THROWS_AS(rqi_nonneg(example6(), c), InvalidArgument);
    c = {};
    c.max_iter = 0;
    CHECK_THROWS_AS(sii_nonneg(example6(), c), InvalidArgument);
    c = {};
    c.xi = 1.5;
    CHECK_THROWS_AS(sii_q(example1(1), c), InvalidArgument);
    c = {};
    c.shift_strategy = ShiftStrategy::cw_upper;
    CHECK_THROWS_AS(sii_q(example1(1), c), InvalidArgument);
}

TEST_CASE("rqi_nonneg on example 6") {
    const auto e = rqi_nonneg(example6());
    CHECK(e.converged());
    CHECK(e.trace.steps[0].z == 24.0);
    check_prefix(zs(e), {17.3772, 17.5124}, 5e-5);
    CHECK(e.value == doctest::Approx(17.5124).epsilon(5e-6));
}

TEST_CASE("sii_nonneg on example 6") {
    const auto e = sii_nonneg(example6());
    CHECK(e.converged());
    CHECK(e.trace.steps[0].z == 24.0);
    check_prefix(zs(e), {18.5316, 17.5416, 17.5124}, 5e-5);
    for (double x : e.vector) CHECK(x > 0.0);
    // printed maximal eigenvector, scaled so the last component is 1
    CHECK(e.vector[0] / e.vector[2] == doctest::Approx(0.486078).epsilon(1e-5));
    CHECK(e.vector[1] / e.vector[2] == doctest::Approx(1.24981).epsilon(1e-5));
}

TEST_CASE("rqi_q on example 1 (shift-difference stop)") {
    const auto cfg = example1_table_config();
    check_prefix(zs(rqi_q(example1(1), cfg)), {0.0251531, 0.0245175}, 5e-6);
    check_prefix(zs(rqi_q(example1(100), cfg)), {0.191729, 0.182822, 0.182819}, 5e-6);
    const auto e = rqi_q(example1(1e4), cfg);
    check_prefix(zs(e), {0.201695, 0.195019, 0.195015}, 5e-6);
    CHECK(e.value == doctest::Approx(0.195015).epsilon(1e-5));
}

TEST_CASE("sii_q on example 1") {
    const auto cfg = example1_table_config();
    const auto e = sii_q(example1(0.01), cfg);
    check_prefix(zs(e), {0.000278637, 0.000278686}, 5e-9);
    CHECK(e.value == doctest::Approx(0.000278686).epsilon(1e-5));
    check_prefix(zs(sii_q(example1(100), cfg)), {0.168776, 0.18275, 0.182819}, 5e-6);
}

TEST_CASE("sii_q on the single-birth model") {
    const auto e8 = sii_q(single_birth_q({8, ARule::reciprocal}));
    CHECK(e8.converged());
    check_prefix(zs(e8), {0.276727, 0.427307, 0.451902, 0.452339}, 5e-6);
    const auto e1000 = sii_q(single_birth_q({1000, ARule::reciprocal}));
    CHECK(e1000.trace.solves_performed == 6);
    CHECK(std::abs(e1000.value - 0.335010) < 5e-6);
}

TEST_CASE("sii_q on the branching model") {
    const auto e = sii_q(branching_q({8, 1.0}));
    check_prefix(zs(e), {0.0311491, 0.0346044, 0.0346310}, 5e-6);
    CHECK(zs(sii_q(branching_q({50, 1.0})))[0] < 1e-6);
}

TEST_CASE("convex initial shift") {
    const auto q = branching_q({8, 1.75});
    const std::size_t n = q.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = -q(i, j);
    const Vector ones(n, 1.0);
    const auto stats = ratio_stats(m, ones);
    const Vector v0(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const double rq = rayleigh_quotient(m, v0);
    CHECK(convex_initial_shift(q, 1.0) == doctest::Approx(stats.max).epsilon(1e-15));
    CHECK(convex_initial_shift(q, 0.0) == doctest::Approx(rq).epsilon(1e-15));

    IterationConfig cfg;
    cfg.shift_strategy = ShiftStrategy::convex;
    const auto e = sii_q(branching_q({100, 1.75}), cfg);
    CHECK(e.trace.solves_performed <= 4);
    // with xi = 0.69 the first iterates only agree with the printed run to ~2.5e-4
    check_prefix(zs(e), {0.606948, 0.623377, 0.624991, 0.625000}, 5e-4);
    CHECK(std::abs(e.value - 0.625) < 5e-6);
}

TEST_CASE("constant row sums short-circuit") {
    const Matrix ones{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    const auto e = rqi_nonneg(ones);
    CHECK(e.value == 3.0);
    CHECK(e.trace.solves_performed == 0);
    for (double x : e.vector) CHECK(x == doctest::Approx(1 / std::sqrt(3.0)));

    const auto five = sii_nonneg(Matrix{{5}});
    CHECK(five.value == 5.0);
    CHECK(five.trace.solves_performed == 0);
}

TEST_CASE("start at the Perron vector") {
    const Matrix a{{1, 1}, {4, 1}};
    IterationConfig cfg;
    cfg.initial_vector = Vector{1, 2};
    const auto e = sii_nonneg(a, cfg);
    CHECK(e.converged());
    CHECK(e.trace.solves_performed == 1);
    CHECK(std::abs(e.value - 3.0) < 1e-6);
}

TEST_CASE("tiny killing gives a small positive gap") {
    const double c = 1e-3;
    const Matrix q{{-1, 1, 0}, {1, -2, 1}, {0, 1, -1 - c}};
    const auto e = sii_q(q);
    CHECK(e.value > 0.0);
    CHECK(e.value <= c);
    double lmin = 1e300;
    for (const auto& l : eig_oracle(q)) lmin = std::min(lmin, -l.real());
    CHECK(e.value == doctest::Approx(lmin).epsilon(1e-6));
}

TEST_CASE("Q-matrix preconditions") {
    CHECK_THROWS_AS(sii_q(Matrix{{-1, -1}, {1, -1}}), InvalidArgument);
    CHECK_THROWS_AS(rqi_q(Matrix{{-1, 2}, {1, -1}}), RowSumViolation);
}

TEST_CASE("safe engines are monotone and bracket the radius") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 30; ++rep) {
        const auto a = random_primitive(rng, 2 + rep % 8);
        const double rho = spectral_radius_oracle(a);
        const auto e = sii_nonneg(a);
        CHECK(e.converged());
        const auto& s = e.trace.steps;
        for (std::size_t k = 1; k < s.size(); ++k) {
            CHECK(s[k].z <= s[k - 1].z * (1 + 1e-14));
            CHECK(s[k].x <= rho * (1 + 1e-12));
            CHECK(rho <= s[k].z * (1 + 1e-12));
            if (k >= 2) CHECK(s[k].x >= s[k - 1].x * (1 - 1e-14));
        }
        CHECK(std::abs(e.value - rho) < 1e-6 * (1 + rho));
    }
}

TEST_CASE("engines are deterministic") {
    const auto a = example18();
    const auto e1 = sii_nonneg(a);
    const auto e2 = sii_nonneg(a);
    REQUIRE(e1.trace.steps.size() == e2.trace.steps.size());
    for (std::size_t k = 0; k < e1.trace.steps.size(); ++k) {
        CHECK(e1.trace.steps[k].z == e2.trace.steps[k].z);
        CHECK(e1.trace.steps[k].v == e2.trace.steps[k].v);
    }
}

TEST_CASE("A and Q forms give complementary values") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const auto a = random_primitive(rng, 3 + rep % 5);
        const auto s = shift_a_to_q(a);
        const auto ea = sii_nonneg(a);
        const auto eq = sii_q(s.q);
        CHECK(std::abs((s.m - eq.value) - ea.value) < 1e-8);
    }
}

TEST_CASE("complex engine") {
    const auto e = sii_complex(example9());
    CHECK(e.converged());
    const auto& s = e.trace.steps;
    REQUIRE(s.size() >= 4);
    CHECK(std::abs(s[1].y - Complex(3.03949, -0.0451599)) < 5e-6);
    CHECK(std::abs(s[2].y - Complex(3.00471, -0.0015769)) < 5e-6);
    CHECK(std::abs(s[3].y - Complex(3.0, 0.0)) < 5e-4);

    // the exact matrix behind the 4-digit print has eigenvalues {3, -2-i, 1+i}
    using C = Complex;
    const ComplexMatrix exact{{C(0.75, -1.125), C(10, -2.5) / 17.0, C(18.25, 24.125) / 17.0},
                              {C(-0.5, -1), C(37, 12) / 17.0, C(36.5, -7) / 17.0},
                              {C(2.75, -0.125), C(10, -2.5) / 17.0, C(-15.75, 7.125) / 17.0}};
    const auto ev = eig_oracle(exact);
    CHECK(std::abs(ev[0] - C(3, 0)) < 1e-12);
    const auto ee = sii_complex(exact);
    CHECK(std::abs(ee.value - C(3, 0)) < 1e-5);
    // eigenvector direction (1, 2, 1)
    const C ratio = ee.vector[1] / ee.vector[0];
    CHECK(std::abs(ratio - C(2, 0)) < 1e-5);

    // real primitive input treated as complex
    const auto ec = sii_complex(to_complex(example18()));
    CHECK(std::abs(ec.value - C(sii_nonneg(example18()).value, 0)) < 1e-8);

    IterationConfig bad;
    bad.stop_rule = StopRule::ratio_gap;
    CHECK_THROWS_AS(sii_complex(example9(), bad), InvalidArgument);
}

TEST_CASE("max_iter is reported") {
    IterationConfig cfg;
    cfg.max_iter = 1;
    const auto e = sii_nonneg(example6(), cfg);
    CHECK(e.trace.stop_reason == StopReason::max_iter);
    CHECK_FALSE(e.converged());
    CHECK(e.trace.steps.size() == 2);
}
