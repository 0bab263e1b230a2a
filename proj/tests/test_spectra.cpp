#include <doctest.h>

#include <cmath>
#include <random>

#include "maxeig/models.hpp"
#include "maxeig/spectra.hpp"

using namespace maxeig;

TEST_CASE("primitivity") {
    const auto r6 = is_primitive(example6());
    CHECK(r6.primitive);
    REQUIRE(r6.n0.has_value());
    CHECK(*r6.n0 == 2);

    const auto id = is_primitive(Matrix::identity(2), 50);
    CHECK_FALSE(id.primitive);
    CHECK_FALSE(id.n0.has_value());

    const auto ones = is_primitive(Matrix{{1, 1}, {1, 1}});
    CHECK(ones.primitive);
    CHECK(*ones.n0 == 1);

    // nilpotent: powers vanish
    CHECK_FALSE(is_primitive(Matrix{{0, 1}, {0, 0}}).primitive);
    // irreducible but periodic
    CHECK_FALSE(is_primitive(Matrix{{0, 1}, {1, 0}}).primitive);
    // Wielandt matrix reaches the (n-1)^2 + 1 bound
    const Matrix w{{0, 1, 0}, {0, 0, 1}, {1, 1, 0}};
    const auto rw = is_primitive(w);
    CHECK(rw.primitive);
    CHECK(*rw.n0 == 5);

    CHECK_THROWS_AS(is_primitive(Matrix{}), InvalidArgument);
}

TEST_CASE("complex admissibility") {
    CHECK(is_complex_admissible(example9(), 10).primitive);
    const ComplexMatrix di{{Complex(0, 1), 0}, {0, Complex(0, 1)}};
    CHECK_FALSE(is_complex_admissible(di).primitive);

    const auto real = example6();
    const auto rc = is_complex_admissible(to_complex(real));
    CHECK(rc.primitive);
    CHECK(rc.n0 == is_primitive(real).n0);
}

TEST_CASE("Collatz-Wielandt bounds") {
    const Vector ones3(3, 1.0);
    const auto b6 = cw_bounds(example6(), ones3);
    CHECK(b6.upper == 24.0);
    CHECK(b6.lower == 6.0);

    const Vector ones2(2, 1.0);
    const auto b2 = cw_bounds(Matrix{{0, 2}, {2, 0}}, ones2);
    CHECK(b2.lower == 2.0);
    CHECK(b2.upper == 2.0);

    const Vector g{1, 2};
    const auto bg = cw_bounds(Matrix{{1, 1}, {4, 1}}, g);
    CHECK(bg.lower == 3.0);
    CHECK(bg.upper == 3.0);

    const Vector bad{1, 0};
    CHECK_THROWS_AS(cw_bounds(Matrix{{1, 1}, {1, 1}}, bad), InvalidArgument);
}

TEST_CASE("Collatz-Wielandt bounds bracket the spectral radius") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 2 + rep % 9;
        Matrix a(n);
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 0.1 + u(rng);
            for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng) < 0.6 ? u(rng) : 0.0;
            a(i, (i + 1) % n) += 0.5;  // irreducible
        }
        const auto b = cw_bounds(a, x);
        const double rho = spectral_radius_oracle(a);
        CHECK(b.lower <= rho * (1 + 1e-12));
        CHECK(rho <= b.upper * (1 + 1e-12));
    }
}

TEST_CASE("complex Collatz-Wielandt bounds use real parts") {
    const Vector ones(3, 1.0);
    const auto a9 = example9();
    const auto b = complex_cw_bounds(a9, ones);
    double upper = -1e300;
    for (std::size_t i = 0; i < 3; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 3; ++j) s += a9(i, j).real();
        upper = std::max(upper, s);
    }
    CHECK(b.upper == upper);

    const ComplexMatrix d{{Complex(1, 1), 0}, {0, Complex(1, -1)}};
    const Vector ones2(2, 1.0);
    const auto bd = complex_cw_bounds(d, ones2);
    CHECK(bd.lower == 1.0);
    CHECK(bd.upper == 1.0);

    const auto real = example6();
    const auto br = complex_cw_bounds(to_complex(real), ones);
    const auto bw = cw_bounds(real, ones);
    CHECK(br.lower == bw.lower);
    CHECK(br.upper == bw.upper);
}

TEST_CASE("shift_a_to_q") {
    const auto s = shift_a_to_q(example18());
    CHECK(s.m == doctest::Approx(4.4494).epsilon(1e-14));
    const auto sums = row_sums(s.q);
    for (double x : sums) CHECK(x <= 1e-15);

    const Matrix c{{1, 2}, {2, 1}};
    const auto sc = shift_a_to_q(c);
    CHECK(sc.m == 3.0);
    for (double x : row_sums(sc.q)) CHECK(x == 0.0);

    const auto z = shift_a_to_q(Matrix(3));
    CHECK(z.m == 0.0);
    CHECK(z.q == Matrix(3));

    // adding m back: exact wherever the subtraction was exact
    const auto a = example6();
    const auto s6 = shift_a_to_q(a);
    for (std::size_t i = 0; i < 3; ++i) CHECK(s6.q(i, i) + s6.m == a(i, i));
    const auto a18 = example18();
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(std::abs((s.q(i, i) + s.m) - a18(i, i)) <= std::nextafter(s.m, 1e300) - s.m);
}

TEST_CASE("eig_oracle") {
    const auto e6 = eig_oracle(example6());
    REQUIRE(e6.size() == 3);
    CHECK(e6[0].real() == doctest::Approx(17.5124).epsilon(5e-6));
    CHECK(e6[1].real() == doctest::Approx(4.95513).epsilon(5e-6));
    CHECK(e6[2].real() == doctest::Approx(-7.4675).epsilon(5e-6));

    const double printed[] = {3.26753, 3.16247, 2.40182, 2.12632, 1.80416, 1.73679};
    const auto e18 = eig_oracle(example18());
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(e18[i].real() == doctest::Approx(printed[i]).epsilon(5e-6));
        CHECK(std::abs(e18[i].imag()) < 1e-12);
    }

    const auto d = eig_oracle(Matrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    CHECK(d[0].real() == 3.0);
    CHECK(d[2].real() == 1.0);

    CHECK_THROWS_AS(eig_oracle(Matrix(13)), InvalidArgument);
}
