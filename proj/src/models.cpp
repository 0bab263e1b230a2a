#include "maxeig/models.hpp"

#include <cmath>
#include <string>

namespace maxeig {

std::string_view to_string(ARule r) {
    switch (r) {
        case ARule::reciprocal: return "reciprocal";
        case ARule::one: return "one";
        case ARule::linear: return "linear";
        case ARule::quadratic: return "quadratic";
    }
    return "?";
}

ARule parse_a_rule(std::string_view name) {
    for (ARule r : {ARule::reciprocal, ARule::one, ARule::linear, ARule::quadratic})
        if (name == to_string(r)) return r;
    throw InvalidArgument("unknown a-rule '" + std::string(name) + "'");
}

double a_rate(ARule r, std::size_t k) {
    const auto x = static_cast<double>(k);
    switch (r) {
        case ARule::reciprocal: return 1.0 / (x + 1.0);
        case ARule::one: return 1.0;
        case ARule::linear: return x;
        case ARule::quadratic: return x * x;
    }
    return 0.0;
}

Matrix single_birth_q(const SingleBirthSpec& spec) {
    const std::size_t n = spec.n;
    if (n < 2) throw InvalidArgument("single-birth model needs N >= 2");
    Matrix q(n);
    q(0, 0) = -1.0;
    q(0, 1) = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double a = a_rate(spec.a_rule, i);
        const auto up = static_cast<double>(i + 1);
        q(i, 0) = a;
        if (i + 1 < n) {
            q(i, i) = -a - up;
            q(i, i + 1) = up;
        } else {
            q(i, i) = -a - static_cast<double>(n);
        }
    }
    return q;
}

double branching_p(double alpha, std::size_t k) {
    if (k == 0) return alpha / 2.0;
    if (k == 1) return 0.0;
    return (2.0 - alpha) / std::ldexp(1.0, static_cast<int>(k));
}

double branching_tail(double alpha, std::size_t K) {
    if (K == 0) return 1.0;
    if (K == 1) return 1.0 - alpha / 2.0;
    return (2.0 - alpha) / std::ldexp(1.0, static_cast<int>(K - 1));
}

Matrix branching_q(const BranchingSpec& spec) {
    const std::size_t n = spec.n;
    const double alpha = spec.alpha;
    if (n < 2) throw InvalidArgument("branching model needs N >= 2");
    if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidArgument("branching model needs 0 < alpha < 2");
    Matrix q(n);
    const double p0 = branching_p(alpha, 0);
    // state i lives at row i - 1
    for (std::size_t i = 1; i < n; ++i) {
        const auto s = static_cast<double>(i);
        const std::size_t r = i - 1;
        if (i > 1) q(r, r - 1) = s * p0;
        q(r, r) = -s;
        for (std::size_t j = i + 1; j < n; ++j) q(r, j - 1) = s * branching_p(alpha, j - i + 1);
        q(r, n - 1) = s * branching_tail(alpha, n - i + 1);
    }
    const auto s = static_cast<double>(n);
    q(n - 1, n - 2) = s * p0;
    q(n - 1, n - 1) = -s * p0;
    return q;
}

Matrix example1(double b4) {
    if (!(b4 >= 0.0) || !std::isfinite(b4)) throw InvalidArgument("example1 needs a finite b4 >= 0");
    return Matrix{{-3, 2, 0, 1, 0},
                  {4, -7, 3, 0, 0},
                  {0, 5, -5, 0, 0},
                  {10, 0, 0, -16, 6},
                  {0, 0, 0, 11, -11 - b4}};
}

Matrix example6() {
    return Matrix{{-1, 8, -1}, {8, 8, 8}, {-1, 8, 8}};
}

ComplexMatrix example9() {
    using C = Complex;
    return ComplexMatrix{{C(0.75, -1.125), C(0.5882, -0.1471), C(1.0735, 1.4191)},
                         {C(-0.5, -1.0), C(2.1765, 0.7059), C(2.1471, -0.4118)},
                         {C(2.75, -0.125), C(0.5882, -0.1471), C(-0.9265, 0.4191)}};
}

Matrix example18() {
    return Matrix{{2.334, 0.9962, 0, 0, 0, 0},
                  {0.5142, 2.6725, 0.1111, 0, 0, 0},
                  {0, 0.2115, 2.263, 0.1405, 0, 0},
                  {0, 0, 0.8442, 2.8457, 0.7595, 0},
                  {0, 0, 0, 0.2347, 2.2257, 0.0781},
                  {0, 0, 0, 0, 0.9837, 2.1582}};
}

Fixture fixture(std::string_view name, std::optional<double> b4) {
    if (name == "example1") {
        if (!b4) throw InvalidArgument("example1 needs b4");
        return example1(*b4);
    }
    if (b4) throw InvalidArgument(std::string(name) + " takes no b4");
    if (name == "example6") return example6();
    if (name == "example9") return example9();
    if (name == "example18") return example18();
    throw InvalidArgument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace maxeig
