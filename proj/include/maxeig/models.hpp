#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>

#include "maxeig/linalg.hpp"

namespace maxeig {

enum class ARule { reciprocal, one, linear, quadratic };

std::string_view to_string(ARule r);
/// Throws InvalidArgument on an unknown name.
ARule parse_a_rule(std::string_view name);
double a_rate(ARule r, std::size_t k);

/// Single-birth generator on states 0..N-1 (N is the matrix dimension).
struct SingleBirthSpec {
    std::size_t n = 2;
    ARule a_rule = ARule::reciprocal;
};

/// Killed branching generator on states 1..N, offspring law
/// p_0 = alpha/2, p_1 = 0, p_k = (2 - alpha)/2^k.
struct BranchingSpec {
    std::size_t n = 2;
    double alpha = 1.0;
};

/// row 0: (-1, 1); row i: a_i at column 0, diagonal -a_i - (i+1), i+1 above it;
/// last row i = N-1: a_i at column 0, diagonal -a_i - N.
/// Rows 0..N-2 sum to 0 and the last row to -N. Throws InvalidArgument if N < 2.
Matrix single_birth_q(const SingleBirthSpec& spec);

/// Row i < N: i p_0 left of the diagonal, -i on it, i p_{j-i+1} at j < N and
/// the tail mass i sum_{k >= N-i+1} p_k in the last column. Row N: N p_0, -N p_0.
/// Row 1 loses p_0 to the removed state 0; every other row sums to 0.
Matrix branching_q(const BranchingSpec& spec);

/// p_k of the branching law.
double branching_p(double alpha, std::size_t k);
/// sum_{k >= K} p_k in closed form.
double branching_tail(double alpha, std::size_t K);

/// The printed example matrices.
Matrix example1(double b4);
Matrix example6();
ComplexMatrix example9();
Matrix example18();

using Fixture = std::variant<Matrix, ComplexMatrix>;

/// name in {example1, example6, example9, example18}; example1 needs b4.
/// Throws InvalidArgument on an unknown name or a missing/extra b4.
Fixture fixture(std::string_view name, std::optional<double> b4 = std::nullopt);

}  // namespace maxeig
