#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "maxeig/linalg.hpp"

namespace maxeig {

/// Outcome of a power-positivity search.
///
/// When `primitive` is set, A^k is entrywise positive for every
/// k in [n0, 2 n0 - 1], which is enough for A^n > 0 at every n >= n0.
struct PrimitivityReport {
    bool primitive = false;
    std::optional<std::size_t> n0;
    std::size_t checked_up_to = 0;
};

/// Wielandt's bound 2(n-1)^2 + 1 on the exponent of a primitive matrix.
std::size_t default_primitivity_cap(std::size_t n);

/// Entries of a power count as positive when they exceed this fraction of
/// the power's largest magnitude.
inline constexpr double kPositivityFloor = 1e-14;

/// Works for real matrices with negative entries too: only the powers are tested.
PrimitivityReport is_primitive(const Matrix& a, std::optional<std::size_t> cap = std::nullopt);

/// Positivity applied to Re(A^k); additionally requires A^k != 0 up to
/// `checked_up_to`. Finite caps can give false negatives.
PrimitivityReport is_complex_admissible(const ComplexMatrix& a,
                                        std::optional<std::size_t> cap = std::nullopt);

struct Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Collatz-Wielandt bracket min_i (Ax)_i/x_i <= rho(A) <= max_i (Ax)_i/x_i for x > 0.
Bounds cw_bounds(const Matrix& a, std::span<const double> x);
/// Bracket built from Re(A).
Bounds complex_cw_bounds(const ComplexMatrix& a, std::span<const double> x);

struct ShiftedQ {
    Matrix q;
    double m = 0.0;
};

/// Q = A - mI with m the largest row sum of A.
ShiftedQ shift_a_to_q(const Matrix& a);

inline constexpr std::size_t kEigOracleMaxSize = 12;

/// Full spectrum, sorted by decreasing real part (ties by decreasing imaginary part).
/// Test oracle only; throws InvalidArgument above kEigOracleMaxSize.
std::vector<Complex> eig_oracle(const Matrix& a);
std::vector<Complex> eig_oracle(const ComplexMatrix& a);

/// Largest modulus over eig_oracle's spectrum.
double spectral_radius_oracle(const Matrix& a);

}  // namespace maxeig
