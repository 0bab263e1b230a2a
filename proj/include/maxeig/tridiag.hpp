#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxeig/iterations.hpp"
#include "maxeig/linalg.hpp"

namespace maxeig {

/// Tridiagonal Q-matrix on states 0..N:
///
///   row 0      : -(b_0 + c_0)          b_0
///   row n      : a_n   -(a_n + b_n + c_n)   b_n
///   row N      : a_N   -(a_N + b_N + c_N)
///
/// a[0] is unused and kept at 0 so indices match the states. b[N] is the
/// last-row killing rate of the reduced form (c = 0); a Step-1 style matrix
/// carries its last-row killing in c[N] with b[N] = 0. Either way the
/// last-row killing is b[N] + c[N].
class TridiagonalQ {
public:
    /// Validates a_n > 0 (n >= 1), b_n > 0 (n < N), b_N >= 0, c >= 0 and
    /// some killing somewhere. Throws InvalidArgument otherwise.
    TridiagonalQ(Vector a, Vector b, Vector c);

    /// Extracts the rates of a tridiagonal dense Q. Off-band entries must be
    /// exactly zero; killing rates below 1e-12 in magnitude are taken as 0.
    static TridiagonalQ from_dense(const Matrix& q);

    std::size_t last() const noexcept { return b_.size() - 1; }  // N
    std::size_t size() const noexcept { return b_.size(); }      // N + 1

    const Vector& a() const noexcept { return a_; }
    const Vector& b() const noexcept { return b_; }
    const Vector& c() const noexcept { return c_; }

    double diagonal(std::size_t i) const noexcept { return -(a_[i] + b_[i] + c_[i]); }
    double last_killing() const noexcept { return b_.back() + c_.back(); }
    /// True when c_0 = ... = c_{N-1} = 0 and c_N = 0, i.e. the reduced form.
    bool is_reduced() const noexcept;

    Matrix to_dense() const;
    /// The system (-Q - zI).
    Tridiagonal<double> negated_shifted(double z) const;
    /// -Q v.
    Vector apply_negated(std::span<const double> v) const;

private:
    Vector a_;
    Vector b_;
    Vector c_;
};

/// h-sequence of the H-transform.
struct HData {
    Vector r;  ///< r_0..r_{N-1}
    Vector h;  ///< h_0..h_N, h_0 = 1
    double h_next = 0.0;  ///< h_{N+1}
    bool degenerate = false;
};

/// mu, phi and delta_1 for a reduced-form matrix.
///
/// mu is stored divided by exp(log_scale) and phi multiplied by it; every
/// quantity the iteration uses is invariant under that rescaling.
struct MuPhi {
    Vector mu;
    Vector phi;
    double delta1 = 0.0;
    double log_scale = 0.0;
};

inline constexpr double kMuOverflowLimit = 1e280;

/// h_0 = 1, h_n = h_{n-1} r_{n-1} with r_0 = 1 + c_0/b_0,
/// r_n = 1 + (a_n + c_n)/b_n - a_n/(b_n r_{n-1}); h_{N+1} = k_N h_N + a_N (h_N - h_{N-1})
/// where k_N is the last-row killing. Throws NonpositiveR when some r_n <= 0.
HData compute_h(const TridiagonalQ& q);

/// Diag(h)^{-1} Q Diag(h), returned in reduced form.
TridiagonalQ h_transform(const TridiagonalQ& q, const HData& h);

/// Requires the reduced form. Throws OverflowGuard if mu cannot be represented.
MuPhi compute_mu_phi(const TridiagonalQ& qt);

/// delta_k(v) = max_i (1/v_i) [phi_i sum_{j<=i} mu_j v_j + sum_{j>i} mu_j phi_j v_j].
/// Its inverse is a lower bound for lambda_min(-Q) whenever v > 0.
double delta_k(const TridiagonalQ& qt, const MuPhi& mp, std::span<const double> v);

enum class Variant { a, b };

struct Algo17Result {
    Eigenpair eigenpair_for_qt;  ///< value = lambda_min(-Q~), vector unit in L2(mu)
    double rho_a = 0.0;          ///< m - lambda_min
    Vector g;                    ///< Diag(h) v, eigenvector of the original matrix
    Variant variant = Variant::a;
    HData h_used;
    MuPhi mu_phi;
    double m = 0.0;
};

/// The modified tridiagonal algorithm. `m` is the shift that produced q from
/// a nonnegative A (q = A - mI); rho_a = m - lambda_min(-Q).
Algo17Result algorithm17(const TridiagonalQ& q, Variant variant, const IterationConfig& cfg = {},
                         double m = 0.0);

/// Shifts a tridiagonal nonnegative A to Q = A - mI and runs algorithm17.
/// Throws InvalidArgument if A is not tridiagonal.
Algo17Result algorithm17(const Matrix& a, Variant variant, const IterationConfig& cfg = {});

}  // namespace maxeig
