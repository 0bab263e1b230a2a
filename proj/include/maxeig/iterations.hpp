#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "maxeig/linalg.hpp"

namespace maxeig {

/// How the shift z(n) is chosen after each solve.
enum class ShiftStrategy {
    rayleigh,  ///< z = Rayleigh quotient (Algorithms 1 and 3)
    cw_upper,  ///< z = max_j (A w)_j / w_j
    cw_lower,  ///< z = min_j (M w)_j / w_j, M = -Q
    convex,    ///< cw_lower updates from a blended initial shift
};

enum class StopRule {
    ratio_gap,        ///< max ratio - min ratio < tol, with shift_delta as fallback from n = 2
    shift_delta,      ///< |z(n) - z(n-1)| < tol
    complex_y_delta,  ///< |y(n) - y(n-1)| < tol, n >= 2
};

enum class StopReason { converged_gap, converged_delta, max_iter, singular_stop };

enum class Algorithm { rqi_nonneg, sii_nonneg, rqi_q, sii_q, sii_complex, tri17a, tri17b };

std::string_view to_string(ShiftStrategy s);
std::string_view to_string(StopRule r);
std::string_view to_string(StopReason r);
std::string_view to_string(Algorithm a);

inline constexpr double kDefaultXi = 0.69;

struct IterationConfig {
    double tol = 1e-6;
    std::size_t max_iter = 100;
    /// Unset means the engine's own strategy. sii_q also accepts `convex`.
    std::optional<ShiftStrategy> shift_strategy;
    double xi = kDefaultXi;
    /// Unset means ratio_gap for real engines and complex_y_delta for the complex one.
    std::optional<StopRule> stop_rule;
    /// Replaces the constant starting vector w(0) = 1 of the real engines.
    std::optional<Vector> initial_vector;

    /// Throws InvalidArgument on tol <= 0, max_iter == 0 or xi outside [0, 1].
    void validate() const;
};

/// One row of a trace. n = 0 holds the initial vector and shift.
///
/// Field roles follow the algorithm that produced the step:
///   rqi_nonneg, rqi_q : x = min ratio, y = max ratio, z = Rayleigh quotient
///   sii_nonneg        : x = min ratio, y = Rayleigh quotient, z = max ratio
///   sii_q             : x = max ratio, y = Rayleigh quotient, z = min ratio
///   sii_complex       : x = min ratio of Re(A) on Re(w), y = v^H A v, z = max ratio
///   tri17a, tri17b    : x = 1/delta_k (NaN when v is not positive),
///                       y = (v, -Q v)_mu, z = shift for the next solve
template <class T>
struct BasicIterationStep {
    std::size_t n = 0;
    double x = 0.0;
    T y{};
    double z = 0.0;
    std::vector<T> v;
    /// Normwise backward error of the solve that produced this step (0 at n = 0).
    double residual = 0.0;
};

template <class T>
struct BasicIterationTrace {
    std::vector<BasicIterationStep<T>> steps;
    StopReason stop_reason = StopReason::max_iter;
    std::size_t solves_performed = 0;
};

template <class T>
struct BasicEigenpair {
    T value{};
    std::vector<T> vector;
    Algorithm algorithm = Algorithm::rqi_nonneg;
    BasicIterationTrace<T> trace;
    /// y of the final step, kept for diagnostics.
    T final_y{};

    bool converged() const noexcept {
        return trace.stop_reason == StopReason::converged_gap ||
               trace.stop_reason == StopReason::converged_delta;
    }
};

using IterationStep = BasicIterationStep<double>;
using IterationTrace = BasicIterationTrace<double>;
using Eigenpair = BasicEigenpair<double>;
using ComplexIterationStep = BasicIterationStep<Complex>;
using ComplexIterationTrace = BasicIterationTrace<Complex>;
using ComplexEigenpair = BasicEigenpair<Complex>;

/// Shifted solves are accepted when ||r|| / (||M|| ||w|| + ||rhs||) stays
/// below this after at most one refinement step.
inline constexpr double kBackwardErrorTolerance = 1e-10;

/// Rayleigh quotient shifts for the maximal eigenpair of A.
Eigenpair rqi_nonneg(const Matrix& a, const IterationConfig& cfg = {});

/// Shifts are Collatz-Wielandt upper bounds, so every iterate
/// stays positive, z(n) is nonincreasing and x(n) nondecreasing.
Eigenpair sii_nonneg(const Matrix& a, const IterationConfig& cfg = {});

/// Minimal eigenpair of -Q with Rayleigh quotient shifts.
Eigenpair rqi_q(const Matrix& q, const IterationConfig& cfg = {});

/// Minimal eigenpair of -Q with Collatz-Wielandt lower-bound shifts.
/// With shift_strategy = convex the first shift is convex_initial_shift(q, cfg.xi).
Eigenpair sii_q(const Matrix& q, const IterationConfig& cfg = {});

/// Shifted inverse iteration for complex A satisfying Re(A^n) > 0 eventually.
/// The value is y(n); z(n) is only a shift and need not converge to rho(A).
ComplexEigenpair sii_complex(const ComplexMatrix& a, const IterationConfig& cfg = {});

/// Blended first shift for sii_q. In A = Q + mI coordinates this is
/// xi * min_j (A 1)_j + (1 - xi) * v0^T A v0; in Q coordinates it reads
/// xi * max_j ((-Q) 1)_j + (1 - xi) * v0^T (-Q) v0 with v0 = 1 / sqrt(n).
double convex_initial_shift(const Matrix& q, double xi);

}  // namespace maxeig
