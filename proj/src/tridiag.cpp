#include "maxeig/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "maxeig/spectra.hpp"

namespace maxeig {

namespace {

constexpr double kKillingClamp = 1e-12;

bool is_tridiagonal(const Matrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if ((i > j + 1 || j > i + 1) && m(i, j) != 0.0) return false;
    return true;
}

}  // namespace

TridiagonalQ::TridiagonalQ(Vector a, Vector b, Vector c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    const std::size_t n = b_.size();
    if (n < 2) throw InvalidArgument("tridiagonal Q needs N >= 1 (at least two states)");
    if (a_.size() != n) throw DimensionMismatch(n, a_.size());
    if (c_.size() != n) throw DimensionMismatch(n, c_.size());
    if (a_[0] != 0.0) throw InvalidArgument("a[0] is unused and must be 0");
    double killing = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(a_[i] > 0.0)) throw InvalidArgument("a[" + std::to_string(i) + "] must be positive");
        if (i + 1 < n && !(b_[i] > 0.0)) throw InvalidArgument("b[" + std::to_string(i) + "] must be positive");
        if (!(c_[i] >= 0.0) || !std::isfinite(c_[i])) throw InvalidArgument("c[" + std::to_string(i) + "] must be nonnegative");
        if (!std::isfinite(a_[i]) || !std::isfinite(b_[i])) throw NonFinite("tridiagonal rate is not finite");
        killing += c_[i];
    }
    if (!(b_.back() >= 0.0)) throw InvalidArgument("b[N] must be nonnegative");
    killing += b_.back();
    if (!(killing > 0.0)) throw InvalidArgument("tridiagonal Q has no killing (c and b[N] all zero)");
}

TridiagonalQ TridiagonalQ::from_dense(const Matrix& q) {
    const std::size_t n = q.size();
    if (n < 2) throw InvalidArgument("tridiagonal Q needs at least two states");
    if (!is_tridiagonal(q)) throw InvalidArgument("matrix is not tridiagonal");
    Vector a(n, 0.0), b(n, 0.0), c(n, 0.0);
    const auto sums = row_sums(q);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) a[i] = q(i, i - 1);
        if (i + 1 < n) b[i] = q(i, i + 1);
        double kill = -sums[i];
        if (std::abs(kill) < kKillingClamp * std::max(1.0, std::abs(q(i, i)))) kill = 0.0;
        if (kill < 0.0) throw RowSumViolation(i, sums[i]);
        c[i] = kill;
    }
    return TridiagonalQ(std::move(a), std::move(b), std::move(c));
}

bool TridiagonalQ::is_reduced() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](double x) { return x == 0.0; });
}

Matrix TridiagonalQ::to_dense() const {
    const std::size_t n = size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = diagonal(i);
        if (i > 0) m(i, i - 1) = a_[i];
        if (i + 1 < n) m(i, i + 1) = b_[i];
    }
    return m;
}

Tridiagonal<double> TridiagonalQ::negated_shifted(double z) const {
    const std::size_t n = size();
    Tridiagonal<double> t{Vector(n, 0.0), Vector(n), Vector(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        t.diag[i] = -diagonal(i) - z;
        if (i > 0) t.lower[i] = -a_[i];
        if (i + 1 < n) t.upper[i] = -b_[i];
    }
    return t;
}

Vector TridiagonalQ::apply_negated(std::span<const double> v) const {
    return negated_shifted(0.0).apply(v);
}

// ---------------------------------------------------------------------------

HData compute_h(const TridiagonalQ& q) {
    const std::size_t N = q.last();
    const auto& a = q.a();
    const auto& b = q.b();
    const auto& c = q.c();

    HData out;
    out.degenerate = std::all_of(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(N),
                                 [](double x) { return x == 0.0; });
    if (out.degenerate) {
        out.r.assign(N, 1.0);
        out.h.assign(N + 1, 1.0);
        out.h_next = q.last_killing();
        return out;
    }

    out.r.resize(N);
    out.r[0] = 1.0 + c[0] / b[0];
    for (std::size_t n = 1; n < N; ++n)
        out.r[n] = 1.0 + (a[n] + c[n]) / b[n] - a[n] / (b[n] * out.r[n - 1]);
    for (std::size_t n = 0; n < N; ++n)
        if (!(out.r[n] > 0.0)) throw NonpositiveR(n);

    out.h.resize(N + 1);
    out.h[0] = 1.0;
    for (std::size_t n = 1; n <= N; ++n) out.h[n] = out.h[n - 1] * out.r[n - 1];
    out.h_next = q.last_killing() * out.h[N] + a[N] * (out.h[N] - out.h[N - 1]);
    return out;
}

TridiagonalQ h_transform(const TridiagonalQ& q, const HData& h) {
    const std::size_t N = q.last();
    if (h.h.size() != N + 1) throw DimensionMismatch(N + 1, h.h.size());
    Vector a(N + 1, 0.0), b(N + 1, 0.0);
    for (std::size_t n = 1; n <= N; ++n) a[n] = q.a()[n] * h.h[n - 1] / h.h[n];
    for (std::size_t n = 0; n < N; ++n) b[n] = q.b()[n] * h.h[n + 1] / h.h[n];
    b[N] = h.h_next / h.h[N];
    return TridiagonalQ(std::move(a), std::move(b), Vector(N + 1, 0.0));
}

MuPhi compute_mu_phi(const TridiagonalQ& qt) {
    if (!qt.is_reduced()) throw InvalidArgument("mu/phi need the reduced form (killing only in b[N])");
    const std::size_t N = qt.last();
    const auto& a = qt.a();
    const auto& b = qt.b();
    if (!(b[N] > 0.0)) throw InvalidArgument("reduced form needs b[N] > 0");

    // log mu, centered so that both mu and 1/mu stay representable.
    Vector log_mu(N + 1, 0.0);
    for (std::size_t n = 1; n <= N; ++n) log_mu[n] = log_mu[n - 1] + std::log(b[n - 1]) - std::log(a[n]);
    const auto [lo, hi] = std::minmax_element(log_mu.begin(), log_mu.end());
    const double center = 0.5 * (*lo + *hi);
    if (*hi - center > std::log(kMuOverflowLimit))
        throw OverflowGuard("mu spans more than the representable range; N = " + std::to_string(N));

    MuPhi out;
    out.log_scale = center;
    out.mu.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) out.mu[n] = std::exp(log_mu[n] - center);

    out.phi.assign(N + 1, 0.0);
    double tail = 0.0;
    for (std::size_t k = N + 1; k-- > 0;) {
        tail += 1.0 / (out.mu[k] * b[k]);
        out.phi[k] = tail;
    }

    // delta_1 = max_n [ sqrt(phi_n) S1(n) + S2(n) / sqrt(phi_n) ],
    // S1(n) = sum_{k<=n} mu_k sqrt(phi_k), S2(n) = sum_{j>n} mu_j phi_j^{3/2}.
    Vector s2(N + 1, 0.0);
    for (std::size_t n = N; n-- > 0;)
        s2[n] = s2[n + 1] + out.mu[n + 1] * out.phi[n + 1] * std::sqrt(out.phi[n + 1]);
    double s1 = 0.0;
    double best = 0.0;
    for (std::size_t n = 0; n <= N; ++n) {
        const double sq = std::sqrt(out.phi[n]);
        s1 += out.mu[n] * sq;
        best = std::max(best, sq * s1 + s2[n] / sq);
    }
    out.delta1 = best;
    return out;
}

double delta_k(const TridiagonalQ& qt, const MuPhi& mp, std::span<const double> v) {
    const std::size_t n = qt.size();
    if (v.size() != n) throw DimensionMismatch(n, v.size());
    if (mp.mu.size() != n || mp.phi.size() != n) throw DimensionMismatch(n, mp.mu.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == 0.0) throw ZeroComponent(i);
        if (v[i] < 0.0) throw PositivityViolation(0, i);
    }
    // suffix[i] = sum_{j>i} mu_j phi_j v_j
    Vector suffix(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;) suffix[i] = suffix[i + 1] + mp.mu[i + 1] * mp.phi[i + 1] * v[i + 1];
    double prefix = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        prefix += mp.mu[i] * v[i];
        best = std::max(best, (mp.phi[i] * prefix + suffix[i]) / v[i]);
    }
    return best;
}

// ---------------------------------------------------------------------------

namespace {

struct TriSolved {
    Vector w;
    double backward_error = 0.0;
};

double tri_backward_error(const Tridiagonal<double>& t, std::span<const double> w,
                          std::span<const double> rhs, double t_norm, Vector& r) {
    r = t.apply(w);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
    const double denom = t_norm * inf_norm(w) + inf_norm(rhs);
    return denom > 0.0 ? inf_norm(r) / denom : 0.0;
}

std::optional<TriSolved> guarded_thomas(const Tridiagonal<double>& t, std::span<const double> rhs) {
    try {
        TriSolved out{thomas_solve(t, rhs), 0.0};
        double t_norm = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
            t_norm = std::max(t_norm, std::abs(t.lower[i]) + std::abs(t.diag[i]) + std::abs(t.upper[i]));
        Vector r;
        out.backward_error = tri_backward_error(t, out.w, rhs, t_norm, r);
        if (out.backward_error > kBackwardErrorTolerance) {
            const auto d = thomas_solve(t, std::span<const double>(r));
            for (std::size_t i = 0; i < d.size(); ++i) out.w[i] += d[i];
            out.backward_error = tri_backward_error(t, out.w, rhs, t_norm, r);
        }
        if (!(out.backward_error <= kBackwardErrorTolerance)) return std::nullopt;
        return out;
    } catch (const SingularSystem&) {
        return std::nullopt;
    }
}

double weighted_rayleigh(const TridiagonalQ& qt, const Vector& mu, std::span<const double> v) {
    const auto qv = qt.apply_negated(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += mu[i] * v[i] * qv[i];
    return acc;
}

bool strictly_positive(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

}  // namespace

Algo17Result algorithm17(const TridiagonalQ& q, Variant variant, const IterationConfig& cfg, double m) {
    cfg.validate();
    if (cfg.stop_rule && *cfg.stop_rule != StopRule::shift_delta)
        throw InvalidArgument("tridiagonal solver stops on the shift delta only");
    if (cfg.shift_strategy || cfg.initial_vector)
        throw InvalidArgument("tridiagonal solver fixes its own shifts and starting vector");

    Algo17Result out;
    out.variant = variant;
    out.m = m;
    out.h_used = compute_h(q);
    const TridiagonalQ qt = h_transform(q, out.h_used);
    out.mu_phi = compute_mu_phi(qt);
    const auto& mu = out.mu_phi.mu;
    const std::size_t n = qt.size();

    Eigenpair& ep = out.eigenpair_for_qt;
    ep.algorithm = variant == Variant::a ? Algorithm::tri17a : Algorithm::tri17b;

    IterationStep s0;
    s0.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) s0.v[i] = std::sqrt(out.mu_phi.phi[i]);
    const double w0_norm = weighted_norm(s0.v, mu);
    for (auto& x : s0.v) x /= w0_norm;
    s0.x = 1.0 / delta_k(qt, out.mu_phi, s0.v);
    s0.y = weighted_rayleigh(qt, mu, s0.v);
    s0.z = 1.0 / out.mu_phi.delta1;
    ep.trace.steps.push_back(s0);
    ep.trace.stop_reason = StopReason::max_iter;

    for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
        const double prev_z = ep.trace.steps.back().z;
        const Vector& prev_v = ep.trace.steps.back().v;

        std::optional<TriSolved> solved;
        for (int attempt = 0; attempt < 2 && !solved; ++attempt) {
            const double z = prev_z - (attempt == 0 ? 0.0 : cfg.tol);
            solved = guarded_thomas(qt.negated_shifted(z), prev_v);
        }
        if (!solved) {
            ep.trace.stop_reason = StopReason::singular_stop;
            break;
        }
        Vector& w = solved->w;
        if (std::accumulate(w.begin(), w.end(), 0.0) < 0.0)
            for (auto& x : w) x = -x;

        IterationStep step;
        step.n = it;
        step.residual = solved->backward_error;
        const double norm = weighted_norm(w, mu);
        step.v = w;
        for (auto& x : step.v) x /= norm;
        step.y = weighted_rayleigh(qt, mu, step.v);
        step.x = strictly_positive(step.v) ? 1.0 / delta_k(qt, out.mu_phi, step.v)
                                           : std::numeric_limits<double>::quiet_NaN();
        if (variant == Variant::a) {
            step.z = step.y;
        } else {
            if (!strictly_positive(step.v)) {
                const auto bad = std::find_if(step.v.begin(), step.v.end(), [](double x) { return !(x > 0.0); });
                throw PositivityViolation(it, static_cast<std::size_t>(bad - step.v.begin()));
            }
            step.z = step.x;
        }
        ep.trace.steps.push_back(std::move(step));
        ++ep.trace.solves_performed;

        if (std::abs(ep.trace.steps.back().z - prev_z) < cfg.tol) {
            ep.trace.stop_reason = StopReason::converged_delta;
            break;
        }
    }

    const IterationStep& last = ep.trace.steps.back();
    ep.value = last.z;
    ep.final_y = last.y;
    ep.vector = last.v;
    out.rho_a = m - last.z;
    out.g.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.g[i] = out.h_used.h[i] * last.v[i];
    return out;
}

Algo17Result algorithm17(const Matrix& a, Variant variant, const IterationConfig& cfg) {
    if (!is_tridiagonal(a)) throw InvalidArgument("tridiagonal solver needs a tridiagonal matrix");
    const auto shifted = shift_a_to_q(a);
    return algorithm17(TridiagonalQ::from_dense(shifted.q), variant, cfg, shifted.m);
}

}  // namespace maxeig
