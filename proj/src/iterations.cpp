#include "maxeig/iterations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace maxeig {

std::string_view to_string(ShiftStrategy s) {
    switch (s) {
        case ShiftStrategy::rayleigh: return "rayleigh";
        case ShiftStrategy::cw_upper: return "cw_upper";
        case ShiftStrategy::cw_lower: return "cw_lower";
        case ShiftStrategy::convex: return "convex";
    }
    return "?";
}

std::string_view to_string(StopRule r) {
    switch (r) {
        case StopRule::ratio_gap: return "ratio_gap";
        case StopRule::shift_delta: return "shift_delta";
        case StopRule::complex_y_delta: return "complex_y_delta";
    }
    return "?";
}

std::string_view to_string(StopReason r) {
    switch (r) {
        case StopReason::converged_gap: return "converged_gap";
        case StopReason::converged_delta: return "converged_delta";
        case StopReason::max_iter: return "max_iter";
        case StopReason::singular_stop: return "singular_stop";
    }
    return "?";
}

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::rqi_nonneg: return "rqi";
        case Algorithm::sii_nonneg: return "sii";
        case Algorithm::rqi_q: return "rqi-q";
        case Algorithm::sii_q: return "sii-q";
        case Algorithm::sii_complex: return "complex";
        case Algorithm::tri17a: return "tri17a";
        case Algorithm::tri17b: return "tri17b";
    }
    return "?";
}

void IterationConfig::validate() const {
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (max_iter == 0) throw InvalidArgument("max_iter must be positive");
    if (!(xi >= 0.0 && xi <= 1.0)) throw InvalidArgument("xi must lie in [0, 1]");
    if (initial_vector && initial_vector->empty()) throw InvalidArgument("initial vector is empty");
}

namespace {

// Which end of the spectrum the engine targets, and therefore which shifted
// system it solves: (zI - op) w = v for the maximal side, (op - zI) w = v
// for the minimal side of op = -Q.
enum class Side { maximal, minimal };

template <class T>
struct Solved {
    std::vector<T> w;
    double backward_error = 0.0;
};

template <class T>
double backward_error(const BasicMatrix<T>& m, std::span<const T> w, std::span<const T> rhs,
                      double m_norm, std::vector<T>& r) {
    r = matvec<T>(m, w);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
    const double denom = m_norm * inf_norm(w) + inf_norm(rhs);
    return denom > 0.0 ? inf_norm(std::span<const T>(r)) / denom : 0.0;
}

// LU solve with one refinement step; nullopt if singular or inaccurate.
template <class T>
std::optional<Solved<T>> guarded_solve(const BasicMatrix<T>& m, std::span<const T> rhs) {
    try {
        const LuFactorization<T> lu(m);
        Solved<T> out{lu.solve(rhs), 0.0};
        const double m_norm = inf_norm(m);
        std::vector<T> r;
        out.backward_error = backward_error<T>(m, out.w, rhs, m_norm, r);
        if (out.backward_error > kBackwardErrorTolerance) {
            const auto d = lu.solve(r);
            for (std::size_t i = 0; i < d.size(); ++i) out.w[i] += d[i];
            out.backward_error = backward_error<T>(m, out.w, rhs, m_norm, r);
        }
        if (!(out.backward_error <= kBackwardErrorTolerance)) return std::nullopt;
        return out;
    } catch (const SingularSystem&) {
        return std::nullopt;
    }
}

template <class T>
BasicMatrix<T> shifted(const BasicMatrix<T>& op, T z, Side side) {
    BasicMatrix<T> m = op;
    const std::size_t n = op.size();
    if (side == Side::maximal) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = -m(i, j);
        for (std::size_t i = 0; i < n; ++i) m(i, i) += z;
    } else {
        for (std::size_t i = 0; i < n; ++i) m(i, i) -= z;
    }
    return m;
}

template <class T>
void scale(std::vector<T>& v, double s) {
    for (auto& x : v) x *= s;
}

bool constant_row_sums(const Matrix& a, double& common) {
    const auto sums = row_sums(a);
    const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    double mag = 0.0;
    for (double s : sums) mag = std::max(mag, std::abs(s));
    common = sums.front();
    return *hi - *lo <= 1e-14 * (1.0 + mag);
}

void check_q_matrix(const Matrix& q) {
    const std::size_t n = q.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && q(i, j) < 0.0)
                throw InvalidArgument("Q-matrix has a negative off-diagonal entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    const auto sums = row_sums(q);
    for (std::size_t i = 0; i < n; ++i)
        if (sums[i] > 1e-12) throw RowSumViolation(i, sums[i]);
}

struct RealEngine {
    Algorithm algorithm;
    Side side;
    ShiftStrategy strategy;
};

struct Roles {
    double x, y, z;
};

// Assigns (x, y, z) from the ratio statistics and the Rayleigh quotient.
Roles assign_roles(ShiftStrategy s, const RatioStats& r, double rq) {
    switch (s) {
        case ShiftStrategy::rayleigh: return {r.min, r.max, rq};
        case ShiftStrategy::cw_upper: return {r.min, rq, r.max};
        case ShiftStrategy::cw_lower:
        case ShiftStrategy::convex: return {r.max, rq, r.min};
    }
    return {r.min, r.max, rq};
}

bool is_safe(ShiftStrategy s) { return s != ShiftStrategy::rayleigh; }

Eigenpair run_real(const Matrix& op, const RealEngine& engine, const IterationConfig& cfg,
                   std::optional<double> initial_shift) {
    cfg.validate();
    if (op.empty()) throw InvalidArgument("empty matrix");
    const std::size_t n = op.size();
    const StopRule rule = cfg.stop_rule.value_or(StopRule::ratio_gap);
    if (rule == StopRule::complex_y_delta)
        throw InvalidArgument("complex_y_delta applies to the complex engine only");

    Eigenpair out;
    out.algorithm = engine.algorithm;

    Vector w0 = cfg.initial_vector.value_or(Vector(n, 1.0));
    if (w0.size() != n) throw DimensionMismatch(n, w0.size());
    const double w0_norm = euclidean_norm(w0);
    if (!(w0_norm > 0.0)) throw InvalidArgument("initial vector is zero");

    double common = 0.0;
    if (!cfg.initial_vector && constant_row_sums(op, common)) {
        IterationStep s0;
        s0.v.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
        s0.x = s0.z = common;
        s0.y = common;
        out.trace.steps.push_back(s0);
        out.trace.stop_reason = StopReason::converged_gap;
        out.value = common;
        out.final_y = common;
        out.vector = s0.v;
        return out;
    }

    IterationStep s0;
    s0.v = w0;
    scale(s0.v, 1.0 / w0_norm);
    {
        const auto stats = ratio_stats(op, w0);
        const double rq = rayleigh_quotient(op, s0.v);
        const Roles roles = assign_roles(engine.strategy, stats, rq);
        s0.x = roles.x;
        s0.y = roles.y;
        if (initial_shift) {
            s0.z = *initial_shift;
        } else if (engine.side == Side::maximal) {
            s0.z = stats.max;
        } else {
            s0.z = engine.strategy == ShiftStrategy::rayleigh ? 0.0 : stats.min;
        }
    }
    out.trace.steps.push_back(s0);

    const double outward = engine.side == Side::maximal ? 1.0 : -1.0;
    out.trace.stop_reason = StopReason::max_iter;

    for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
        const double prev_z = out.trace.steps.back().z;
        const Vector& prev_v = out.trace.steps.back().v;

        std::optional<Solved<double>> solved;
        std::optional<RatioStats> stats;
        // A singular solve or an exact zero component gets one retry with
        // the shift moved outward by tol.
        for (int attempt = 0; attempt < 2 && !stats; ++attempt) {
            const double z = prev_z + (attempt == 0 ? 0.0 : outward * cfg.tol);
            solved = guarded_solve<double>(shifted<double>(op, z, engine.side), prev_v);
            if (!solved) continue;
            if (engine.strategy == ShiftStrategy::rayleigh &&
                std::accumulate(solved->w.begin(), solved->w.end(), 0.0) < 0.0)
                scale(solved->w, -1.0);
            try {
                stats = ratio_stats(op, solved->w);
            } catch (const ZeroComponent&) {
                stats.reset();
            }
        }
        if (!solved || !stats) {
            out.trace.stop_reason = StopReason::singular_stop;
            break;
        }

        auto& w = solved->w;
        if (is_safe(engine.strategy)) {
            for (std::size_t j = 0; j < n; ++j)
                if (!(w[j] > 0.0)) throw PositivityViolation(it, j);
        }

        IterationStep step;
        step.n = it;
        step.residual = solved->backward_error;
        step.v = w;
        scale(step.v, 1.0 / euclidean_norm(w));
        const double rq = rayleigh_quotient(op, step.v);
        const Roles roles = assign_roles(engine.strategy, *stats, rq);
        step.x = roles.x;
        step.y = roles.y;
        step.z = roles.z;
        out.trace.steps.push_back(std::move(step));
        ++out.trace.solves_performed;

        const double delta = std::abs(out.trace.steps.back().z - prev_z);
        if (rule == StopRule::ratio_gap) {
            if (stats->gap() < cfg.tol) {
                out.trace.stop_reason = StopReason::converged_gap;
                break;
            }
            if (it >= 2 && delta < cfg.tol) {
                out.trace.stop_reason = StopReason::converged_delta;
                break;
            }
        } else if (delta < cfg.tol) {
            out.trace.stop_reason = StopReason::converged_delta;
            break;
        }
    }

    const IterationStep& last = out.trace.steps.back();
    out.value = last.z;
    out.final_y = last.y;
    out.vector = last.v;
    return out;
}

Matrix negated(const Matrix& q) {
    Matrix m = q;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (auto& x : m.row(i)) x = -x;
    return m;
}

void require_strategy(const IterationConfig& cfg, std::initializer_list<ShiftStrategy> allowed,
                      std::string_view engine) {
    if (!cfg.shift_strategy) return;
    if (std::find(allowed.begin(), allowed.end(), *cfg.shift_strategy) == allowed.end())
        throw InvalidArgument(std::string(engine) + " does not support shift strategy " +
                              std::string(to_string(*cfg.shift_strategy)));
}

}  // namespace

Eigenpair rqi_nonneg(const Matrix& a, const IterationConfig& cfg) {
    require_strategy(cfg, {ShiftStrategy::rayleigh}, "rqi");
    return run_real(a, {Algorithm::rqi_nonneg, Side::maximal, ShiftStrategy::rayleigh}, cfg, std::nullopt);
}

Eigenpair sii_nonneg(const Matrix& a, const IterationConfig& cfg) {
    require_strategy(cfg, {ShiftStrategy::cw_upper}, "sii");
    return run_real(a, {Algorithm::sii_nonneg, Side::maximal, ShiftStrategy::cw_upper}, cfg, std::nullopt);
}

Eigenpair rqi_q(const Matrix& q, const IterationConfig& cfg) {
    require_strategy(cfg, {ShiftStrategy::rayleigh}, "rqi-q");
    check_q_matrix(q);
    return run_real(negated(q), {Algorithm::rqi_q, Side::minimal, ShiftStrategy::rayleigh}, cfg, std::nullopt);
}

Eigenpair sii_q(const Matrix& q, const IterationConfig& cfg) {
    require_strategy(cfg, {ShiftStrategy::cw_lower, ShiftStrategy::convex}, "sii-q");
    check_q_matrix(q);
    const bool convex = cfg.shift_strategy == ShiftStrategy::convex;
    if (convex && cfg.initial_vector)
        throw InvalidArgument("the convex initial shift is defined for the constant starting vector");
    const auto strategy = convex ? ShiftStrategy::convex : ShiftStrategy::cw_lower;
    std::optional<double> z0;
    if (convex) z0 = convex_initial_shift(q, cfg.xi);
    return run_real(negated(q), {Algorithm::sii_q, Side::minimal, strategy}, cfg, z0);
}

double convex_initial_shift(const Matrix& q, double xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw InvalidArgument("xi must lie in [0, 1]");
    if (q.empty()) throw InvalidArgument("empty matrix");
    const Matrix m = negated(q);
    const std::size_t n = q.size();
    const Vector ones(n, 1.0);
    const Vector v0(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const auto stats = ratio_stats(m, ones);
    const double rq = rayleigh_quotient(m, v0);
    return xi * stats.max + (1.0 - xi) * rq;
}

ComplexEigenpair sii_complex(const ComplexMatrix& a, const IterationConfig& cfg) {
    cfg.validate();
    require_strategy(cfg, {ShiftStrategy::cw_upper}, "complex");
    if (a.empty()) throw InvalidArgument("empty matrix");
    if (cfg.initial_vector) throw InvalidArgument("the complex engine starts from the constant vector");
    const StopRule rule = cfg.stop_rule.value_or(StopRule::complex_y_delta);
    if (rule == StopRule::ratio_gap)
        throw InvalidArgument("ratio_gap does not apply to the complex engine");

    const std::size_t n = a.size();
    const Matrix re = real_part(a);

    ComplexEigenpair out;
    out.algorithm = Algorithm::sii_complex;

    ComplexIterationStep s0;
    s0.v.assign(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    {
        const auto stats = ratio_stats(re, Vector(n, 1.0));
        s0.x = stats.min;
        s0.z = stats.max;
        s0.y = rayleigh_quotient(a, s0.v);
    }
    out.trace.steps.push_back(s0);
    out.trace.stop_reason = StopReason::max_iter;

    for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
        const double prev_z = out.trace.steps.back().z;
        const Complex prev_y = out.trace.steps.back().y;
        const ComplexVector& prev_v = out.trace.steps.back().v;

        std::optional<Solved<Complex>> solved;
        std::optional<RatioStats> stats;
        Vector rw(n);
        for (int attempt = 0; attempt < 2 && !stats; ++attempt) {
            const double z = prev_z + (attempt == 0 ? 0.0 : cfg.tol);
            solved = guarded_solve<Complex>(shifted<Complex>(a, Complex(z, 0.0), Side::maximal), prev_v);
            if (!solved) continue;
            for (std::size_t j = 0; j < n; ++j) rw[j] = solved->w[j].real();
            try {
                stats = ratio_stats(re, rw);
            } catch (const ZeroComponent&) {
                stats.reset();
            }
        }
        if (!solved || !stats) {
            out.trace.stop_reason = StopReason::singular_stop;
            break;
        }

        ComplexIterationStep step;
        step.n = it;
        step.residual = solved->backward_error;
        step.v = std::move(solved->w);
        const double norm = euclidean_norm(step.v);
        for (auto& x : step.v) x /= norm;
        step.x = stats->min;
        step.z = stats->max;
        step.y = rayleigh_quotient(a, step.v);
        out.trace.steps.push_back(std::move(step));
        ++out.trace.solves_performed;

        const auto& cur = out.trace.steps.back();
        if (rule == StopRule::complex_y_delta) {
            if (it >= 2 && std::abs(cur.y - prev_y) < cfg.tol) {
                out.trace.stop_reason = StopReason::converged_delta;
                break;
            }
        } else if (std::abs(cur.z - prev_z) < cfg.tol) {
            out.trace.stop_reason = StopReason::converged_delta;
            break;
        }
    }

    const auto& last = out.trace.steps.back();
    out.value = last.y;
    out.final_y = last.y;
    out.vector = last.v;
    return out;
}

}  // namespace maxeig
