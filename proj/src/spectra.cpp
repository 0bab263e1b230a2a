#include "maxeig/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace maxeig {

namespace {

template <class T>
BasicMatrix<T> multiply(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
    const std::size_t n = a.size();
    BasicMatrix<T> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto out = c.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < n; ++j) out[j] += aik * brow[j];
        }
    }
    return c;
}

double real_of(double x) { return x; }
double real_of(const Complex& x) { return x.real(); }

// Sequence of normalized powers A^1, A^2, ... with their positivity flags.
template <class T>
class PowerSequence {
public:
    explicit PowerSequence(const BasicMatrix<T>& a) : a_(a), current_(a) { push(); }

    // Flag of A^k (1-based); extends the sequence as needed. Returns nullopt
    // once a power vanishes identically.
    std::optional<bool> positive(std::size_t k) {
        while (flags_.size() < k) {
            if (vanished_) return std::nullopt;
            current_ = multiply(current_, a_);
            push();
        }
        if (vanished_ && k >= flags_.size()) return std::nullopt;
        return flags_[k - 1];
    }

    bool vanished() const noexcept { return vanished_; }
    std::size_t computed() const noexcept { return flags_.size(); }

private:
    void push() {
        double scale = 0.0;
        for (const auto& x : current_.data()) scale = std::max(scale, std::abs(x));
        if (scale == 0.0) {
            vanished_ = true;
            flags_.push_back(false);
            return;
        }
        const std::size_t n = current_.size();
        bool pos = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                current_(i, j) /= scale;
                if (!(real_of(current_(i, j)) > kPositivityFloor)) pos = false;
            }
        flags_.push_back(pos);
    }

    const BasicMatrix<T>& a_;
    BasicMatrix<T> current_;
    std::vector<bool> flags_;
    bool vanished_ = false;
};

template <class T>
PrimitivityReport primitivity_search(const BasicMatrix<T>& a, std::optional<std::size_t> cap) {
    if (a.empty()) throw InvalidArgument("primitivity test on an empty matrix");
    const std::size_t limit = cap.value_or(default_primitivity_cap(a.size()));
    if (limit == 0) throw InvalidArgument("primitivity cap must be positive");

    PowerSequence<T> powers(a);
    PrimitivityReport report;
    for (std::size_t n0 = 1; n0 <= limit; ++n0) {
        const auto first = powers.positive(n0);
        if (!first) {
            report.checked_up_to = n0;
            return report;
        }
        if (!*first) continue;
        bool window = true;
        for (std::size_t k = n0 + 1; k <= 2 * n0 - 1; ++k) {
            const auto f = powers.positive(k);
            if (!f || !*f) {
                window = false;
                break;
            }
        }
        if (window) {
            report.primitive = true;
            report.n0 = n0;
            report.checked_up_to = std::max<std::size_t>(2 * n0 - 1, n0);
            return report;
        }
        if (powers.vanished()) {
            report.checked_up_to = powers.computed();
            return report;
        }
    }
    report.checked_up_to = limit;
    return report;
}

Bounds bounds_from(const Matrix& a, std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] > 0.0)) throw InvalidArgument("Collatz-Wielandt bounds need x > 0; component " + std::to_string(i) + " is not positive");
    const auto s = ratio_stats(a, x);
    return {s.min, s.max};
}

std::vector<Complex> sorted_spectrum(std::vector<Complex> ev) {
    std::sort(ev.begin(), ev.end(), [](const Complex& l, const Complex& r) {
        if (l.real() != r.real()) return l.real() > r.real();
        return l.imag() > r.imag();
    });
    return ev;
}

void require_oracle_size(std::size_t n) {
    if (n == 0 || n > kEigOracleMaxSize)
        throw InvalidArgument("eig_oracle supports 1.." + std::to_string(kEigOracleMaxSize) + " rows, got " + std::to_string(n));
}

}  // namespace

std::size_t default_primitivity_cap(std::size_t n) {
    const std::size_t m = n == 0 ? 0 : n - 1;
    return 2 * m * m + 1;
}

PrimitivityReport is_primitive(const Matrix& a, std::optional<std::size_t> cap) {
    return primitivity_search(a, cap);
}

PrimitivityReport is_complex_admissible(const ComplexMatrix& a, std::optional<std::size_t> cap) {
    return primitivity_search(a, cap);
}

Bounds cw_bounds(const Matrix& a, std::span<const double> x) { return bounds_from(a, x); }

Bounds complex_cw_bounds(const ComplexMatrix& a, std::span<const double> x) {
    return bounds_from(real_part(a), x);
}

ShiftedQ shift_a_to_q(const Matrix& a) {
    if (a.empty()) throw InvalidArgument("shift_a_to_q on an empty matrix");
    const auto sums = row_sums(a);
    ShiftedQ out{a, *std::max_element(sums.begin(), sums.end())};
    for (std::size_t i = 0; i < a.size(); ++i) out.q(i, i) -= out.m;
    return out;
}

std::vector<Complex> eig_oracle(const Matrix& a) {
    require_oracle_size(a.size());
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    if (solver.info() != Eigen::Success) throw Error("eig_oracle: eigenvalue iteration failed");
    const auto& ev = solver.eigenvalues();
    return sorted_spectrum(std::vector<Complex>(ev.data(), ev.data() + ev.size()));
}

std::vector<Complex> eig_oracle(const ComplexMatrix& a) {
    require_oracle_size(a.size());
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) throw Error("eig_oracle: eigenvalue iteration failed");
    const auto& ev = solver.eigenvalues();
    return sorted_spectrum(std::vector<Complex>(ev.data(), ev.data() + ev.size()));
}

double spectral_radius_oracle(const Matrix& a) {
    double r = 0.0;
    for (const auto& l : eig_oracle(a)) r = std::max(r, std::abs(l));
    return r;
}

}  // namespace maxeig
