#include "maxeig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace maxeig {

namespace {

bool is_finite(double x) { return std::isfinite(x); }
bool is_finite(const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

template <class T>
bool all_finite(std::span<const T> v) {
    return std::all_of(v.begin(), v.end(), [](const T& x) { return is_finite(x); });
}

template <class T>
void require_size(std::size_t expected, std::size_t actual) {
    if (expected != actual) throw DimensionMismatch(expected, actual);
}

}  // namespace

// ---------------------------------------------------------------------------
// BasicMatrix

template <class T>
BasicMatrix<T>::BasicMatrix(std::initializer_list<std::initializer_list<T>> rows)
    : n_(rows.size()), data_() {
    data_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (r.size() != n_) throw DimensionMismatch(n_, r.size());
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw NonFinite("matrix has a non-finite entry");
}

template <class T>
BasicMatrix<T> BasicMatrix<T>::from_rows(const std::vector<std::vector<T>>& rows) {
    BasicMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw DimensionMismatch(rows.size(), rows[i].size());
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    if (!m.all_finite()) throw NonFinite("matrix has a non-finite entry");
    return m;
}

template <class T>
BasicMatrix<T> BasicMatrix<T>::identity(std::size_t n) {
    BasicMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
}

template <class T>
bool BasicMatrix<T>::all_finite() const noexcept {
    return maxeig::all_finite<T>(data_);
}

template <class T>
BasicMatrix<T> Tridiagonal<T>::to_dense() const {
    const std::size_t n = size();
    BasicMatrix<T> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = diag[i];
        if (i > 0) m(i, i - 1) = lower[i];
        if (i + 1 < n) m(i, i + 1) = upper[i];
    }
    return m;
}

template <class T>
std::vector<T> Tridiagonal<T>::apply(std::span<const T> x) const {
    const std::size_t n = size();
    require_size<T>(n, x.size());
    std::vector<T> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        T acc = diag[i] * x[i];
        if (i > 0) acc += lower[i] * x[i - 1];
        if (i + 1 < n) acc += upper[i] * x[i + 1];
        y[i] = acc;
    }
    return y;
}

// ---------------------------------------------------------------------------
// Products and solves

template <class T>
std::vector<T> matvec(const BasicMatrix<T>& a, std::span<const T> x) {
    require_size<T>(a.size(), x.size());
    std::vector<T> y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto r = a.row(i);
        T acc{};
        for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

template <class T>
LuFactorization<T>::LuFactorization(BasicMatrix<T> m) : lu_(std::move(m)), perm_(lu_.size()) {
    const std::size_t n = lu_.size();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double mag = std::abs(lu_(i, k));
            if (mag > best) {
                best = mag;
                p = i;
            }
        }
        if (!(best > 0.0)) throw SingularSystem(k);
        if (p != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
            std::swap(perm_[k], perm_[p]);
        }
        const T pivot = lu_(k, k);
        auto pivot_row = lu_.row(k);
        for (std::size_t i = k + 1; i < n; ++i) {
            auto r = lu_.row(i);
            if (r[k] == T{}) continue;
            const T l = r[k] / pivot;
            r[k] = l;
            for (std::size_t j = k + 1; j < n; ++j) r[j] -= l * pivot_row[j];
        }
    }
}

template <class T>
std::vector<T> LuFactorization<T>::solve(std::span<const T> rhs) const {
    const std::size_t n = lu_.size();
    require_size<T>(n, rhs.size());
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
        auto r = lu_.row(i);
        T acc = x[i];
        for (std::size_t j = 0; j < i; ++j) acc -= r[j] * x[j];
        x[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        auto r = lu_.row(ii);
        T acc = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= r[j] * x[j];
        x[ii] = acc / r[ii];
    }
    if (!all_finite<T>(x)) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(lu_(i, i)) < std::abs(lu_(worst, worst))) worst = i;
        throw SingularSystem(worst);
    }
    return x;
}

template <class T>
std::vector<T> lu_solve(const BasicMatrix<T>& m, std::span<const T> rhs) {
    require_size<T>(m.size(), rhs.size());
    return LuFactorization<T>(m).solve(rhs);
}

template <class T>
std::vector<T> thomas_solve(const Tridiagonal<T>& t, std::span<const T> rhs) {
    const std::size_t n = t.size();
    require_size<T>(n, rhs.size());
    require_size<T>(n, t.lower.size());
    require_size<T>(n, t.upper.size());
    if (n == 0) return {};

    std::vector<T> c(n);
    std::vector<T> x(n);
    T pivot = t.diag[0];
    if (std::abs(pivot) < kThomasPivotFloor) return lu_solve(t.to_dense(), rhs);
    c[0] = (n > 1 ? t.upper[0] : T{}) / pivot;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = t.diag[i] - t.lower[i] * c[i - 1];
        if (std::abs(pivot) < kThomasPivotFloor) return lu_solve(t.to_dense(), rhs);
        c[i] = (i + 1 < n ? t.upper[i] : T{}) / pivot;
        x[i] = (rhs[i] - t.lower[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    if (!all_finite<T>(x)) throw SingularSystem(n - 1);
    return x;
}

// ---------------------------------------------------------------------------
// Ratios, norms, quotients

RatioStats ratio_stats_of(std::span<const double> aw, std::span<const double> w) {
    require_size<double>(w.size(), aw.size());
    if (w.empty()) throw InvalidArgument("ratio_stats: empty vector");
    RatioStats s;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] == 0.0) throw ZeroComponent(j);
        const double r = aw[j] / w[j];
        if (j == 0 || r < s.min) {
            s.min = r;
            s.argmin = j;
        }
        if (j == 0 || r > s.max) {
            s.max = r;
            s.argmax = j;
        }
    }
    return s;
}

RatioStats ratio_stats(const Matrix& a, std::span<const double> w) {
    const auto aw = matvec<double>(a, w);
    return ratio_stats_of(aw, w);
}

double weighted_norm(std::span<const double> v, std::span<const double> mu) {
    require_size<double>(v.size(), mu.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(mu[i] > 0.0)) throw InvalidArgument("weighted_norm: weight " + std::to_string(i) + " is not positive");
        acc += mu[i] * v[i] * v[i];
    }
    return std::sqrt(acc);
}

double euclidean_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double euclidean_norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double inf_norm(std::span<const Complex> v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

template <class T>
double inf_norm(const BasicMatrix<T>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double s = 0.0;
        for (const auto& x : a.row(i)) s += std::abs(x);
        m = std::max(m, s);
    }
    return m;
}

double rayleigh_quotient(const Matrix& a, std::span<const double> v,
                         std::optional<std::span<const double>> mu) {
    require_size<double>(a.size(), v.size());
    const double norm = mu ? weighted_norm(v, *mu) : euclidean_norm(v);
    if (std::abs(norm - 1.0) > kUnitNormTolerance) throw NotNormalized(norm);
    const auto av = matvec<double>(a, v);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += (mu ? (*mu)[i] : 1.0) * v[i] * av[i];
    return acc;
}

Complex rayleigh_quotient(const ComplexMatrix& a, std::span<const Complex> v) {
    require_size<Complex>(a.size(), v.size());
    const double norm = euclidean_norm(v);
    if (std::abs(norm - 1.0) > kUnitNormTolerance) throw NotNormalized(norm);
    const auto av = matvec<Complex>(a, v);
    Complex acc{};
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * av[i];
    return acc;
}

Matrix real_part(const ComplexMatrix& a) {
    Matrix r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = a(i, j).real();
    return r;
}

ComplexMatrix to_complex(const Matrix& a) {
    ComplexMatrix c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c(i, j) = a(i, j);
    return c;
}

std::vector<double> row_sums(const Matrix& a) {
    std::vector<double> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto r = a.row(i);
        s[i] = std::accumulate(r.begin(), r.end(), 0.0);
    }
    return s;
}

template class BasicMatrix<double>;
template class BasicMatrix<Complex>;
template struct Tridiagonal<double>;
template struct Tridiagonal<Complex>;
template class LuFactorization<double>;
template class LuFactorization<Complex>;
template std::vector<double> matvec(const Matrix&, std::span<const double>);
template std::vector<Complex> matvec(const ComplexMatrix&, std::span<const Complex>);
template std::vector<double> lu_solve(const Matrix&, std::span<const double>);
template std::vector<Complex> lu_solve(const ComplexMatrix&, std::span<const Complex>);
template std::vector<double> thomas_solve(const Tridiagonal<double>&, std::span<const double>);
template std::vector<Complex> thomas_solve(const Tridiagonal<Complex>&, std::span<const Complex>);
template double inf_norm(const Matrix&);
template double inf_norm(const ComplexMatrix&);

}  // namespace maxeig
