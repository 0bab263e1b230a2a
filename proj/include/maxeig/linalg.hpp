#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "maxeig/errors.hpp"

namespace maxeig {

using Complex = std::complex<double>;

/// Square dense matrix, row-major.
template <class T>
class BasicMatrix {
public:
    using value_type = T;

    BasicMatrix() = default;
    explicit BasicMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}
    BasicMatrix(std::initializer_list<std::initializer_list<T>> rows);

    /// Builds from nested rows; throws DimensionMismatch unless square, NonFinite on NaN/Inf.
    static BasicMatrix from_rows(const std::vector<std::vector<T>>& rows);
    static BasicMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
    std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

    std::span<const T> data() const noexcept { return data_; }

    bool all_finite() const noexcept;

    friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;
using ComplexMatrix = BasicMatrix<Complex>;
using Vector = std::vector<double>;
using ComplexVector = std::vector<Complex>;

/// Tridiagonal system. lower[i] multiplies x[i-1] in row i (lower[0] unused);
/// upper[i] multiplies x[i+1] (upper[n-1] unused).
template <class T>
struct Tridiagonal {
    std::vector<T> lower;
    std::vector<T> diag;
    std::vector<T> upper;

    std::size_t size() const noexcept { return diag.size(); }
    BasicMatrix<T> to_dense() const;
    std::vector<T> apply(std::span<const T> x) const;
};

template <class T>
std::vector<T> matvec(const BasicMatrix<T>& a, std::span<const T> x);

/// LU factorization with partial pivoting, reusable across right-hand sides.
template <class T>
class LuFactorization {
public:
    /// Throws SingularSystem when a pivot column is exactly zero.
    explicit LuFactorization(BasicMatrix<T> m);

    std::vector<T> solve(std::span<const T> rhs) const;
    std::size_t size() const noexcept { return lu_.size(); }

private:
    BasicMatrix<T> lu_;
    std::vector<std::size_t> perm_;
};

template <class T>
std::vector<T> lu_solve(const BasicMatrix<T>& m, std::span<const T> rhs);

/// Tridiagonal elimination without pivoting; falls back to dense LU when a
/// pivot drops below 1e-13 in magnitude.
template <class T>
std::vector<T> thomas_solve(const Tridiagonal<T>& t, std::span<const T> rhs);

inline constexpr double kThomasPivotFloor = 1e-13;

struct RatioStats {
    double min = 0.0;
    double max = 0.0;
    std::size_t argmin = 0;
    std::size_t argmax = 0;

    double gap() const noexcept { return max - min; }
};

/// min/max over j of (A w)_j / w_j. Ties resolve to the lowest index.
RatioStats ratio_stats(const Matrix& a, std::span<const double> w);
/// Same statistic when A w is already available.
RatioStats ratio_stats_of(std::span<const double> aw, std::span<const double> w);

/// sqrt(sum mu_i v_i^2).
double weighted_norm(std::span<const double> v, std::span<const double> mu);
double euclidean_norm(std::span<const double> v);
/// sqrt(v^H v).
double euclidean_norm(std::span<const Complex> v);

double inf_norm(std::span<const double> v);
double inf_norm(std::span<const Complex> v);
template <class T>
double inf_norm(const BasicMatrix<T>& a);

inline constexpr double kUnitNormTolerance = 1e-12;

/// v^T A v for unit Euclidean v, or sum_i mu_i v_i (A v)_i for unit L2(mu) v.
double rayleigh_quotient(const Matrix& a, std::span<const double> v,
                         std::optional<std::span<const double>> mu = std::nullopt);
/// v^H A v for unit v.
Complex rayleigh_quotient(const ComplexMatrix& a, std::span<const Complex> v);

Matrix real_part(const ComplexMatrix& a);
ComplexMatrix to_complex(const Matrix& a);
std::vector<double> row_sums(const Matrix& a);

}  // namespace maxeig
