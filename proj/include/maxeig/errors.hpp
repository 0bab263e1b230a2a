#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maxeig {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t actual)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(actual)),
          expected_(expected), actual_(actual) {}

    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

class NonFinite : public Error {
public:
    using Error::Error;
};

/// Elimination hit a pivot that is zero to working precision.
class SingularSystem : public Error {
public:
    explicit SingularSystem(std::size_t pivot)
        : Error("singular system: zero pivot at index " + std::to_string(pivot)), pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// A trial vector has a vanishing component where a ratio is taken.
class ZeroComponent : public Error {
public:
    explicit ZeroComponent(std::size_t index)
        : Error("vector component " + std::to_string(index) + " is zero"), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A safe iteration produced an iterate that is not strictly positive.
class PositivityViolation : public Error {
public:
    PositivityViolation(std::size_t step, std::size_t index)
        : Error("iterate " + std::to_string(step) + " has a nonpositive component at index " +
                std::to_string(index)),
          step_(step), index_(index) {}

    std::size_t step() const noexcept { return step_; }
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t step_;
    std::size_t index_;
};

class NotNormalized : public Error {
public:
    explicit NotNormalized(double norm)
        : Error("vector is not unit-norm (norm = " + std::to_string(norm) + ")"), norm_(norm) {}

    double norm() const noexcept { return norm_; }

private:
    double norm_;
};

/// A Q-matrix row sums to a positive value.
class RowSumViolation : public Error {
public:
    RowSumViolation(std::size_t row, double sum)
        : Error("row " + std::to_string(row) + " sums to " + std::to_string(sum) + " > 0"),
          row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// The h-recursion of the H-transform produced r_n <= 0.
class NonpositiveR : public Error {
public:
    explicit NonpositiveR(std::size_t n)
        : Error("h-recursion broke down: r_" + std::to_string(n) + " <= 0"), n_(n) {}

    std::size_t index() const noexcept { return n_; }

private:
    std::size_t n_;
};

class OverflowGuard : public Error {
public:
    using Error::Error;
};

}  // namespace maxeig
