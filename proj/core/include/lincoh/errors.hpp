// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_ERRORS_HPP
#define LINCOH_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace lincoh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid model, topology or argument (bad sizes, out-of-range values).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A collaboration matrix has a nonzero entry outside its adjacency pattern.
class SparsityViolation : public InvalidArgument {
public:
    SparsityViolation(int row, int col);
    int row() const noexcept { return row_; }
    int col() const noexcept { return col_; }

private:
    int row_;
    int col_;
};

/// Numerical failure: a factorization or root search did not succeed.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be symmetric positive definite failed to factor.
class NotPositiveDefinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// G^T Omega^{-1} G is singular, so the effective noise shape is undefined.
class SingularGamma : public NumericalError {
public:
    SingularGamma(std::vector<double> null_direction, std::vector<int> unreachable_nodes);

    /// Unit vector spanning (approximately) the null space of G^T Omega^{-1} G.
    const std::vector<double>& null_direction() const noexcept { return null_direction_; }
    /// Nodes whose observation cannot reach the fusion center through any nonzero channel gain.
    const std::vector<int>& unreachable_nodes() const noexcept { return unreachable_; }

private:
    std::vector<double> null_direction_;
    std::vector<int> unreachable_;
};

/// Requested Fisher information is not attainable at any finite power.
class Infeasible : public Error {
public:
    Infeasible(double requested, double centralized);
    double requested() const noexcept { return requested_; }
    double centralized() const noexcept { return centralized_; }
    /// centralized - requested; nonpositive values mean J >= J0.
    double gap() const noexcept { return centralized_ - requested_; }

private:
    double requested_;
    double centralized_;
};

}  // namespace lincoh

#endif  // LINCOH_ERRORS_HPP
