// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_MODEL_HPP
#define LINCOH_MODEL_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <vector>

namespace lincoh {

class Topology;

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Linear Gaussian observation model x = h*theta + eps, theta ~ N(0, eta^2), eps ~ N(0, Sigma).
///
/// Construction validates the model: Sigma must be square, symmetric and
/// positive definite (checked by a Cholesky factorization) and h must have a
/// nonzero entry. Instances are immutable.
class ObservationModel {
public:
    ObservationModel(double prior_var, Vector gains, Matrix noise_cov);

    int n_sensors() const noexcept { return static_cast<int>(gains_.size()); }
    double prior_var() const noexcept { return prior_var_; }
    const Vector& gains() const noexcept { return gains_; }
    const Matrix& noise_cov() const noexcept { return noise_cov_; }

    /// V = Sigma + eta^2 h h^T, the second moment of the observations.
    Matrix observation_moment() const;

private:
    double prior_var_;
    Vector gains_;
    Matrix noise_cov_;
};

/// Coherent multiple-access channel y = g^T z + u, u ~ N(0, xi^2).
class ChannelModel {
public:
    ChannelModel(Vector gains, double mac_noise_var);

    int n_sensors() const noexcept { return static_cast<int>(gains_.size()); }
    const Vector& gains() const noexcept { return gains_; }
    double mac_noise_var() const noexcept { return mac_noise_var_; }

private:
    Vector gains_;
    double mac_noise_var_;
};

/// Throws DimensionMismatch unless the observation and channel models have the same N.
void check_compatible(const ObservationModel& m, const ChannelModel& c);

/// An N x N weight matrix constrained to the sparsity pattern of a topology.
class CollaborationMatrix {
public:
    /// Throws SparsityViolation if `weights` is nonzero where the adjacency is zero.
    CollaborationMatrix(const Topology& topology, Matrix weights);

    int n_sensors() const noexcept { return static_cast<int>(weights_.rows()); }
    const Matrix& weights() const noexcept { return weights_; }

private:
    Matrix weights_;
};

/// Per-link collaboration cost; either a finite nonnegative value or infinite.
class LinkCost {
public:
    constexpr LinkCost() noexcept = default;
    constexpr explicit LinkCost(double value) : value_(value) {}

    static constexpr LinkCost infinite() noexcept
    {
        LinkCost c;
        c.infinite_ = true;
        return c;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    /// Finite value; NaN when infinite.
    constexpr double value() const noexcept
    {
        return infinite_ ? std::numeric_limits<double>::quiet_NaN() : value_;
    }

    friend constexpr LinkCost operator+(LinkCost a, LinkCost b) noexcept
    {
        if (a.infinite_ || b.infinite_) {
            return infinite();
        }
        return LinkCost(a.value_ + b.value_);
    }
    friend constexpr bool operator==(LinkCost a, LinkCost b) noexcept
    {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// N x N cost-of-collaboration matrix with zero diagonal.
class CostMatrix {
public:
    /// All-zero costs.
    explicit CostMatrix(int n);

    int size() const noexcept { return n_; }
    LinkCost operator()(int i, int j) const;
    /// Throws InvalidArgument for negative costs or a nonzero diagonal entry.
    void set(int i, int j, LinkCost cost);

private:
    int n_;
    std::vector<LinkCost> costs_;
};

/// Cumulative transmission power Tr[W (Sigma + eta^2 h h^T) W^T].
double transmit_power(const CollaborationMatrix& w, const ObservationModel& m);

/// Conditional Fisher information (g^T W h)^2 / (g^T W Sigma W^T g + xi^2).
double fisher_info(const CollaborationMatrix& w, const ObservationModel& m, const ChannelModel& c);

/// MMSE distortion (1/eta^2 + J)^{-1}. Throws InvalidArgument for J < 0 or eta^2 <= 0.
double distortion_from_info(double info, double prior_var);

/// Centralized benchmark J0 = h^T Sigma^{-1} h.
double centralized_info(const ObservationModel& m);

/// Total collaboration cost sum_ij C_ij A_ij; infinite if any used link is.
LinkCost collaboration_cost(const Topology& topology, const CostMatrix& costs);

}  // namespace lincoh

#endif  // LINCOH_MODEL_HPP
