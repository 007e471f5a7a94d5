// SPDX-License-Identifier: Apache-2.0

#include "lincoh/model.hpp"

#include "lincoh/errors.hpp"
#include "lincoh/topology.hpp"

#include <cmath>
#include <string>

namespace lincoh {

namespace {

bool all_finite(const Eigen::Ref<const Matrix>& a) { return a.allFinite(); }

void require_symmetric(const Matrix& a, const char* what)
{
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InvalidArgument(std::string(what) + " is not symmetric");
    }
}

}  // namespace

ObservationModel::ObservationModel(double prior_var, Vector gains, Matrix noise_cov)
    : prior_var_(prior_var), gains_(std::move(gains)), noise_cov_(std::move(noise_cov))
{
    if (!(prior_var_ > 0.0) || !std::isfinite(prior_var_)) {
        throw InvalidArgument("prior variance must be positive and finite");
    }
    if (gains_.size() == 0) {
        throw InvalidArgument("observation model needs at least one sensor");
    }
    if (noise_cov_.rows() != gains_.size() || noise_cov_.cols() != gains_.size()) {
        throw DimensionMismatch("noise covariance must be " + std::to_string(gains_.size()) + " x " +
                                std::to_string(gains_.size()));
    }
    if (!all_finite(gains_) || !all_finite(noise_cov_)) {
        throw InvalidArgument("observation model has non-finite entries");
    }
    if (gains_.cwiseAbs().maxCoeff() == 0.0) {
        throw InvalidArgument("observation gains h are all zero");
    }
    require_symmetric(noise_cov_, "noise covariance");
    if (Eigen::LLT<Matrix>(noise_cov_).info() != Eigen::Success) {
        throw NotPositiveDefinite("noise covariance is not positive definite");
    }
}

Matrix ObservationModel::observation_moment() const
{
    return noise_cov_ + prior_var_ * gains_ * gains_.transpose();
}

ChannelModel::ChannelModel(Vector gains, double mac_noise_var)
    : gains_(std::move(gains)), mac_noise_var_(mac_noise_var)
{
    if (!(mac_noise_var_ > 0.0) || !std::isfinite(mac_noise_var_)) {
        throw InvalidArgument("MAC noise variance must be positive and finite");
    }
    if (gains_.size() == 0 || !all_finite(gains_)) {
        throw InvalidArgument("channel gains must be a finite nonempty vector");
    }
    if (gains_.cwiseAbs().maxCoeff() == 0.0) {
        throw InvalidArgument("channel gains g are all zero");
    }
}

void check_compatible(const ObservationModel& m, const ChannelModel& c)
{
    if (m.n_sensors() != c.n_sensors()) {
        throw DimensionMismatch("observation model has " + std::to_string(m.n_sensors()) +
                                " sensors but channel model has " + std::to_string(c.n_sensors()));
    }
}

CollaborationMatrix::CollaborationMatrix(const Topology& topology, Matrix weights) : weights_(std::move(weights))
{
    const int n = topology.n_sensors();
    if (weights_.rows() != n || weights_.cols() != n) {
        throw DimensionMismatch("collaboration matrix must be " + std::to_string(n) + " x " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (weights_(i, j) != 0.0 && !topology.has_link(i, j)) {
                throw SparsityViolation(i, j);
            }
        }
    }
}

CostMatrix::CostMatrix(int n) : n_(n)
{
    if (n < 1) {
        throw InvalidArgument("cost matrix needs at least one node");
    }
    costs_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
}

LinkCost CostMatrix::operator()(int i, int j) const
{
    return costs_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
}

void CostMatrix::set(int i, int j, LinkCost cost)
{
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
        throw InvalidArgument("cost index out of range");
    }
    if (!cost.is_infinite() && !(cost.value() >= 0.0)) {
        throw InvalidArgument("collaboration costs must be nonnegative");
    }
    if (i == j && !(cost == LinkCost(0.0))) {
        throw InvalidArgument("self-links have zero cost");
    }
    costs_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)] = cost;
}

double transmit_power(const CollaborationMatrix& w, const ObservationModel& m)
{
    if (w.n_sensors() != m.n_sensors()) {
        throw DimensionMismatch("collaboration matrix and observation model sizes differ");
    }
    const Matrix& weights = w.weights();
    return (weights * m.observation_moment()).cwiseProduct(weights).sum();
}

double fisher_info(const CollaborationMatrix& w, const ObservationModel& m, const ChannelModel& c)
{
    check_compatible(m, c);
    if (w.n_sensors() != m.n_sensors()) {
        throw DimensionMismatch("collaboration matrix and observation model sizes differ");
    }
    const Vector wtg = w.weights().transpose() * c.gains();
    const double signal = wtg.dot(m.gains());
    const double noise = wtg.dot(m.noise_cov() * wtg) + c.mac_noise_var();
    return signal * signal / noise;
}

double distortion_from_info(double info, double prior_var)
{
    if (!(info >= 0.0)) {
        throw InvalidArgument("Fisher information must be nonnegative");
    }
    if (!(prior_var > 0.0)) {
        throw InvalidArgument("prior variance must be positive");
    }
    return 1.0 / (1.0 / prior_var + info);
}

double centralized_info(const ObservationModel& m)
{
    const Eigen::LLT<Matrix> llt(m.noise_cov());
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("noise covariance is not positive definite");
    }
    return m.gains().dot(llt.solve(m.gains()));
}

LinkCost collaboration_cost(const Topology& topology, const CostMatrix& costs)
{
    const int n = topology.n_sensors();
    if (costs.size() != n) {
        throw DimensionMismatch("cost matrix and topology sizes differ");
    }
    LinkCost total(0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (topology.has_link(i, j)) {
                total = total + costs(i, j);
            }
        }
    }
    return total;
}

}  // namespace lincoh
