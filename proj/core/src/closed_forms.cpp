// SPDX-License-Identifier: Apache-2.0

#include "lincoh/closed_forms.hpp"

#include "lincoh/errors.hpp"
#include "lincoh/instances.hpp"

#include <cmath>

namespace lincoh {

namespace {

double snr_of(const ChannelModel& c, double power)
{
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw InvalidArgument("power must be positive and finite");
    }
    return power / c.mac_noise_var();
}

Vector scaled_direction(const EmbeddedProblem& ep, const Vector& gains_h, Vector direction, double power)
{
    double kappa = std::sqrt(power / ep.omega_quadratic(direction));
    if (ep.apply_gt(direction).dot(gains_h) < 0.0) {
        kappa = -kappa;
    }
    return kappa * direction;
}

}  // namespace

double info_distributed(const ObservationModel& m, const ChannelModel& c, double power)
{
    check_compatible(m, c);
    const double snr = snr_of(c, power);
    const Matrix& sigma = m.noise_cov();
    const int n = m.n_sensors();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && sigma(i, j) != 0.0) {
                throw InvalidArgument("distributed closed form requires a diagonal noise covariance");
            }
        }
    }
    double info = 0.0;
    for (int k = 0; k < n; ++k) {
        const double h = m.gains()(k);
        const double g = c.gains()(k);
        if (g == 0.0) {
            continue;
        }
        const double s2 = sigma(k, k);
        info += h * h / (s2 + (s2 + m.prior_var() * h * h) / (snr * g * g));
    }
    return info;
}

double info_fully_connected(const ObservationModel& m, const ChannelModel& c, double power)
{
    check_compatible(m, c);
    const double snr = snr_of(c, power);
    const double j0 = centralized_info(m);
    const double g2 = c.gains().squaredNorm();
    return 1.0 / (1.0 / j0 + (m.prior_var() + 1.0 / j0) / (snr * g2));
}

CollaborationMatrix weights_fully_connected(const ObservationModel& m, const ChannelModel& c)
{
    check_compatible(m, c);
    const Eigen::LLT<Matrix> llt(m.noise_cov());
    const Vector sigma_inv_h = llt.solve(m.gains());
    return CollaborationMatrix(make_fully_connected(m.n_sensors()), c.gains() * sigma_inv_h.transpose());
}

double rate_distortion_bound(const ObservationModel& m, const ChannelModel& c, double power)
{
    check_compatible(m, c);
    const double snr = snr_of(c, power);
    const double eta2 = m.prior_var();
    const double j0 = centralized_info(m);
    const double d0 = distortion_from_info(j0, eta2);
    const double lambda = eta2 * eta2 * j0 / (1.0 + eta2 * j0);
    const double capacity_term = 1.0 + c.gains().squaredNorm() * snr;  // exp(2C)
    const double min_distortion = d0 + lambda / capacity_term;
    return 1.0 / min_distortion - 1.0 / eta2;
}

InfoBound info_lower_bound_distortion(const EmbeddedProblem& ep, const ObservationModel& m,
                                      const ChannelModel& c, double power)
{
    check_compatible(m, c);
    const double snr = snr_of(c, power);
    const double j0 = centralized_info(m);
    const double h_gamma_inv_h = m.gains().dot(ep.gamma_inverse() * m.gains());
    InfoBound b;
    b.info_upper = 1.0 / (1.0 / j0 + 1.0 / (snr * h_gamma_inv_h));
    b.distortion_lower = distortion_from_info(b.info_upper, m.prior_var());
    return b;
}

SnrApproximation snr_asymptotics(const EmbeddedProblem& ep, const ObservationModel& m,
                                 const ChannelModel& c, double power, SnrRegime regime)
{
    check_compatible(m, c);
    const double snr = snr_of(c, power);
    const double eta2 = m.prior_var();
    const Vector& h = m.gains();
    SnrApproximation out;
    if (regime == SnrRegime::low) {
        const double q = h.dot(ep.gamma_inverse() * h);
        out.info = snr * q;
        out.distortion = eta2 - eta2 * eta2 * snr * q;
        out.weights = scaled_direction(ep, h, ep.solve_omega(ep.apply_g(h)), power);
    } else {
        const Eigen::LLT<Matrix> llt(m.noise_cov());
        const Vector s = llt.solve(h);
        const double j0 = h.dot(s);
        const double d0 = distortion_from_info(j0, eta2);
        const Vector gamma_s = ep.gamma() * s;
        const double q = s.dot(gamma_s);
        out.info = j0 - q / snr;
        out.distortion = d0 + d0 * d0 * q / snr;
        out.weights = scaled_direction(ep, h, ep.solve_omega(ep.apply_g(gamma_s)), power);
    }
    return out;
}

void CycleSetup::validate() const
{
    if (n < 1) {
        throw InvalidArgument("cycle setup needs at least one node");
    }
    if (k < 0 || k > n - 1) {
        throw InvalidArgument("cycle connectivity K must be in [0, N-1]");
    }
    if (!(rho >= 0.0 && rho < 1.0)) {
        throw InvalidArgument("equicorrelation rho must be in [0, 1)");
    }
    if (!(sigma2 > 0.0 && eta2 > 0.0 && xi2 > 0.0)) {
        throw InvalidArgument("variances must be positive");
    }
    if (h0 == 0.0 || g0 == 0.0) {
        throw InvalidArgument("gains h0 and g0 must be nonzero");
    }
}

double CycleSetup::centralized_info() const
{
    validate();
    return n * h0 * h0 / (sigma2 * (1.0 - rho + rho * n));
}

ObservationModel CycleSetup::observation_model() const
{
    validate();
    return ObservationModel(eta2, Vector::Constant(n, h0), gen_equicorrelated_cov(n, sigma2, rho));
}

ChannelModel CycleSetup::channel_model() const
{
    validate();
    return ChannelModel(Vector::Constant(n, g0), xi2);
}

Topology CycleSetup::topology() const
{
    validate();
    return make_cycle(n, k);
}

namespace {

/// eta^2 + (sigma^2/h0^2)(rho + (1-rho)/(K+1)).
double cycle_noise_shape(const CycleSetup& s)
{
    return s.eta2 + (s.sigma2 / (s.h0 * s.h0)) * (s.rho + (1.0 - s.rho) / (s.k + 1));
}

}  // namespace

double info_cycle(const CycleSetup& s, double power)
{
    const double j0 = s.centralized_info();
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw InvalidArgument("power must be positive and finite");
    }
    const double snr = power / s.xi2;
    return 1.0 / (1.0 / j0 + cycle_noise_shape(s) / (snr * s.n * s.g0 * s.g0));
}

double power_cycle(const CycleSetup& s, double info)
{
    const double j0 = s.centralized_info();
    if (!(info > 0.0 && info < j0)) {
        throw Infeasible(info, j0);
    }
    const double snr = cycle_noise_shape(s) / (s.n * s.g0 * s.g0 * (1.0 / info - 1.0 / j0));
    return s.xi2 * snr;
}

double relative_power_savings(const CycleSetup& s, int k)
{
    if (k < 0) {
        throw InvalidArgument("K must be nonnegative");
    }
    if (!(s.rho >= 0.0 && s.rho < 1.0) || !(s.sigma2 > 0.0 && s.eta2 > 0.0)) {
        throw InvalidArgument("invalid cycle setup");
    }
    const double local_snr = s.eta2 * s.h0 * s.h0 / s.sigma2;
    return (1.0 - s.rho) * (1.0 - 1.0 / (k + 1.0)) / (1.0 + local_snr);
}

}  // namespace lincoh
