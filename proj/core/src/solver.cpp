// SPDX-License-Identifier: Apache-2.0

#include "lincoh/solver.hpp"

#include "lincoh/errors.hpp"

#include <cmath>
#include <string>

namespace lincoh {

namespace {

void check_inputs(const EmbeddedProblem& ep, const ObservationModel& m, const ChannelModel& c)
{
    check_compatible(m, c);
    if (ep.n_sensors() != m.n_sensors()) {
        throw DimensionMismatch("embedded problem and model sizes differ");
    }
}

Eigen::LLT<Matrix> factor_spd(const Matrix& a, const char* what)
{
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite(std::string(what) + " is not positive definite");
    }
    return llt;
}

/// Scale `direction` to w^T Omega w = power with g^T W h > 0.
Vector scale_to_power(const EmbeddedProblem& ep, const Vector& gains_h, Vector direction, double power)
{
    const double quad = ep.omega_quadratic(direction);
    if (!(quad > 0.0) || !std::isfinite(quad)) {
        throw NumericalError("optimal weight direction vanished");
    }
    double kappa = std::sqrt(power / quad);
    if (ep.apply_gt(direction).dot(gains_h) < 0.0) {
        kappa = -kappa;
    }
    direction *= kappa;
    return direction;
}

/// Omega^{-1} G Gamma (Sigma + Gamma/P_xi)^{-1} h, plus J = h^T (Sigma + Gamma/P_xi)^{-1} h.
std::pair<double, Vector> info_and_direction(const EmbeddedProblem& ep, const ObservationModel& m, double snr)
{
    const Matrix s = m.noise_cov() + ep.gamma() / snr;
    const auto llt = factor_spd(s, "Sigma + Gamma/P_xi");
    const Vector x = llt.solve(m.gains());
    const double info = m.gains().dot(x);
    return {info, ep.solve_omega(ep.apply_g(ep.gamma() * x))};
}

}  // namespace

TradeoffPoint solve_info_for_power(const EmbeddedProblem& ep, const ObservationModel& m,
                                   const ChannelModel& c, double power)
{
    check_inputs(ep, m, c);
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw InvalidArgument("power must be positive and finite");
    }
    TradeoffPoint tp;
    tp.power = power;
    tp.snr = power / c.mac_noise_var();
    auto [info, direction] = info_and_direction(ep, m, tp.snr);
    tp.info = info;
    tp.distortion = distortion_from_info(info, m.prior_var());
    tp.weights = scale_to_power(ep, m.gains(), std::move(direction), power);
    tp.multiplier = tp.snr / info;
    return tp;
}

SecularFunction::SecularFunction(const Matrix& gamma, const Matrix& noise_cov, const Vector& gains, double info)
    : gamma_(gamma), noise_cov_(noise_cov), gains_(gains), info_(info)
{
}

double SecularFunction::operator()(double mu) const
{
    const auto llt = factor_spd(gamma_ + mu * info_ * noise_cov_, "Gamma + mu J Sigma");
    return 1.0 - mu * gains_.dot(llt.solve(gains_));
}

double SecularFunction::derivative(double mu) const
{
    const auto llt = factor_spd(gamma_ + mu * info_ * noise_cov_, "Gamma + mu J Sigma");
    const Vector y = llt.solve(gains_);
    return -gains_.dot(y) + mu * info_ * y.dot(noise_cov_ * y);
}

TradeoffPoint solve_power_for_info(const EmbeddedProblem& ep, const ObservationModel& m,
                                   const ChannelModel& c, double info, const SolverOptions& options)
{
    check_inputs(ep, m, c);
    const double j0 = centralized_info(m);
    if (!(info > 0.0 && info < j0)) {
        throw Infeasible(info, j0);
    }
    const SecularFunction f(ep.gamma(), m.noise_cov(), m.gains(), info);

    // f(mu) >= 1 - mu h^T Gamma^{-1} h, so the root is no smaller than 1 / h^T Gamma^{-1} h.
    double lo = 1.0 / m.gains().dot(ep.gamma_inverse() * m.gains());
    double hi = lo;
    double f_prev = f(hi);
    int doublings = 0;
    while (f_prev >= 0.0) {
        if (++doublings > options.max_bracket_doublings) {
            throw NumericalError("could not bracket the secular root");
        }
        lo = hi;
        hi *= 2.0;
        const double f_hi = f(hi);
        if (!(f_hi < f_prev)) {
            throw NumericalError("secular function is not decreasing on the bracketing grid");
        }
        f_prev = f_hi;
    }

    while (hi - lo > options.bracket_rel_width * hi) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    double mu = 0.5 * (lo + hi);
    for (int step = 0; step < options.max_newton_steps; ++step) {
        const double value = f(mu);
        const double slope = f.derivative(mu);
        if (value == 0.0 || !(slope < 0.0)) {
            break;
        }
        const double next = mu - value / slope;
        if (!(next >= lo && next <= hi)) {
            break;
        }
        const double change = std::abs(next - mu);
        mu = next;
        if (change <= 1e-16 * mu) {
            break;
        }
    }

    TradeoffPoint tp;
    tp.info = info;
    tp.multiplier = mu;
    tp.power = info * c.mac_noise_var() * mu;
    tp.snr = tp.power / c.mac_noise_var();
    tp.distortion = distortion_from_info(info, m.prior_var());
    auto direction = info_and_direction(ep, m, tp.snr).second;
    tp.weights = scale_to_power(ep, m.gains(), std::move(direction), tp.power);
    return tp;
}

double kkt_residual(const TradeoffPoint& point, const EmbeddedProblem& ep, const ObservationModel& m,
                    const ChannelModel& c)
{
    check_inputs(ep, m, c);
    const Vector& w = point.weights;
    const Vector omega_w = ep.apply_omega(w);
    const Vector v = ep.apply_gt(w);
    const Vector zv = point.info * (m.noise_cov() * v) - m.gains() * m.gains().dot(v);
    const Vector r = omega_w + point.multiplier * ep.apply_g(zv);
    return r.norm() / omega_w.norm();
}

}  // namespace lincoh
