// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_SOLVER_HPP
#define LINCOH_SOLVER_HPP

#include "lincoh/model.hpp"
#include "lincoh/topology.hpp"

namespace lincoh {

/// One point on the optimal power-distortion curve of a topology.
struct TradeoffPoint {
    double power = 0.0;       ///< P
    double snr = 0.0;         ///< P_xi = P / xi^2
    double info = 0.0;        ///< J_opt(P)
    double distortion = 0.0;  ///< (1/eta^2 + J)^{-1}
    Vector weights;           ///< w_opt, length L, scaled to w^T Omega w = P with g^T W h > 0
    double multiplier = 0.0;  ///< mu = P_xi / J
};

/// Root-finder settings for the inverse (power for a target information) direction.
struct SolverOptions {
    /// Bisection stops once the bracket is narrower than this times the upper bracket end.
    double bracket_rel_width = 1e-12;
    int max_newton_steps = 8;
    /// Upper bracket doubling is abandoned past this many steps.
    int max_bracket_doublings = 2000;
};

/// Maximum Fisher information attainable at total power P and the weights achieving it.
///
/// J_opt(P) = h^T (Sigma + Gamma/P_xi)^{-1} h and
/// w_opt  ~  Omega^{-1} G Gamma (Sigma + Gamma/P_xi)^{-1} h.
TradeoffPoint solve_info_for_power(const EmbeddedProblem& ep, const ObservationModel& m,
                                   const ChannelModel& c, double power);

/// Minimum power to reach Fisher information J, for J in (0, J0).
///
/// Finds the unique positive root mu_+ of f(mu) = 1 - mu h^T (Gamma + mu J Sigma)^{-1} h
/// and returns P = J xi^2 mu_+. Throws Infeasible when J is outside (0, J0).
TradeoffPoint solve_power_for_info(const EmbeddedProblem& ep, const ObservationModel& m,
                                   const ChannelModel& c, double info,
                                   const SolverOptions& options = {});

/// The secular function f(mu) and its derivative for a fixed target J.
class SecularFunction {
public:
    SecularFunction(const Matrix& gamma, const Matrix& noise_cov, const Vector& gains, double info);

    double operator()(double mu) const;
    /// f'(mu) = -h^T R h + mu J h^T R Sigma R h, R = (Gamma + mu J Sigma)^{-1}.
    double derivative(double mu) const;

private:
    const Matrix& gamma_;
    const Matrix& noise_cov_;
    const Vector& gains_;
    double info_;
};

/// Relative KKT stationarity residual ||(Omega + mu G Z G^T) w|| / ||Omega w||, Z = J Sigma - h h^T.
double kkt_residual(const TradeoffPoint& point, const EmbeddedProblem& ep, const ObservationModel& m,
                    const ChannelModel& c);

}  // namespace lincoh

#endif  // LINCOH_SOLVER_HPP
