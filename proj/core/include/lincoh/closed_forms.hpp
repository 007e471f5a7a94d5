// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_CLOSED_FORMS_HPP
#define LINCOH_CLOSED_FORMS_HPP

#include "lincoh/model.hpp"
#include "lincoh/topology.hpp"

namespace lincoh {

/// Information of the distributed (A = I) network with uncorrelated noise.
/// Throws InvalidArgument if Sigma has a nonzero off-diagonal entry.
double info_distributed(const ObservationModel& m, const ChannelModel& c, double power);

/// Information of the fully connected network: [1/J0 + (eta^2 + 1/J0)/(P_xi ||g||^2)]^{-1}.
double info_fully_connected(const ObservationModel& m, const ChannelModel& c, double power);

/// Unnormalized optimal fully connected weights g h^T Sigma^{-1}.
CollaborationMatrix weights_fully_connected(const ObservationModel& m, const ChannelModel& c);

/// Largest J compatible with the Gaussian sum-rate bound and the coherent MAC capacity.
///
/// Solves 1 + ||g||^2 P_xi = lambda / (D - D0), lambda = eta^4 J0 / (1 + eta^2 J0), for D
/// and converts to information.
double rate_distortion_bound(const ObservationModel& m, const ChannelModel& c, double power);

struct InfoBound {
    double info_upper = 0.0;       ///< J_+(P) >= J_opt(P)
    double distortion_lower = 0.0;  ///< D_-(P) <= D_opt(P)
};

/// J_+ = [1/J0 + 1/(P_xi h^T Gamma^{-1} h)]^{-1} and the matching D_-.
InfoBound info_lower_bound_distortion(const EmbeddedProblem& ep, const ObservationModel& m,
                                      const ChannelModel& c, double power);

enum class SnrRegime { low, high };

struct SnrApproximation {
    double info = 0.0;
    double distortion = 0.0;
    /// Asymptotic weight direction scaled to w^T Omega w = P, sign fixed so g^T W h > 0.
    Vector weights;
};

/// First-order low/high SNR expansions of the optimal tradeoff.
SnrApproximation snr_asymptotics(const EmbeddedProblem& ep, const ObservationModel& m,
                                 const ChannelModel& c, double power, SnrRegime regime);

/// Homogeneous, equicorrelated network on a K-connected directed cycle.
struct CycleSetup {
    int n = 1;
    int k = 0;
    double h0 = 1.0;
    double sigma2 = 1.0;
    double rho = 0.0;
    double g0 = 1.0;
    double eta2 = 1.0;
    double xi2 = 1.0;

    /// Throws InvalidArgument unless rho in [0,1), variances > 0 and 0 <= k <= n-1.
    void validate() const;
    /// J0 = N h0^2 / (sigma^2 (1 - rho + rho N)).
    double centralized_info() const;
    ObservationModel observation_model() const;
    ChannelModel channel_model() const;
    Topology topology() const;
};

double info_cycle(const CycleSetup& s, double power);
/// Exact inverse of info_cycle. Throws Infeasible unless J in (0, J0).
double power_cycle(const CycleSetup& s, double info);

/// 1 - P_cycle(K)/P_cycle(0) = (1 - rho)(1 - 1/(K+1)) / (1 + eta^2 h0^2 / sigma^2).
double relative_power_savings(const CycleSetup& s, int k);

}  // namespace lincoh

#endif  // LINCOH_CLOSED_FORMS_HPP
