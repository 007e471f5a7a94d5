// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include "lincoh/closed_forms.hpp"
#include "lincoh/errors.hpp"
#include "lincoh/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace lincoh {
namespace {

using testing::random_instance;
using testing::rel_diff;

CycleSetup cycle_setup(int k, double rho = 0.3)
{
    CycleSetup s;
    s.n = 6;
    s.k = k;
    s.h0 = 0.9;
    s.sigma2 = 0.7;
    s.rho = rho;
    s.g0 = 0.8;
    s.eta2 = 1.4;
    s.xi2 = 0.5;
    return s;
}

TEST(InfoDistributed, ScalarAndLimit)
{
    const ObservationModel m(1.0, Vector::Ones(1), Matrix::Identity(1, 1));
    const ChannelModel c(Vector::Ones(1), 1.0);
    EXPECT_DOUBLE_EQ(info_distributed(m, c, 1.0), 1.0 / 3.0);

    const auto inst = random_instance(2, 5, true);
    EXPECT_LT(rel_diff(info_distributed(inst.observation, inst.channel, 1e13), centralized_info(inst.observation)),
              1e-9);
}

TEST(InfoDistributed, MatchesGeneralSolver)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = random_instance(seed, 5, true);
        const EmbeddedProblem ep = embed(make_distributed(5), inst.observation, inst.channel);
        for (double power : {0.01, 1.0, 100.0}) {
            EXPECT_LT(rel_diff(info_distributed(inst.observation, inst.channel, power),
                               solve_info_for_power(ep, inst.observation, inst.channel, power).info),
                      1e-9);
        }
    }
}

TEST(InfoDistributed, RejectsCorrelatedNoise)
{
    const auto inst = random_instance(1, 3);
    EXPECT_THROW(info_distributed(inst.observation, inst.channel, 1.0), InvalidArgument);
}

TEST(InfoFullyConnected, MatchesSolverLimitAndWeights)
{
    for (std::uint64_t seed = 10; seed < 20; ++seed) {
        const auto inst = random_instance(seed, 4);
        const auto& m = inst.observation;
        const auto& c = inst.channel;
        const Topology full = make_fully_connected(4);
        const EmbeddedProblem ep = embed(full, m, c);
        for (double power : {0.02, 1.0, 75.0}) {
            const double closed = info_fully_connected(m, c, power);
            EXPECT_LT(rel_diff(closed, solve_info_for_power(ep, m, c, power).info), 1e-9);
            const Matrix dir = weights_fully_connected(m, c).weights();
            const double kappa = std::sqrt(power / transmit_power(CollaborationMatrix(full, dir), m));
            EXPECT_LT(rel_diff(fisher_info(CollaborationMatrix(full, kappa * dir), m, c), closed), 1e-8);
        }
        EXPECT_LT(rel_diff(info_fully_connected(m, c, 1e13), centralized_info(m)), 1e-9);
    }
}

TEST(RateDistortionBound, EqualsFullyConnectedAndBoundsSubTopologies)
{
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        const auto inst = random_instance(seed, 5);
        const auto& m = inst.observation;
        const auto& c = inst.channel;
        for (double power : {0.1, 1.0, 10.0}) {
            const double bound = rate_distortion_bound(m, c, power);
            EXPECT_LT(rel_diff(bound, info_fully_connected(m, c, power)), 1e-10);
            for (int k = 0; k < 4; ++k) {
                const double j = solve_info_for_power(embed(make_cycle(5, k), m, c), m, c, power).info;
                EXPECT_LE(j, bound * (1 + 1e-9));
            }
        }
        // The bound approaches but never reaches J0: D -> D0 needs unbounded power.
        const double j0 = centralized_info(m);
        double prev = 0.0;
        for (double power = 1e-2; power < 1e8; power *= 10.0) {
            const double j = rate_distortion_bound(m, c, power);
            EXPECT_GT(j, prev);
            EXPECT_LT(j, j0);
            prev = j;
        }
    }
}

TEST(LowerBound, HoldsOnRandomInstances)
{
    for (std::uint64_t seed = 100; seed < 200; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5);
        const auto inst = random_instance(seed, n);
        const auto& m = inst.observation;
        const auto& c = inst.channel;
        const EmbeddedProblem ep = embed(make_cycle(n, static_cast<int>(seed % n)), m, c);
        const double power = std::pow(10.0, static_cast<double>(seed % 7) - 3.0);
        const TradeoffPoint tp = solve_info_for_power(ep, m, c, power);
        const InfoBound b = info_lower_bound_distortion(ep, m, c, power);
        EXPECT_GE(b.info_upper, tp.info * (1 - 1e-12));
        EXPECT_LE(b.distortion_lower, tp.distortion + 1e-10);
    }
}

TEST(LowerBound, TightOnEquicorrelatedCycles)
{
    for (int k : {0, 1, 2, 5}) {
        const CycleSetup s = cycle_setup(k);
        const ObservationModel m = s.observation_model();
        const ChannelModel c = s.channel_model();
        const EmbeddedProblem ep = embed(s.topology(), m, c);
        for (double power : {0.01, 1.0, 100.0}) {
            const TradeoffPoint tp = solve_info_for_power(ep, m, c, power);
            EXPECT_LT(rel_diff(info_lower_bound_distortion(ep, m, c, power).distortion_lower, tp.distortion), 1e-9);
        }
    }
}

TEST(LowerBound, HighPowerLimit)
{
    const auto inst = random_instance(7, 4);
    const auto& m = inst.observation;
    const EmbeddedProblem ep = embed(testing::example_topology(), m, inst.channel);
    const double d0 = distortion_from_info(centralized_info(m), m.prior_var());
    const double power = 1e12;
    EXPECT_LT(rel_diff(info_lower_bound_distortion(ep, m, inst.channel, power).distortion_lower, d0), 1e-9);
    EXPECT_LT(rel_diff(solve_info_for_power(ep, m, inst.channel, power).distortion, d0), 1e-9);
}

TEST(SnrAsymptotics, TaylorRemaindersAndDirection)
{
    for (std::uint64_t seed = 200; seed < 210; ++seed) {
        const auto inst = random_instance(seed, 4);
        const auto& m = inst.observation;
        const auto& c = inst.channel;
        const EmbeddedProblem ep = embed(testing::example_topology(), m, c);
        const double unit = c.mac_noise_var() / c.gains().squaredNorm();

        const double p_low = 1e-4 * unit;
        const TradeoffPoint opt_low = solve_info_for_power(ep, m, c, p_low);
        const SnrApproximation low = snr_asymptotics(ep, m, c, p_low, SnrRegime::low);
        EXPECT_LT(std::abs(low.info - opt_low.info) / opt_low.info, 1e-3);
        EXPECT_NEAR(low.distortion, opt_low.distortion, 1e-3 * (m.prior_var() - opt_low.distortion));

        const double p_high = 1e6 * unit;
        const TradeoffPoint opt_high = solve_info_for_power(ep, m, c, p_high);
        const SnrApproximation high = snr_asymptotics(ep, m, c, p_high, SnrRegime::high);
        const double j0 = centralized_info(m);
        EXPECT_LT(std::abs(high.info - opt_high.info) / (j0 - opt_high.info), 1e-2);

        // Low-SNR direction is asymptotically optimal.
        double prev_gap = 1.0;
        for (double scale : {1e-1, 1e-3, 1e-5}) {
            const double p = scale * unit;
            const auto approx = snr_asymptotics(ep, m, c, p, SnrRegime::low);
            const double j_dir = fisher_info(lift(approx.weights, ep.topology()), m, c);
            const double j_opt = fisher_info(lift(solve_info_for_power(ep, m, c, p).weights, ep.topology()), m, c);
            const double gap = 1.0 - j_dir / j_opt;
            EXPECT_GE(gap, -1e-9);
            EXPECT_LE(gap, prev_gap + 1e-12);
            prev_gap = gap;
        }
        EXPECT_LT(prev_gap, 1e-6);
        EXPECT_LT(rel_diff(ep.omega_quadratic(high.weights), p_high), 1e-10);
    }
}

TEST(Cycle, MatchesGeneralSolver)
{
    for (int k : {0, 1, 2, 5}) {
        for (double rho : {0.0, 0.3, 0.8}) {
            const CycleSetup s = cycle_setup(k, rho);
            const ObservationModel m = s.observation_model();
            const ChannelModel c = s.channel_model();
            const EmbeddedProblem ep = embed(s.topology(), m, c);
            for (double power : {0.01, 1.0, 100.0}) {
                const double closed = info_cycle(s, power);
                const TradeoffPoint tp = solve_info_for_power(ep, m, c, power);
                EXPECT_LT(rel_diff(closed, tp.info), 1e-9);
                // Uniform weights W ~ A are optimal.
                Vector ones = Vector::Ones(ep.n_links());
                ones *= std::sqrt(power / ep.omega_quadratic(ones));
                EXPECT_LT(rel_diff(fisher_info(lift(ones, ep.topology()), m, c), closed), 1e-8);
                EXPECT_LT((tp.weights - ones).norm() / ones.norm(), 1e-8);
            }
            EXPECT_LT(rel_diff(s.centralized_info(), centralized_info(m)), 1e-13);
        }
    }
}

TEST(Cycle, FullCycleIsFullyConnected)
{
    const CycleSetup s = cycle_setup(5);
    for (double power : {0.3, 3.0}) {
        EXPECT_LT(rel_diff(info_cycle(s, power), info_fully_connected(s.observation_model(), s.channel_model(), power)),
                  1e-12);
    }
}

TEST(Cycle, PowerIsExactInverse)
{
    for (int k = 0; k < 6; ++k) {
        const CycleSetup s = cycle_setup(k);
        for (double power = 1e-4; power < 1e6; power *= 7.0) {
            EXPECT_LT(rel_diff(power_cycle(s, info_cycle(s, power)), power), 1e-10);
        }
        EXPECT_THROW(power_cycle(s, s.centralized_info()), Infeasible);
        EXPECT_THROW(power_cycle(s, 0.0), Infeasible);
    }
    CycleSetup bad = cycle_setup(1);
    bad.rho = 1.0;
    EXPECT_THROW(info_cycle(bad, 1.0), InvalidArgument);
}

TEST(RelativePowerSavings, ReferenceValues)
{
    CycleSetup s;
    s.n = 200;
    s.rho = 0.0;
    s.sigma2 = 1.0;
    s.h0 = 1.0;
    s.eta2 = 100.0;
    const double high_snr = relative_power_savings(s, 199);
    EXPECT_NEAR(high_snr, 0.0099, 1e-4);
    EXPECT_GE(high_snr, 0.0098);
    EXPECT_LE(high_snr, 0.0100);
    s.eta2 = 1.0;
    const double low_snr = relative_power_savings(s, 199);
    EXPECT_GE(low_snr, 0.495);
    EXPECT_LE(low_snr, 0.500);
    EXPECT_EQ(relative_power_savings(s, 0), 0.0);
    EXPECT_THROW(relative_power_savings(s, -1), InvalidArgument);
}

TEST(RelativePowerSavings, MonotoneAndIndependentOfTarget)
{
    CycleSetup s = cycle_setup(0);
    s.n = 8;
    for (int k = 1; k < 8; ++k) {
        EXPECT_GT(relative_power_savings(s, k), relative_power_savings(s, k - 1));
    }
    CycleSetup more_corr = s;
    more_corr.rho = 0.6;
    CycleSetup louder = s;
    louder.eta2 = 5.0;
    for (int k = 1; k < 8; ++k) {
        EXPECT_LT(relative_power_savings(more_corr, k), relative_power_savings(s, k));
        EXPECT_LT(relative_power_savings(louder, k), relative_power_savings(s, k));
    }
    for (int k = 0; k < 8; ++k) {
        CycleSetup sk = s;
        sk.k = k;
        CycleSetup s0 = s;
        s0.k = 0;
        const double rps = relative_power_savings(s, k);
        for (double frac : {0.01, 0.2, 0.5, 0.9, 0.999}) {
            const double j = frac * s.centralized_info();
            EXPECT_NEAR(1.0 - power_cycle(sk, j) / power_cycle(s0, j), rps, 1e-12);
        }
    }
}

}  // namespace
}  // namespace lincoh
