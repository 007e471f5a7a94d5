// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include "lincoh/errors.hpp"
#include "lincoh/model.hpp"
#include "lincoh/topology.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace lincoh {
namespace {

using testing::random_instance;
using testing::rel_diff;
using testing::TestRng;

ObservationModel scalar_model(double eta2, double h, double sigma2)
{
    return ObservationModel(eta2, Vector::Constant(1, h), Matrix::Constant(1, 1, sigma2));
}

TEST(ObservationModel, RejectsNonPositiveDefiniteNoise)
{
    Matrix sigma(2, 2);
    sigma << 1.0, 2.0, 2.0, 1.0;
    EXPECT_THROW(ObservationModel(1.0, Vector::Ones(2), sigma), NotPositiveDefinite);
}

TEST(ObservationModel, RejectsAsymmetricOrMisSizedNoise)
{
    Matrix asym(2, 2);
    asym << 1.0, 0.1, 0.0, 1.0;
    EXPECT_THROW(ObservationModel(1.0, Vector::Ones(2), asym), InvalidArgument);
    EXPECT_THROW(ObservationModel(1.0, Vector::Ones(3), Matrix::Identity(2, 2)), DimensionMismatch);
}

TEST(ObservationModel, RejectsZeroGainsAndBadPrior)
{
    EXPECT_THROW(ObservationModel(1.0, Vector::Zero(2), Matrix::Identity(2, 2)), InvalidArgument);
    EXPECT_THROW(ObservationModel(0.0, Vector::Ones(2), Matrix::Identity(2, 2)), InvalidArgument);
    EXPECT_THROW(ChannelModel(Vector::Zero(2), 1.0), InvalidArgument);
    EXPECT_THROW(ChannelModel(Vector::Ones(2), -1.0), InvalidArgument);
}

TEST(CollaborationMatrix, EnforcesSparsity)
{
    const Topology t = make_distributed(2);
    Matrix w = Matrix::Identity(2, 2);
    EXPECT_NO_THROW(CollaborationMatrix(t, w));
    w(0, 1) = 0.5;
    try {
        CollaborationMatrix bad(t, w);
        FAIL() << "expected SparsityViolation";
    } catch (const SparsityViolation& e) {
        EXPECT_EQ(e.row(), 0);
        EXPECT_EQ(e.col(), 1);
    }
    EXPECT_THROW(CollaborationMatrix(t, Matrix::Identity(3, 3)), DimensionMismatch);
}

TEST(TransmitPower, ZeroMatrixHasZeroPower)
{
    const auto inst = random_instance(3, 4);
    EXPECT_EQ(transmit_power(CollaborationMatrix(make_fully_connected(4), Matrix::Zero(4, 4)), inst.observation),
              0.0);
}

TEST(TransmitPower, ScalarExpansion)
{
    const auto m = scalar_model(1.7, 0.8, 0.3);
    const double w = 1.3;
    const CollaborationMatrix wm(make_distributed(1), Matrix::Constant(1, 1, w));
    EXPECT_NEAR(transmit_power(wm, m), w * w * (0.3 + 1.7 * 0.8 * 0.8), 1e-15);
}

TEST(TransmitPower, MatchesNaiveTripleLoop)
{
    const auto inst = random_instance(11, 3);
    TestRng rng(12);
    const Matrix w = rng.normal_matrix(3, 3);
    const Matrix v = inst.observation.noise_cov() +
                     inst.observation.prior_var() * inst.observation.gains() * inst.observation.gains().transpose();
    double expected = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                expected += w(i, j) * v(j, k) * w(i, k);
            }
        }
    }
    const double got = transmit_power(CollaborationMatrix(make_fully_connected(3), w), inst.observation);
    EXPECT_LT(rel_diff(got, expected), 1e-13);
}

TEST(TransmitPower, RejectsDimensionMismatch)
{
    const auto inst = random_instance(1, 3);
    EXPECT_THROW(transmit_power(CollaborationMatrix(make_distributed(2), Matrix::Identity(2, 2)), inst.observation),
                 DimensionMismatch);
}

TEST(FisherInfo, ZeroMatrixHasZeroInfo)
{
    const auto inst = random_instance(5, 3);
    const CollaborationMatrix w(make_distributed(3), Matrix::Zero(3, 3));
    EXPECT_EQ(fisher_info(w, inst.observation, inst.channel), 0.0);
}

TEST(FisherInfo, ScalarCase)
{
    const double g = 0.7, w = 1.9, h = 1.1, s2 = 0.4, xi2 = 0.3;
    const auto m = scalar_model(1.0, h, s2);
    const ChannelModel c(Vector::Constant(1, g), xi2);
    const CollaborationMatrix wm(make_distributed(1), Matrix::Constant(1, 1, w));
    const double expected = (g * w * h) * (g * w * h) / (g * g * w * w * s2 + xi2);
    EXPECT_LT(rel_diff(fisher_info(wm, m, c), expected), 1e-15);
}

TEST(FisherInfo, MatchesNaiveExpansion)
{
    const auto inst = random_instance(21, 2);
    TestRng rng(22);
    const Matrix w = rng.normal_matrix(2, 2);
    const Vector& g = inst.channel.gains();
    const Vector& h = inst.observation.gains();
    const Matrix& s = inst.observation.noise_cov();
    double num = 0.0;
    double den = inst.channel.mac_noise_var();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            num += g(i) * w(i, j) * h(j);
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    den += g(i) * w(i, j) * s(j, k) * w(l, k) * g(l);
                }
            }
        }
    }
    const double got = fisher_info(CollaborationMatrix(make_fully_connected(2), w), inst.observation, inst.channel);
    EXPECT_LT(rel_diff(got, num * num / den), 1e-13);
}

TEST(Distortion, Values)
{
    EXPECT_EQ(distortion_from_info(0.0, 2.5), 2.5);
    EXPECT_EQ(distortion_from_info(1.0, 1.0), 0.5);
    EXPECT_LT(distortion_from_info(1e12, 1.0), 1e-11);
    EXPECT_THROW(distortion_from_info(-1e-3, 1.0), InvalidArgument);
    double prev = distortion_from_info(0.0, 1.0);
    for (double j = 0.1; j < 100.0; j *= 1.7) {
        const double d = distortion_from_info(j, 1.0);
        EXPECT_LT(d, prev);
        prev = d;
    }
}

TEST(CentralizedInfo, ClosedFormCases)
{
    EXPECT_LT(rel_diff(centralized_info(scalar_model(1.0, 0.9, 0.3)), 0.81 / 0.3), 1e-15);
    EXPECT_EQ(centralized_info(ObservationModel(1.0, Vector::Ones(5), Matrix::Identity(5, 5))), 5.0);
}

TEST(CentralizedInfo, EquicorrelatedMatchesEigenRelation)
{
    const int n = 6;
    const double s2 = 0.7, rho = 0.35, h0 = 1.3;
    const Matrix sigma = gen_equicorrelated_cov(n, s2, rho);
    const ObservationModel m(1.0, Vector::Constant(n, h0), sigma);
    const double closed = n * h0 * h0 / (s2 * (1.0 - rho + rho * n));
    const Vector h = m.gains();
    const double direct = h.dot(sigma.inverse() * h);
    EXPECT_LT(rel_diff(centralized_info(m), closed), 1e-13);
    EXPECT_LT(rel_diff(direct, closed), 1e-13);
}

TEST(CollaborationCost, Cases)
{
    const int n = 4;
    CostMatrix unit(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                unit.set(i, j, LinkCost(1.0));
            }
        }
    }
    EXPECT_EQ(collaboration_cost(make_distributed(n), unit), LinkCost(0.0));
    EXPECT_EQ(collaboration_cost(make_fully_connected(n), unit), LinkCost(n * (n - 1.0)));

    CostMatrix with_inf = unit;
    with_inf.set(0, 1, LinkCost::infinite());
    EXPECT_TRUE(collaboration_cost(testing::one_link_topology(n), with_inf).is_infinite());
    EXPECT_FALSE(collaboration_cost(make_distributed(n), with_inf).is_infinite());

    EXPECT_THROW(unit.set(1, 1, LinkCost(1.0)), InvalidArgument);
    EXPECT_THROW(unit.set(0, 1, LinkCost(-1.0)), InvalidArgument);
    EXPECT_THROW(collaboration_cost(make_distributed(3), unit), DimensionMismatch);
}

TEST(ModelProperties, ScaleLawAndDataProcessing)
{
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const int n = 2 + static_cast<int>(seed % 4);
        const auto inst = random_instance(seed, n);
        TestRng rng(seed + 1000);
        const Matrix w = rng.normal_matrix(n, n);
        const Topology full = make_fully_connected(n);
        const CollaborationMatrix base(full, w);
        const double j0 = centralized_info(inst.observation);
        const double j = fisher_info(base, inst.observation, inst.channel);
        EXPECT_LE(j, j0 * (1.0 + 1e-9));
        const double d = distortion_from_info(j, inst.observation.prior_var());
        EXPECT_LE(d, inst.observation.prior_var());
        EXPECT_GT(d, distortion_from_info(j0, inst.observation.prior_var()));

        const Vector wtg = w.transpose() * inst.channel.gains();
        if (std::abs(wtg.dot(inst.observation.gains())) > 1e-8) {
            double prev_j = j;
            double prev_p = transmit_power(base, inst.observation);
            for (double alpha : {1.5, 2.0, 4.0, 10.0}) {
                const CollaborationMatrix scaled(full, alpha * w);
                const double sj = fisher_info(scaled, inst.observation, inst.channel);
                const double sp = transmit_power(scaled, inst.observation);
                EXPECT_GT(sj, prev_j);
                EXPECT_GT(sp, prev_p);
                prev_j = sj;
                prev_p = sp;
            }
        }
    }
}

}  // namespace
}  // namespace lincoh
