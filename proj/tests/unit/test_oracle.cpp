// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include "lincoh/errors.hpp"
#include "lincoh/oracle.hpp"
#include "lincoh/solver.hpp"

#include <gtest/gtest.h>

namespace lincoh {
namespace {

using testing::random_instance;
using testing::rel_diff;
using testing::TestRng;

TEST(SphereSearch, ScalarProblemIsExact)
{
    const ObservationModel m(1.2, Vector::Constant(1, 0.8), Matrix::Constant(1, 1, 0.5));
    const ChannelModel c(Vector::Constant(1, 0.6), 0.9);
    const EmbeddedProblem ep = embed(make_distributed(1), m, c);
    oracle::SearchOptions opts;
    opts.n_directions = 10;
    const auto found = oracle::sphere_search_max_info(ep, m, c, 2.0, opts);
    EXPECT_LT(rel_diff(found.info, solve_info_for_power(ep, m, c, 2.0).info), 1e-14);
}

TEST(SphereSearch, DistributedThreeNodes)
{
    const auto inst = random_instance(31, 3);
    const EmbeddedProblem ep = embed(make_distributed(3), inst.observation, inst.channel);
    const double best = solve_info_for_power(ep, inst.observation, inst.channel, 1.0).info;
    const auto found = oracle::sphere_search_max_info(ep, inst.observation, inst.channel, 1.0);
    EXPECT_LE(found.info, best + 1e-8);
    EXPECT_LT((best - found.info) / best, 1e-4);
}

TEST(SphereSearch, ExampleTopologyAndDeterminism)
{
    const auto inst = random_instance(32, 4);
    const EmbeddedProblem ep = embed(testing::example_topology(), inst.observation, inst.channel);
    const double best = solve_info_for_power(ep, inst.observation, inst.channel, 0.5).info;
    oracle::SearchOptions opts;
    opts.n_directions = 20000;
    opts.threads = 3;
    const auto a = oracle::sphere_search_max_info(ep, inst.observation, inst.channel, 0.5, opts);
    opts.threads = 1;
    const auto b = oracle::sphere_search_max_info(ep, inst.observation, inst.channel, 0.5, opts);
    EXPECT_EQ(a.info, b.info);
    EXPECT_EQ(a.weights, b.weights);
    EXPECT_LE(a.info, best + 1e-8);
    EXPECT_LT((best - a.info) / best, 1e-3);
    EXPECT_LT(rel_diff(transmit_power(lift(a.weights, ep.topology()), inst.observation), 0.5), 1e-12);
}

TEST(AppcInequality, EqualityForEqualScaledIdentities)
{
    TestRng rng(1);
    for (double lambda : {0.5, 1.0, 3.0}) {
        const Matrix a = lambda * Matrix::Identity(4, 4);
        const Vector p = rng.normal_vector(4);
        EXPECT_LE(std::abs(oracle::check_appc_inequality(p, a, a)), 1e-12);
    }
}

TEST(AppcInequality, NonnegativeOnRandomPairs)
{
    TestRng rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 6;
        const Matrix a = rng.spd(n, 1e-3);
        const Matrix b = rng.spd(n, 1e-3);
        const Vector p = rng.normal_vector(n);
        EXPECT_GE(oracle::check_appc_inequality(p, a, b), -1e-10);
    }
}

TEST(AppcInequality, VanishingSecondMatrix)
{
    TestRng rng(3);
    const Matrix a = rng.spd(3);
    const Vector p = rng.normal_vector(3);
    double prev = oracle::check_appc_inequality(p, a, Matrix::Identity(3, 3));
    for (double eps = 1e-1; eps > 1e-7; eps *= 0.1) {
        const double margin = oracle::check_appc_inequality(p, a, eps * Matrix::Identity(3, 3));
        EXPECT_GE(margin, -1e-12);
        EXPECT_LE(margin, prev + 1e-12);
        prev = margin;
    }
    EXPECT_LT(prev, 1e-5);
}

TEST(AppcInequality, RejectsInvalidInputs)
{
    const Matrix id = Matrix::Identity(2, 2);
    Matrix indefinite(2, 2);
    indefinite << 1.0, 2.0, 2.0, 1.0;
    EXPECT_THROW(oracle::check_appc_inequality(Vector::Ones(2), indefinite, id), NotPositiveDefinite);
    EXPECT_THROW(oracle::check_appc_inequality(Vector::Zero(2), id, id), InvalidArgument);
    EXPECT_THROW(oracle::check_appc_inequality(Vector::Ones(3), id, id), DimensionMismatch);
}

TEST(NaiveQuadratics, MatchesMatrixExpressions)
{
    TestRng rng(4);
    const Matrix w = rng.normal_matrix(5, 5);
    const Matrix v = rng.spd(5);
    const Vector g = rng.normal_vector(5);
    const auto q = oracle::naive_quadratics(w, v, g);
    EXPECT_LT(rel_diff(q.trace_form, (w * v * w.transpose()).trace()), 1e-12);
    EXPECT_LT((q.mac_form - w.transpose() * g).norm(), 1e-12 * g.norm() * w.norm());
}

}  // namespace
}  // namespace lincoh
