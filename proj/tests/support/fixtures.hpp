// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_TESTS_FIXTURES_HPP
#define LINCOH_TESTS_FIXTURES_HPP

#include "lincoh/instances.hpp"
#include "lincoh/model.hpp"
#include "lincoh/topology.hpp"

#include <cmath>
#include <cstdint>

namespace lincoh::testing {

/// Uniform draws from the library generator on a dedicated test stream.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : rng_(seed, Rng::Stream::test) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return lo + (hi - lo) * rng_.uniform(); }
    double normal()
    {
        const double u1 = 1.0 - rng_.uniform();
        const double u2 = rng_.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
    Vector normal_vector(Eigen::Index n)
    {
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            v(i) = normal();
        }
        return v;
    }
    Matrix normal_matrix(Eigen::Index r, Eigen::Index c)
    {
        Matrix m(r, c);
        for (Eigen::Index j = 0; j < c; ++j) {
            for (Eigen::Index i = 0; i < r; ++i) {
                m(i, j) = normal();
            }
        }
        return m;
    }
    /// B B^T / n + floor * I: well-conditioned symmetric positive definite.
    Matrix spd(Eigen::Index n, double floor = 0.2)
    {
        const Matrix b = normal_matrix(n, n);
        Matrix s = b * b.transpose() / static_cast<double>(n);
        s.diagonal().array() += floor;
        return 0.5 * (s + s.transpose());
    }

private:
    Rng rng_;
};

struct RandomInstance {
    ObservationModel observation;
    ChannelModel channel;
};

/// Correlated noise, random gains; h and g bounded away from zero.
inline RandomInstance random_instance(std::uint64_t seed, int n, bool diagonal_noise = false)
{
    TestRng rng(seed);
    Vector h(n);
    Vector g(n);
    for (int i = 0; i < n; ++i) {
        h(i) = rng.uniform(0.3, 1.5) * (rng.uniform() < 0.2 ? -1.0 : 1.0);
        g(i) = rng.uniform(0.2, 1.0);
    }
    Matrix sigma;
    if (diagonal_noise) {
        sigma = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            sigma(i, i) = rng.uniform(0.2, 2.0);
        }
    } else {
        sigma = rng.spd(n);
    }
    const double eta2 = rng.uniform(0.5, 2.0);
    const double xi2 = rng.uniform(0.2, 2.0);
    return RandomInstance{ObservationModel(eta2, std::move(h), std::move(sigma)), ChannelModel(std::move(g), xi2)};
}

/// The 4-node example with three collaboration links (L = 7):
/// node 0 -> 1, node 1 -> 2, node 3 -> 2 (sender -> receiver).
inline Topology example_topology()
{
    Adjacency a = Adjacency::Identity(4, 4);
    a(1, 0) = 1;
    a(2, 1) = 1;
    a(2, 3) = 1;
    return Topology(std::move(a));
}

/// Distributed plus a single link node 1 -> node 0.
inline Topology one_link_topology(int n)
{
    Adjacency a = Adjacency::Identity(n, n);
    a(0, 1) = 1;
    return Topology(std::move(a));
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace lincoh::testing

#endif  // LINCOH_TESTS_FIXTURES_HPP
