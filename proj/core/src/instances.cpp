// SPDX-License-Identifier: Apache-2.0

#include "lincoh/instances.hpp"

#include "lincoh/errors.hpp"

#include <cmath>
#include <string>

namespace lincoh {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, Stream stream) : engine_(splitmix64(seed ^ static_cast<std::uint64_t>(stream))) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_size(std::size_t got, int want, const char* what)
{
    if (got != static_cast<std::size_t>(want)) {
        throw DimensionMismatch(std::string(what) + " has " + std::to_string(got) + " entries, expected " +
                                std::to_string(want));
    }
}

}  // namespace

Positions gen_positions(const InstanceSpec& spec)
{
    if (spec.n_sensors < 1) {
        throw InvalidArgument("instance needs at least one sensor");
    }
    return std::visit(
        overloaded{
            [&](const UnitSquarePlacement&) {
                Rng rng(spec.seed, Rng::Stream::positions);
                Positions points(static_cast<std::size_t>(spec.n_sensors));
                for (Point& p : points) {
                    p.x = rng.uniform();
                    p.y = rng.uniform();
                }
                return points;
            },
            [&](const ExplicitPlacement& e) {
                require_size(e.points.size(), spec.n_sensors, "explicit placement");
                for (const Point& p : e.points) {
                    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
                        throw InvalidArgument("explicit positions must lie in the unit square");
                    }
                }
                return e.points;
            },
        },
        spec.placement);
}

Matrix gen_exponential_cov(std::span<const Point> positions, double sigma2, double rho)
{
    if (!(rho > 0.0 && rho < 1.0)) {
        throw InvalidArgument("exponential correlation base rho must be in (0, 1)");
    }
    if (!(sigma2 > 0.0)) {
        throw InvalidArgument("sigma^2 must be positive");
    }
    const Matrix d = pairwise_distances(positions);
    Matrix sigma(d.rows(), d.cols());
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
        for (Eigen::Index i = 0; i < d.rows(); ++i) {
            sigma(i, j) = sigma2 * std::pow(rho, d(i, j));
        }
    }
    if (Eigen::LLT<Matrix>(sigma).info() != Eigen::Success) {
        throw NotPositiveDefinite("exponential covariance is numerically singular (near-duplicate positions?)");
    }
    return sigma;
}

Matrix gen_equicorrelated_cov(int n, double sigma2, double rho)
{
    if (n < 1) {
        throw InvalidArgument("need at least one sensor");
    }
    if (!(rho >= 0.0 && rho < 1.0)) {
        throw InvalidArgument("equicorrelation rho must be in [0, 1)");
    }
    if (!(sigma2 > 0.0)) {
        throw InvalidArgument("sigma^2 must be positive");
    }
    Matrix sigma = Matrix::Constant(n, n, sigma2 * rho);
    sigma.diagonal().setConstant(sigma2);
    return sigma;
}

Vector gen_channel_gains(const InstanceSpec& spec)
{
    const int n = spec.n_sensors;
    if (n < 1) {
        throw InvalidArgument("instance needs at least one sensor");
    }
    return std::visit(overloaded{
                          [&](const UniformGain&) {
                              Rng rng(spec.seed, Rng::Stream::channel_gains);
                              Vector g(n);
                              for (Eigen::Index i = 0; i < n; ++i) {
                                  g(i) = rng.uniform_open_closed();
                              }
                              return g;
                          },
                          [&](const ConstantGain& cg) { return Vector(Vector::Constant(n, cg.value)); },
                          [&](const ExplicitGain& e) {
                              require_size(e.values.size(), n, "explicit channel gains");
                              return Vector(Eigen::Map<const Vector>(e.values.data(), n));
                          },
                      },
                      spec.gains_g);
}

Instance generate(const InstanceSpec& spec)
{
    Positions positions = gen_positions(spec);
    const int n = spec.n_sensors;
    Matrix sigma = std::visit(
        overloaded{
            [&](const DiagonalCovariance& c) {
                if (!(c.sigma2 > 0.0)) {
                    throw InvalidArgument("sigma^2 must be positive");
                }
                return Matrix(Matrix::Identity(n, n) * c.sigma2);
            },
            [&](const EquicorrelatedCovariance& c) { return gen_equicorrelated_cov(n, c.sigma2, c.rho); },
            [&](const ExponentialCovariance& c) { return gen_exponential_cov(positions, c.sigma2, c.rho); },
        },
        spec.covariance);
    Vector h = std::visit(overloaded{
                              [&](const ConstantGain& cg) { return Vector(Vector::Constant(n, cg.value)); },
                              [&](const ExplicitGain& e) {
                                  require_size(e.values.size(), n, "explicit observation gains");
                                  return Vector(Eigen::Map<const Vector>(e.values.data(), n));
                              },
                          },
                          spec.gains_h);
    ObservationModel observation(spec.eta2, std::move(h), std::move(sigma));
    ChannelModel channel(gen_channel_gains(spec), spec.xi2);
    return Instance{std::move(positions), std::move(observation), std::move(channel)};
}

}  // namespace lincoh
