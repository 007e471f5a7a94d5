// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_INSTANCES_HPP
#define LINCOH_INSTANCES_HPP

#include "lincoh/model.hpp"
#include "lincoh/topology.hpp"

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace lincoh {

/// Seeded stream of uniform doubles.
///
/// Algorithm "lincoh-rng-v1": the engine is std::mt19937_64 (whose output
/// sequence is fixed by the C++ standard) seeded with splitmix64(seed ^ stream
/// salt). Each draw takes one 64-bit output x and returns (x >> 11) * 2^-53 in
/// [0, 1). No std:: distribution is involved, so the stream is identical on
/// every conforming standard library.
class Rng {
public:
    /// Independent streams per purpose, so e.g. explicit positions do not shift gain draws.
    enum class Stream : std::uint64_t {
        positions = 0x706f736974696f6eULL,
        channel_gains = 0x6368616e6e656c67ULL,
        test = 0x7465737400000000ULL,
    };

    Rng(std::uint64_t seed, Stream stream);

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on (0, 1].
    double uniform_open_closed() { return 1.0 - uniform(); }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct UnitSquarePlacement {};
struct ExplicitPlacement {
    Positions points;
};
using Placement = std::variant<UnitSquarePlacement, ExplicitPlacement>;

struct DiagonalCovariance {
    double sigma2 = 1.0;
};
struct EquicorrelatedCovariance {
    double sigma2 = 1.0;
    double rho = 0.0;
};
struct ExponentialCovariance {
    double sigma2 = 1.0;
    double rho = 0.5;
};
using CovarianceFamily = std::variant<DiagonalCovariance, EquicorrelatedCovariance, ExponentialCovariance>;

struct ConstantGain {
    double value = 1.0;
};
struct ExplicitGain {
    std::vector<double> values;
};
struct UniformGain {};  ///< i.i.d. uniform on (0, 1]

using ObservationGains = std::variant<ConstantGain, ExplicitGain>;
using ChannelGains = std::variant<UniformGain, ConstantGain, ExplicitGain>;

/// Everything needed to regenerate one experimental instance bit for bit.
struct InstanceSpec {
    std::uint64_t seed = 0;
    int n_sensors = 1;
    Placement placement = UnitSquarePlacement{};
    CovarianceFamily covariance = DiagonalCovariance{};
    ObservationGains gains_h = ConstantGain{};
    ChannelGains gains_g = UniformGain{};
    double eta2 = 1.0;
    double xi2 = 1.0;
};

struct Instance {
    Positions positions;
    ObservationModel observation;
    ChannelModel channel;
};

Positions gen_positions(const InstanceSpec& spec);

/// Sigma_ij = sigma^2 rho^{d_ij}. Throws NotPositiveDefinite if the result does not factor.
Matrix gen_exponential_cov(std::span<const Point> positions, double sigma2, double rho);

/// Sigma = sigma^2 ((1 - rho) I + rho 1 1^T).
Matrix gen_equicorrelated_cov(int n, double sigma2, double rho);

Vector gen_channel_gains(const InstanceSpec& spec);

/// Positions, Sigma, h and g for a spec.
Instance generate(const InstanceSpec& spec);

}  // namespace lincoh

#endif  // LINCOH_INSTANCES_HPP
