// SPDX-License-Identifier: Apache-2.0

#include "lincoh/oracle.hpp"

#include "lincoh/errors.hpp"
#include "lincoh/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace lincoh::oracle {

NaiveQuadratics naive_quadratics(const Matrix& w, const Matrix& v, const Vector& g)
{
    const Eigen::Index n = w.rows();
    if (w.cols() != n || v.rows() != n || v.cols() != n || g.size() != n) {
        throw DimensionMismatch("naive_quadratics: inconsistent sizes");
    }
    NaiveQuadratics out;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index k = 0; k < n; ++k) {
                out.trace_form += w(i, j) * v(j, k) * w(i, k);
            }
        }
    }
    out.mac_form = Vector::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            out.mac_form(j) += g(i) * w(i, j);
        }
    }
    return out;
}

double naive_fisher_info(const Matrix& w, const ObservationModel& m, const ChannelModel& c)
{
    const auto q = naive_quadratics(w, m.noise_cov(), c.gains());
    const Vector& u = q.mac_form;
    const Eigen::Index n = u.size();
    double signal = 0.0;
    double noise = c.mac_noise_var();
    for (Eigen::Index j = 0; j < n; ++j) {
        signal += u(j) * m.gains()(j);
        for (Eigen::Index k = 0; k < n; ++k) {
            noise += u(j) * m.noise_cov()(j, k) * u(k);
        }
    }
    return signal * signal / noise;
}

double scaled_info(const Vector& w, const Topology& topology, const ObservationModel& m,
                   const ChannelModel& c, double power)
{
    const Matrix weights = lift(w, topology).weights();
    const double p = naive_quadratics(weights, m.observation_moment(), c.gains()).trace_form;
    if (!(p > 0.0)) {
        return 0.0;
    }
    return naive_fisher_info(std::sqrt(power / p) * weights, m, c);
}

namespace {

/// Counter-based standard normal draws, so any direction can be regenerated from its index.
Vector direction(std::uint64_t seed, std::uint64_t index, Eigen::Index size)
{
    Vector u(size);
    const std::uint64_t key = splitmix64(seed) ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 1);
    for (Eigen::Index l = 0; l < size; ++l) {
        const auto c = static_cast<std::uint64_t>(l);
        const double u1 = (static_cast<double>(splitmix64(key + 2 * c) >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(splitmix64(key + 2 * c + 1) >> 11) * 0x1.0p-53;
        u(l) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    return u;
}

struct Candidate {
    double info = -1.0;
    std::uint64_t index = 0;
};

bool better(const Candidate& a, const Candidate& b)
{
    return a.info > b.info || (a.info == b.info && a.index < b.index);
}

}  // namespace

SearchResult sphere_search_max_info(const EmbeddedProblem& ep, const ObservationModel& m,
                                    const ChannelModel& c, double power, const SearchOptions& options)
{
    check_compatible(m, c);
    if (!(power > 0.0)) {
        throw InvalidArgument("power must be positive");
    }
    if (options.n_directions < 1) {
        throw InvalidArgument("need at least one search direction");
    }
    const Topology& topology = ep.topology();
    const Eigen::Index size = topology.n_links();

    const auto total = static_cast<std::uint64_t>(options.n_directions);
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
    std::vector<Candidate> partial(threads);
    auto sweep = [&](unsigned t) {
        Candidate best;
        for (std::uint64_t i = t; i < total; i += threads) {
            const Candidate cand{scaled_info(direction(options.seed, i, size), topology, m, c, power), i};
            if (better(cand, best)) {
                best = cand;
            }
        }
        partial[t] = best;
    };
    if (threads == 1) {
        sweep(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(sweep, t);
        }
    }
    Candidate best = partial.front();
    for (const Candidate& cand : partial) {
        if (better(cand, best)) {
            best = cand;
        }
    }

    Vector w = direction(options.seed, best.index, size).normalized();
    double info = best.info;
    double step = options.initial_step;
    for (int round = 0; round < options.refine_rounds; ++round) {
        bool improved = false;
        for (Eigen::Index l = 0; l < size; ++l) {
            for (double sign : {1.0, -1.0}) {
                Vector trial = w;
                trial(l) += sign * step;
                const double value = scaled_info(trial, topology, m, c, power);
                if (value > info) {
                    info = value;
                    w = trial.normalized();
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            step *= options.step_decay;
        }
    }

    const double p = naive_quadratics(lift(w, topology).weights(), m.observation_moment(), c.gains()).trace_form;
    return SearchResult{info, std::sqrt(power / p) * w};
}

double check_appc_inequality(const Vector& p, const Matrix& a, const Matrix& b)
{
    const Eigen::Index n = p.size();
    if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n) {
        throw DimensionMismatch("inequality inputs have inconsistent sizes");
    }
    if (p.squaredNorm() == 0.0) {
        throw InvalidArgument("p must be nonzero");
    }
    const Eigen::LLT<Matrix> la(a);
    const Eigen::LLT<Matrix> lb(b);
    const Eigen::LLT<Matrix> lab(a + b);
    if (la.info() != Eigen::Success || lb.info() != Eigen::Success || lab.info() != Eigen::Success ||
        !a.isApprox(a.transpose()) || !b.isApprox(b.transpose())) {
        throw NotPositiveDefinite("inequality inputs must be symmetric positive definite");
    }
    return 1.0 / p.dot(lab.solve(p)) - 1.0 / p.dot(la.solve(p)) - 1.0 / p.dot(lb.solve(p));
}

}  // namespace lincoh::oracle
