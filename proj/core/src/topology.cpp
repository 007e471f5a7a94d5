// SPDX-License-Identifier: Apache-2.0

#include "lincoh/topology.hpp"

#include "lincoh/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <string>

namespace lincoh {

Matrix pairwise_distances(std::span<const Point> positions)
{
    const auto n = static_cast<Eigen::Index>(positions.size());
    Matrix d = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Point& a = positions[static_cast<std::size_t>(i)];
            const Point& b = positions[static_cast<std::size_t>(j)];
            d(i, j) = d(j, i) = std::hypot(a.x - b.x, a.y - b.y);
        }
    }
    return d;
}

Topology::Topology(Adjacency adjacency) : adjacency_(std::move(adjacency))
{
    const auto n = adjacency_.rows();
    if (n < 1 || adjacency_.cols() != n) {
        throw InvalidArgument("adjacency must be a nonempty square matrix");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (adjacency_(i, i) != 1) {
            throw InvalidArgument("adjacency diagonal must be 1 (node " + std::to_string(i) + ")");
        }
    }
    index_ = Eigen::MatrixXi::Constant(n, n, -1);
    recv_.resize(static_cast<std::size_t>(n));
    send_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const auto a = adjacency_(i, j);
            if (a > 1) {
                throw InvalidArgument("adjacency entries must be 0 or 1");
            }
            if (a == 1) {
                index_(i, j) = static_cast<int>(order_.size());
                order_.push_back({i, j});
                send_[static_cast<std::size_t>(j)].push_back(i);
            }
        }
    }
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            if (adjacency_(k, j) == 1) {
                recv_[static_cast<std::size_t>(k)].push_back(j);
            }
        }
    }
}

Topology make_distributed(int n)
{
    if (n < 1) {
        throw InvalidArgument("need at least one node");
    }
    return Topology(Adjacency::Identity(n, n));
}

Topology make_fully_connected(int n)
{
    if (n < 1) {
        throw InvalidArgument("need at least one node");
    }
    return Topology(Adjacency::Ones(n, n));
}

Topology make_cycle(int n, int k)
{
    if (n < 1) {
        throw InvalidArgument("need at least one node");
    }
    if (k < 0 || k > n - 1) {
        throw InvalidArgument("cycle connectivity K must be in [0, N-1], got " + std::to_string(k));
    }
    Adjacency a = Adjacency::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        for (int step = 0; step <= k; ++step) {
            a((j + step) % n, j) = 1;
        }
    }
    return Topology(std::move(a));
}

Topology make_rgg(double radius, std::span<const Point> positions)
{
    if (positions.empty()) {
        throw InvalidArgument("need at least one node");
    }
    if (!(radius >= 0.0)) {
        throw InvalidArgument("radius must be nonnegative");
    }
    for (const Point& p : positions) {
        if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
            throw InvalidArgument("positions must lie in the unit square");
        }
    }
    const Matrix d = pairwise_distances(positions);
    const auto n = d.rows();
    Adjacency a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            a(i, j) = (i == j || d(i, j) <= radius) ? 1 : 0;
        }
    }
    return Topology(std::move(a));
}

CollaborationMatrix lift(const Vector& w, const Topology& topology)
{
    if (w.size() != topology.n_links()) {
        throw DimensionMismatch("weight vector has length " + std::to_string(w.size()) + ", topology has " +
                                std::to_string(topology.n_links()) + " links");
    }
    if (!w.allFinite()) {
        throw InvalidArgument("weight vector has non-finite entries");
    }
    const int n = topology.n_sensors();
    Matrix weights = Matrix::Zero(n, n);
    const auto order = topology.order();
    for (std::size_t l = 0; l < order.size(); ++l) {
        weights(order[l].row, order[l].col) = w(static_cast<Eigen::Index>(l));
    }
    return CollaborationMatrix(topology, std::move(weights));
}

Vector flatten(const Matrix& weights, const Topology& topology)
{
    const int n = topology.n_sensors();
    if (weights.rows() != n || weights.cols() != n) {
        throw DimensionMismatch("collaboration matrix must be " + std::to_string(n) + " x " + std::to_string(n));
    }
    Vector w(topology.n_links());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int l = topology.index_of(i, j);
            if (l >= 0) {
                w(l) = weights(i, j);
            } else if (weights(i, j) != 0.0) {
                throw SparsityViolation(i, j);
            }
        }
    }
    return w;
}

Vector flatten(const CollaborationMatrix& weights, const Topology& topology)
{
    return flatten(weights.weights(), topology);
}

const Matrix& EmbeddedProblem::omega() const
{
    if (!has_dense_omega()) {
        throw InvalidArgument("Omega is not materialized for L = " + std::to_string(n_links()));
    }
    return omega_;
}

const Matrix& EmbeddedProblem::g_matrix() const
{
    if (!has_dense_omega()) {
        throw InvalidArgument("G is not materialized for L = " + std::to_string(n_links()));
    }
    return g_;
}

double EmbeddedProblem::omega_quadratic(const Vector& w) const { return w.dot(apply_omega(w)); }

Vector EmbeddedProblem::apply_omega(const Vector& w) const
{
    if (w.size() != n_links()) {
        throw DimensionMismatch("weight vector length does not match L");
    }
    Vector out(w.size());
    for (const Block& b : blocks_) {
        const auto m = static_cast<Eigen::Index>(b.nodes.size());
        Vector local(m);
        for (Eigen::Index a = 0; a < m; ++a) {
            local(a) = w(b.w_index[static_cast<std::size_t>(a)]);
        }
        const Vector image = moment_(b.nodes, b.nodes) * local;
        for (Eigen::Index a = 0; a < m; ++a) {
            out(b.w_index[static_cast<std::size_t>(a)]) = image(a);
        }
    }
    return out;
}

Vector EmbeddedProblem::solve_omega(const Vector& w) const
{
    if (w.size() != n_links()) {
        throw DimensionMismatch("weight vector length does not match L");
    }
    Vector out(w.size());
    for (const Block& b : blocks_) {
        const auto m = static_cast<Eigen::Index>(b.nodes.size());
        Vector local(m);
        for (Eigen::Index a = 0; a < m; ++a) {
            local(a) = w(b.w_index[static_cast<std::size_t>(a)]);
        }
        const Vector sol = b.factor.solve(local);
        for (Eigen::Index a = 0; a < m; ++a) {
            out(b.w_index[static_cast<std::size_t>(a)]) = sol(a);
        }
    }
    return out;
}

Vector EmbeddedProblem::apply_g(const Vector& x) const
{
    if (x.size() != n_sensors()) {
        throw DimensionMismatch("vector length does not match N");
    }
    // Row (i, j) of G holds g_i in column j.
    const auto order = topology_.order();
    Vector out(n_links());
    for (std::size_t l = 0; l < order.size(); ++l) {
        out(static_cast<Eigen::Index>(l)) = channel_gains_(order[l].row) * x(order[l].col);
    }
    return out;
}

Vector EmbeddedProblem::apply_gt(const Vector& w) const
{
    if (w.size() != n_links()) {
        throw DimensionMismatch("weight vector length does not match L");
    }
    const auto order = topology_.order();
    Vector out = Vector::Zero(n_sensors());
    for (std::size_t l = 0; l < order.size(); ++l) {
        out(order[l].col) += channel_gains_(order[l].row) * w(static_cast<Eigen::Index>(l));
    }
    return out;
}

namespace {

void self_check(const EmbeddedProblem& ep)
{
    const Topology& t = ep.topology();
    std::mt19937_64 engine(0x656d626564ULL);
    Vector w(t.n_links());
    for (Eigen::Index l = 0; l < w.size(); ++l) {
        w(l) = static_cast<double>(engine() >> 11) * 0x1.0p-53 - 0.5;
    }
    const Matrix weights = lift(w, t).weights();
    const double direct_power = (weights * ep.observation_moment()).cwiseProduct(weights).sum();
    const double embedded_power = ep.omega_quadratic(w);
    const Vector direct_mac = weights.transpose() * ep.channel_gains();
    const Vector embedded_mac = ep.apply_gt(w);
    const double power_scale = std::max(std::abs(direct_power), 1e-300);
    const double mac_scale = std::max(direct_mac.norm(), 1e-300);
    if (std::abs(direct_power - embedded_power) > 1e-10 * power_scale ||
        (direct_mac - embedded_mac).norm() > 1e-10 * mac_scale) {
        throw NumericalError("embedding identities failed the self-check");
    }
}

}  // namespace

EmbeddedProblem embed(const Topology& topology, const ObservationModel& m, const ChannelModel& c)
{
    check_compatible(m, c);
    if (topology.n_sensors() != m.n_sensors()) {
        throw DimensionMismatch("topology and model sizes differ");
    }
    const int n = topology.n_sensors();
    const int n_links = topology.n_links();

    EmbeddedProblem ep(topology);
    ep.moment_ = m.observation_moment();
    ep.channel_gains_ = c.gains();

    // Omega^{-1} restricted to block k is V_{F_k}^{-1}; its contribution to G^T Omega^{-1} G
    // is g_k^2 V_{F_k}^{-1} scattered onto F_k x F_k.
    ep.gamma_inverse_ = Matrix::Zero(n, n);
    ep.blocks_.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        EmbeddedProblem::Block block;
        const auto recv = topology.recv_set(k);
        block.nodes.assign(recv.begin(), recv.end());
        for (int j : block.nodes) {
            block.w_index.push_back(topology.index_of(k, j));
        }
        const Matrix local = ep.moment_(block.nodes, block.nodes);
        block.factor.compute(local);
        if (block.factor.info() != Eigen::Success) {
            throw NotPositiveDefinite("Omega block of node " + std::to_string(k) + " is not positive definite");
        }
        const double gk = ep.channel_gains_(k);
        if (gk != 0.0) {
            const auto size = static_cast<Eigen::Index>(block.nodes.size());
            const Matrix inv = block.factor.solve(Matrix::Identity(size, size));
            ep.gamma_inverse_(block.nodes, block.nodes) += gk * gk * inv;
        }
        ep.blocks_.push_back(std::move(block));
    }
    ep.gamma_inverse_ = 0.5 * (ep.gamma_inverse_ + ep.gamma_inverse_.transpose()).eval();

    const Eigen::LLT<Matrix> gamma_factor(ep.gamma_inverse_);
    if (gamma_factor.info() != Eigen::Success || gamma_factor.rcond() < 1e-14) {
        const Eigen::SelfAdjointEigenSolver<Matrix> eig(ep.gamma_inverse_);
        const Vector null = eig.eigenvectors().col(0);
        std::vector<int> unreachable;
        for (int j = 0; j < n; ++j) {
            bool reaches = false;
            for (int i : topology.send_set(j)) {
                reaches = reaches || ep.channel_gains_(i) != 0.0;
            }
            if (!reaches) {
                unreachable.push_back(j);
            }
        }
        throw SingularGamma(std::vector<double>(null.data(), null.data() + null.size()), std::move(unreachable));
    }
    ep.gamma_ = gamma_factor.solve(Matrix::Identity(n, n));
    ep.gamma_ = 0.5 * (ep.gamma_ + ep.gamma_.transpose()).eval();

    if (n_links <= EmbeddedProblem::kDenseOmegaLimit) {
        ep.omega_ = Matrix::Zero(n_links, n_links);
        for (const auto& block : ep.blocks_) {
            ep.omega_(block.w_index, block.w_index) = ep.moment_(block.nodes, block.nodes);
        }
        ep.g_ = Matrix::Zero(n_links, n);
        const auto order = topology.order();
        for (std::size_t l = 0; l < order.size(); ++l) {
            ep.g_(static_cast<Eigen::Index>(l), order[l].col) = ep.channel_gains_(order[l].row);
        }
    }

    self_check(ep);
    return ep;
}

}  // namespace lincoh
