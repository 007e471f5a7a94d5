// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_TOPOLOGY_HPP
#define LINCOH_TOPOLOGY_HPP

#include "lincoh/model.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace lincoh {

/// 0/1 adjacency; entry (i, j) = 1 means node j shares its observation with node i.
using Adjacency = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

using Positions = std::vector<Point>;

/// Euclidean distance matrix between all pairs of points.
Matrix pairwise_distances(std::span<const Point> positions);

/// Position of one nonzero of A inside the flattened weight vector.
struct Link {
    int row = 0;  ///< receiving node
    int col = 0;  ///< sending node

    friend bool operator==(const Link&, const Link&) = default;
};

/// Collaboration topology with precomputed index maps.
///
/// Nonzeros of A are enumerated column-major: all links leaving node 0 first
/// (ordered by receiver), then node 1, and so on. This order fixes the layout
/// of every flattened weight vector w.
class Topology {
public:
    /// Throws InvalidArgument if A is not square, not 0/1, or has a zero diagonal entry.
    explicit Topology(Adjacency adjacency);

    int n_sensors() const noexcept { return static_cast<int>(adjacency_.rows()); }
    /// L = nnz(A).
    int n_links() const noexcept { return static_cast<int>(order_.size()); }

    const Adjacency& adjacency() const noexcept { return adjacency_; }
    bool has_link(int receiver, int sender) const { return adjacency_(receiver, sender) != 0; }

    std::span<const Link> order() const noexcept { return order_; }
    /// Index into w of link (receiver, sender), or -1 if absent.
    int index_of(int receiver, int sender) const { return index_(receiver, sender); }

    /// F_k: nodes whose observations node k combines (ascending).
    std::span<const int> recv_set(int k) const { return recv_[static_cast<std::size_t>(k)]; }
    /// T_j: nodes that receive node j's observation (ascending).
    std::span<const int> send_set(int j) const { return send_[static_cast<std::size_t>(j)]; }

    friend bool operator==(const Topology& a, const Topology& b) { return a.adjacency_ == b.adjacency_; }

private:
    Adjacency adjacency_;
    Eigen::MatrixXi index_;
    std::vector<Link> order_;
    std::vector<std::vector<int>> recv_;
    std::vector<std::vector<int>> send_;
};

/// A = I_N: no collaboration.
Topology make_distributed(int n);

/// A = 1 1^T.
Topology make_fully_connected(int n);

/// Directed K-connected cycle: node j shares with nodes j+1, ..., j+K (mod N).
Topology make_cycle(int n, int k);

/// Random geometric graph: link iff distance <= radius. Positions must lie in [0,1]^2.
Topology make_rgg(double radius, std::span<const Point> positions);

/// Scatter w (length L) into an A-sparse N x N matrix.
CollaborationMatrix lift(const Vector& w, const Topology& topology);

/// Gather the A-allowed entries of W in canonical order. Throws SparsityViolation.
Vector flatten(const Matrix& weights, const Topology& topology);
Vector flatten(const CollaborationMatrix& weights, const Topology& topology);

/// Explicit-form constants of the sparse collaboration problem.
///
/// With w the flattened weights, Tr[W V W^T] = w^T Omega w and g^T W = w^T G.
/// Omega is block diagonal once w is grouped by receiving node; each block is
/// V restricted to that node's receive set and is factored independently.
class EmbeddedProblem {
public:
    /// Omega is stored densely only up to this many links.
    static constexpr int kDenseOmegaLimit = 4096;

    const Topology& topology() const noexcept { return topology_; }
    int n_sensors() const noexcept { return topology_.n_sensors(); }
    int n_links() const noexcept { return topology_.n_links(); }

    const Matrix& observation_moment() const noexcept { return moment_; }
    const Vector& channel_gains() const noexcept { return channel_gains_; }

    bool has_dense_omega() const noexcept { return omega_.size() > 0; }
    /// Dense Omega (L x L). Throws if L exceeds kDenseOmegaLimit.
    const Matrix& omega() const;
    /// Dense G (L x N). Throws if L exceeds kDenseOmegaLimit.
    const Matrix& g_matrix() const;

    /// Gamma = (G^T Omega^{-1} G)^{-1}.
    const Matrix& gamma() const noexcept { return gamma_; }
    /// G^T Omega^{-1} G.
    const Matrix& gamma_inverse() const noexcept { return gamma_inverse_; }

    double omega_quadratic(const Vector& w) const;
    Vector apply_omega(const Vector& w) const;
    Vector solve_omega(const Vector& w) const;
    /// G x for x in R^N.
    Vector apply_g(const Vector& x) const;
    /// G^T w for w in R^L.
    Vector apply_gt(const Vector& w) const;

private:
    friend EmbeddedProblem embed(const Topology&, const ObservationModel&, const ChannelModel&);

    struct Block {
        std::vector<int> w_index;  ///< F_k^w
        std::vector<int> nodes;    ///< F_k
        Eigen::LLT<Matrix> factor;
    };

    explicit EmbeddedProblem(Topology topology) : topology_(std::move(topology)) {}

    Topology topology_;
    Matrix moment_;
    Vector channel_gains_;
    Matrix omega_;
    Matrix g_;
    Matrix gamma_;
    Matrix gamma_inverse_;
    std::vector<Block> blocks_;
};

/// Build Omega, G and Gamma for a topology and model pair.
///
/// Throws NotPositiveDefinite if a block of Omega fails to factor and
/// SingularGamma if G^T Omega^{-1} G is singular (e.g. a node with no path to
/// the fusion center through nonzero channel gains).
EmbeddedProblem embed(const Topology& topology, const ObservationModel& m, const ChannelModel& c);

}  // namespace lincoh

#endif  // LINCOH_TOPOLOGY_HPP
