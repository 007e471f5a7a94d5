// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_ORACLE_HPP
#define LINCOH_ORACLE_HPP

#include "lincoh/model.hpp"
#include "lincoh/topology.hpp"

#include <cstdint>

namespace lincoh::oracle {

// Verification machinery that deliberately avoids the solver's algebra:
// nothing here uses Omega, G or Gamma beyond the topology's index maps.

struct SearchResult {
    double info = 0.0;
    Vector weights;  ///< scaled to transmit power P
};

struct SearchOptions {
    int n_directions = 100000;
    int refine_rounds = 200;
    double initial_step = 0.25;
    double step_decay = 0.5;
    std::uint64_t seed = 1;
    /// Worker threads for the direction sweep; 0 picks hardware concurrency.
    unsigned threads = 0;
};

/// Fisher information of the lifted w after rescaling it to transmit power P.
/// Uses only naive loop evaluations; returns 0 for w = 0.
double scaled_info(const Vector& w, const Topology& topology, const ObservationModel& m,
                   const ChannelModel& c, double power);

/// Random search over the unit sphere in R^L followed by coordinate refinement.
///
/// Never exceeds the true optimum; approaches it with enough directions. The best
/// direction is picked by value with ties broken by the lower direction index.
SearchResult sphere_search_max_info(const EmbeddedProblem& ep, const ObservationModel& m,
                                    const ChannelModel& c, double power,
                                    const SearchOptions& options = {});

/// 1/(p^T (A+B)^{-1} p) - 1/(p^T A^{-1} p) - 1/(p^T B^{-1} p); nonnegative for SPD A, B.
/// Throws NotPositiveDefinite for non-SPD inputs and InvalidArgument for p = 0.
double check_appc_inequality(const Vector& p, const Matrix& a, const Matrix& b);

struct NaiveQuadratics {
    double trace_form = 0.0;  ///< Tr[W V W^T]
    Vector mac_form;          ///< (g^T W)^T
};

/// Triple-loop evaluation with no factorizations.
NaiveQuadratics naive_quadratics(const Matrix& w, const Matrix& v, const Vector& g);

/// Naive (g^T W h)^2 / (g^T W Sigma W^T g + xi^2).
double naive_fisher_info(const Matrix& w, const ObservationModel& m, const ChannelModel& c);

}  // namespace lincoh::oracle

#endif  // LINCOH_ORACLE_HPP
