// SPDX-License-Identifier: Apache-2.0

#include "lincoh/errors.hpp"

#include <sstream>

namespace lincoh {

SparsityViolation::SparsityViolation(int row, int col)
    : InvalidArgument("weight (" + std::to_string(row) + ", " + std::to_string(col) +
                      ") is nonzero but the topology has no such link"),
      row_(row),
      col_(col)
{
}

namespace {

std::string singular_gamma_message(const std::vector<double>& direction, const std::vector<int>& nodes)
{
    std::ostringstream os;
    os << "G^T Omega^{-1} G is singular";
    if (!nodes.empty()) {
        os << "; nodes with no nonzero channel path:";
        for (int n : nodes) {
            os << ' ' << n;
        }
    }
    os << "; null direction [";
    for (std::size_t i = 0; i < direction.size(); ++i) {
        os << (i ? ", " : "") << direction[i];
    }
    os << ']';
    return os.str();
}

std::string infeasible_message(double requested, double centralized)
{
    std::ostringstream os;
    os.precision(17);
    os << "requested Fisher information " << requested << " is outside (0, J0) with J0 = " << centralized
       << " (gap " << centralized - requested << ")";
    return os.str();
}

}  // namespace

SingularGamma::SingularGamma(std::vector<double> null_direction, std::vector<int> unreachable_nodes)
    : NumericalError(singular_gamma_message(null_direction, unreachable_nodes)),
      null_direction_(std::move(null_direction)),
      unreachable_(std::move(unreachable_nodes))
{
}

Infeasible::Infeasible(double requested, double centralized)
    : Error(infeasible_message(requested, centralized)), requested_(requested), centralized_(centralized)
{
}

}  // namespace lincoh
