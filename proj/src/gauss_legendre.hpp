// gauss_legendre.hpp: Gauss-Legendre rules on [-1, 1]

#pragma once

#include <vector>

namespace rwadyn::detail {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Newton iteration on P_n from the Chebyshev-like initial guesses; nodes ascending.
GaussRule gauss_legendre(int n);

}  // namespace rwadyn::detail
