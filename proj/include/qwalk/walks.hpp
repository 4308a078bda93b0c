#pragma once

#include <string>

#include "qwalk/lattice.hpp"
#include "qwalk/stencil.hpp"

namespace qwalk {

// A walk in both factored and stencil form. The stencil is the exact product
// of the factor stencils.
struct Walk {
  WalkSpec spec;
  StencilOp stencil;
};

// Product of the factor stencils of a factored walk, in operator order.
StencilOp walk_stencil(const WalkSpec& w);

// 2+1 dimensional massive walk: coin exp(-i*eps*m*sigma2) followed by shifts
// along x with sigma1 and along y with sigma3. coin_last moves the mass coin
// to the end of the factor list: a different walk with the same trace.
Walk dirac2p1(double m, double eps, bool coin_last = false);

// 3+1 dimensional massive walk on the 4-component coin space: coin
// exp(-i*eps*m*beta) followed by shifts with alpha^1, alpha^2, alpha^3.
Walk dirac3p1(double m, double eps, bool coin_last = false);

// 3+1 dimensional massless 2-component walk: shifts with sigma1, sigma2,
// sigma3.
Walk weyl3p1(double eps);

// CLI walk names: "dirac2", "dirac3", "weyl3". weyl3 requires m == 0.
Walk make_walk(const std::string& name, double m, double eps);

}  // namespace qwalk
