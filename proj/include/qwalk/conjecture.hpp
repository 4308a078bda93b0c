#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qwalk/decouple.hpp"
#include "qwalk/stencil.hpp"

namespace qwalk {

// The two 4-term scalar stencils of the extrapolated evolution law: A_plus
// carries phase exp(-i*m*eps)/4 on the even-parity cube corners, A_minus
// carries exp(+i*m*eps)/4 on the odd-parity corners. A_minus is the adjoint
// of A_plus for real m.
std::pair<StencilOp, StencilOp> a_stencils(double m, double eps);

// Two-step scalar scheme T^2 - (A_plus + A_minus) T + I as a DecoupledForm
// (a1 = A_plus + A_minus, a0 = -1). literal_sign switches the constant term
// to the -I variant, which fails the constant-solution check; it is kept for
// documentation of that negative result.
DecoupledForm conjecture_form(double m, double eps, bool literal_sign = false);

struct StabilityRow {
  Vec3 k{0, 0, 0};
  cplx a_symbol;           // symbol of A_plus + A_minus at k (real for real k)
  double max_modulus = 0;  // larger root modulus of lambda^2 - a*lambda + 1
};

// Von Neumann mode analysis of the two-step scheme: per-momentum root moduli
// of lambda^2 - a(k)*lambda + 1. Roots sit on the unit circle exactly when
// |a(k)| <= 2.
std::vector<StabilityRow> stability_spectrum(double m, double eps,
                                             std::span<const Vec3> ks);

}  // namespace qwalk
