#include "qwalk/conjecture.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

std::pair<StencilOp, StencilOp> a_stencils(double m, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("a_stencils: eps must be positive");
  StencilOp aplus = StencilOp::zero(3, 1, eps);
  StencilOp aminus = StencilOp::zero(3, 1, eps);
  const cplx phase = std::exp(cplx(0.0, -m * eps));
  CMat cp(1), cm(1);
  cp(0, 0) = 0.25 * phase;
  cm(0, 0) = 0.25 * std::conj(phase);
  for (int s0 : {-1, 1})
    for (int s1 : {-1, 1})
      for (int s2 : {-1, 1}) {
        const Offset o{s0, s1, s2};
        if (s0 * s1 * s2 > 0)
          aplus.terms[o] = cp;
        else
          aminus.terms[o] = cm;
      }
  return {aplus, aminus};
}

DecoupledForm conjecture_form(double m, double eps, bool literal_sign) {
  auto [aplus, aminus] = a_stencils(m, eps);
  DecoupledForm dec;
  dec.s = 2;
  dec.eps = eps;
  const double a0 = literal_sign ? 1.0 : -1.0;
  dec.a = {a0 * StencilOp::identity(3, 1, eps), aplus + aminus};
  return dec;
}

std::vector<StabilityRow> stability_spectrum(double m, double eps,
                                             std::span<const Vec3> ks) {
  auto [aplus, aminus] = a_stencils(m, eps);
  const StencilOp a_sum = aplus + aminus;
  std::vector<StabilityRow> rows;
  for (const Vec3& k : ks) {
    const cplx a = symbol(a_sum, k)(0, 0);
    // roots of lambda^2 - a lambda + 1: product is exactly 1
    const cplx mu = 0.5 * a;
    cplx disc = std::sqrt(mu * mu - 1.0);
    if (std::real(std::conj(mu) * disc) < 0.0) disc = -disc;
    const cplx l1 = mu + disc;
    const cplx l2 = (std::abs(l1) > 0.0) ? 1.0 / l1 : cplx(0.0);
    StabilityRow row;
    row.k = k;
    row.a_symbol = a;
    row.max_modulus = std::max(std::abs(l1), std::abs(l2));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qwalk
