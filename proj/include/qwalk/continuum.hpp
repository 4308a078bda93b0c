#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/decouple.hpp"
#include "qwalk/stencil.hpp"

namespace qwalk {

// Plane-wave convention, fixed globally: psi = exp(i(k.x - w t)), so a time
// step maps to exp(-i*w*eps) and a translation tau_j maps to exp(-i*k_j*eps).

struct DispersionRow {
  Vec3 k{0, 0, 0};
  int branch = 0;        // index in arg-sorted eigenphase order
  double omega_eps = 0;  // -arg(lambda)/eps, principal value
  double omega_cont = 0; // nearest of +-sqrt(|k|^2 + m^2)
  double abs_err = 0;
};

struct DispersionTable {
  std::vector<DispersionRow> rows;
};

// Eigenphase branches of the walk symbol at each momentum, matched to the
// continuum branches +-sqrt(|k|^2 + m^2) by nearest value (ties toward the
// positive branch).
DispersionTable dispersion(const StencilOp& w, double m, std::span<const Vec3> ks);

// Least-squares slope of log(error) against log(eps). Requires at least three
// points, strictly decreasing eps, and positive errors; zero or negative
// errors are reported as exact to round-off.
double convergence_order(std::span<const std::pair<double, double>> errs);

// -omega^2 + |k|^2 + m^2 over the first n momentum components.
double kg_symbol(double omega, const Vec3& k, double m, int n);

// Value of the spacetime polynomial of a decoupled form on the plane wave:
// lambda^s - sum_j symbol(a_j, k) lambda^j at lambda = exp(-i*omega*eps),
// divided by eps^s.
cplx plane_poly_value(const DecoupledForm& dec, double omega, const Vec3& k);

// |P(omega, k)/eps^s - target| for the family of decoupled forms over the
// given eps values.
std::vector<std::pair<double, double>> symbol_limit_check(
    const std::function<DecoupledForm(double)>& family, double omega,
    const Vec3& k, double target, std::span<const double> eps_list);

struct LemmaRow {
  double eps = 0;
  cplx ratio;   // det(Id - prod_i exp(-eps alpha^i A_i)) / eps^d
  cplx target;  // det(sum_i alpha^i A_i)
};

// Determinant-scaling check: the ratio approaches the target at rate O(eps).
std::vector<LemmaRow> lemma_scaling_check(std::span<const CMat> alphas,
                                          std::span<const double> a,
                                          std::span<const double> eps_list);

}  // namespace qwalk
