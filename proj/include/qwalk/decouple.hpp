#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/stencil.hpp"

namespace qwalk {

// Scalar multi-step recurrence psi(t + eps*s) = sum_{k<s} a_k psi(t + eps*k),
// satisfied componentwise by every trajectory of the walk it was derived
// from. The a_k are scalar (d = 1) stencils; the leading coefficient is
// implicitly 1.
struct DecoupledForm {
  int s = 0;
  double eps = 1.0;
  std::vector<StencilOp> a;  // a[k] multiplies psi(t + eps*k)
};

// Characteristic-polynomial coefficients of the walk operator, computed over
// the commutative algebra of scalar stencils: power traces p_j = tr(W^j) feed
// the Newton identities e1 = p1, e2 = (e1 p1 - p2)/2, e3 = (e2 p1 - e1 p2 +
// p3)/3, e4 = (e3 p1 - e2 p2 + e1 p3 - p4)/4. Supports d = 2 (order 2) and
// d = 4 (order 4).
DecoupledForm char_poly_stencils(const StencilOp& w);

struct DegeneracySample {
  Vec3 k{0, 0, 0};
  std::vector<int> pattern;  // cluster sizes, ascending
  bool structured = false;   // k = 0 or an axis point, not a random draw
  bool accidental = false;   // pattern differs from the generic one
};

struct DegeneracyReport {
  std::vector<DegeneracySample> samples;  // structured first, then random
  std::vector<int> generic_pattern;       // majority pattern of random draws
  bool has_generic = false;
  int random_total = 0;
  int random_matching = 0;  // random samples with the generic pattern
};

// Samples eigenphase multiplicity patterns of the walk symbol: the structured
// points k = 0 and one point per axis, plus `samples` uniform draws from the
// Brillouin zone. Eigenphases closer than tol (on angle) are clustered.
DegeneracyReport degeneracy_probe(const StencilOp& w, int samples, double tol,
                                  std::uint64_t seed = 7);

// One step of the scalar recurrence. history lists psi(t), .., psi(t+eps(s-1))
// oldest first; returns psi(t + eps*s).
Field recurrence_step(const DecoupledForm& dec, std::span<const Field> history);

// Evolves f0 under the walk stencil and checks every window of s+1
// consecutive slices against the recurrence, in the max norm.
// Rows are (step index of the predicted slice, window residual).
std::vector<std::pair<int, double>> residual_series(const StencilOp& w,
                                                    const DecoupledForm& dec,
                                                    const Field& f0, int steps);

// Maximum residual over all windows of residual_series.
double residual(const StencilOp& w, const DecoupledForm& dec, const Field& f0,
                int steps);

}  // namespace qwalk
