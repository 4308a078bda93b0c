#pragma once

#include <array>
#include <map>
#include <span>
#include <string>

#include "qwalk/cmat.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

// Lattice offset in units of the spacing eps; components beyond n are 0.
using Offset = std::array<int, 3>;

// Coefficients with max-norm below this are dropped from stencils.
inline constexpr double kCoeffPrune = 1e-15;

// Translation-invariant operator: a finite map from offsets to d x d
// matrices, with the convention (S f)(x) = sum_o M_o f(x - eps*o).
// The sorted map gives a deterministic term order for all evaluations.
struct StencilOp {
  int n = 1;
  int d = 1;
  double eps = 1.0;
  std::map<Offset, CMat> terms;

  static StencilOp zero(int n, int d, double eps);
  static StencilOp identity(int n, int d, double eps);

  // Adds m into the coefficient at offset o.
  void accumulate(const Offset& o, const CMat& m);
  void prune(double tol = kCoeffPrune);
  bool same_shape(const StencilOp& o) const;
};

// Single translation tau_axis^power as a scalar stencil: looking up
// f(x - power*eps) along the axis.
StencilOp translation(int axis, int power, int n, double eps);

// Termwise linear combination sum_i coeffs[i] * ops[i].
StencilOp combine(std::span<const cplx> coeffs, std::span<const StencilOp> ops);

// Operator product: convolution of offsets with matrix multiplication of
// coefficients. Exact for homogeneous operators.
StencilOp compose(const StencilOp& s1, const StencilOp& s2);

// Adjoint: the term at offset o is the conjugate transpose of the term at -o.
StencilOp adjoint(const StencilOp& s);

// Scalar stencil carrying tr(M_o) at each offset.
StencilOp trace_stencil(const StencilOp& s);

// Momentum-space matrix sum_o M_o exp(-i*eps*k.o). Multiplicative under
// compose.
CMat symbol(const StencilOp& s, const Vec3& k);

// Applies the stencil to a field with periodic wrap-around. Scalar stencils
// (d = 1) broadcast over the components of a multi-component field.
Field apply(const StencilOp& s, const Field& f);

// Debug/golden text form: one line per offset, sorted lexicographically:
// "o1 .. on | re im re im ..." with matrix entries row-major.
std::string dump(const StencilOp& s);

// Max over all offsets of the max-norm coefficient difference.
double stencil_distance(const StencilOp& a, const StencilOp& b);

StencilOp operator+(const StencilOp& a, const StencilOp& b);
StencilOp operator-(const StencilOp& a, const StencilOp& b);
StencilOp operator*(cplx c, const StencilOp& s);
StencilOp operator*(double c, const StencilOp& s);
StencilOp operator*(const StencilOp& a, const StencilOp& b);  // compose

}  // namespace qwalk
