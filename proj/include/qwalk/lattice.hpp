#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qwalk/cmat.hpp"

namespace qwalk {

using Vec3 = std::array<double, 3>;  // momentum; components beyond n are 0

// Periodic grid geometry. Axes beyond n have size 1.
struct Grid {
  int n = 1;
  std::array<int, 3> sizes{1, 1, 1};
  double eps = 1.0;
};

// Complex d-component wavefunction sampled on a periodic lattice.
// Storage is site-major with component-minor: data[site * d + c], where the
// site index runs row-major with axis 0 slowest.
struct Field {
  int n = 1;
  int d = 1;
  std::array<int, 3> sizes{1, 1, 1};
  double eps = 1.0;
  std::vector<cplx> data;

  static Field zeros(const Grid& g, int d);

  Grid grid() const { return Grid{n, sizes, eps}; }
  std::size_t site_count() const;
  std::size_t site_index(int x0, int x1, int x2) const;

  double norm2() const;    // sqrt(sum |amp|^2)
  double max_abs() const;  // max |amp|
  bool finite() const;

  // CSV snapshot: header x1,..,xn,component,re,im; coordinates are site
  // indices.
  void write_csv(std::ostream& os) const;
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
cplx inner(const Field& a, const Field& b);  // conjugate-linear in a

// Unit-norm plane wave v * exp(i k.x). k must be commensurate with the grid:
// k_j = 2*pi*n_j / (N_j * eps). Throws with the nearest commensurate
// suggestion otherwise.
Field plane_wave(const Vec3& k, std::span<const cplx> v, const Grid& g);

// Unit-norm field with SplitMix64-seeded amplitudes, real and imaginary parts
// uniform in [-1, 1) before normalization. Bit-reproducible for a given seed.
Field random_field(std::uint64_t seed, const Grid& g, int d);

// One factor of a factored walk: either a pointwise coin exp(-i*angle*op)
// with Hermitian generator op, or a shift exp(-eps*op*d/dx_axis) with
// involutive op.
struct WalkFactor {
  enum class Kind { Coin, Shift };
  Kind kind = Kind::Coin;
  CMat op;
  double angle = 0.0;  // Coin only
  int axis = 0;        // Shift only
};

// Factored walk description, factors in operator order (leftmost applied
// last to the state).
struct WalkSpec {
  int n = 1;
  int d = 1;
  double mass = 0.0;
  double eps = 1.0;
  std::vector<WalkFactor> factors;
};

// Applies the factored walk directly to a field, without building the stencil
// form: shifts translate the +1/-1 eigencomponents of the involution in
// opposite directions along the axis (periodic), coins act pointwise.
Field split_step_apply(const WalkSpec& w, const Field& f);

}  // namespace qwalk
