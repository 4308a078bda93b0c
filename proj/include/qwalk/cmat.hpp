#pragma once

#include <array>
#include <complex>
#include <vector>

namespace qwalk {

using cplx = std::complex<double>;

// Dense complex matrix of dimension d <= 4 (coin spaces are 1, 2 or 4
// dimensional). Row-major storage in a fixed array; value semantics.
struct CMat {
  int d = 0;
  std::array<cplx, 16> a{};

  CMat() = default;
  explicit CMat(int dim);

  static CMat zero(int dim) { return CMat(dim); }
  static CMat identity(int dim);

  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i * d + j)]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * d + j)]; }

  CMat operator+(const CMat& o) const;
  CMat operator-(const CMat& o) const;
  CMat operator*(const CMat& o) const;  // matrix product

  CMat adjoint() const;  // conjugate transpose
  cplx trace() const;
  cplx det() const;
  double max_norm() const;  // max |entry|
  bool finite() const;
  bool is_unitary(double tol = 1e-12) const;
  bool is_involution(double tol = 1e-12) const;  // M*M == Id
};

CMat operator*(cplx s, const CMat& m);
CMat operator*(double s, const CMat& m);

// Kronecker product (used to build the 4x4 coin-space generators).
CMat kron(const CMat& a, const CMat& b);

// Pauli matrix sigma^i; i = 0 is the 2x2 identity.
CMat pauli(int i);

struct DiracRep {
  std::array<CMat, 3> alpha;  // sigma^3 (x) sigma^i
  CMat beta;                  // sigma^2 (x) sigma^0
};
DiracRep dirac_rep();

// exp(A) for anti-Hermitian A; the result is unitary. Throws on
// non-anti-Hermitian input.
CMat mat_exp(const CMat& a);

// exp(A) for an arbitrary small matrix: scaling and squaring with the power
// series truncated at relative term size 1e-18. No symmetry requirement.
CMat exp_series(const CMat& a);

// Eigenvalues of a general small matrix: Hessenberg reduction followed by
// shifted QR iteration with a 200-iteration cap.
std::vector<cplx> qr_eigenvalues(const CMat& a);

// Eigenvalues of a unitary matrix, sorted by principal argument. Checks that
// every modulus is 1 within 1e-10 and that their product matches det within
// 1e-10; throws otherwise.
std::vector<cplx> eigenphases(const CMat& u);

}  // namespace qwalk
