#include "qwalk/cmat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_dim(int d) {
  if (d < 1 || d > 4) throw std::invalid_argument("CMat: dimension must be in 1..4");
}

}  // namespace

CMat::CMat(int dim) : d(dim) { check_dim(dim); }

CMat CMat::identity(int dim) {
  CMat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::operator+(const CMat& o) const {
  if (d != o.d) throw std::invalid_argument("CMat: dimension mismatch");
  CMat r(d);
  for (int i = 0; i < d * d; ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

CMat CMat::operator-(const CMat& o) const {
  if (d != o.d) throw std::invalid_argument("CMat: dimension mismatch");
  CMat r(d);
  for (int i = 0; i < d * d; ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

CMat CMat::operator*(const CMat& o) const {
  if (d != o.d) throw std::invalid_argument("CMat: dimension mismatch");
  CMat r(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < d; ++k) acc += (*this)(i, k) * o(k, j);
      r(i, j) = acc;
    }
  return r;
}

CMat CMat::adjoint() const {
  CMat r(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < d; ++i) t += (*this)(i, i);
  return t;
}

cplx CMat::det() const {
  if (d == 1) return (*this)(0, 0);
  if (d == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
  // LU with partial pivoting
  CMat lu = *this;
  cplx det = 1.0;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r)
      if (std::abs(lu(r, c)) > std::abs(lu(piv, c))) piv = r;
    if (piv != c) {
      for (int j = 0; j < d; ++j) std::swap(lu(c, j), lu(piv, j));
      det = -det;
    }
    if (lu(c, c) == cplx(0.0)) return 0.0;
    det *= lu(c, c);
    for (int r = c + 1; r < d; ++r) {
      cplx f = lu(r, c) / lu(c, c);
      for (int j = c; j < d; ++j) lu(r, j) -= f * lu(c, j);
    }
  }
  return det;
}

double CMat::max_norm() const {
  double m = 0.0;
  for (int i = 0; i < d * d; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

bool CMat::finite() const {
  for (int i = 0; i < d * d; ++i)
    if (!std::isfinite(a[i].real()) || !std::isfinite(a[i].imag())) return false;
  return true;
}

bool CMat::is_unitary(double tol) const {
  return ((*this) * adjoint() - identity(d)).max_norm() <= tol;
}

bool CMat::is_involution(double tol) const {
  return ((*this) * (*this) - identity(d)).max_norm() <= tol;
}

CMat operator*(cplx s, const CMat& m) {
  CMat r(m.d);
  for (int i = 0; i < m.d * m.d; ++i) r.a[i] = s * m.a[i];
  return r;
}

CMat operator*(double s, const CMat& m) { return cplx(s, 0.0) * m; }

CMat kron(const CMat& a, const CMat& b) {
  check_dim(a.d * b.d);
  CMat r(a.d * b.d);
  for (int i = 0; i < a.d; ++i)
    for (int j = 0; j < a.d; ++j)
      for (int k = 0; k < b.d; ++k)
        for (int l = 0; l < b.d; ++l)
          r(i * b.d + k, j * b.d + l) = a(i, j) * b(k, l);
  return r;
}

CMat pauli(int i) {
  CMat m(2);
  switch (i) {
    case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -kI; m(1, 0) = kI; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: throw std::invalid_argument("pauli: index must be in 0..3");
  }
  return m;
}

DiracRep dirac_rep() {
  DiracRep r{{kron(pauli(3), pauli(1)), kron(pauli(3), pauli(2)), kron(pauli(3), pauli(3))},
             kron(pauli(2), pauli(0))};
  return r;
}

CMat exp_series(const CMat& a) {
  if (!a.finite()) throw std::invalid_argument("exp_series: non-finite input");
  CMat b = a;
  int squarings = 0;
  while (b.max_norm() > 0.5) {
    b = 0.5 * b;
    ++squarings;
  }
  CMat sum = CMat::identity(a.d);
  CMat term = CMat::identity(a.d);
  for (int k = 1; k <= 64; ++k) {
    term = (1.0 / k) * (term * b);
    sum = sum + term;
    if (term.max_norm() <= 1e-18 * sum.max_norm()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

CMat mat_exp(const CMat& a) {
  if (!a.finite()) throw std::invalid_argument("mat_exp: non-finite input");
  if ((a + a.adjoint()).max_norm() > 1e-12)
    throw std::invalid_argument("mat_exp: input is not anti-Hermitian");
  return exp_series(a);
}

namespace {

// In-place Householder reduction to upper Hessenberg form.
void hessenberg(CMat& h) {
  const int n = h.d;
  for (int c = 0; c + 2 < n; ++c) {
    double xnorm2 = 0.0;
    for (int i = c + 1; i < n; ++i) xnorm2 += std::norm(h(i, c));
    double xnorm = std::sqrt(xnorm2);
    if (xnorm < 1e-300) continue;
    cplx x0 = h(c + 1, c);
    double ax0 = std::abs(x0);
    cplx phase = (ax0 > 0.0) ? x0 / ax0 : cplx(1.0);
    cplx alpha = -phase * xnorm;
    std::array<cplx, 4> v{};
    v[0] = x0 - alpha;
    for (int i = c + 2; i < n; ++i) v[i - (c + 1)] = h(i, c);
    double vnorm2 = 0.0;
    for (int i = c + 1; i < n; ++i) vnorm2 += std::norm(v[i - (c + 1)]);
    if (vnorm2 < 1e-300) continue;
    // A <- H A H with H = Id - 2 v v^dag / (v^dag v)
    for (int j = 0; j < n; ++j) {
      cplx w = 0.0;
      for (int i = c + 1; i < n; ++i) w += std::conj(v[i - (c + 1)]) * h(i, j);
      w *= 2.0 / vnorm2;
      for (int i = c + 1; i < n; ++i) h(i, j) -= v[i - (c + 1)] * w;
    }
    for (int i = 0; i < n; ++i) {
      cplx w = 0.0;
      for (int j = c + 1; j < n; ++j) w += h(i, j) * v[j - (c + 1)];
      w *= 2.0 / vnorm2;
      for (int j = c + 1; j < n; ++j) h(i, j) -= w * std::conj(v[j - (c + 1)]);
    }
    h(c + 1, c) = alpha;
    for (int i = c + 2; i < n; ++i) h(i, c) = 0.0;
  }
}

// Roots of lambda^2 - (a+d) lambda + (ad - bc), larger-magnitude root first.
std::pair<cplx, cplx> eig2(cplx a, cplx b, cplx c, cplx d) {
  cplx mu = 0.5 * (a + d);
  cplx det = a * d - b * c;
  cplx disc = std::sqrt(mu * mu - det);
  if (std::real(std::conj(mu) * disc) < 0.0) disc = -disc;
  cplx l1 = mu + disc;
  cplx l2 = (std::abs(l1) > 0.0) ? det / l1 : cplx(0.0);
  return {l1, l2};
}

}  // namespace

std::vector<cplx> qr_eigenvalues(const CMat& a) {
  if (!a.finite()) throw std::invalid_argument("qr_eigenvalues: non-finite input");
  const int n = a.d;
  if (n == 1) return {a(0, 0)};
  CMat h = a;
  hessenberg(h);
  const double defl = 1e-14 * std::max(1.0, h.max_norm());
  std::vector<cplx> eig(static_cast<std::size_t>(n));
  int hi = n - 1;
  int iter = 0;
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    if (std::abs(h(hi, hi - 1)) <= defl) {
      eig[static_cast<std::size_t>(hi)] = h(hi, hi);
      --hi;
      continue;
    }
    int lo = hi - 1;
    while (lo > 0 && std::abs(h(lo, lo - 1)) > defl) --lo;
    if (hi - lo == 1) {
      auto [l1, l2] = eig2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
      eig[static_cast<std::size_t>(hi)] = l1;
      eig[static_cast<std::size_t>(lo)] = l2;
      hi -= 2;
      continue;
    }
    if (++iter > 200) throw std::runtime_error("qr_eigenvalues: did not converge");
    // Wilkinson shift: trailing 2x2 eigenvalue closest to the corner entry.
    auto [m1, m2] = eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    cplx mu = (std::abs(m1 - h(hi, hi)) < std::abs(m2 - h(hi, hi))) ? m1 : m2;
    for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
    // QR by Givens rotations on the active block, then RQ.
    std::array<std::pair<cplx, cplx>, 3> rot{};
    for (int i = lo; i < hi; ++i) {
      cplx f = h(i, i), g = h(i + 1, i);
      double r = std::sqrt(std::norm(f) + std::norm(g));
      cplx cs = 1.0, sn = 0.0;
      if (r > 1e-300) {
        cs = f / r;
        sn = g / r;
      }
      rot[static_cast<std::size_t>(i - lo)] = {cs, sn};
      for (int j = lo; j <= hi; ++j) {
        cplx t1 = h(i, j), t2 = h(i + 1, j);
        h(i, j) = std::conj(cs) * t1 + std::conj(sn) * t2;
        h(i + 1, j) = -sn * t1 + cs * t2;
      }
    }
    for (int i = lo; i < hi; ++i) {
      auto [cs, sn] = rot[static_cast<std::size_t>(i - lo)];
      for (int r = lo; r <= hi; ++r) {
        cplx t1 = h(r, i), t2 = h(r, i + 1);
        h(r, i) = t1 * cs + t2 * sn;
        h(r, i + 1) = -t1 * std::conj(sn) + t2 * std::conj(cs);
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += mu;
  }
  return eig;
}

std::vector<cplx> eigenphases(const CMat& u) {
  if (!u.finite()) throw std::invalid_argument("eigenphases: non-finite input");
  if (!u.is_unitary(1e-10)) throw std::invalid_argument("eigenphases: matrix is not unitary");
  std::vector<cplx> ev = qr_eigenvalues(u);
  cplx prod = 1.0;
  for (const cplx& l : ev) {
    if (std::abs(std::abs(l) - 1.0) > 1e-10)
      throw std::runtime_error("eigenphases: eigenvalue modulus deviates from 1");
    prod *= l;
  }
  if (std::abs(prod - u.det()) > 1e-10)
    throw std::runtime_error("eigenphases: eigenvalue product does not match det");
  std::sort(ev.begin(), ev.end(),
            [](const cplx& x, const cplx& y) { return std::arg(x) < std::arg(y); });
  return ev;
}

}  // namespace qwalk
