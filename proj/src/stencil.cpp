#include "qwalk/stencil.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qwalk {

namespace {

void check_nd(int n, int d, double eps) {
  if (n < 1 || n > 3) throw std::invalid_argument("StencilOp: n must be in 1..3");
  if (d < 1 || d > 4) throw std::invalid_argument("StencilOp: d must be in 1..4");
  if (!(eps > 0.0)) throw std::invalid_argument("StencilOp: eps must be positive");
}

Offset add_offsets(const Offset& a, const Offset& b) {
  return Offset{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Offset negate(const Offset& o) { return Offset{-o[0], -o[1], -o[2]}; }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

StencilOp StencilOp::zero(int n, int d, double eps) {
  check_nd(n, d, eps);
  StencilOp s;
  s.n = n;
  s.d = d;
  s.eps = eps;
  return s;
}

StencilOp StencilOp::identity(int n, int d, double eps) {
  StencilOp s = zero(n, d, eps);
  s.terms[Offset{0, 0, 0}] = CMat::identity(d);
  return s;
}

void StencilOp::accumulate(const Offset& o, const CMat& m) {
  if (m.d != d) throw std::invalid_argument("StencilOp: coefficient dimension mismatch");
  auto it = terms.find(o);
  if (it == terms.end())
    terms.emplace(o, m);
  else
    it->second = it->second + m;
}

void StencilOp::prune(double tol) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.max_norm() < tol)
      it = terms.erase(it);
    else
      ++it;
  }
}

bool StencilOp::same_shape(const StencilOp& o) const {
  return n == o.n && d == o.d && eps == o.eps;
}

StencilOp translation(int axis, int power, int n, double eps) {
  if (axis < 0 || axis >= n) throw std::invalid_argument("translation: axis out of range");
  StencilOp s = StencilOp::zero(n, 1, eps);
  Offset o{0, 0, 0};
  o[static_cast<std::size_t>(axis)] = power;
  s.terms[o] = CMat::identity(1);
  return s;
}

StencilOp combine(std::span<const cplx> coeffs, std::span<const StencilOp> ops) {
  if (ops.empty()) throw std::invalid_argument("combine: no operands");
  if (coeffs.size() != ops.size())
    throw std::invalid_argument("combine: coefficient/operand count mismatch");
  StencilOp out = StencilOp::zero(ops[0].n, ops[0].d, ops[0].eps);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!out.same_shape(ops[i])) throw std::invalid_argument("combine: shape mismatch");
    for (const auto& [o, m] : ops[i].terms) out.accumulate(o, coeffs[i] * m);
  }
  out.prune();
  return out;
}

StencilOp compose(const StencilOp& s1, const StencilOp& s2) {
  if (!s1.same_shape(s2)) throw std::invalid_argument("compose: shape mismatch");
  StencilOp out = StencilOp::zero(s1.n, s1.d, s1.eps);
  for (const auto& [o1, m1] : s1.terms)
    for (const auto& [o2, m2] : s2.terms) out.accumulate(add_offsets(o1, o2), m1 * m2);
  out.prune();
  return out;
}

StencilOp adjoint(const StencilOp& s) {
  StencilOp out = StencilOp::zero(s.n, s.d, s.eps);
  for (const auto& [o, m] : s.terms) out.terms[negate(o)] = m.adjoint();
  return out;
}

StencilOp trace_stencil(const StencilOp& s) {
  StencilOp out = StencilOp::zero(s.n, 1, s.eps);
  for (const auto& [o, m] : s.terms) {
    CMat t(1);
    t(0, 0) = m.trace();
    out.accumulate(o, t);
  }
  out.prune();
  return out;
}

CMat symbol(const StencilOp& s, const Vec3& k) {
  CMat acc = CMat::zero(s.d);
  for (const auto& [o, m] : s.terms) {
    double phase = 0.0;
    for (int j = 0; j < s.n; ++j) phase += k[static_cast<std::size_t>(j)] * o[static_cast<std::size_t>(j)];
    acc = acc + std::exp(cplx(0.0, -s.eps * phase)) * m;
  }
  return acc;
}

Field apply(const StencilOp& s, const Field& f) {
  if (s.n != f.n || s.eps != f.eps)
    throw std::invalid_argument("apply: stencil/field geometry mismatch");
  const bool broadcast = (s.d == 1 && f.d != 1);
  if (!broadcast && s.d != f.d)
    throw std::invalid_argument("apply: component dimension mismatch");
  Field out = Field::zeros(f.grid(), f.d);
  const int n0 = f.sizes[0], n1 = f.sizes[1], n2 = f.sizes[2];
  auto wrap = [](int x, int m) { return ((x % m) + m) % m; };
  for (int x0 = 0; x0 < n0; ++x0)
    for (int x1 = 0; x1 < n1; ++x1)
      for (int x2 = 0; x2 < n2; ++x2) {
        const std::size_t dst = f.site_index(x0, x1, x2) * static_cast<std::size_t>(f.d);
        for (const auto& [o, m] : s.terms) {
          const std::size_t src =
              f.site_index(wrap(x0 - o[0], n0), wrap(x1 - o[1], n1), wrap(x2 - o[2], n2)) *
              static_cast<std::size_t>(f.d);
          if (broadcast) {
            const cplx c = m(0, 0);
            for (int i = 0; i < f.d; ++i) out.data[dst + static_cast<std::size_t>(i)] += c * f.data[src + static_cast<std::size_t>(i)];
          } else {
            for (int i = 0; i < f.d; ++i) {
              cplx acc = 0.0;
              for (int j = 0; j < f.d; ++j) acc += m(i, j) * f.data[src + static_cast<std::size_t>(j)];
              out.data[dst + static_cast<std::size_t>(i)] += acc;
            }
          }
        }
      }
  return out;
}

std::string dump(const StencilOp& s) {
  std::string out;
  for (const auto& [o, m] : s.terms) {
    for (int j = 0; j < s.n; ++j) {
      if (j) out += ' ';
      out += std::to_string(o[static_cast<std::size_t>(j)]);
    }
    out += " |";
    for (int i = 0; i < s.d; ++i)
      for (int j = 0; j < s.d; ++j) {
        out += ' ';
        out += format_double(m(i, j).real());
        out += ' ';
        out += format_double(m(i, j).imag());
      }
    out += '\n';
  }
  return out;
}

double stencil_distance(const StencilOp& a, const StencilOp& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("stencil_distance: shape mismatch");
  double dist = 0.0;
  for (const auto& [o, m] : a.terms) {
    auto it = b.terms.find(o);
    dist = std::max(dist, it == b.terms.end() ? m.max_norm() : (m - it->second).max_norm());
  }
  for (const auto& [o, m] : b.terms)
    if (!a.terms.contains(o)) dist = std::max(dist, m.max_norm());
  return dist;
}

StencilOp operator+(const StencilOp& a, const StencilOp& b) {
  const cplx c[2] = {1.0, 1.0};
  const StencilOp ops[2] = {a, b};
  return combine(c, ops);
}

StencilOp operator-(const StencilOp& a, const StencilOp& b) {
  const cplx c[2] = {1.0, -1.0};
  const StencilOp ops[2] = {a, b};
  return combine(c, ops);
}

StencilOp operator*(cplx c, const StencilOp& s) {
  const cplx cs[1] = {c};
  const StencilOp ops[1] = {s};
  return combine(cs, ops);
}

StencilOp operator*(double c, const StencilOp& s) { return cplx(c, 0.0) * s; }

StencilOp operator*(const StencilOp& a, const StencilOp& b) { return compose(a, b); }

}  // namespace qwalk
