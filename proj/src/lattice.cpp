#include "qwalk/lattice.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qwalk/rng.hpp"

namespace qwalk {

namespace {

void check_grid(const Grid& g) {
  if (g.n < 1 || g.n > 3) throw std::invalid_argument("Grid: n must be in 1..3");
  if (!(g.eps > 0.0)) throw std::invalid_argument("Grid: eps must be positive");
  for (int j = 0; j < g.n; ++j) {
    int nj = g.sizes[static_cast<std::size_t>(j)];
    if (nj < 2 || nj % 2 != 0)
      throw std::invalid_argument("Grid: sizes must be even and >= 2");
  }
  for (int j = g.n; j < 3; ++j)
    if (g.sizes[static_cast<std::size_t>(j)] != 1)
      throw std::invalid_argument("Grid: sizes beyond n must be 1");
}

}  // namespace

Field Field::zeros(const Grid& g, int d) {
  check_grid(g);
  if (d < 1 || d > 4) throw std::invalid_argument("Field: d must be in 1..4");
  Field f;
  f.n = g.n;
  f.d = d;
  f.sizes = g.sizes;
  f.eps = g.eps;
  f.data.assign(f.site_count() * static_cast<std::size_t>(d), cplx(0.0));
  return f;
}

std::size_t Field::site_count() const {
  return static_cast<std::size_t>(sizes[0]) * static_cast<std::size_t>(sizes[1]) *
         static_cast<std::size_t>(sizes[2]);
}

std::size_t Field::site_index(int x0, int x1, int x2) const {
  return (static_cast<std::size_t>(x0) * static_cast<std::size_t>(sizes[1]) +
          static_cast<std::size_t>(x1)) *
             static_cast<std::size_t>(sizes[2]) +
         static_cast<std::size_t>(x2);
}

double Field::norm2() const {
  double s = 0.0;
  for (const cplx& v : data) s += std::norm(v);
  return std::sqrt(s);
}

double Field::max_abs() const {
  double m = 0.0;
  for (const cplx& v : data) m = std::max(m, std::abs(v));
  return m;
}

bool Field::finite() const {
  for (const cplx& v : data)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

void Field::write_csv(std::ostream& os) const {
  for (int j = 0; j < n; ++j) os << 'x' << (j + 1) << ',';
  os << "component,re,im\n";
  char buf[64];
  for (int x0 = 0; x0 < sizes[0]; ++x0)
    for (int x1 = 0; x1 < sizes[1]; ++x1)
      for (int x2 = 0; x2 < sizes[2]; ++x2) {
        const int xs[3] = {x0, x1, x2};
        for (int c = 0; c < d; ++c) {
          for (int j = 0; j < n; ++j) os << xs[j] << ',';
          const cplx v = data[site_index(x0, x1, x2) * static_cast<std::size_t>(d) +
                              static_cast<std::size_t>(c)];
          std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", c, v.real(), v.imag());
          os << buf;
        }
      }
}

Field operator+(const Field& a, const Field& b) {
  if (a.n != b.n || a.d != b.d || a.sizes != b.sizes || a.eps != b.eps)
    throw std::invalid_argument("Field: shape mismatch");
  Field r = a;
  for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] += b.data[i];
  return r;
}

Field operator-(const Field& a, const Field& b) {
  if (a.n != b.n || a.d != b.d || a.sizes != b.sizes || a.eps != b.eps)
    throw std::invalid_argument("Field: shape mismatch");
  Field r = a;
  for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] -= b.data[i];
  return r;
}

cplx inner(const Field& a, const Field& b) {
  if (a.n != b.n || a.d != b.d || a.sizes != b.sizes || a.eps != b.eps)
    throw std::invalid_argument("inner: shape mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += std::conj(a.data[i]) * b.data[i];
  return s;
}

Field plane_wave(const Vec3& k, std::span<const cplx> v, const Grid& g) {
  check_grid(g);
  if (v.empty() || v.size() > 4) throw std::invalid_argument("plane_wave: amplitude size must be 1..4");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < g.n; ++j) {
    const double nj = static_cast<double>(g.sizes[static_cast<std::size_t>(j)]);
    const double t = k[static_cast<std::size_t>(j)] * nj * g.eps / two_pi;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-9) {
      std::ostringstream msg;
      msg << "plane_wave: k[" << j << "] = " << k[static_cast<std::size_t>(j)]
          << " is not commensurate with N = " << g.sizes[static_cast<std::size_t>(j)]
          << ", eps = " << g.eps << "; nearest commensurate value is "
          << two_pi * r / (nj * g.eps);
      throw std::invalid_argument(msg.str());
    }
  }
  Field f = Field::zeros(g, static_cast<int>(v.size()));
  double vnorm2 = 0.0;
  for (const cplx& c : v) vnorm2 += std::norm(c);
  if (vnorm2 <= 0.0) throw std::invalid_argument("plane_wave: zero amplitude vector");
  const double scale = 1.0 / (std::sqrt(vnorm2) * std::sqrt(static_cast<double>(f.site_count())));
  for (int x0 = 0; x0 < f.sizes[0]; ++x0)
    for (int x1 = 0; x1 < f.sizes[1]; ++x1)
      for (int x2 = 0; x2 < f.sizes[2]; ++x2) {
        double phase = k[0] * x0 + k[1] * x1 + k[2] * x2;
        const cplx w = scale * std::exp(cplx(0.0, g.eps * phase));
        const std::size_t base = f.site_index(x0, x1, x2) * static_cast<std::size_t>(f.d);
        for (int c = 0; c < f.d; ++c) f.data[base + static_cast<std::size_t>(c)] = w * v[static_cast<std::size_t>(c)];
      }
  return f;
}

Field random_field(std::uint64_t seed, const Grid& g, int d) {
  Field f = Field::zeros(g, d);
  SplitMix64 rng(seed);
  for (cplx& v : f.data) {
    const double re = rng.uniform_sym();
    const double im = rng.uniform_sym();
    v = cplx(re, im);
  }
  const double nrm = f.norm2();
  for (cplx& v : f.data) v /= nrm;
  return f;
}

Field split_step_apply(const WalkSpec& w, const Field& f) {
  if (w.n != f.n || w.d != f.d || w.eps != f.eps)
    throw std::invalid_argument("split_step_apply: walk/field shape mismatch");
  Field cur = f;
  auto wrap = [](int x, int m) { return ((x % m) + m) % m; };
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    const WalkFactor& fac = *it;
    if (fac.op.d != w.d) throw std::invalid_argument("split_step_apply: factor dimension mismatch");
    if (fac.kind == WalkFactor::Kind::Coin) {
      const CMat u = mat_exp(cplx(0.0, -fac.angle) * fac.op);
      const std::size_t sites = cur.site_count();
      for (std::size_t s = 0; s < sites; ++s) {
        std::array<cplx, 4> v{};
        const std::size_t base = s * static_cast<std::size_t>(cur.d);
        for (int i = 0; i < cur.d; ++i) {
          cplx acc = 0.0;
          for (int j = 0; j < cur.d; ++j) acc += u(i, j) * cur.data[base + static_cast<std::size_t>(j)];
          v[static_cast<std::size_t>(i)] = acc;
        }
        for (int i = 0; i < cur.d; ++i) cur.data[base + static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
      }
    } else {
      if (fac.axis < 0 || fac.axis >= w.n)
        throw std::invalid_argument("split_step_apply: shift axis out of range");
      if (!fac.op.is_involution(1e-12))
        throw std::invalid_argument("split_step_apply: shift operator is not an involution");
      const CMat half = 0.5 * CMat::identity(cur.d);
      const CMat pplus = half + 0.5 * fac.op;
      const CMat pminus = half - 0.5 * fac.op;
      Field next = Field::zeros(cur.grid(), cur.d);
      const int n0 = cur.sizes[0], n1 = cur.sizes[1], n2 = cur.sizes[2];
      for (int x0 = 0; x0 < n0; ++x0)
        for (int x1 = 0; x1 < n1; ++x1)
          for (int x2 = 0; x2 < n2; ++x2) {
            int back[3] = {x0, x1, x2};
            int fwd[3] = {x0, x1, x2};
            const int ns[3] = {n0, n1, n2};
            back[fac.axis] = wrap(back[fac.axis] - 1, ns[fac.axis]);
            fwd[fac.axis] = wrap(fwd[fac.axis] + 1, ns[fac.axis]);
            const std::size_t dst = cur.site_index(x0, x1, x2) * static_cast<std::size_t>(cur.d);
            const std::size_t sb = cur.site_index(back[0], back[1], back[2]) * static_cast<std::size_t>(cur.d);
            const std::size_t sf = cur.site_index(fwd[0], fwd[1], fwd[2]) * static_cast<std::size_t>(cur.d);
            for (int i = 0; i < cur.d; ++i) {
              cplx acc = 0.0;
              for (int j = 0; j < cur.d; ++j)
                acc += pplus(i, j) * cur.data[sb + static_cast<std::size_t>(j)] +
                       pminus(i, j) * cur.data[sf + static_cast<std::size_t>(j)];
              next.data[dst + static_cast<std::size_t>(i)] = acc;
            }
          }
      cur = std::move(next);
    }
  }
  return cur;
}

}  // namespace qwalk
