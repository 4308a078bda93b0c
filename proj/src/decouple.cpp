#include "qwalk/decouple.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

#include "qwalk/rng.hpp"

namespace qwalk {

namespace {

// Cluster sizes of a set of angles in (-pi, pi], with wrap-around; gaps
// larger than tol separate clusters.
std::vector<int> cluster_pattern(std::vector<double> angles, double tol) {
  std::sort(angles.begin(), angles.end());
  const std::size_t len = angles.size();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::size_t> splits;  // i such that the gap (a_i -> a_{i+1 mod len}) > tol
  for (std::size_t i = 0; i < len; ++i) {
    const double gap = (i + 1 < len) ? angles[i + 1] - angles[i]
                                     : angles[0] + two_pi - angles[len - 1];
    if (gap > tol) splits.push_back(i);
  }
  std::vector<int> sizes;
  if (splits.empty()) {
    sizes.push_back(static_cast<int>(len));
  } else {
    for (std::size_t s = 0; s < splits.size(); ++s) {
      const std::size_t prev = splits[(s + splits.size() - 1) % splits.size()];
      const std::size_t cur = splits[s];
      const std::size_t size = (cur + len - prev) % len;
      sizes.push_back(static_cast<int>(size == 0 ? len : size));
    }
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

DecoupledForm char_poly_stencils(const StencilOp& w) {
  if (w.d != 2 && w.d != 4)
    throw std::invalid_argument("char_poly_stencils: coin dimension must be 2 or 4");
  const StencilOp p1 = trace_stencil(w);
  DecoupledForm dec;
  dec.eps = w.eps;
  if (w.d == 2) {
    const StencilOp p2 = trace_stencil(compose(w, w));
    const StencilOp e1 = p1;
    const StencilOp e2 = 0.5 * (e1 * p1 - p2);
    dec.s = 2;
    dec.a = {-1.0 * e2, e1};
  } else {
    const StencilOp w2 = compose(w, w);
    const StencilOp w3 = compose(w2, w);
    const StencilOp w4 = compose(w2, w2);
    const StencilOp p2 = trace_stencil(w2);
    const StencilOp p3 = trace_stencil(w3);
    const StencilOp p4 = trace_stencil(w4);
    const StencilOp e1 = p1;
    const StencilOp e2 = 0.5 * (e1 * p1 - p2);
    const StencilOp e3 = (1.0 / 3.0) * (e2 * p1 - e1 * p2 + p3);
    const StencilOp e4 = 0.25 * (e3 * p1 - e2 * p2 + e1 * p3 - p4);
    dec.s = 4;
    dec.a = {-1.0 * e4, e3, -1.0 * e2, e1};
  }
  return dec;
}

DegeneracyReport degeneracy_probe(const StencilOp& w, int samples, double tol,
                                  std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("degeneracy_probe: samples must be >= 1");
  constexpr double pi = std::numbers::pi;
  const double kmax = pi / w.eps;
  std::vector<Vec3> ks;
  std::vector<bool> structured;
  ks.push_back(Vec3{0, 0, 0});
  structured.push_back(true);
  for (int j = 0; j < w.n; ++j) {
    Vec3 k{0, 0, 0};
    k[static_cast<std::size_t>(j)] = 0.5 * kmax;
    ks.push_back(k);
    structured.push_back(true);
  }
  SplitMix64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    Vec3 k{0, 0, 0};
    for (int j = 0; j < w.n; ++j) k[static_cast<std::size_t>(j)] = rng.uniform_sym() * kmax;
    ks.push_back(k);
    structured.push_back(false);
  }

  DegeneracyReport rep;
  std::vector<std::vector<int>> patterns;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const std::vector<cplx> ev = eigenphases(symbol(w, ks[i]));
    std::vector<double> angles;
    angles.reserve(ev.size());
    for (const cplx& l : ev) angles.push_back(std::arg(l));
    DegeneracySample s;
    s.k = ks[i];
    s.pattern = cluster_pattern(std::move(angles), tol);
    s.structured = structured[i];
    rep.samples.push_back(std::move(s));
  }

  // Generic pattern: strict majority over the random draws.
  std::vector<std::pair<std::vector<int>, int>> counts;
  for (const DegeneracySample& s : rep.samples) {
    if (s.structured) continue;
    ++rep.random_total;
    auto it = std::find_if(counts.begin(), counts.end(),
                           [&](const auto& c) { return c.first == s.pattern; });
    if (it == counts.end())
      counts.emplace_back(s.pattern, 1);
    else
      ++it->second;
  }
  for (const auto& [pat, cnt] : counts) {
    if (cnt * 2 > rep.random_total) {
      rep.generic_pattern = pat;
      rep.has_generic = true;
      rep.random_matching = cnt;
      break;
    }
  }
  if (rep.has_generic)
    for (DegeneracySample& s : rep.samples) s.accidental = (s.pattern != rep.generic_pattern);
  return rep;
}

Field recurrence_step(const DecoupledForm& dec, std::span<const Field> history) {
  if (static_cast<int>(history.size()) != dec.s)
    throw std::invalid_argument("recurrence_step: history length must equal the order");
  for (const Field& f : history)
    if (f.n != history[0].n || f.d != history[0].d || f.sizes != history[0].sizes ||
        f.eps != history[0].eps)
      throw std::invalid_argument("recurrence_step: history grids do not match");
  Field out = Field::zeros(history[0].grid(), history[0].d);
  for (int k = 0; k < dec.s; ++k)
    out = out + apply(dec.a[static_cast<std::size_t>(k)], history[static_cast<std::size_t>(k)]);
  return out;
}

std::vector<std::pair<int, double>> residual_series(const StencilOp& w,
                                                    const DecoupledForm& dec,
                                                    const Field& f0, int steps) {
  if (steps < dec.s) throw std::invalid_argument("residual_series: steps must be >= order");
  std::vector<std::pair<int, double>> rows;
  std::deque<Field> window;
  window.push_back(f0);
  Field cur = f0;
  for (int t = 1; t <= steps; ++t) {
    cur = apply(w, cur);
    window.push_back(cur);
    if (static_cast<int>(window.size()) == dec.s + 1) {
      std::vector<Field> hist(window.begin(), window.end() - 1);
      const Field pred = recurrence_step(dec, hist);
      rows.emplace_back(t, (window.back() - pred).max_abs());
      window.pop_front();
    }
  }
  return rows;
}

double residual(const StencilOp& w, const DecoupledForm& dec, const Field& f0, int steps) {
  double worst = 0.0;
  for (const auto& [step, r] : residual_series(w, dec, f0, steps)) worst = std::max(worst, r);
  return worst;
}

}  // namespace qwalk
