#include "qwalk/continuum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwalk {

DispersionTable dispersion(const StencilOp& w, double m, std::span<const Vec3> ks) {
  constexpr double pi = std::numbers::pi;
  DispersionTable table;
  for (const Vec3& k : ks) {
    const std::vector<cplx> ev = eigenphases(symbol(w, k));
    double k2 = 0.0;
    for (int j = 0; j < w.n; ++j) k2 += k[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
    const double wc = std::sqrt(k2 + m * m);
    for (std::size_t b = 0; b < ev.size(); ++b) {
      double omega = -std::arg(ev[b]) / w.eps;
      if (omega <= -pi / w.eps) omega = pi / w.eps;  // fold onto (-pi/eps, pi/eps]
      const double err_pos = std::abs(omega - wc);
      const double err_neg = std::abs(omega + wc);
      const double ref = (err_pos <= err_neg) ? wc : -wc;
      DispersionRow row;
      row.k = k;
      row.branch = static_cast<int>(b);
      row.omega_eps = omega;
      row.omega_cont = ref;
      row.abs_err = std::abs(omega - ref);
      table.rows.push_back(row);
    }
  }
  return table;
}

double convergence_order(std::span<const std::pair<double, double>> errs) {
  if (errs.size() < 3) throw std::invalid_argument("convergence_order: need at least 3 points");
  for (std::size_t i = 0; i < errs.size(); ++i) {
    if (i > 0 && !(errs[i].first < errs[i - 1].first))
      throw std::invalid_argument("convergence_order: eps must be strictly decreasing");
    if (!(errs[i].second > 0.0))
      throw std::invalid_argument("convergence_order: error is exact to round-off");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double cnt = static_cast<double>(errs.size());
  for (const auto& [eps, err] : errs) {
    const double x = std::log(eps), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

double kg_symbol(double omega, const Vec3& k, double m, int n) {
  double k2 = 0.0;
  for (int j = 0; j < n; ++j) k2 += k[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
  return -omega * omega + k2 + m * m;
}

cplx plane_poly_value(const DecoupledForm& dec, double omega, const Vec3& k) {
  const cplx lambda = std::exp(cplx(0.0, -omega * dec.eps));
  cplx p = 1.0;
  for (int j = 0; j < dec.s; ++j) p *= lambda;  // lambda^s
  cplx lpow = 1.0;
  for (int j = 0; j < dec.s; ++j) {
    p -= symbol(dec.a[static_cast<std::size_t>(j)], k)(0, 0) * lpow;
    lpow *= lambda;
  }
  return p / std::pow(dec.eps, dec.s);
}

std::vector<std::pair<double, double>> symbol_limit_check(
    const std::function<DecoupledForm(double)>& family, double omega,
    const Vec3& k, double target, std::span<const double> eps_list) {
  std::vector<std::pair<double, double>> rows;
  for (double eps : eps_list) {
    const DecoupledForm dec = family(eps);
    rows.emplace_back(eps, std::abs(plane_poly_value(dec, omega, k) - target));
  }
  return rows;
}

std::vector<LemmaRow> lemma_scaling_check(std::span<const CMat> alphas,
                                          std::span<const double> a,
                                          std::span<const double> eps_list) {
  if (alphas.empty()) throw std::invalid_argument("lemma_scaling_check: no generators");
  if (alphas.size() != a.size())
    throw std::invalid_argument("lemma_scaling_check: generator/coefficient count mismatch");
  const int d = alphas[0].d;
  for (const CMat& m : alphas)
    if (m.d != d) throw std::invalid_argument("lemma_scaling_check: dimension mismatch");
  CMat dot = CMat::zero(d);
  for (std::size_t i = 0; i < alphas.size(); ++i) dot = dot + a[i] * alphas[i];
  const cplx target = dot.det();
  std::vector<LemmaRow> rows;
  for (double eps : eps_list) {
    CMat prod = CMat::identity(d);
    for (std::size_t i = 0; i < alphas.size(); ++i)
      prod = prod * exp_series(-eps * a[i] * alphas[i]);
    const cplx num = (CMat::identity(d) - prod).det();
    rows.push_back(LemmaRow{eps, num / std::pow(eps, d), target});
  }
  return rows;
}

}  // namespace qwalk
