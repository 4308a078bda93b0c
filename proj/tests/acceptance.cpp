// Acceptance suite: one pass/fail line per criterion, non-zero exit when any
// criterion fails. All thresholds are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/cli.hpp"
#include "qwalk/conjecture.hpp"
#include "qwalk/continuum.hpp"
#include "qwalk/decouple.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/walks.hpp"

using namespace qwalk;

namespace {

int failures = 0;

void report(int idx, const std::string& label, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, label.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

Vec3 random_k(SplitMix64& rng, int n, double eps) {
  Vec3 k{0, 0, 0};
  for (int j = 0; j < n; ++j)
    k[static_cast<std::size_t>(j)] = rng.uniform_sym() * std::numbers::pi / eps;
  return k;
}

const std::vector<double> kEpsList = {0.2, 0.1, 0.05, 0.025};

void residual_criterion(int idx, const std::string& label, const Walk& w, const Grid& g,
                        int steps, double tol, double time_budget) {
  const auto t0 = std::chrono::steady_clock::now();
  const DecoupledForm dec = char_poly_stencils(w.stencil);
  const Field f0 = random_field(7, g, w.spec.d);
  const double res = residual(w.stencil, dec, f0, steps);
  const double dt = seconds_since(t0);
  report(idx, label, res <= tol && dt < time_budget,
         "max residual " + fmt(res) + ", " + fmt(dt) + " s");
}

bool monotone(const std::vector<std::pair<double, double>>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].second < rows[i - 1].second)) return false;
  return true;
}

}  // namespace

int main() {
  // 1-3: decoupling exactness on trajectories
  residual_criterion(1, "2+1 two-step decoupling residual", dirac2p1(0.35, 0.1),
                     Grid{2, {64, 64, 1}, 0.1}, 100, 1e-12, 5.0);
  residual_criterion(2, "3+1 quartic decoupling residual", dirac3p1(0.35, 0.1),
                     Grid{3, {16, 16, 16}, 0.1}, 50, 1e-10, 60.0);
  residual_criterion(3, "massless two-step decoupling residual", weyl3p1(0.1),
                     Grid{3, {16, 16, 16}, 0.1}, 50, 1e-12, 30.0);

  // 4: unitarity of the evolution and unit determinant of the symbol
  {
    const Walk walks[3] = {dirac2p1(0.35, 0.1), dirac3p1(0.35, 0.1), weyl3p1(0.1)};
    const Grid grids[3] = {Grid{2, {32, 32, 1}, 0.1}, Grid{3, {16, 16, 16}, 0.1},
                           Grid{3, {16, 16, 16}, 0.1}};
    double worst_norm = 0.0, worst_det = 0.0;
    SplitMix64 rng(7);
    for (int i = 0; i < 3; ++i) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Field f = random_field(seed, grids[i], walks[i].spec.d);
        worst_norm = std::max(worst_norm, std::abs(apply(walks[i].stencil, f).norm2() - 1.0));
      }
      for (int s = 0; s < 100; ++s) {
        const Vec3 k = random_k(rng, walks[i].spec.n, 0.1);
        worst_det = std::max(worst_det, std::abs(symbol(walks[i].stencil, k).det() - 1.0));
      }
    }
    report(4, "unitarity and determinant", worst_norm <= 1e-12 && worst_det <= 1e-12,
           "norm dev " + fmt(worst_norm) + ", det dev " + fmt(worst_det));
  }

  // 5: Newton-identity constant coefficient equals det = 1
  {
    auto const_dev = [](const DecoupledForm& dec) {
      StencilOp expect = StencilOp::zero(dec.a[0].n, 1, dec.eps);
      CMat m(1);
      m(0, 0) = -1.0;
      expect.terms[Offset{0, 0, 0}] = m;
      return stencil_distance(dec.a[0], expect);
    };
    const double d2 = const_dev(char_poly_stencils(dirac2p1(0.35, 0.1).stencil));
    const double d4 = const_dev(char_poly_stencils(dirac3p1(0.35, 0.1).stencil));
    const double dw = const_dev(char_poly_stencils(weyl3p1(0.1).stencil));
    const double worst = std::max({d2, d4, dw});
    report(5, "Newton/determinant consistency", worst <= 1e-12, "max deviation " + fmt(worst));
  }

  // 6: symbol-level Cayley-Hamilton
  {
    SplitMix64 rng(7);
    double worst = 0.0;
    const Walk walks[3] = {dirac2p1(0.35, 0.1), dirac3p1(0.35, 0.1), weyl3p1(0.1)};
    for (const Walk& w : walks) {
      const DecoupledForm dec = char_poly_stencils(w.stencil);
      for (int i = 0; i < 100; ++i) {
        const Vec3 k = random_k(rng, w.spec.n, 0.1);
        const CMat u = symbol(w.stencil, k);
        CMat p = CMat::identity(u.d);
        for (int j = 0; j < dec.s; ++j) p = p * u;
        CMat upow = CMat::identity(u.d);
        for (int j = 0; j < dec.s; ++j) {
          p = p - symbol(dec.a[static_cast<std::size_t>(j)], k)(0, 0) * upow;
          upow = upow * u;
        }
        worst = std::max(worst, p.max_norm());
      }
    }
    report(6, "symbol-level Cayley-Hamilton", worst <= 1e-11, "max |P(W)| " + fmt(worst));
  }

  // 7: continuum limit of the quartic form
  {
    const auto t0 = std::chrono::steady_clock::now();
    const double omega = 0.9, m = 0.35;
    const Vec3 k{0.5, 0.3, 0.2};
    const double target = kg_symbol(omega, k, m, 3) * kg_symbol(omega, k, m, 3);
    const auto family = [&](double e) { return char_poly_stencils(dirac3p1(m, e).stencil); };
    const auto rows = symbol_limit_check(family, omega, k, target, kEpsList);
    const double slope = convergence_order(rows);
    const double dt = seconds_since(t0);
    report(7, "quartic-form continuum limit", monotone(rows) && slope >= 0.9 && dt < 5.0,
           "slope " + fmt(slope) + " to target 0.09455625, " + fmt(dt) + " s");
  }

  // 8: wave-equation and KG limits of the two-step forms
  {
    const double omega = 0.9;
    const Vec3 k3{0.5, 0.3, 0.2};
    const auto weyl_family = [&](double e) { return char_poly_stencils(weyl3p1(e).stencil); };
    const auto weyl_rows =
        symbol_limit_check(weyl_family, omega, k3, kg_symbol(omega, k3, 0.0, 3), kEpsList);
    const double weyl_slope = convergence_order(weyl_rows);

    const double m = 0.35;
    const Vec3 k2{0.5, 0.3, 0};
    const auto dirac_family = [&](double e) { return char_poly_stencils(dirac2p1(m, e).stencil); };
    const auto dirac_rows =
        symbol_limit_check(dirac_family, omega, k2, kg_symbol(omega, k2, m, 2), kEpsList);
    const double dirac_slope = convergence_order(dirac_rows);

    report(8, "wave and KG limits of the two-step forms",
           monotone(weyl_rows) && monotone(dirac_rows) && weyl_slope >= 0.9 && dirac_slope >= 0.9,
           "slopes " + fmt(weyl_slope) + " / " + fmt(dirac_slope));
  }

  // 9: determinant-scaling ratios
  {
    const CMat pauli_alphas[3] = {pauli(1), pauli(2), pauli(3)};
    const double axis[3] = {1.0, 0.0, 0.0};
    const auto rows2 = lemma_scaling_check(pauli_alphas, axis, kEpsList);
    double dev_at_005 = 1.0;
    for (const LemmaRow& r : rows2)
      if (r.eps == 0.05) dev_at_005 = std::abs(r.ratio - cplx(-1.0));

    const DiracRep rep = dirac_rep();
    const CMat dirac_alphas[3] = {rep.alpha[0], rep.alpha[1], rep.alpha[2]};
    SplitMix64 rng(7);
    const double a[3] = {rng.uniform_sym(), rng.uniform_sym(), rng.uniform_sym()};
    const auto rows4 = lemma_scaling_check(dirac_alphas, a, kEpsList);
    std::vector<std::pair<double, double>> errs;
    for (const LemmaRow& r : rows4) errs.emplace_back(r.eps, std::abs(r.ratio - r.target));
    const double slope = convergence_order(errs);

    report(9, "determinant-scaling ratios", dev_at_005 <= 0.05 && slope >= 0.9,
           "|ratio+1| " + fmt(dev_at_005) + " at eps 0.05, 4x4 slope " + fmt(slope));
  }

  // 10: dispersion relations
  {
    const Walk weyl = weyl3p1(0.1);
    const Vec3 axis_ks[3] = {Vec3{0.7, 0, 0}, Vec3{0, 1.3, 0}, Vec3{0, 0, 0.4}};
    double weyl_err = 0.0;
    for (const DispersionRow& r : dispersion(weyl.stencil, 0.0, axis_ks).rows)
      weyl_err = std::max(weyl_err, r.abs_err);

    const double m = 0.35, eps = 0.1;
    const Walk d2 = dirac2p1(m, eps);
    SplitMix64 rng(7);
    std::vector<Vec3> ks;
    for (int i = 0; i < 100; ++i) ks.push_back(random_k(rng, 2, eps));
    double ident_err = 0.0;
    for (const DispersionRow& r : dispersion(d2.stencil, m, ks).rows) {
      const double lhs = std::cos(r.omega_eps * eps);
      const double rhs = std::cos(m * eps) * std::cos(r.k[0] * eps) * std::cos(r.k[1] * eps) +
                         std::sin(m * eps) * std::sin(r.k[0] * eps) * std::sin(r.k[1] * eps);
      ident_err = std::max(ident_err, std::abs(lhs - rhs));
    }

    const Vec3 kfix{0.5, 0.3, 0.2};
    std::vector<std::pair<double, double>> errs;
    for (double e : kEpsList) {
      const Walk w = dirac3p1(m, e);
      const Vec3 one[1] = {kfix};
      double worst = 0.0;
      for (const DispersionRow& r : dispersion(w.stencil, m, one).rows)
        worst = std::max(worst, r.abs_err);
      errs.emplace_back(e, worst);
    }
    const double slope = convergence_order(errs);

    report(10, "dispersion relations", weyl_err <= 1e-12 && ident_err <= 1e-12 && slope >= 0.9,
           "axis " + fmt(weyl_err) + ", closed form " + fmt(ident_err) + ", slope " + fmt(slope));
  }

  // 11: degeneracy probe of the quartic walk
  {
    const Walk w = dirac3p1(0.35, 0.1);
    const DegeneracyReport rep = degeneracy_probe(w.stencil, 200, 1e-8);
    const bool generic_ok = rep.has_generic && rep.generic_pattern == std::vector<int>{1, 1, 1, 1} &&
                            rep.random_matching * 100 >= rep.random_total * 95;
    const bool zero_flagged = rep.samples[0].structured && rep.samples[0].accidental;
    report(11, "eigenphase degeneracy probe", generic_ok && zero_flagged,
           std::to_string(rep.random_matching) + "/" + std::to_string(rep.random_total) +
               " distinct, k=0 accidental " + (zero_flagged ? "yes" : "no"));
  }

  // 12: extrapolated two-step scheme
  {
    const double eps = 0.1;
    const Grid g{3, {4, 4, 4}, eps};
    const cplx one[1] = {1.0};
    const Field f = plane_wave(Vec3{0, 0, 0}, one, g);
    const Field hist[2] = {f, f};
    const double const_dev = (recurrence_step(conjecture_form(0.0, eps), hist) - f).max_abs();
    const double literal_dev =
        (recurrence_step(conjecture_form(0.0, eps, true), hist) - f).max_abs();

    const double omega = 0.9, m = 0.35;
    const Vec3 k{0.5, 0.3, 0.2};
    const auto family = [&](double e) { return conjecture_form(m, e); };
    const auto rows = symbol_limit_check(family, omega, k, kg_symbol(omega, k, m, 3), kEpsList);
    const double slope = convergence_order(rows);

    SplitMix64 rng(7);
    std::vector<Vec3> ks;
    for (int i = 0; i < 500; ++i) ks.push_back(random_k(rng, 3, eps));
    double maxmod = 0.0;
    for (const auto& r : stability_spectrum(m, eps, ks)) maxmod = std::max(maxmod, r.max_modulus);

    report(12, "extrapolated scheme: limit and stability",
           const_dev == 0.0 && literal_dev > 0.0 && monotone(rows) && slope >= 0.9 &&
               maxmod <= 1.0 + 1e-12,
           "constant dev " + fmt(const_dev) + ", literal dev " + fmt(literal_dev) + ", slope " +
               fmt(slope) + ", max modulus - 1 = " + fmt(maxmod - 1.0));
  }

  // 13: split-step and stencil application agree
  {
    const Walk walks[3] = {dirac2p1(0.35, 0.1), dirac3p1(0.35, 0.1), weyl3p1(0.1)};
    const Grid grids[3] = {Grid{2, {32, 32, 1}, 0.1}, Grid{3, {16, 16, 16}, 0.1},
                           Grid{3, {16, 16, 16}, 0.1}};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Field f = random_field(seed, grids[i], walks[i].spec.d);
        worst = std::max(worst,
                         (split_step_apply(walks[i].spec, f) - apply(walks[i].stencil, f)).max_abs());
      }
    report(13, "split-step/stencil cross-implementation", worst <= 1e-13,
           "max deviation " + fmt(worst));
  }

  // 14: byte-identical CLI output
  {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qwalk_acceptance";
    fs::create_directories(dir);
    const std::string out = (dir / "run.csv").string();
    const std::vector<std::string> args = {"decouple-residual", "--walk", "dirac2", "--mass",
                                           "0.35", "--eps", "0.1", "--grid", "32,32",
                                           "--steps", "30", "--seed", "7", "--out", out};
    auto slurp = [](const std::string& p) {
      std::ifstream is(p, std::ios::binary);
      std::ostringstream os;
      os << is.rdbuf();
      return os.str();
    };
    const int c1 = qwalk::cli::run(args);
    const std::string t1 = slurp(out);
    const int c2 = qwalk::cli::run(args);
    const std::string t2 = slurp(out);
    std::error_code ec;
    fs::remove_all(dir, ec);
    report(14, "reproducible CLI output", c1 == 0 && c2 == 0 && !t1.empty() && t1 == t2,
           t1 == t2 ? "byte-identical" : "outputs differ");
  }

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
