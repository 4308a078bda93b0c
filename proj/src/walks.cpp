#include "qwalk/walks.hpp"

#include <stdexcept>

namespace qwalk {

namespace {

StencilOp factor_stencil(const WalkFactor& f, int n, double eps) {
  StencilOp s = StencilOp::zero(n, f.op.d, eps);
  if (f.kind == WalkFactor::Kind::Coin) {
    s.terms[Offset{0, 0, 0}] = mat_exp(cplx(0.0, -f.angle) * f.op);
  } else {
    // exp(-eps*sigma*d/dx) = tau P_plus + tau^{-1} P_minus for an involution
    // sigma, built exactly from the cosh/sinh split.
    Offset fwd{0, 0, 0}, back{0, 0, 0};
    fwd[static_cast<std::size_t>(f.axis)] = 1;
    back[static_cast<std::size_t>(f.axis)] = -1;
    const CMat half = 0.5 * CMat::identity(f.op.d);
    s.terms[fwd] = half + 0.5 * f.op;
    s.terms[back] = half - 0.5 * f.op;
  }
  return s;
}

void check_params(double m, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("walk: eps must be positive");
  if (m < 0.0) throw std::invalid_argument("walk: mass must be non-negative");
}

WalkSpec reorder_coin_last(WalkSpec spec) {
  std::vector<WalkFactor> shifted;
  std::vector<WalkFactor> coins;
  for (const WalkFactor& f : spec.factors)
    (f.kind == WalkFactor::Kind::Coin ? coins : shifted).push_back(f);
  shifted.insert(shifted.end(), coins.begin(), coins.end());
  spec.factors = std::move(shifted);
  return spec;
}

}  // namespace

StencilOp walk_stencil(const WalkSpec& w) {
  StencilOp acc = StencilOp::identity(w.n, w.d, w.eps);
  for (const WalkFactor& f : w.factors) acc = compose(acc, factor_stencil(f, w.n, w.eps));
  return acc;
}

Walk dirac2p1(double m, double eps, bool coin_last) {
  check_params(m, eps);
  WalkSpec spec;
  spec.n = 2;
  spec.d = 2;
  spec.mass = m;
  spec.eps = eps;
  spec.factors = {
      WalkFactor{WalkFactor::Kind::Coin, pauli(2), m * eps, 0},
      WalkFactor{WalkFactor::Kind::Shift, pauli(1), 0.0, 0},
      WalkFactor{WalkFactor::Kind::Shift, pauli(3), 0.0, 1},
  };
  if (coin_last) spec = reorder_coin_last(spec);
  StencilOp st = walk_stencil(spec);
  return Walk{std::move(spec), std::move(st)};
}

Walk dirac3p1(double m, double eps, bool coin_last) {
  check_params(m, eps);
  const DiracRep rep = dirac_rep();
  WalkSpec spec;
  spec.n = 3;
  spec.d = 4;
  spec.mass = m;
  spec.eps = eps;
  spec.factors = {
      WalkFactor{WalkFactor::Kind::Coin, rep.beta, m * eps, 0},
      WalkFactor{WalkFactor::Kind::Shift, rep.alpha[0], 0.0, 0},
      WalkFactor{WalkFactor::Kind::Shift, rep.alpha[1], 0.0, 1},
      WalkFactor{WalkFactor::Kind::Shift, rep.alpha[2], 0.0, 2},
  };
  if (coin_last) spec = reorder_coin_last(spec);
  StencilOp st = walk_stencil(spec);
  return Walk{std::move(spec), std::move(st)};
}

Walk weyl3p1(double eps) {
  check_params(0.0, eps);
  WalkSpec spec;
  spec.n = 3;
  spec.d = 2;
  spec.mass = 0.0;
  spec.eps = eps;
  spec.factors = {
      WalkFactor{WalkFactor::Kind::Shift, pauli(1), 0.0, 0},
      WalkFactor{WalkFactor::Kind::Shift, pauli(2), 0.0, 1},
      WalkFactor{WalkFactor::Kind::Shift, pauli(3), 0.0, 2},
  };
  StencilOp st = walk_stencil(spec);
  return Walk{std::move(spec), std::move(st)};
}

Walk make_walk(const std::string& name, double m, double eps) {
  if (name == "dirac2") return dirac2p1(m, eps);
  if (name == "dirac3") return dirac3p1(m, eps);
  if (name == "weyl3") {
    if (m != 0.0) throw std::invalid_argument("make_walk: weyl3 is massless, mass must be 0");
    return weyl3p1(eps);
  }
  throw std::invalid_argument("make_walk: unknown walk '" + name + "'");
}

}  // namespace qwalk
