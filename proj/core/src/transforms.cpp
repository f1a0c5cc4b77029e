#include "resdirac/transforms.hpp"

#include <cmath>
#include <string>

#include "resdirac/inverse.hpp"
#include "resdirac/potentials.hpp"
#include "resdirac/spectral.hpp"

namespace resdirac {

namespace {

cplx locate_source(const Evaluator& f, cplx z0, double tol) {
  const cplx z = polish_zero(f, z0);
  const double a = std::abs(f(z));
  const double ref = std::abs(f(z + 0.1 * std::max(1.0, std::abs(z))));
  if (std::abs(z - z0) > tol * std::max(1.0, std::abs(z0)) || !(a <= 1e-6 * ref))
    throw ValidationError("move", "move source is not a zero of psi");
  return z;
}

// g + (z0 - z1) k with k the kernel of psi / (z - z0)
void apply_factor(JostRep& rep, cplx z0, cplx z1) {
  auto& g = rep.g.values;
  const double h = rep.g.grid.h;
  const cplx em = rep.alpha.phase();
  const std::size_t m = g.size();
  std::vector<cplx> k(m);
  cplx G = 0.0;
  cplx prev = g[0];
  for (std::size_t j = 0; j < m; ++j) {
    const double s = rep.g.grid.node(static_cast<int>(j));
    const cplx cur = g[j] * std::exp(2.0 * I * z0 * s);
    if (j > 0) G += 0.5 * h * (prev + cur);
    prev = cur;
    k[j] = std::exp(-2.0 * I * z0 * s) * (-2.0 * I) * (em + G);
  }
  for (std::size_t j = 0; j < m; ++j) g[j] += (z0 - z1) * k[j];
}

}  // namespace

BlaschkeResult blaschke_modify(const JostRep& rep, const std::vector<ResonanceMove>& moves,
                               const Evaluator& base, const BlaschkeOptions& opts) {
  for (const auto& mv : moves) {
    if (!(mv.to.imag() < 0)) throw ValidationError("move", "move target must lie in the open lower half-plane");
    if (!(mv.from.imag() < 0)) throw ValidationError("move", "move source must lie in the open lower half-plane");
  }
  BlaschkeResult out;
  out.rep = rep;
  const Evaluator base_psi = base ? base : jost_rep_evaluator(rep);
  std::vector<std::pair<cplx, cplx>> factors;  // (to, from) on the base evaluator

  for (const auto& mv : moves) {
    auto current_base = [&](cplx z) {
      cplx v = base_psi(z);
      for (const auto& [t, f] : factors) v *= (z - t) / (z - f);
      return v;
    };
    const Evaluator cb = current_base;
    const cplx src_base = locate_source(cb, mv.from, opts.source_tol);
    const cplx src_rep = locate_source(jost_rep_evaluator(out.rep), mv.from, opts.source_tol);
    out.applied.push_back({src_rep, mv.to});
    if (mv.to == mv.from) continue;
    factors.emplace_back(mv.to, src_base);
    apply_factor(out.rep, src_rep, mv.to);
  }
  out.psi = [base_psi, factors](cplx z) {
    cplx v = base_psi(z);
    for (const auto& [t, f] : factors) v *= (z - t) / (z - f);
    return v;
  };
  return out;
}

MoveResult move_resonances_full(const Potential& q, BoundaryParam alpha, const std::vector<ResonanceMove>& moves,
                                const BlaschkeOptions& opts) {
  const JostRep rep = jost_kernel_characteristics(refine(q, 2), alpha);
  const BlaschkeResult b = blaschke_modify(rep, moves, jost_evaluator(q, alpha), opts);
  MoveResult out;
  out.q = recover_from_jost(b.rep, q.samples.grid).q;
  out.rep = b.rep;
  out.applied = b.applied;
  return out;
}

Potential move_resonances(const Potential& q, BoundaryParam alpha, const std::vector<ResonanceMove>& moves) {
  return move_resonances_full(q, alpha, moves).q;
}

Potential shift_potential(const Potential& q, double k) {
  std::vector<cplx> v(q.samples.values);
  for (int j = 0; j <= q.n(); ++j)
    v[static_cast<std::size_t>(j)] *= std::polar(1.0, -2.0 * k * q.samples.grid.node(j));
  return Potential(q.gamma, std::move(v), q.carrier - k);
}

Potential reflect_potential(const Potential& q, BoundaryParam alpha) {
  std::vector<cplx> v(q.samples.values);
  const cplx e = std::polar(1.0, 4.0 * alpha.alpha);
  for (auto& c : v) c = e * std::conj(c);
  return Potential(q.gamma, std::move(v), -q.carrier);
}

}  // namespace resdirac
