#include "resdirac/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "resdirac/numerics.hpp"
#include "resdirac/potentials.hpp"

namespace resdirac {

WienerInverse invert_wiener(const JostRep& rep, double T_h, const WienerOptions& opts) {
  const Sampled& g = rep.g;
  const int n = g.grid.n;
  const double hs = g.grid.h;
  if (!(T_h >= rep.gamma - 0.5 * hs)) throw ValidationError("wiener", "T_h must be at least gamma");
  const int nh = std::max(n, static_cast<int>(std::lround(T_h / hs)));
  const cplx em = rep.alpha.phase(), ep = std::conj(em);

  // e^{-i a} h + e^{i a} g + g*h = 0 marched forward; trapezoid in the convolution, with
  // the jump of g at gamma averaged once s passes it.
  auto gv = [&](int j, int k) -> cplx {
    if (j > n) return {};
    if (j == n && k > n) return 0.5 * g.values[static_cast<std::size_t>(n)];
    return g.values[static_cast<std::size_t>(j)];
  };
  std::vector<cplx> H(static_cast<std::size_t>(nh + 1), cplx{});
  H[0] = -ep * g.values[0] / em;
  const cplx den = em + 0.5 * hs * g.values[0];
  for (int k = 1; k <= nh; ++k) {
    cplx conv = 0.0;
    const int top = std::min(k - 1, n);
    for (int j = 1; j <= top; ++j) conv += gv(j, k) * H[static_cast<std::size_t>(k - j)];
    const cplx gk = k <= n ? g.values[static_cast<std::size_t>(k)] : cplx{};
    conv += 0.5 * gk * H[0];
    H[static_cast<std::size_t>(k)] = (-ep * gk - hs * conv) / den;
    // g drops to zero at gamma, so h jumps there by e^{2 i alpha} g(gamma-); keep the mean
    if (k == n) H[static_cast<std::size_t>(k)] += 0.5 * (ep / em) * gk;
  }

  WienerInverse w;
  w.alpha = rep.alpha;
  w.h = Sampled(make_grid(0.0, nh * hs, nh), std::move(H));
  double total = 0.0, tail = 0.0;
  const double t0 = nh * hs - rep.gamma;
  for (int k = 0; k <= nh; ++k) {
    const double a = std::abs(w.h.values[static_cast<std::size_t>(k)]);
    total += a;
    if (k * hs >= t0) tail += a;
  }
  w.tail_mass = total > 0 ? tail / total : 0.0;
  if (opts.tail_tol > 0 && w.tail_mass > opts.tail_tol)
    throw NumericalError("Wiener inverse tail mass " + std::to_string(w.tail_mass) +
                         " exceeds tolerance; increase T_h");
  return w;
}

ScatteringRep scattering_kernel(const JostRep& rep, const WienerInverse& w, double T_max) {
  const Sampled& g = rep.g;
  const int n = g.grid.n;
  const double hs = g.grid.h;
  if (std::abs(w.h.grid.h - hs) > 1e-12 * hs)
    throw ValidationError("scattering_kernel", "kernel grids must share the spacing");
  const int nt = std::max(0, static_cast<int>(std::lround(T_max / hs)));
  const int nh = w.h.grid.n;
  const cplx ep = std::conj(rep.alpha.phase());
  const auto& gv = g.values;
  const auto& hv = w.h.values;

  std::vector<cplx> F(static_cast<std::size_t>(n + nt + 1), cplx{});
  for (int k = 0; k <= n + nt; ++k) {
    const int idx = k - n;  // s = idx * hs
    const int j0 = std::max(0, -idx);
    cplx conv = 0.0;
    if (j0 < n) {
      const int jmax = std::min(n, nh - idx);
      for (int j = j0; j <= jmax; ++j) {
        const double wgt = (j == j0 || j == n) ? 0.5 : 1.0;
        conv += wgt * std::conj(gv[static_cast<std::size_t>(j)]) * hv[static_cast<std::size_t>(idx + j)];
      }
      conv *= hs;
    }
    cplx local;
    if (idx < 0) {
      local = ep * std::conj(gv[static_cast<std::size_t>(-idx)]);
    } else if (idx == 0) {
      local = 0.5 * ep * (hv[0] + std::conj(gv[0]));
    } else {
      local = idx <= nh ? ep * hv[static_cast<std::size_t>(idx)] : cplx{};
    }
    F[static_cast<std::size_t>(k)] = local + conv;
  }
  ScatteringRep S;
  S.alpha = rep.alpha;
  S.gamma = rep.gamma;
  S.t_max = nt * hs;
  Grid grid;
  grid.left = -n * hs;
  grid.n = n + nt;
  grid.h = hs;
  grid.right = grid.left + grid.n * hs;
  S.F = Sampled(grid, std::move(F));
  return S;
}

cplx eval_scattering(const ScatteringRep& S, double z) {
  const Sampled& F = S.F;
  const double h = F.grid.h;
  const std::size_t m = F.size();
  const cplx step = std::polar(1.0, 2.0 * z * h);
  cplx e = std::polar(1.0, 2.0 * z * F.grid.left);
  cplx s = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double w = (j == 0 || j + 1 == m) ? 0.5 : 1.0;
    s += w * F.values[j] * e;
    e *= step;
    if ((j & 127) == 127) e = std::polar(1.0, 2.0 * z * F.grid.node(static_cast<int>(j + 1)));
  }
  return std::polar(1.0, 2.0 * S.alpha.alpha) + s * h;
}

OmegaKernel omega_kernel(const ScatteringRep& S) {
  const Sampled& F = S.F;
  const int N = F.grid.n;
  std::vector<cplx> v(static_cast<std::size_t>(N + 1));
  for (int j = 0; j <= N; ++j) v[static_cast<std::size_t>(j)] = F.values[static_cast<std::size_t>(N - j)];
  // F stores the jump mean at s = 0; the GLM reads Phi on x >= 0, so keep the limit from there
  const int i0 = static_cast<int>(std::lround(F.grid.right / F.grid.h));
  if (i0 >= 0 && i0 + 2 <= N && std::abs(F.grid.right - i0 * F.grid.h) < 1e-9 * F.grid.h)
    v[static_cast<std::size_t>(i0)] = 2.0 * v[static_cast<std::size_t>(i0 + 1)] - v[static_cast<std::size_t>(i0 + 2)];
  Grid g;
  g.left = -F.grid.right;
  g.right = -F.grid.left;
  g.n = N;
  g.h = F.grid.h;
  OmegaKernel om;
  om.phi = Sampled(g, std::move(v));
  om.gamma = S.gamma;
  return om;
}

cplx OmegaKernel::offdiag(double x) const {
  if (x > gamma + 1e-12 * std::max(1.0, gamma)) return {};
  return interpolate(phi, x);
}

RecoveredPotential recover_from_jost(const JostRep& rep, const Grid& grid, double t_max_factor) {
  const double T = t_max_factor * rep.gamma;
  WienerOptions wo;
  wo.tail_tol = 0.0;  // recovery only reads h on [0, gamma]
  const WienerInverse w = invert_wiener(rep, T + rep.gamma, wo);
  const ScatteringRep S = scattering_kernel(rep, w, T);
  return recover_potential(S, grid);
}

ScatteringRep forward_scattering(const Potential& q, BoundaryParam alpha, double t_max_factor) {
  const JostRep rep = jost_kernel_characteristics(refine(q, 2), alpha);
  const double T = t_max_factor * q.gamma;
  WienerOptions wo;
  wo.tail_tol = 0.0;
  const WienerInverse w = invert_wiener(rep, T + q.gamma, wo);
  return scattering_kernel(rep, w, T);
}

SupportReport support_identities(const Potential& q, const JostRep& rep, const ScatteringRep& S,
                                 double floor_rel) {
  SupportReport r;
  r.support_q = support_supremum(q, floor_rel);
  double mg = 0.0;
  for (const auto& v : rep.g.values) mg = std::max(mg, std::abs(v));
  if (mg > 0)
    for (int j = rep.g.grid.n; j >= 0; --j)
      if (std::abs(rep.g.values[static_cast<std::size_t>(j)]) > floor_rel * mg) {
        r.support_g = rep.g.grid.node(j);
        break;
      }
  double mf = 0.0;
  for (const auto& v : S.F.values) mf = std::max(mf, std::abs(v));
  if (mf > 0)
    for (int k = 0; k <= S.F.grid.n; ++k)
      if (std::abs(S.F.values[static_cast<std::size_t>(k)]) > floor_rel * mf) {
        r.support_F = -S.F.grid.node(k);
        break;
      }
  r.cell = std::max({q.h(), rep.g.grid.h, S.F.grid.h});
  r.degenerate = r.support_q == 0.0 && r.support_g == 0.0 && r.support_F <= 0.0;
  const double slack = r.cell * (1.0 + 1e-9);
  r.pass = std::abs(r.support_q - r.support_g) <= slack && std::abs(r.support_q - r.support_F) <= slack &&
           std::abs(r.support_g - r.support_F) <= slack;
  return r;
}

}  // namespace resdirac
