#include <cmath>
#include <string>

#include "resdirac/forward.hpp"
#include "resdirac/numerics.hpp"
#include "resdirac/potentials.hpp"

namespace resdirac {

JostRep jost_kernel(const Potential& q, BoundaryParam alpha, double z_max, int m,
                    const FourierKernelOptions& opts, double* residual) {
  if (m < 2048 || (m & (m - 1)) != 0)
    throw ValidationError("jost_kernel", "m must be a power of two >= 2048");
  if (!(z_max > 0)) throw ValidationError("jost_kernel", "z_max must be positive");
  const double gamma = q.gamma;
  const int n = q.n();
  const double dz = 2.0 * z_max / m;
  if (pi / dz < 2.0 * gamma)
    throw ValidationError("jost_kernel", "m too small for z_max: kernel would alias");

  const cplx e0 = alpha.phase();
  const double taper = opts.window_fraction * z_max;
  std::vector<double> zs(static_cast<std::size_t>(m));
  std::vector<cplx> wf(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double z = -z_max + (k + 0.5) * dz;
    const double a = std::abs(z);
    double w = 1.0;
    if (taper > 0 && a > z_max - taper) w = 0.5 * (1.0 + std::cos(pi * (a - (z_max - taper)) / taper));
    zs[static_cast<std::size_t>(k)] = z;
    wf[static_cast<std::size_t>(k)] = w * (jost_function(q, alpha, cplx(z, 0.0)) - e0);
  }

  const Grid grid = make_grid(0.0, gamma, n);
  std::vector<cplx> g(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) {
    const double s = grid.node(j);
    const cplx step = std::polar(1.0, -2.0 * dz * s);
    cplx e = std::polar(1.0, -2.0 * zs[0] * s);
    cplx acc = 0.0;
    for (int k = 0; k < m; ++k) {
      acc += wf[static_cast<std::size_t>(k)] * e;
      e *= step;
      if ((k & 255) == 255) e = std::polar(1.0, -2.0 * zs[static_cast<std::size_t>(k + 1 < m ? k + 1 : k)] * s);
    }
    g[static_cast<std::size_t>(j)] = acc * dz / pi;
  }
  // the inversion converges to the mean of one-sided limits at the support ends
  g.front() *= 2.0;
  g.back() *= 2.0;

  JostRep rep{alpha, Sampled(grid, std::move(g)), gamma};

  double res = 0.0;
  const int held = 64;
  for (int k = 0; k < held; ++k) {
    const double z = -0.5 * z_max + (k + 0.37) * (z_max / held);
    res = std::max(res, std::abs(eval_jost(rep, cplx(z, 0.0)) - jost_function(q, alpha, cplx(z, 0.0))));
  }
  if (residual) *residual = res;
  if (opts.check_residual && res > opts.residual_tol)
    throw NumericalError("Fourier kernel residual " + std::to_string(res) + " exceeds " +
                         std::to_string(opts.residual_tol) + "; increase z_max");
  return rep;
}

JostRep jost_kernel_characteristics(const Potential& q, BoundaryParam alpha) {
  // First column of Gamma(x, s) on the triangle x + s <= gamma, with A = Gamma_11 and
  // C = Gamma_21:  A_x = q C along s = const, C_x - C_s = conj(q) A along x + s = const,
  // C(x,0) = -conj q(x), A = 0 on x + s = gamma. C jumps across the diagonals through the
  // breakpoints of q by conj(q(x_k+)) - conj(q(x_k-)); nodes store the upper limit C+.
  const int n = q.n();
  const double h = q.h();
  const auto qc = demodulated_cells(q);

  std::vector<cplx> jump(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    const cplx up = k < n ? qc[static_cast<std::size_t>(k)] : cplx{};
    const cplx lo = k > 0 ? qc[static_cast<std::size_t>(k - 1)] : cplx{};
    jump[static_cast<std::size_t>(k)] = std::conj(up) - std::conj(lo);
  }

  std::vector<cplx> A(1, cplx{}), C(1, cplx{}), An, Cn, Cm;
  An.reserve(static_cast<std::size_t>(n + 1));
  Cn.reserve(static_cast<std::size_t>(n + 1));
  Cm.reserve(static_cast<std::size_t>(n + 1));
  for (int i = n - 1; i >= 0; --i) {
    const int m = n - i;
    const cplx qi = qc[static_cast<std::size_t>(i)];
    const cplx b = 0.5 * h * qi, bc = 0.5 * h * std::conj(qi);
    const cplx det = 1.0 - b * bc;
    An.assign(static_cast<std::size_t>(m + 1), cplx{});
    Cn.assign(static_cast<std::size_t>(m + 1), cplx{});
    Cm.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) Cm[static_cast<std::size_t>(j)] = C[static_cast<std::size_t>(j)] + jump[static_cast<std::size_t>(i + 1 + j)];
    Cn[0] = -std::conj(qi);
    An[0] = A[0] - b * (Cn[0] + Cm[0]);
    for (int j = 1; j < m; ++j) {
      const cplx ra = A[static_cast<std::size_t>(j)] - b * Cm[static_cast<std::size_t>(j)];
      const cplx rc = C[static_cast<std::size_t>(j - 1)] - bc * A[static_cast<std::size_t>(j - 1)];
      const cplx av = (ra - b * rc) / det;
      An[static_cast<std::size_t>(j)] = av;
      Cn[static_cast<std::size_t>(j)] = rc - bc * av;
    }
    A.swap(An);
    C.swap(Cn);
  }

  const cplx em = alpha.phase(), ep = std::conj(em);
  std::vector<cplx> g(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) {
    const cplx gp = em * A[static_cast<std::size_t>(j)] - ep * C[static_cast<std::size_t>(j)];
    const cplx gm = gp - ep * jump[static_cast<std::size_t>(j)];
    // endpoints keep the inside limit, interior jumps are averaged (trapezoid-consistent)
    if (j == 0) g[0] = gp;
    else if (j == n) g[static_cast<std::size_t>(j)] = gm;
    else g[static_cast<std::size_t>(j)] = 0.5 * (gp + gm);
  }
  if (q.carrier != 0.0) {
    const Grid grid = q.samples.grid;
    for (int j = 0; j <= n; ++j) g[static_cast<std::size_t>(j)] *= std::polar(1.0, -2.0 * q.carrier * grid.node(j));
  }
  return JostRep{alpha, Sampled(make_grid(0.0, q.gamma, n), std::move(g)), q.gamma};
}

}  // namespace resdirac
