#include "resdirac/forward.hpp"

#include <cmath>
#include <string>

#include "resdirac/potentials.hpp"

namespace resdirac {

namespace {

// exp(-L A) with A = [[iz, p], [conj p, -iz]]; A^2 = (|p|^2 - z^2) I.
Matrix2C cell_propagator(cplx p, cplx z, double L) {
  const cplx mu = std::sqrt(std::norm(p) - z * z);
  const cplx x = mu * L;
  const cplx c = std::cosh(x);
  const cplx s = std::abs(x) < 1e-4 ? L * (1.0 + x * x / 6.0 + x * x * x * x / 120.0)
                                    : std::sinh(x) / mu;
  Matrix2C P;
  P(0, 0) = c - s * I * z;
  P(0, 1) = -s * p;
  P(1, 0) = -s * std::conj(p);
  P(1, 1) = c + s * I * z;
  return P;
}

void check_cap(const Potential& q, cplx z, double im_cap_factor) {
  const double cap = im_cap_factor / q.gamma;
  if (std::abs(z.imag()) > cap)
    throw ValidationError("im_cap", "|Im z| = " + std::to_string(std::abs(z.imag())) +
                                        " exceeds the cap " + std::to_string(cap) +
                                        " (factor/gamma)");
}

bool finite(const Matrix2C& m) {
  for (int i = 0; i < 4; ++i) {
    const cplx v = m(i / 2, i % 2);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

struct Run {
  cplx p;
  int cells;
};

std::vector<Run> runs_of(const std::vector<cplx>& p) {
  std::vector<Run> runs;
  for (const cplx& v : p) {
    if (!runs.empty()) {
      const cplx w = runs.back().p;
      if (std::abs(v - w) <= 1e-15 * (std::abs(w) + 1e-300) || v == w) {
        ++runs.back().cells;
        continue;
      }
    }
    runs.push_back({v, 1});
  }
  return runs;
}

}  // namespace

JostBoundaryValue integrate_jost(const Potential& q, cplx z, double im_cap_factor) {
  check_cap(q, z, im_cap_factor);
  // A carrier kappa is removed by the gauge e^{i kappa x sigma_3}; the problem becomes the
  // demodulated one at z - kappa, and the gauge factor is the identity at x = 0.
  const cplx zr = z - q.carrier;
  const double h = q.h();
  Matrix2C f;
  f.setZero();
  f(0, 0) = std::exp(I * zr * q.gamma);
  f(1, 1) = std::exp(-I * zr * q.gamma);
  const auto runs = runs_of(demodulated_cells(q));
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) f = cell_propagator(it->p, zr, h * it->cells) * f;
  if (!finite(f))
    throw NumericalError("Jost integration overflowed; reduce |Im z| below the cap " +
                         std::to_string(im_cap_factor / q.gamma));
  return {z, f};
}

std::vector<Matrix2C> jost_solution(const Potential& q, cplx z, double im_cap_factor) {
  check_cap(q, z, im_cap_factor);
  const cplx zr = z - q.carrier;
  const int n = q.n();
  const double h = q.h();
  const auto p = demodulated_cells(q);
  std::vector<Matrix2C> out(static_cast<std::size_t>(n + 1));
  Matrix2C f;
  f.setZero();
  f(0, 0) = std::exp(I * zr * q.gamma);
  f(1, 1) = std::exp(-I * zr * q.gamma);
  out[static_cast<std::size_t>(n)] = f;
  for (int j = n - 1; j >= 0; --j) {
    f = cell_propagator(p[static_cast<std::size_t>(j)], zr, h) * f;
    out[static_cast<std::size_t>(j)] = f;
  }
  if (q.carrier != 0.0) {
    for (int j = 0; j <= n; ++j) {
      const double x = q.samples.grid.node(j);
      out[static_cast<std::size_t>(j)].row(0) *= std::polar(1.0, q.carrier * x);
      out[static_cast<std::size_t>(j)].row(1) *= std::polar(1.0, -q.carrier * x);
    }
  }
  if (!finite(out.front())) throw NumericalError("Jost integration overflowed");
  return out;
}

cplx jost_function(const Potential& q, BoundaryParam alpha, cplx z, double im_cap_factor) {
  check_cap(q, z, im_cap_factor);
  const cplx zr = z - q.carrier;
  const double h = q.h();
  cplx a = std::exp(I * zr * q.gamma), b = 0.0;
  const auto runs = runs_of(demodulated_cells(q));
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    const Matrix2C P = cell_propagator(it->p, zr, h * it->cells);
    const cplx na = P(0, 0) * a + P(0, 1) * b;
    const cplx nb = P(1, 0) * a + P(1, 1) * b;
    a = na;
    b = nb;
  }
  const cplx psi = alpha.phase() * a - std::conj(alpha.phase()) * b;
  if (!std::isfinite(psi.real()) || !std::isfinite(psi.imag()))
    throw NumericalError("Jost function overflowed; reduce |Im z|");
  return psi;
}

cplx scattering_value(const Potential& q, BoundaryParam alpha, double z) {
  const cplx psi = jost_function(q, alpha, cplx(z, 0.0));
  if (std::abs(psi) < 1e-300)
    throw NumericalError("Jost function vanishes on the real axis (class violation)");
  return std::conj(psi) / psi;
}

Evaluator jost_evaluator(const Potential& q, BoundaryParam alpha, double im_cap_factor) {
  return [q, alpha, im_cap_factor](cplx z) { return jost_function(q, alpha, z, im_cap_factor); };
}

cplx eval_jost(const JostRep& rep, cplx z, double im_cap_factor) {
  if (z.imag() < -im_cap_factor / rep.gamma)
    throw ValidationError("im_cap", "Im z below the cap for kernel evaluation");
  const Sampled& g = rep.g;
  const double h = g.grid.h;
  const std::size_t m = g.size();
  // e^{2 i z s} by recurrence on the uniform grid
  const cplx step = std::exp(2.0 * I * z * h);
  cplx e = std::exp(2.0 * I * z * g.grid.left);
  cplx s = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double w = (j == 0 || j + 1 == m) ? 0.5 : 1.0;
    s += w * g.values[j] * e;
    e *= step;
    if ((j & 63) == 63) e = std::exp(2.0 * I * z * g.grid.node(static_cast<int>(j + 1)));
  }
  const cplx psi = rep.alpha.phase() + s * h;
  if (!std::isfinite(psi.real()) || !std::isfinite(psi.imag()))
    throw NumericalError("kernel evaluation overflowed");
  return psi;
}

Evaluator jost_rep_evaluator(const JostRep& rep) {
  return [rep](cplx z) { return eval_jost(rep, z); };
}

KernelBound kernel_estimate(const Potential& q, double x) {
  if (x < 0) throw ValidationError("kernel_estimate", "x must be nonnegative");
  KernelBound kb;
  kb.x = x;
  const double h = q.h();
  double eta = 0.0, z2 = 0.0;
  for (int j = 0; j < q.n(); ++j) {
    const double a = q.samples.grid.node(j), b = a + h;
    const double len = std::max(0.0, b - std::max(a, x));
    const double v = std::abs(q.cell(j));
    eta += v * len;
    z2 += v * v * len;
  }
  kb.eta = eta;
  kb.zeta = std::sqrt(z2);
  kb.bound = std::exp(kb.eta) * (1.0 + kb.zeta) - 1.0;
  return kb;
}

}  // namespace resdirac
