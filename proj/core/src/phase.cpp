#include <algorithm>
#include <cmath>

#include "resdirac/spectral.hpp"

namespace resdirac {

namespace {

// Zeros beyond the truncation radius, replaced by a continuum with density gamma/pi per
// side starting half a spacing past the outermost included zero. Depth follows a fit
// -Im z = A ln|Re z| + B on the included zeros.
struct Tail {
  bool active = false;
  double density = 0.0;
  double A = 0.0, B = 0.0;
  double t_plus = 0.0, t_minus = 0.0;
  static constexpr int nodes = 4000;

  double depth(double t) const { return std::max(1e-3, A * std::log(t) + B); }

  // sum over both sides of \int_{t0}^inf w(t) k(+-t, depth(t)) dt, via t = t0 / u
  template <class K>
  double integrate(K&& k) const {
    if (!active) return 0.0;
    double s = 0.0;
    const double du = 1.0 / nodes;
    for (int side = 0; side < 2; ++side) {
      const double t0 = side == 0 ? t_plus : t_minus;
      const double sgn = side == 0 ? 1.0 : -1.0;
      for (int j = 0; j < nodes; ++j) {
        const double u = (j + 0.5) * du;
        const double t = t0 / u;
        s += t0 / (u * u) * du * k(sgn * t, -depth(t));
      }
    }
    return density * s;
  }
};

struct Model {
  std::vector<cplx> zeros;  // repeated by multiplicity
  double gamma = 0.0;
  Tail tail;

  double dphi(double s) const {
    double v = gamma;
    for (cplx z : zeros) v += z.imag() / std::norm(s - z);
    v += tail.integrate([s](double x, double y) { return y / ((s - x) * (s - x) + y * y); });
    return v;
  }

  // \int_a^b dphi
  double integral(double a, double b) const {
    auto prim = [](double s, double x, double y) { return std::atan((s - x) / y); };
    double v = gamma * (b - a);
    for (cplx z : zeros) v += prim(b, z.real(), z.imag()) - prim(a, z.real(), z.imag());
    v += tail.integrate([&](double x, double y) { return prim(b, x, y) - prim(a, x, y); });
    return v;
  }
};

Tail fit_tail(const std::vector<cplx>& zeros, double gamma) {
  Tail t;
  if (!(gamma > 0)) return t;
  std::vector<double> lx, ly;
  double rp = 0.0, rm = 0.0;
  for (cplx z : zeros) {
    rp = std::max(rp, z.real());
    rm = std::max(rm, -z.real());
    if (std::abs(z.real()) > 3.0 / gamma) {
      lx.push_back(std::log(std::abs(z.real())));
      ly.push_back(-z.imag());
    }
  }
  if (lx.size() < 3) return t;
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= lx.size();
  my /= lx.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  if (!(sxx > 0)) return t;
  t.A = sxy / sxx;
  t.B = my - t.A * mx;
  t.density = gamma / pi;
  t.t_plus = rp + pi / (2.0 * gamma);
  t.t_minus = rm + pi / (2.0 * gamma);
  t.active = true;
  return t;
}

// two-point extrapolation of L + c/Z
double richardson(double Z1, double I1, double Z2, double I2) { return (Z1 * I1 - Z2 * I2) / (Z1 - Z2); }

}  // namespace

PhaseProfile phase_profile(const ResonanceSet& R, double gamma, BoundaryParam alpha, const Grid& grid,
                           double r_cut, double z_limit, const PhaseOptions& opts) {
  Model m;
  m.gamma = gamma;
  for (const auto& e : R.entries)
    if (std::abs(e.z) <= r_cut)
      for (int k = 0; k < e.multiplicity; ++k) m.zeros.push_back(e.z);
  if (opts.tail == PhaseTail::Continuum) m.tail = fit_tail(m.zeros, gamma);

  PhaseProfile out;
  out.grid = grid;
  out.r_cut = r_cut;
  double Z1 = z_limit > 0 ? z_limit : 0.5 * r_cut;
  if (!(Z1 > 0)) Z1 = 1.0;
  // Z2 differs from Z1 by whole zero spacings so both sit at the same oscillation phase
  double Z2 = 0.5 * Z1;
  if (gamma > 0) {
    const double spacing = pi / gamma;
    const double cand = Z1 - std::round(0.5 * Z1 / spacing) * spacing;
    if (cand > 0.25 * Z1 && cand < 0.9 * Z1) Z2 = cand;
  }
  out.z_limit_1 = Z1;
  out.z_limit_2 = Z2;

  const double a = alpha.alpha;
  out.phi0_plus = -a - richardson(Z1, m.integral(0.0, Z1), Z2, m.integral(0.0, Z2));
  out.phi0_minus = -a + richardson(Z1, m.integral(-Z1, 0.0), Z2, m.integral(-Z2, 0.0));
  out.phi0 = 0.5 * (out.phi0_plus + out.phi0_minus);
  out.disagreement = std::abs(out.phi0_plus - out.phi0_minus);
  out.flagged = out.disagreement > opts.agreement_tol;

  out.phi.reserve(static_cast<std::size_t>(grid.nodes()));
  out.dphi.reserve(static_cast<std::size_t>(grid.nodes()));
  for (int j = 0; j < grid.nodes(); ++j) {
    const double s = grid.node(j);
    out.dphi.push_back(m.dphi(s));
    out.phi.push_back(out.phi0 + m.integral(0.0, s));
  }
  return out;
}

}  // namespace resdirac
