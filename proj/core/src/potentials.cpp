#include "resdirac/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "resdirac/numerics.hpp"

namespace resdirac {

Potential::Potential(double g, std::vector<cplx> node_values, double kappa)
    : gamma(g), carrier(kappa) {
  if (!(g > 0) || !std::isfinite(g)) throw ValidationError("potential", "gamma must be positive");
  if (node_values.size() < 2) throw ValidationError("potential", "potential needs n >= 1 cells");
  if (!std::isfinite(kappa)) throw ValidationError("potential", "carrier must be finite");
  const int n = static_cast<int>(node_values.size()) - 1;
  samples = Sampled(make_grid(0.0, g, n), std::move(node_values));
}

BoundaryParam::BoundaryParam(double a) : alpha(a) {
  if (!std::isfinite(a) || a < 0.0 || a >= pi)
    throw ValidationError("alpha", "alpha must lie in [0, pi)");
}

Potential constant_potential(double gamma, int n, cplx c) {
  return Potential(gamma, std::vector<cplx>(static_cast<std::size_t>(n + 1), c));
}

Potential piecewise_constant(double gamma, int n, const std::vector<double>& breaks,
                             const std::vector<cplx>& values) {
  if (breaks.size() != values.size() + 1)
    throw ValidationError("potential", "need one more breakpoint than values");
  const Grid g = make_grid(0.0, gamma, n);
  std::vector<cplx> v(static_cast<std::size_t>(n + 1), cplx{});
  for (int j = 0; j < n; ++j) {
    // midpoint lookup makes node-aligned breakpoints land exactly on cell edges
    const double xm = g.node(j) + 0.5 * g.h;
    for (std::size_t k = 0; k < values.size(); ++k)
      if (xm >= breaks[k] && xm < breaks[k + 1]) {
        v[static_cast<std::size_t>(j)] = values[k];
        break;
      }
  }
  return Potential(gamma, std::move(v));
}

Potential sample_function(double gamma, int n, const std::function<cplx(double)>& f) {
  const Grid g = make_grid(0.0, gamma, n);
  std::vector<cplx> v(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) v[static_cast<std::size_t>(j)] = f(g.node(j));
  return Potential(gamma, std::move(v));
}

namespace {
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace

Potential random_piecewise(std::uint64_t seed, const RandomPotentialSpec& shape) {
  if (shape.pieces < 1 || shape.n % shape.pieces != 0)
    throw ValidationError("potential", "cell count must be a multiple of the piece count");
  std::mt19937_64 rng(seed);
  std::vector<cplx> values;
  std::vector<double> breaks;
  for (int k = 0; k <= shape.pieces; ++k) breaks.push_back(shape.gamma * k / shape.pieces);
  for (int k = 0; k < shape.pieces; ++k) {
    double u = unit_uniform(rng);
    const double t = 2.0 * pi * unit_uniform(rng);
    if (k + 1 == shape.pieces) u = 0.04 + 0.96 * u;
    values.push_back(std::polar(shape.amplitude * std::sqrt(u), t));
  }
  return piecewise_constant(shape.gamma, shape.n, breaks, values);
}

Potential refine(const Potential& q, int factor) {
  if (factor < 1) throw ValidationError("potential", "refinement factor must be >= 1");
  const int n = q.n();
  std::vector<cplx> v(static_cast<std::size_t>(n * factor + 1));
  const double h = q.h(), hf = h / factor;
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < factor; ++r) {
      // carry the in-cell phase ramp so the refined samples describe the same function
      const cplx ramp = std::polar(1.0, 2.0 * q.carrier * r * hf);
      v[static_cast<std::size_t>(j * factor + r)] = q.cell(j) * ramp;
    }
  v.back() = q.samples.values.back();
  return Potential(q.gamma, std::move(v), q.carrier);
}

std::vector<cplx> demodulated_cells(const Potential& q) {
  const int n = q.n();
  std::vector<cplx> p(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    p[static_cast<std::size_t>(j)] =
        q.carrier == 0.0 ? q.cell(j) : q.cell(j) * std::polar(1.0, -2.0 * q.carrier * q.samples.grid.node(j));
  }
  return p;
}

double sup_norm(const Potential& q) {
  double m = 0.0;
  for (int j = 0; j < q.n(); ++j) m = std::max(m, std::abs(q.cell(j)));
  return m;
}

double support_supremum(const Potential& q, double floor_rel) {
  const double m = sup_norm(q);
  if (m == 0.0) return 0.0;
  for (int j = q.n() - 1; j >= 0; --j)
    if (std::abs(q.cell(j)) > floor_rel * m) return q.samples.grid.node(j + 1);
  return 0.0;
}

}  // namespace resdirac
