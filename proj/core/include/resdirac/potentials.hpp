#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "resdirac/types.hpp"

namespace resdirac {

Potential constant_potential(double gamma, int n, cplx c);

// Right-continuous sampling of a piecewise-constant function with breakpoints
// 0 = b_0 < b_1 < ... < b_m = gamma and values v_0..v_{m-1}; q(gamma) = 0.
Potential piecewise_constant(double gamma, int n, const std::vector<double>& breaks,
                             const std::vector<cplx>& values);

Potential sample_function(double gamma, int n, const std::function<cplx(double)>& f);

struct RandomPotentialSpec {
  double gamma = 1.0;
  int n = 1024;
  int pieces = 8;
  double amplitude = 2.0;  // sup norm bound
};

// Seeded potential with equal-width pieces and values uniform in the disk of
// radius `amplitude`; the last piece is kept away from zero so that the support
// reaches gamma.
Potential random_piecewise(std::uint64_t seed, const RandomPotentialSpec& shape);

// Same cell model on a grid with `factor` times more cells.
Potential refine(const Potential& q, int factor);

// Cell values with the carrier removed: p_j = q_j exp(-2 i kappa x_j).
std::vector<cplx> demodulated_cells(const Potential& q);

// Right end of the last cell with |q_j| above floor_rel * max|q|; zero if q vanishes.
double support_supremum(const Potential& q, double floor_rel = 1e-12);

// Largest |q_j| over the cells.
double sup_norm(const Potential& q);

}  // namespace resdirac
