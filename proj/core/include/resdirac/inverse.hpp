#pragma once

#include <vector>

#include "resdirac/forward.hpp"
#include "resdirac/types.hpp"

namespace resdirac {

struct WienerInverse {
  Sampled h;  // on [0, T_h]
  BoundaryParam alpha;
  double tail_mass = 0.0;  // L1 mass of h on the last gamma-window over the total L1 mass
};

struct WienerOptions {
  double tail_tol = 1e-2;  // relative tail mass that triggers "increase T_h"; <= 0 disables
};

// Off-diagonal Omega(x) = [[0, Phi(x)], [conj Phi(x), 0]] with Phi(x) = F(-x), kept as
// samples of Phi on [-t_max, gamma]; Omega vanishes for x > gamma. Phi(0) is the limit from x > 0.
struct OmegaKernel {
  Sampled phi;
  double gamma = 1.0;

  cplx offdiag(double x) const;  // Phi(x), zero beyond the sampled range
};

// Rows of Gamma(x, .) on the nodes of a grid on [0, gamma - x].
struct GlmRows {
  double x = 0.0;
  Grid grid;
  std::vector<cplx> g11, g12, g21, g22;
  double residual = 0.0;  // max relative linear residual over the two row systems
};

struct RecoveredPotential {
  Potential q;
  double support = 0.0;    // measured support supremum
  double clamp_max = 0.0;  // largest |q| set to zero beyond the support
};

struct SupportReport {
  double support_q = 0.0;
  double support_g = 0.0;
  double support_F = 0.0;  // -inf supp F
  double cell = 0.0;
  bool degenerate = false;
  bool pass = false;
};

WienerInverse invert_wiener(const JostRep& rep, double T_h, const WienerOptions& opts = {});

// F = e^{i alpha}(h + r) + r*h with r(s) = conj g(-s), sampled on [-gamma, T_max] with the
// spacing of g. The node at s = 0 carries the mean of the one-sided limits, the node at
// -gamma the inside limit.
ScatteringRep scattering_kernel(const JostRep& rep, const WienerInverse& h, double T_max);

// S(z) = e^{2 i alpha} + \int F(s) e^{2 i z s} ds by trapezoid quadrature.
cplx eval_scattering(const ScatteringRep& S, double z);

OmegaKernel omega_kernel(const ScatteringRep& S);

// Dense Nystrom solve of the GLM equation at one x, trapezoid weights on `grid`.
GlmRows solve_glm(const OmegaKernel& om, double x, const Grid& grid);

// q(x) = -Gamma_12(x, 0) on the cells of `grid`. The equation is solved at cell midpoints
// with a block-Toeplitz recursion over all layers at once (O(n^2) total); q_j is the
// value for cell j. F is read at the midpoints, exactly when its spacing is half the cell.
RecoveredPotential recover_potential(const ScatteringRep& S, const Grid& grid);

// Reference for recover_potential: one dense LU per layer (O(n^4)); small n only.
std::vector<cplx> recover_cells_dense(const ScatteringRep& S, const Grid& grid);

// invert_wiener + scattering_kernel + recover_potential.
RecoveredPotential recover_from_jost(const JostRep& rep, const Grid& grid, double t_max_factor = 16.0);

// Scattering representation of q through the characteristics kernel on a twice finer grid.
ScatteringRep forward_scattering(const Potential& q, BoundaryParam alpha, double t_max_factor = 16.0);

// sup supp q = -inf supp F = sup supp g within one cell.
SupportReport support_identities(const Potential& q, const JostRep& rep, const ScatteringRep& S,
                                 double floor_rel = 1e-12);

}  // namespace resdirac
