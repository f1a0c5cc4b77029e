#pragma once

#include <functional>

#include <Eigen/Core>

#include "resdirac/types.hpp"

namespace resdirac {

using Matrix2C = Eigen::Matrix2cd;
using Evaluator = std::function<cplx(cplx)>;

inline constexpr double default_im_cap_factor = 50.0;  // |Im z| <= factor / gamma

struct JostBoundaryValue {
  cplx z;
  Matrix2C f0;
};

struct KernelBound {
  double x = 0.0;
  double eta = 0.0;   // \int_x^\infty |q|
  double zeta = 0.0;  // (\int_x^\infty |q|^2)^{1/2}
  double bound = 0.0; // e^eta (1 + zeta) - 1
};

// f(0,z) for f' = Q f + i z sigma_3 f with f(x) = e^{i z x sigma_3} for x >= gamma.
// Each cell (and each run of equal cells) is propagated by its exact 2x2 exponential.
JostBoundaryValue integrate_jost(const Potential& q, cplx z,
                                 double im_cap_factor = default_im_cap_factor);

// f(x_j, z) at every node, x_0 = 0 ... x_n = gamma.
std::vector<Matrix2C> jost_solution(const Potential& q, cplx z,
                                    double im_cap_factor = default_im_cap_factor);

cplx jost_function(const Potential& q, BoundaryParam alpha, cplx z,
                   double im_cap_factor = default_im_cap_factor);

// conj(psi)/psi at real z.
cplx scattering_value(const Potential& q, BoundaryParam alpha, double z);

Evaluator jost_evaluator(const Potential& q, BoundaryParam alpha,
                         double im_cap_factor = default_im_cap_factor);

struct FourierKernelOptions {
  double residual_tol = 1e-4;   // held-out check on the real axis
  double window_fraction = 0.1; // raised-cosine taper on the outer part of the band
  bool check_residual = true;
};

// Kernel g of psi - e^{-i alpha} from m samples of psi on [-z_max, z_max], by a windowed
// discrete inverse Fourier transform onto the potential grid.
// When `residual` is given it receives the held-out max error of the re-evaluated psi.
JostRep jost_kernel(const Potential& q, BoundaryParam alpha, double z_max, int m,
                    const FourierKernelOptions& opts = {}, double* residual = nullptr);

// Kernel g(s) = e^{-i alpha} Gamma_11(0,s) - e^{i alpha} Gamma_21(0,s) from the
// transformation-operator equations, integrated along characteristics on the
// potential grid with explicit tracking of the jumps carried by piecewise-constant q.
JostRep jost_kernel_characteristics(const Potential& q, BoundaryParam alpha);

cplx eval_jost(const JostRep& rep, cplx z, double im_cap_factor = default_im_cap_factor);
Evaluator jost_rep_evaluator(const JostRep& rep);

KernelBound kernel_estimate(const Potential& q, double x);

}  // namespace resdirac
