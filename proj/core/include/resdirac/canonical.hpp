#pragma once

#include <vector>

#include <Eigen/Core>

#include "resdirac/forward.hpp"
#include "resdirac/types.hpp"
#include "resdirac/validate.hpp"

namespace resdirac {

// V_q = ((q1, q2), (q2, -q1)) with q = -q2 + i q1, one value per sample.
struct MatrixPotential {
  double gamma = 1.0;
  Grid grid;
  std::vector<double> q1, q2;
};

// Columns theta, phi of M(x, z) at every node; M(0, z) = I.
struct FundamentalMatrix {
  cplx z;
  Grid grid;
  std::vector<Matrix2C> M;

  Eigen::Vector2cd theta(int j) const { return M[static_cast<std::size_t>(j)].col(0); }
  Eigen::Vector2cd phi(int j) const { return M[static_cast<std::size_t>(j)].col(1); }
};

// H = ((a, b), (b, (1 + b^2) / a)) at the nodes of [0, gamma], constant afterwards.
struct Hamiltonian {
  double gamma = 1.0;
  Grid grid;
  std::vector<double> a, b;

  Eigen::Matrix2d at(int j) const;
};

MatrixPotential matrix_potential(const Potential& q);

// J u' + V_q u = z u, J = ((0, 1), (-1, 0)), through exact cell exponentials.
FundamentalMatrix fundamental_matrix(const Potential& q, cplx z, double im_cap_factor = default_im_cap_factor);

// H = r^T r with r = M(., 0).
Hamiltonian hamiltonian_from_potential(const Potential& q);

// Inverse map from a, b. Derivatives are differenced at cell midpoints and the angle
// integral is accumulated there, so each recovered cell value is centred on its cell.
Potential potential_from_hamiltonian(const Hamiltonian& H);

// u(gamma, z, alpha) = phi cos alpha - theta sin alpha.
Eigen::Vector2cd boundary_solution(const Potential& q, BoundaryParam alpha, cplx z);

// E(z) = phi_1(gamma, z) - i phi_2(gamma, z).
cplx hermite_biehler(const Potential& q, cplx z);

// det H = 1, H(0) = I, a > 0, finite discrete norm of H'.
ClassReport validate_class(const Hamiltonian& H, double tol = 1e-9);

}  // namespace resdirac
