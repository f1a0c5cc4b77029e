#include "resdirac/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "resdirac/numerics.hpp"

namespace resdirac {

Eigen::Matrix2d Hamiltonian::at(int j) const {
  const std::size_t k = static_cast<std::size_t>(std::min(j, grid.n));
  Eigen::Matrix2d H;
  H << a[k], b[k], b[k], (1.0 + b[k] * b[k]) / a[k];
  return H;
}

MatrixPotential matrix_potential(const Potential& q) {
  MatrixPotential V;
  V.gamma = q.gamma;
  V.grid = q.samples.grid;
  for (const cplx& c : q.samples.values) {
    V.q1.push_back(c.imag());
    V.q2.push_back(-c.real());
  }
  return V;
}

namespace {

Matrix2C cell_exp(double q1, double q2, cplx z, double h) {
  Matrix2C B;
  B << q2, -(z + q1), z - q1, -q2;
  const cplx nu = std::sqrt(cplx(q1 * q1 + q2 * q2) - z * z);
  const cplx x = nu * h;
  cplx sh;  // sinh(nu h) / nu
  if (std::abs(x) < 1e-4) {
    const cplx x2 = x * x;
    sh = h * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
  } else {
    sh = std::sinh(x) / nu;
  }
  return std::cosh(x) * Matrix2C::Identity() + sh * B;
}

}  // namespace

FundamentalMatrix fundamental_matrix(const Potential& q, cplx z, double im_cap_factor) {
  if (q.carrier != 0.0) throw ValidationError("carrier", "canonical conversion needs a carrier-free potential");
  if (std::abs(z.imag()) > im_cap_factor / q.gamma)
    throw ValidationError("im_cap", "|Im z| exceeds the cap " + std::to_string(im_cap_factor / q.gamma));
  const MatrixPotential V = matrix_potential(q);
  FundamentalMatrix F;
  F.z = z;
  F.grid = q.samples.grid;
  F.M.reserve(static_cast<std::size_t>(q.n() + 1));
  Matrix2C M = Matrix2C::Identity();
  F.M.push_back(M);
  for (int j = 0; j < q.n(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    M = cell_exp(V.q1[k], V.q2[k], z, q.h()) * M;
    if (!M.allFinite()) throw NumericalError("fundamental matrix overflow");
    F.M.push_back(M);
  }
  return F;
}

Hamiltonian hamiltonian_from_potential(const Potential& q) {
  const FundamentalMatrix F = fundamental_matrix(q, 0.0);
  Hamiltonian H;
  H.gamma = q.gamma;
  H.grid = q.samples.grid;
  for (const auto& M : F.M) {
    const Eigen::Matrix2d r = M.real();
    const Eigen::Matrix2d G = r.transpose() * r;
    H.a.push_back(G(0, 0));
    H.b.push_back(G(0, 1));
  }
  return H;
}

Potential potential_from_hamiltonian(const Hamiltonian& H) {
  const int n = H.grid.n;
  const double h = H.grid.h;
  if (static_cast<int>(H.a.size()) != n + 1 || static_cast<int>(H.b.size()) != n + 1)
    throw ValidationError("hamiltonian", "sample count must equal node count");
  for (double a : H.a)
    if (!(a > 0)) throw ValidationError("hamiltonian", "entry a must be positive");
  std::vector<cplx> v(static_cast<std::size_t>(n + 1), cplx{});
  double angle = 0.0;
  for (int j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    const double am = 0.5 * (H.a[k] + H.a[k + 1]);
    const double bm = 0.5 * (H.b[k] + H.b[k + 1]);
    const double da = (H.a[k + 1] - H.a[k]) / h;
    const double db = (H.b[k + 1] - H.b[k]) / h;
    const double p = da / am;
    const double qq = (am * db - da * bm) / am;
    const double r = angle + 0.5 * h * qq;
    angle += h * qq;
    const double q1 = -0.5 * (qq * std::cos(r) + p * std::sin(r));
    const double q2 = 0.5 * (p * std::cos(r) - qq * std::sin(r));
    v[k] = cplx(-q2, q1);
  }
  return Potential(H.gamma, std::move(v));
}

Eigen::Vector2cd boundary_solution(const Potential& q, BoundaryParam alpha, cplx z) {
  const FundamentalMatrix F = fundamental_matrix(q, z);
  const int n = q.n();
  return F.phi(n) * std::cos(alpha.alpha) - F.theta(n) * std::sin(alpha.alpha);
}

cplx hermite_biehler(const Potential& q, cplx z) {
  const FundamentalMatrix F = fundamental_matrix(q, z);
  const Eigen::Vector2cd p = F.phi(q.n());
  return p(0) - I * p(1);
}

ClassReport validate_class(const Hamiltonian& H, double tol) {
  ClassReport r;
  r.cls = "G";
  double amin = H.a.empty() ? 0.0 : H.a[0];
  double det_dev = 0.0;
  for (std::size_t k = 0; k < H.a.size(); ++k) {
    amin = std::min(amin, H.a[k]);
    if (H.a[k] > 0) det_dev = std::max(det_dev, std::abs(H.at(static_cast<int>(k)).determinant() - 1.0));
  }
  r.checks.push_back({"a > 0", amin > 0, amin});
  r.checks.push_back({"det H = 1", det_dev <= tol, det_dev});
  const double d0 = H.a.empty() || !(H.a[0] > 0) ? 1.0 : (H.at(0) - Eigen::Matrix2d::Identity()).norm();
  r.checks.push_back({"H(0) = I", d0 <= tol, d0});
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < H.a.size() && amin > 0; ++k) {
    const int j = static_cast<int>(k);
    s += (H.at(j + 1) - H.at(j)).squaredNorm() / H.grid.h;
  }
  const double norm = std::sqrt(s);
  r.checks.push_back({"finite norm of H'", std::isfinite(norm), norm});
  return r;
}

}  // namespace resdirac
