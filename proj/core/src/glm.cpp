#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "resdirac/inverse.hpp"
#include "resdirac/numerics.hpp"
#include "resdirac/potentials.hpp"

namespace resdirac {

namespace {

using Block = Eigen::Matrix2cd;

// Phi((p + 1/2) h) for p = 0..n-1, read from F(-y).
std::vector<cplx> midpoint_phi(const ScatteringRep& S, const Grid& grid) {
  std::vector<cplx> phi(static_cast<std::size_t>(grid.n));
  for (int p = 0; p < grid.n; ++p) phi[static_cast<std::size_t>(p)] = interpolate(S.F, -(p + 0.5) * grid.h);
  return phi;
}

RecoveredPotential finish(const std::vector<cplx>& cells, const Grid& grid, double gamma) {
  std::vector<cplx> v(cells);
  v.push_back(cells.empty() ? cplx{} : cells.back());
  RecoveredPotential out;
  out.q = Potential(gamma, std::move(v));
  out.support = support_supremum(out.q);
  // cells past the measured support sit below the amplitude floor; zero them
  const int last = static_cast<int>(std::lround(out.support / grid.h));
  for (int j = last; j <= grid.n; ++j) {
    cplx& c = out.q.samples.values[static_cast<std::size_t>(j)];
    if (j < grid.n) out.clamp_max = std::max(out.clamp_max, std::abs(c));
    if (j < grid.n || last < grid.n) c = 0.0;
  }
  return out;
}

}  // namespace

GlmRows solve_glm(const OmegaKernel& om, double x, const Grid& grid) {
  GlmRows out;
  out.x = x;
  out.grid = grid;
  const int m = grid.n + 1;
  out.g11.assign(static_cast<std::size_t>(m), cplx{});
  out.g12 = out.g21 = out.g22 = out.g11;
  if (x > om.gamma) return out;

  // K(k, j) = w_j Phi(x + s_j + s_k); rows: [[I, conj K], [K, I]]
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(2 * m, 2 * m);
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(2 * m, 2);
  for (int k = 0; k < m; ++k) {
    const double sk = grid.node(k);
    const cplx pk = om.offdiag(x + sk);
    rhs(m + k, 0) = -pk;
    rhs(k, 1) = -std::conj(pk);
    for (int j = 0; j < m; ++j) {
      // Phi drops to zero past gamma; a node sitting on that cut is an endpoint of the integral
      const double arg = x + grid.node(j) + sk;
      const bool cut = std::abs(arg - om.gamma) < 1e-9 * grid.h;
      const double w = (j == 0 || j == m - 1 || cut) ? 0.5 * grid.h : grid.h;
      const cplx v = w * om.offdiag(arg);
      M(m + k, j) = v;
      M(k, m + j) = std::conj(v);
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  const double rc = lu.rcond();
  if (!(rc > 1e-14))
    throw NumericalError("GLM system numerically singular (rcond " + std::to_string(rc) + ")");
  const Eigen::MatrixXcd sol = lu.solve(rhs);
  const Eigen::MatrixXcd res = M * sol - rhs;
  for (int c = 0; c < 2; ++c) {
    const double b = rhs.col(c).norm();
    const double r = res.col(c).norm();
    out.residual = std::max(out.residual, b > 0 ? r / b : r);
  }
  const double cut = om.gamma - x;
  for (int k = 0; k < m; ++k) {
    if (grid.node(k) > cut + 1e-12) continue;  // Gamma vanishes beyond the triangle
    out.g11[static_cast<std::size_t>(k)] = sol(k, 0);
    out.g12[static_cast<std::size_t>(k)] = sol(m + k, 0);
    out.g21[static_cast<std::size_t>(k)] = sol(k, 1);
    out.g22[static_cast<std::size_t>(k)] = sol(m + k, 1);
  }
  return out;
}

std::vector<cplx> recover_cells_dense(const ScatteringRep& S, const Grid& grid) {
  const int n = grid.n;
  const double h = grid.h;
  const auto phi = midpoint_phi(S, grid);
  auto pz = [&](int p) { return p < n ? phi[static_cast<std::size_t>(p)] : cplx{}; };
  std::vector<cplx> cells(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int N = n - i;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(2 * N, 2 * N);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * N);
    for (int k = 0; k < N; ++k) {
      rhs(N + k) = -pz(i + k);
      for (int j = 0; j < N; ++j) {
        const cplx v = (j == 0 ? 0.5 : 1.0) * h * pz(i + j + k);
        M(N + k, j) = v;
        M(k, N + j) = std::conj(v);
      }
    }
    const Eigen::VectorXcd sol = M.partialPivLu().solve(rhs);
    cells[static_cast<std::size_t>(i)] = -sol(N);
  }
  return cells;
}

RecoveredPotential recover_potential(const ScatteringRep& S, const Grid& grid) {
  // Layer N = n - i (equation at x = (i + 1/2) h, unknowns on s = 0..(N-1) h). Ordering the
  // unknowns as (Gamma_11(s_l), Gamma_12(s_{N-1-l})) turns every layer into the leading
  // block of one 2x2-block Toeplitz matrix T, up to two rank-one corrections coming from
  // the half trapezoid weight at s = 0. The first and last scalar rows of T_N^{-1} follow
  // from a two-sided block Levinson recursion; Woodbury adds the corrections.
  const int n = grid.n;
  const double h = grid.h;
  const auto phi = midpoint_phi(S, grid);
  auto a = [&](int m) -> cplx {  // m <= 0
    const int idx = n - 1 + m;
    return idx >= 0 ? h * std::conj(phi[static_cast<std::size_t>(idx)]) : cplx{};
  };
  auto b = [&](int m) -> cplx {  // m >= 0
    const int idx = n - 1 - m;
    return idx >= 0 ? h * phi[static_cast<std::size_t>(idx)] : cplx{};
  };
  auto t = [&](int m) {
    Block B = Block::Zero();
    if (m == 0) {
      B(0, 0) = B(1, 1) = 1.0;
      B(0, 1) = a(0);
      B(1, 0) = b(0);
    } else if (m < 0) {
      B(0, 1) = a(m);
    } else {
      B(1, 0) = b(m);
    }
    return B;
  };

  const Block t0inv = t(0).inverse();
  std::vector<Block> X{t0inv}, Y{t0inv}, Xn, Yn;
  X.reserve(static_cast<std::size_t>(n));
  Y.reserve(static_cast<std::size_t>(n));
  std::vector<cplx> cells(static_cast<std::size_t>(n));

  for (int N = 1; N <= n; ++N) {
    cplx a0r = 0, aLr = 0, a0d = 0, aLd = 0;
    for (int k = 0; k < N; ++k) {
      const cplx rk = -phi[static_cast<std::size_t>(n - 1 - k)];
      const cplx dk = -0.5 * h * std::conj(phi[static_cast<std::size_t>(n - N + k)]);
      a0r += Y[static_cast<std::size_t>(k)](0, 1) * rk;
      aLr += X[static_cast<std::size_t>(k)](1, 1) * rk;
      a0d += Y[static_cast<std::size_t>(k)](0, 0) * dk;
      aLd += X[static_cast<std::size_t>(k)](1, 0) * dk;
    }
    const cplx a0e = 0.5 * h * a0r, aLe = 0.5 * h * aLr;
    Block K;
    K << 1.0 + a0e, a0d, aLe, 1.0 + aLd;
    const Eigen::Vector2cd c = K.inverse() * Eigen::Vector2cd(a0r, aLr);
    const cplx last = aLr - (aLe * c(0) + aLd * c(1));
    cells[static_cast<std::size_t>(n - N)] = -last;
    if (N == n) break;

    Block eps = Block::Zero(), eta = Block::Zero();
    for (int k = 0; k < N; ++k) {
      eps += X[static_cast<std::size_t>(k)] * t(k + 1);
      eta += Y[static_cast<std::size_t>(k)] * t(k - N);
    }
    const Block Id = Block::Identity();
    const Block dx = Id - eps * eta, dy = Id - eta * eps;
    if (std::abs(dx.determinant()) < 1e-14 || std::abs(dy.determinant()) < 1e-14)
      throw NumericalError("GLM layer recursion broke down at layer " + std::to_string(N + 1));
    const Block dxi = dx.inverse(), dyi = dy.inverse();
    Xn.assign(static_cast<std::size_t>(N + 1), Block::Zero());
    Yn.assign(static_cast<std::size_t>(N + 1), Block::Zero());
    for (int k = 0; k <= N; ++k) {
      const Block xs = k >= 1 ? X[static_cast<std::size_t>(k - 1)] : Block::Zero();  // [0, X]
      const Block ys = k < N ? Y[static_cast<std::size_t>(k)] : Block::Zero();       // [Y, 0]
      Xn[static_cast<std::size_t>(k)] = dxi * (xs - eps * ys);
      Yn[static_cast<std::size_t>(k)] = dyi * (ys - eta * xs);
    }
    X.swap(Xn);
    Y.swap(Yn);
  }
  return finish(cells, grid, grid.right);
}

}  // namespace resdirac
