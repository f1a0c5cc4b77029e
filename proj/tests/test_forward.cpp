#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "resdirac/resdirac.hpp"

using namespace resdirac;

namespace {

const std::vector<cplx> sample_z{{2.0, 0.0}, {-3.5, 0.0}, {0.7, -1.2}, {-6.0, -2.5}, {1.0, 0.0},
                                 {0.0, 1.5}, {10.0, -0.5}, {0.2, 0.0}, {-15.0, -3.0}};

double diff(const Matrix2C& a, const oracle::M2& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("free Jost solution") {
  const Potential q = constant_potential(1.0, 16, 0.0);
  for (cplx z : sample_z) CHECK(diff(integrate_jost(q, z).f0, Matrix2C::Identity()) < 1e-12);
  CHECK(std::abs(jost_function(q, BoundaryParam(0.0), 3.0) - 1.0) < 1e-14);
  CHECK(std::abs(jost_function(q, BoundaryParam(pi / 2), cplx(1.0, -2.0)) + I) < 1e-14);
}

TEST_CASE("constant potentials against the eigendecomposition oracle") {
  for (cplx c : {cplx(1.0), cplx(1.0, 0.5), cplx(-0.3, 2.0)}) {
    const Potential q = constant_potential(1.0, 64, c);
    for (cplx z : sample_z) {
      const oracle::M2 f = oracle::jost_piecewise({0.0, 1.0}, {c}, z);
      INFO("c = ", c, " z = ", z);
      CHECK(diff(integrate_jost(q, z).f0, f) < 1e-8 * std::max(1.0, f.cwiseAbs().maxCoeff()));
    }
  }
  const cplx psi = jost_function(constant_potential(1.0, 64, 1.0), BoundaryParam(0.0), 2.0);
  CHECK(std::abs(psi - oracle::psi_constant(1.0, 1.0, 0.0, 2.0)) < 1e-8);
  CHECK(std::abs(psi - oracle::psi_unit(2.0)) < 1e-8);
}

TEST_CASE("two-step potential") {
  const Potential q = piecewise_constant(2.0, 40, {0.0, 0.5, 2.0}, {cplx(1.0, -1.0), cplx(0.4, 0.2)});
  for (cplx z : sample_z) {
    const oracle::M2 f = oracle::jost_piecewise({0.0, 0.5, 2.0}, {cplx(1.0, -1.0), cplx(0.4, 0.2)}, z);
    CHECK(diff(integrate_jost(q, z, 100.0).f0, f) < 1e-8 * std::max(1.0, f.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("jost solution matches RK4 on refined steps") {
  const Potential q = random_piecewise(11, {1.0, 64, 8, 2.0});
  auto cell = [&](double x) { return q.cell(std::min(63, static_cast<int>(std::floor(x * 64)))); };
  for (cplx z : {cplx(1.3, 0.0), cplx(-4.0, -1.0)}) {
    // RK4 with steps nested inside cells; evaluation points never touch a cell edge
    oracle::M2 f = oracle::free_jost(z, 1.0);
    for (int j = 63; j >= 0; --j) {
      const oracle::M2 A = oracle::coefficient(cell((j + 0.5) / 64.0), z);
      const double h = -1.0 / 64 / 50;
      for (int s = 0; s < 50; ++s) {
        const oracle::M2 k1 = A * f, k2 = A * (f + 0.5 * h * k1), k3 = A * (f + 0.5 * h * k2),
                         k4 = A * (f + h * k3);
        f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    CHECK(diff(integrate_jost(q, z).f0, f) < 1e-9);
    CHECK(std::abs(integrate_jost(q, z).f0.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("smooth potential converges at second order") {
  auto qf = [](double x) { return cplx(std::cos(3.0 * x), 0.5 * std::sin(2.0 * x)); };
  const cplx z(2.5, -0.4);
  const oracle::M2 ref = oracle::jost_rk4(qf, 1.0, z, 20000);
  auto err = [&](int n) {
    // midpoint sampling of each cell
    std::vector<cplx> v(static_cast<std::size_t>(n + 1));
    for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = qf((j + 0.5) / n);
    return diff(integrate_jost(Potential(1.0, v), z).f0, ref);
  };
  const double e1 = err(128), e2 = err(256);
  CHECK(e2 < e1);
  CHECK(e1 / e2 > 3.5);
}

TEST_CASE("scattering values") {
  const BoundaryParam a(0.6);
  CHECK(std::abs(scattering_value(constant_potential(1.0, 8, 0.0), a, 1.7) - std::polar(1.0, 1.2)) < 1e-14);
  const Potential q = random_piecewise(4, {1.0, 256, 8, 2.0});
  CHECK(std::abs(std::abs(scattering_value(q, a, 3.7)) - 1.0) < 1e-10);
  const cplx psi = oracle::psi_constant(1.0, 1.0, 0.6, 0.8);
  CHECK(std::abs(scattering_value(constant_potential(1.0, 32, 1.0), a, 0.8) - std::conj(psi) / psi) < 1e-8);
}

TEST_CASE("Im z cap") {
  const Potential q = constant_potential(1.0, 8, 1.0);
  CHECK_THROWS_AS(jost_function(q, BoundaryParam(0.0), cplx(0.0, -60.0)), ValidationError);
  CHECK_NOTHROW(jost_function(q, BoundaryParam(0.0), cplx(0.0, -40.0)));
}

TEST_CASE("kernel bound") {
  const Potential one = constant_potential(1.0, 100, 1.0);
  const KernelBound b = kernel_estimate(one, 0.0);
  CHECK(b.eta == doctest::Approx(1.0));
  CHECK(b.zeta == doctest::Approx(1.0));
  CHECK(b.bound == doctest::Approx(2.0 * std::exp(1.0) - 1.0));
  CHECK(kernel_estimate(one, 1.0).bound == 0.0);
  CHECK(kernel_estimate(one, 2.0).bound == 0.0);
  CHECK(kernel_estimate(constant_potential(1.0, 100, 0.0), 0.3).bound == 0.0);
}

TEST_CASE("characteristics kernel") {
  const BoundaryParam a(0.0);
  const JostRep zero = jost_kernel_characteristics(constant_potential(1.0, 32, 0.0), a);
  for (const auto& v : zero.g.values) CHECK(v == cplx{});
  CHECK(eval_jost(zero, cplx(1.0, 1.0)) == a.phase());

  const Potential q = constant_potential(1.0, 1024, 1.0);
  const JostRep rep = jost_kernel_characteristics(q, a);
  CHECK(std::abs(eval_jost(rep, 0.0) - (a.phase() + quadrature(rep.g))) < 1e-12);
  CHECK(std::abs(eval_jost(rep, cplx(5.0, 0.0)) - jost_function(q, a, 5.0)) < 1e-4);
  CHECK(std::abs(eval_jost(rep, cplx(-1.0, -2.0)) - oracle::psi_constant(1.0, 1.0, 0.0, cplx(-1.0, -2.0))) < 1e-3);
  const SupportReport s = support_identities(q, rep, forward_scattering(q, a));
  CHECK(std::abs(s.support_g - 1.0) <= q.h() * (1 + 1e-9));
}

TEST_CASE("Fourier kernel") {
  const BoundaryParam a(0.0);
  const JostRep zero = jost_kernel(constant_potential(1.0, 64, 0.0), a, 100.0, 2048);
  for (const auto& v : zero.g.values) CHECK(std::abs(v) < 1e-12);

  // band truncation falls like z_max^-2, quadrature of the re-evaluation grows like (h z)^2
  const Potential q = constant_potential(1.0, 2048, 1.0);
  double residual = 0.0;
  const JostRep rep = jost_kernel(q, a, 600.0 * pi, 4096, {}, &residual);
  CHECK(residual < 1e-4);
  CHECK(std::abs(eval_jost(rep, cplx(5.0, 0.0)) - jost_function(q, a, 5.0)) < 1e-4);

  // the characteristics kernel is the second route to the same function
  const JostRep ch = jost_kernel_characteristics(q, a);
  double gap = 0.0;
  for (int j = 1; j < 2048; ++j) {
    if (j % 64) continue;
    gap = std::max(gap, std::abs(rep.g[static_cast<std::size_t>(j)] - ch.g[static_cast<std::size_t>(j)]));
  }
  CHECK(gap < 1e-2);

  // too narrow a band fails the held-out check
  CHECK_THROWS_AS(jost_kernel(q, a, 50.0, 2048), NumericalError);
}
