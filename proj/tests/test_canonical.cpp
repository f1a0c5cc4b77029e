#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "resdirac/resdirac.hpp"

using namespace resdirac;

namespace {

const std::vector<cplx> zgrid{{0.0, 0.0}, {1.5, -0.5}, {-2.0, 0.3}, {4.0, 1.0}, {-0.7, -2.0}, {7.0, 0.0}};

Potential smooth(int n) {
  return sample_function(1.0, n, [](double x) { return cplx(std::cos(2.0 * x) - 0.3, 0.8 * std::sin(3.0 * x)); });
}

}  // namespace

TEST_CASE("matrix potential") {
  const MatrixPotential z = matrix_potential(constant_potential(1.0, 8, 0.0));
  for (std::size_t j = 0; j < z.q1.size(); ++j) CHECK((z.q1[j] == 0.0 && z.q2[j] == 0.0));
  const MatrixPotential i = matrix_potential(constant_potential(1.0, 8, I));
  for (std::size_t j = 0; j + 1 < i.q1.size(); ++j) CHECK((i.q1[j] == 1.0 && i.q2[j] == 0.0));
  const Potential q = random_piecewise(6, {1.0, 64, 8, 2.0});
  const MatrixPotential v = matrix_potential(q);
  for (std::size_t j = 0; j < v.q1.size(); ++j) CHECK(cplx(-v.q2[j], v.q1[j]) == q.samples.values[j]);
}

TEST_CASE("fundamental matrix") {
  const FundamentalMatrix m0 = fundamental_matrix(constant_potential(1.0, 16, 0.0), 0.0);
  for (const auto& M : m0.M) CHECK((M - Matrix2C::Identity()).cwiseAbs().maxCoeff() == 0.0);

  // q = 0: u' = z J^{-1} u is a rotation
  for (cplx z : zgrid) {
    const FundamentalMatrix m = fundamental_matrix(constant_potential(1.0, 32, 0.0), z);
    for (int j = 0; j <= 32; ++j) {
      const cplx t = z * m.grid.node(j);
      Matrix2C R;
      R << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      CHECK((m.M[static_cast<std::size_t>(j)] - R).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  // M(x, z) = T f(x, z) f(0, z)^{-1} T^{-1}
  const Potential q = random_piecewise(8, {1.0, 128, 8, 2.0});
  Matrix2C T;
  T << I, -I, 1.0, 1.0;
  T /= std::sqrt(2.0);
  const Matrix2C Ti = T.inverse();
  for (cplx z : zgrid) {
    const auto f = jost_solution(q, z);
    const FundamentalMatrix m = fundamental_matrix(q, z);
    const Matrix2C f0i = f[0].inverse();
    double err = 0.0;
    for (int j = 0; j <= 128; ++j) {
      const Matrix2C ref = T * f[static_cast<std::size_t>(j)] * f0i * Ti;
      err = std::max(err, (m.M[static_cast<std::size_t>(j)] - ref).cwiseAbs().maxCoeff());
    }
    CHECK(err < 1e-8);
  }
  CHECK_THROWS_AS(fundamental_matrix(shift_potential(q, 0.5), 1.0), ValidationError);
}

TEST_CASE("Hamiltonian of a potential") {
  const Hamiltonian h0 = hamiltonian_from_potential(constant_potential(1.0, 16, 0.0));
  for (int j = 0; j <= 16; ++j) CHECK((h0.at(j) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  const Hamiltonian hr = hamiltonian_from_potential(random_piecewise(12, {1.0, 256, 8, 2.0}));
  for (int j = 0; j <= 256; ++j) CHECK(std::abs(hr.at(j).determinant() - 1.0) < 1e-9);
  CHECK(validate_class(hr).pass());

  // q = 1: r(x) = exp(-x J^{-1} V) with V = ((0, -1), (-1, 0))
  const Hamiltonian h1 = hamiltonian_from_potential(constant_potential(1.0, 64, 1.0));
  oracle::M2 JV;
  JV << 0.0, -1.0, 1.0, 0.0;
  oracle::M2 V;
  V << 0.0, -1.0, -1.0, 0.0;
  JV = JV * V;
  for (int j = 0; j <= 64; ++j) {
    const oracle::M2 r = oracle::expm(JV, -h1.grid.node(j));
    const oracle::M2 H = r.transpose() * r;
    CHECK(std::abs(H(0, 0) - h1.a[static_cast<std::size_t>(j)]) < 1e-8);
    CHECK(std::abs(H(0, 1) - h1.b[static_cast<std::size_t>(j)]) < 1e-8);
  }
}

TEST_CASE("potential of a Hamiltonian") {
  Hamiltonian id;
  id.grid = make_grid(0.0, 1.0, 32);
  id.a.assign(33, 1.0);
  id.b.assign(33, 0.0);
  for (const auto& v : potential_from_hamiltonian(id).samples.values) CHECK(std::abs(v) < 1e-15);

  // diagonal H: q1 = 0, q2 = a'/(2a); with a = e^{sin 2x}, q2 = cos 2x
  const int n = 1024;
  Hamiltonian d;
  d.grid = make_grid(0.0, 1.0, n);
  for (int j = 0; j <= n; ++j) {
    d.a.push_back(std::exp(std::sin(2.0 * d.grid.node(j))));
    d.b.push_back(0.0);
  }
  const MatrixPotential v = matrix_potential(potential_from_hamiltonian(d));
  double e1 = 0.0, e2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    e1 = std::max(e1, std::abs(v.q1[k]));
    e2 = std::max(e2, std::abs(v.q2[k] - std::cos(2.0 * (j + 0.5) / n)));
  }
  CHECK(e1 < 1e-12);
  CHECK(e2 < 1e-4);

  for (const Potential& q : {constant_potential(1.0, 1024, 1.0), smooth(1024)}) {
    const Potential back = potential_from_hamiltonian(hamiltonian_from_potential(q));
    double e = 0.0;
    for (int j = 0; j < q.n(); ++j) e = std::max(e, std::abs(back.cell(j) - q.cell(j)));
    CHECK(e < 1e-4);
  }
}

TEST_CASE("boundary solution identity") {
  const Potential q1 = constant_potential(1.0, 64, 1.0);
  const Potential qs = smooth(256);
  for (const Potential* q : {&q1, &qs}) {
    for (cplx z : zgrid) {
      const FundamentalMatrix m = fundamental_matrix(*q, z);
      const auto phi = m.phi(q->n());
      const auto theta = m.theta(q->n());
      const cplx e = std::exp(I * q->gamma * z);
      CHECK(std::abs(jost_function(*q, BoundaryParam(0.0), z) - e * (phi(1) + I * phi(0))) < 1e-8);
      CHECK(std::abs(jost_function(*q, BoundaryParam(pi / 2), z) - e * (-theta(1) - I * theta(0))) < 1e-8);
      for (double al : {0.4, 1.3, 2.9}) {
        const BoundaryParam a(al);
        const auto u = boundary_solution(*q, a, z);
        CHECK(std::abs(jost_function(*q, a, z) - e * (u(1) + I * u(0))) < 1e-8);
      }
    }
  }
  const auto u = boundary_solution(q1, BoundaryParam(0.4), cplx(1.5, -0.5));
  CHECK(std::abs(jost_function(q1, BoundaryParam(0.4), cplx(1.5, -0.5)) -
                 std::exp(I * cplx(1.5, -0.5)) * (u(1) + I * u(0))) < 1e-8);
}

TEST_CASE("Hermite-Biehler function") {
  const Potential zero = constant_potential(1.0, 8, 0.0);
  const Potential one = constant_potential(1.0, 64, 1.0);
  for (const Potential* q : {&zero, &one})
    for (cplx z : zgrid)
      CHECK(std::abs(hermite_biehler(*q, z) + I * std::exp(-I * q->gamma * z) * jost_function(*q, BoundaryParam(0.0), z)) <
            1e-8);

  int checked = 0;
  for (double x = -20.0; x <= 20.0; x += 0.5)
    for (double y : {0.05, 0.5, 2.0, 5.0}) {
      const cplx z(x, y);
      CHECK(std::abs(hermite_biehler(one, z)) > std::abs(hermite_biehler(one, std::conj(z))));
      ++checked;
    }
  CHECK(checked > 300);

  SearchRegion r;
  r.re_min = -10;
  r.re_max = 10;
  r.im_min = -4;
  r.im_max = 0;
  const ResonanceSearch ze = find_resonances([&](cplx z) { return hermite_biehler(one, z); }, r, 1e-11);
  const ResonanceSearch zp = find_resonances(jost_evaluator(one, BoundaryParam(0.0)), r, 1e-11);
  REQUIRE(ze.zeros.size() == zp.zeros.size());
  std::vector<cplx> zs;
  for (const auto& e : zp.zeros.entries) zs.push_back(e.z);
  for (const auto& e : ze.zeros.entries) CHECK(oracle::nearest(zs, e.z) < 1e-6);
}

TEST_CASE("Hamiltonian validator") {
  Hamiltonian h = hamiltonian_from_potential(smooth(128));
  CHECK(validate_class(h).pass());
  h.a[7] *= -1.0;
  CHECK_FALSE(validate_class(h).pass());
  Hamiltonian s = hamiltonian_from_potential(smooth(128));
  s.a[0] = 1.5;
  CHECK_FALSE(validate_class(s).pass());
}
