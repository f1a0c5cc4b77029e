#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "oracles.hpp"
#include "resdirac/resdirac.hpp"

using namespace resdirac;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

SearchRegion box(double re0, double re1, double im0) {
  SearchRegion r;
  r.re_min = re0;
  r.re_max = re1;
  r.im_min = im0;
  r.im_max = 0.0;
  return r;
}

std::vector<cplx> points_of(const ResonanceSet& R) {
  std::vector<cplx> out;
  for (const auto& e : R.entries) out.push_back(e.z);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Potential smooth(int n) {
  return sample_function(1.0, n, [](double x) { return cplx(std::cos(2.0 * x) - 0.3, 0.8 * std::sin(3.0 * x)); });
}

Potential smooth2(int n) {
  return sample_function(1.0, n, [](double x) { return cplx(1.5 * std::exp(-4.0 * (x - 0.4) * (x - 0.4)), 0.5 * x); });
}

const std::vector<cplx> zgrid{{0.0, 0.0}, {1.5, -0.5}, {-2.0, 0.3}, {4.0, 1.0}, {-0.7, -2.0}, {7.0, 0.0}, {-11.0, -1.2}};

// q = 1, alpha = 0: library zeros on the large box shared by criteria 4, 6, 7
const Potential& unit_potential() {
  static const Potential q = constant_potential(1.0, 2048, 1.0);
  return q;
}

const ResonanceSet& unit_zeros() {
  static const ResonanceSet R =
      find_resonances(jost_evaluator(unit_potential(), BoundaryParam(0.0)), box(-130, 130, -8), 1e-10).zeros;
  return R;
}

void oracle_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  double err = 0.0;
  for (cplx c : {cplx(1.0, 0.0), cplx(1.0, 0.5)}) {
    const Potential q = constant_potential(1.0, 2048, c);
    for (int i = 0; i < 41; ++i)
      for (int k = 0; k < 13; ++k) {
        const cplx z(-20.0 + i, -3.0 + 0.25 * k);
        err = std::max(err, std::abs(jost_function(q, BoundaryParam(0.0), z) - oracle::psi_constant(c, 1.0, 0.0, z)));
      }
  }
  const double t = seconds_since(t0);
  report(1, "oracle agreement", err < 1e-8 && t < 10.0, fmt("max error %.2e, runtime %.2f s", err, t));
}

void inverse_round_trip() {
  std::vector<double> e1(20), e2(20);
  parallel_for(20, 4, [&](int s) {
    const BoundaryParam a(0.0);
    const Potential q = random_piecewise(static_cast<std::uint64_t>(s + 1), {1.0, 1024, 8, 2.0});
    const RecoveredPotential r = recover_potential(forward_scattering(q, a), q.samples.grid);
    e1[static_cast<std::size_t>(s)] = relative_cell_l2(r.q.samples.values, q.samples.values, q.h());
    const Potential q2 = refine(q, 2);
    const RecoveredPotential r2 = recover_potential(forward_scattering(q2, a), q2.samples.grid);
    e2[static_cast<std::size_t>(s)] = relative_cell_l2(r2.q.samples.values, q2.samples.values, q2.h());
  });
  double worst = 0.0, worst2 = 0.0;
  bool decreasing = true;
  for (int s = 0; s < 20; ++s) {
    worst = std::max(worst, e1[static_cast<std::size_t>(s)]);
    worst2 = std::max(worst2, e2[static_cast<std::size_t>(s)]);
    decreasing = decreasing && e2[static_cast<std::size_t>(s)] < e1[static_cast<std::size_t>(s)];
  }
  report(2, "inverse round trip", worst <= 1e-2 && decreasing,
         fmt("worst relative error %.2e at n = 1024, %.2e at n = 2048", worst, worst2));
}

void finder_completeness() {
  const ResonanceSearch res =
      find_resonances(jost_evaluator(unit_potential(), BoundaryParam(0.0)), box(-30, 30, -6), 1e-10);
  const std::vector<cplx> ref = oracle::sweep_zeros(oracle::psi_unit, -30.5, 30.5, -6.0, -0.01, 0.05);
  std::vector<cplx> in;
  for (cplx z : ref)
    if (std::abs(z.real()) <= 30 && z.imag() >= -6) in.push_back(z);
  const std::vector<cplx> got = points_of(res.zeros);
  double err = 0.0;
  for (cplx z : got) err = std::max(err, oracle::nearest(in, z));
  for (cplx z : in) err = std::max(err, oracle::nearest(got, z));
  const bool ok = res.argument_count == res.zeros.total_multiplicity() &&
                  res.zeros.total_multiplicity() == static_cast<int>(in.size()) && err < 1e-6;
  report(3, "resonance finder completeness", ok,
         fmt("argument count %.0f, polished %.0f, sweep %.0f, max mismatch %.2e", res.argument_count,
             res.zeros.total_multiplicity(), static_cast<double>(in.size()), err));
}

void levinson() {
  const auto [p30, m30] = levinson_ratio(unit_zeros(), 1.0, 30.0);
  const auto [p60, m60] = levinson_ratio(unit_zeros(), 1.0, 60.0);
  const bool ok = p60 >= 0.85 && p60 <= 1.15 && m60 >= 0.85 && m60 <= 1.15 &&
                  std::abs(p60 - 1) < std::abs(p30 - 1) && std::abs(m60 - 1) < std::abs(m30 - 1);
  report(4, "Levinson ratio", ok, fmt("r = 30: (%.3f, %.3f); r = 60: (%.3f, %.3f)", p30, m30, p60, m60));
}

void forbidden() {
  std::vector<Potential> qs{constant_potential(1.0, 1024, 1.0), constant_potential(1.0, 1024, cplx(1.0, 0.5))};
  for (std::uint64_t s : {3u, 7u}) qs.push_back(random_piecewise(s, {1.0, 1024, 8, 2.0}));
  std::vector<int> strip(qs.size()), strip_big(qs.size());
  std::vector<double> C(qs.size()), minslack(qs.size(), 1e300);
  std::vector<char> sat(qs.size());
  parallel_for(static_cast<int>(qs.size()), 4, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    const Evaluator f = jost_evaluator(qs[k], BoundaryParam(0.0));
    const ResonanceSet R = find_resonances(f, box(-30, 30, -6), 1e-10).zeros;
    const ResonanceSet Rb = find_resonances(f, box(-45, 45, -9), 1e-10).zeros;
    const ForbiddenReport fr = forbidden_domain_check(R, 1.0, 0.1, 1.0);
    const ForbiddenReport fb = forbidden_domain_check(Rb, 1.0, 0.1, 1.0);
    sat[k] = fr.all_satisfied && fb.all_satisfied;
    for (double v : fb.slack) minslack[k] = std::min(minslack[k], v);
    C[k] = fb.C_fit;
    strip[k] = fr.strip_count;
    strip_big[k] = fb.strip_count;
  });
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    ok = ok && sat[k] && strip[k] == strip_big[k];
    detail += fmt("[C %.3g, strip %.0f -> %.0f, min slack %.1e] ", C[k], strip[k], strip_big[k], minslack[k]);
  }
  report(5, "forbidden domain", ok, detail);
}

void phase() {
  const Potential& q = unit_potential();
  const Grid g = make_grid(-10.0, 10.0, 400);
  double err[2];
  int k = 0;
  for (double rc : {60.0, 120.0}) {
    const PhaseProfile p = phase_profile(unit_zeros(), 1.0, BoundaryParam(0.0), g, rc, 0.0);
    double e = 0.0;
    for (int j = 0; j <= g.n; ++j)
      e = std::max(e, std::abs(std::exp(-2.0 * oracle::I * p.phi[static_cast<std::size_t>(j)]) -
                               scattering_value(q, BoundaryParam(0.0), g.node(j))));
    err[k++] = e;
  }
  report(6, "phase formula", err[0] < 1e-2 && err[1] < err[0],
         fmt("max |exp(-2i phi) - S| %.2e at r_cut = 60, %.2e at 120", err[0], err[1]));
}

void hadamard() {
  const Potential& q = unit_potential();
  const BoundaryParam a(0.0);
  const cplx p0 = jost_function(q, a, 0.0);
  const std::vector<cplx> pts{{0.5, 0.0}, {2.0, -0.5}, {-3.0, 0.7}, {4.5, 1.5}, {-6.0, -1.0},
                              {1.0, 2.0}, {-1.2, -0.3}, {8.0, 0.0}, {-8.5, 0.4}, {0.0, -2.5}};
  double e[3];
  int k = 0;
  for (double rc : {15.0, 30.0, 60.0}) {
    e[k] = 0.0;
    for (cplx z : pts) e[k] = std::max(e[k], std::abs(hadamard_evaluate(unit_zeros(), p0, 1.0, z, rc) - jost_function(q, a, z)));
    ++k;
  }
  report(7, "Hadamard reconstruction", e[1] < e[0] && e[2] < e[1],
         fmt("max error %.2e, %.2e, %.2e at r_cut 15, 30, 60", e[0], e[1], e[2]));
}

void surgery() {
  const BoundaryParam a(0.0);
  const Potential q = constant_potential(1.0, 1024, 1.0);
  const cplx z0 = polish_zero(jost_evaluator(q, a), cplx(-2.58, -0.71));
  double prev = 1e300, err03 = 0.0;
  bool mono = true;
  std::string norms;
  for (double d : {0.3, 0.1, 0.03}) {
    const MoveResult m = move_resonances_full(q, a, {{z0, z0 + d}});
    const cplx found = polish_zero(jost_evaluator(m.q, a), z0 + d);
    if (d == 0.3) err03 = std::abs(found - (z0 + d));
    const double dist = cell_l2_distance(m.q.samples.values, q.samples.values, q.h());
    mono = mono && dist < prev;
    prev = dist;
    norms += fmt(" %.3e", dist);
  }
  report(8, "surgery", err03 < 1e-5 && mono, fmt("moved zero off target by %.2e; norms", err03) + norms);
}

void shift_reflect() {
  const std::vector<cplx> zs{{0.5, 0.0}, {-2.0, 1.0}, {3.0, -0.7}, {-7.5, -1.5}, {12.0, 0.3}};
  double es = 0.0, er = 0.0, e2 = 0.0;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const Potential q = random_piecewise(100 + s, {1.0, 512, 8, 2.0});
    const BoundaryParam a(0.25 * static_cast<double>(s));
    const double k = 0.6 * static_cast<double>(s) - 1.5;
    const Potential qk = shift_potential(q, k);
    const Potential qo = reflect_potential(q, a);
    for (cplx z : zs) {
      es = std::max(es, std::abs(jost_function(q, a, z + k) - jost_function(qk, a, z)));
      er = std::max(er, std::abs(std::conj(jost_function(q, a, -std::conj(z))) -
                                 std::polar(1.0, 2.0 * a.alpha) * jost_function(qo, a, z)));
    }
    const Potential back = reflect_potential(qo, a);
    for (std::size_t j = 0; j < q.samples.values.size(); ++j)
      e2 = std::max(e2, std::abs(back.samples.values[j] - q.samples.values[j]));
  }
  report(9, "shift and reflection identities", es < 1e-8 && er < 1e-8 && e2 < 1e-12,
         fmt("shift %.2e, reflection %.2e, reflect twice %.2e", es, er, e2));
}

void canonical() {
  double rt = 0.0, det = 0.0;
  for (const Potential& q : {smooth(1024), smooth2(1024), constant_potential(1.0, 1024, 1.0)}) {
    const Hamiltonian H = hamiltonian_from_potential(q);
    for (int j = 0; j <= H.grid.n; ++j) det = std::max(det, std::abs(H.at(j).determinant() - 1.0));
    const Potential back = potential_from_hamiltonian(H);
    for (int j = 0; j < q.n(); ++j) rt = std::max(rt, std::abs(back.cell(j) - q.cell(j)));
  }
  const int n = 1024;
  Hamiltonian d;
  d.grid = make_grid(0.0, 1.0, n);
  for (int j = 0; j <= n; ++j) {
    d.a.push_back(std::exp(std::sin(2.0 * d.grid.node(j))));
    d.b.push_back(0.0);
  }
  const MatrixPotential v = matrix_potential(potential_from_hamiltonian(d));
  double q1 = 0.0, q2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    q1 = std::max(q1, std::abs(v.q1[k]));
    q2 = std::max(q2, std::abs(v.q2[k] - std::cos(2.0 * (j + 0.5) / n)));
  }
  report(10, "canonical round trip", rt < 1e-4 && det < 1e-9 && q1 < 1e-12 && q2 < 1e-4,
         fmt("round trip %.2e, det %.2e, diagonal case q1 %.2e q2 %.2e", rt, det, q1, q2));
}

void boundary_identities() {
  double eu = 0.0, ee = 0.0;
  int hb_bad = 0, hb = 0;
  const Potential qs[] = {constant_potential(1.0, 256, 1.0), smooth(512), random_piecewise(41, {1.0, 512, 8, 2.0})};
  for (const Potential& q : qs) {
    for (cplx z : zgrid) {
      const cplx e = std::exp(oracle::I * q.gamma * z);
      for (double al : {0.0, 0.4, 1.3, 2.9}) {
        const auto u = boundary_solution(q, BoundaryParam(al), z);
        eu = std::max(eu, std::abs(jost_function(q, BoundaryParam(al), z) - e * (u(1) + oracle::I * u(0))));
      }
      ee = std::max(ee, std::abs(hermite_biehler(q, z) + oracle::I / e * jost_function(q, BoundaryParam(0.0), z)));
    }
    for (double x = -20.0; x <= 20.0; x += 0.5)
      for (double y : {0.05, 0.5, 2.0, 5.0}) {
        const cplx z(x, y);
        ++hb;
        if (!(std::abs(hermite_biehler(q, z)) > std::abs(hermite_biehler(q, std::conj(z))))) ++hb_bad;
      }
  }
  report(11, "boundary identities", eu < 1e-8 && ee < 1e-8 && hb_bad == 0,
         fmt("psi residual %.2e, E residual %.2e, Hermite-Biehler violations %.0f of %.0f", eu, ee, hb_bad, hb));
}

void cartwright() {
  const CartwrightEstimate c = cartwright_type(jost_evaluator(unit_potential(), BoundaryParam(0.0)), 1.0);
  report(12, "Cartwright type", std::abs(c.tau_plus) <= 0.05 && std::abs(c.tau_minus - 2.0) <= 0.1,
         fmt("tau+ %.4f, tau- %.4f", c.tau_plus, c.tau_minus));
}

}  // namespace

int main() {
  oracle_agreement();
  inverse_round_trip();
  finder_completeness();
  levinson();
  forbidden();
  phase();
  hadamard();
  surgery();
  shift_reflect();
  canonical();
  boundary_identities();
  cartwright();
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
