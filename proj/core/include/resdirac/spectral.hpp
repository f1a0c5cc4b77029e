#pragma once

#include <utility>
#include <vector>

#include "resdirac/forward.hpp"
#include "resdirac/types.hpp"

namespace resdirac {

struct SearchRegion {
  double re_min = -1.0, re_max = 1.0;
  double im_min = -1.0, im_max = 0.0;
  int max_depth = 48;
  double merge_tol = 1e-8;
  double sample_step = 0.05;  // initial contour spacing before adaptive refinement
};

struct ResonanceSearch {
  ResonanceSet zeros;
  int argument_count = 0;  // winding of the evaluator around the full region boundary
  int boxes = 0;
  int evaluations = 0;
};

// W(g) for g = e^{-2 i phi} sampled on an increasing grid: (phi(+inf) - phi(-inf)) / pi.
int winding_number(const std::vector<cplx>& samples);

// Zeros of an analytic evaluator inside the region: argument-principle counts on nested
// rectangles, contour moments for starting points, then Newton polishing.
ResonanceSearch find_resonances(const Evaluator& f, const SearchRegion& region, double tol);

// Multiplicity-weighted zero count inside a rectangle (argument principle).
int argument_count(const Evaluator& f, const SearchRegion& region);

std::pair<int, int> count_in_sector(const ResonanceSet& R, double r, double delta);
std::pair<double, double> levinson_ratio(const ResonanceSet& R, double gamma, double r);

struct ForbiddenReport {
  double C_fit = 0.0;
  bool all_satisfied = true;
  std::vector<double> slack;  // ln(eps + C/|z|) - 2 gamma Im z, one per entry
  int strip_count = 0;        // zeros with Im z > -A
};

ForbiddenReport forbidden_domain_check(const ResonanceSet& R, double gamma, double eps, double strip_A);

// psi(0) e^{i gamma z} prod_{|z_n| <= r_cut} (1 - z/z_n), factors in modulus order.
cplx hadamard_evaluate(const ResonanceSet& R, cplx psi0, double gamma, cplx z, double r_cut);

// gamma + sum_{|z_n| <= r_cut} Im z_n / |z - z_n|^2.
double phase_derivative(const ResonanceSet& R, double gamma, double z, double r_cut);

enum class PhaseTail {
  None,       // plain truncated sum
  Continuum,  // zeros beyond r_cut modelled by the asymptotic density gamma/pi per side
};

struct PhaseProfile {
  Grid grid;
  std::vector<double> phi;
  std::vector<double> dphi;
  double r_cut = 0.0;
  double phi0 = 0.0;
  double phi0_plus = 0.0;   // extrapolated -alpha - \int_0^{+inf}
  double phi0_minus = 0.0;  // extrapolated -alpha + \int_{-inf}^0
  double disagreement = 0.0;
  bool flagged = false;
  double z_limit_1 = 0.0, z_limit_2 = 0.0;
};

struct PhaseOptions {
  PhaseTail tail = PhaseTail::Continuum;
  double agreement_tol = 1e-2;
};

PhaseProfile phase_profile(const ResonanceSet& R, double gamma, BoundaryParam alpha, const Grid& grid,
                           double r_cut, double z_limit, const PhaseOptions& opts = {});

struct CartwrightEstimate {
  double tau_plus = 0.0;
  double tau_minus = 0.0;
  int points = 0;
  bool reduced = false;  // ladder shortened by overflow
};

// Least-squares slopes of log|psi(+-iy)| over a geometric ladder up to y_max.
CartwrightEstimate cartwright_type(const Evaluator& f, double gamma, double y_max = 0.0, int points = 8);

// Newton polish with multiplicity m and differenced derivative.
cplx polish_zero(const Evaluator& f, cplx z0, int m = 1, int max_iter = 80);

}  // namespace resdirac
