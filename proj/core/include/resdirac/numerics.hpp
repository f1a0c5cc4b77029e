#pragma once

#include <functional>
#include <vector>

#include "resdirac/types.hpp"

namespace resdirac {

// Trapezoid rule over the sample grid.
cplx quadrature(const Sampled& f);

// Running trapezoid integral from the left endpoint, one value per node.
std::vector<cplx> cumulative_trapezoid(const std::vector<cplx>& f, double h);

// (a*b)(s) = \int a(t) b(s-t) dt on the grid [a.left+b.left, a.right+b.right].
Sampled convolve_halfline(const Sampled& a, const Sampled& b);

// Linear interpolation; zero outside the grid.
cplx interpolate(const Sampled& f, double x);

// Discrete norms over the cells 0..n-1 (the last node carries no weight).
double cell_l2(const std::vector<cplx>& v, double h);
double cell_l2_distance(const std::vector<cplx>& a, const std::vector<cplx>& b, double h);
double relative_cell_l2(const std::vector<cplx>& approx, const std::vector<cplx>& exact, double h);

// Node-based trapezoid norms.
double l1_norm(const Sampled& f);
double l2_norm(const Sampled& f);

// Runs body(i) for i in [0, count); workers <= 1 runs inline.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

}  // namespace resdirac
