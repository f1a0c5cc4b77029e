#include "resdirac/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace resdirac {

Grid make_grid(double left, double right, int n) {
  if (!std::isfinite(left) || !std::isfinite(right))
    throw ValidationError("grid", "grid endpoints must be finite");
  if (n < 1) throw ValidationError("grid", "grid needs at least one cell");
  if (!(left < right)) throw ValidationError("grid", "grid requires left < right");
  Grid g;
  g.left = left;
  g.right = right;
  g.n = n;
  g.h = (right - left) / n;
  return g;
}

SampledComplexFunction::SampledComplexFunction(const Grid& g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != static_cast<std::size_t>(g.nodes()))
    throw ValidationError("samples", "sample count must equal node count");
  for (const auto& c : values)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw ValidationError("samples", "samples must be finite");
}

int ResonanceSet::total_multiplicity() const {
  int total = 0;
  for (const auto& r : entries) total += r.multiplicity;
  return total;
}

void ResonanceSet::normalize(double merge_tol) {
  std::sort(entries.begin(), entries.end(), [](const Resonance& a, const Resonance& b) {
    double ma = std::abs(a.z), mb = std::abs(b.z);
    if (ma != mb) return ma < mb;
    return a.z.real() < b.z.real();
  });
  std::vector<Resonance> out;
  for (const auto& r : entries) {
    bool merged = false;
    for (auto& o : out) {
      if (std::abs(o.z - r.z) <= merge_tol * std::max(1.0, std::abs(r.z))) {
        o.multiplicity = std::max(o.multiplicity, r.multiplicity);
        o.boundary_ambiguous = o.boundary_ambiguous && r.boundary_ambiguous;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(r);
  }
  entries = std::move(out);
}

cplx quadrature(const Sampled& f) {
  if (f.size() < 2) throw ValidationError("quadrature", "quadrature needs at least two nodes");
  cplx s = 0.5 * (f.values.front() + f.values.back());
  for (std::size_t j = 1; j + 1 < f.size(); ++j) s += f.values[j];
  return s * f.grid.h;
}

std::vector<cplx> cumulative_trapezoid(const std::vector<cplx>& f, double h) {
  std::vector<cplx> out(f.size(), cplx{});
  for (std::size_t j = 1; j < f.size(); ++j) out[j] = out[j - 1] + 0.5 * h * (f[j - 1] + f[j]);
  return out;
}

Sampled convolve_halfline(const Sampled& a, const Sampled& b) {
  const double ha = a.grid.h, hb = b.grid.h;
  if (std::abs(ha - hb) > 1e-12 * std::max(ha, hb))
    throw ValidationError("convolution", "convolution requires identical spacing");
  const int na = a.grid.n, nb = b.grid.n;
  Grid g;
  g.left = a.grid.left + b.grid.left;
  g.n = na + nb;
  g.h = ha;
  g.right = g.left + g.n * g.h;
  std::vector<cplx> out(static_cast<std::size_t>(g.n + 1), cplx{});
  for (int k = 0; k <= g.n; ++k) {
    const int lo = std::max(0, k - nb), hi = std::min(na, k);
    if (hi <= lo) continue;
    cplx s = 0.5 * (a.values[lo] * b.values[k - lo] + a.values[hi] * b.values[k - hi]);
    for (int j = lo + 1; j < hi; ++j) s += a.values[j] * b.values[k - j];
    out[static_cast<std::size_t>(k)] = s * ha;
  }
  return Sampled(g, std::move(out));
}

cplx interpolate(const Sampled& f, double x) {
  const double u = (x - f.grid.left) / f.grid.h;
  if (u < -1e-9 || u > f.grid.n + 1e-9) return {};
  int j = static_cast<int>(std::floor(u));
  j = std::clamp(j, 0, f.grid.n - 1);
  const double t = std::clamp(u - j, 0.0, 1.0);
  return (1.0 - t) * f.values[j] + t * f.values[j + 1];
}

double cell_l2(const std::vector<cplx>& v, double h) {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < v.size(); ++j) s += std::norm(v[j]);
  return std::sqrt(s * h);
}

double cell_l2_distance(const std::vector<cplx>& a, const std::vector<cplx>& b, double h) {
  const std::size_t m = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s * h);
}

double relative_cell_l2(const std::vector<cplx>& approx, const std::vector<cplx>& exact, double h) {
  const double den = cell_l2(exact, h);
  const double num = cell_l2_distance(approx, exact, h);
  return den > 0 ? num / den : num;
}

double l1_norm(const Sampled& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double w = (j == 0 || j + 1 == f.size()) ? 0.5 : 1.0;
    s += w * std::abs(f.values[j]);
  }
  return s * f.grid.h;
}

double l2_norm(const Sampled& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double w = (j == 0 || j + 1 == f.size()) ? 0.5 : 1.0;
    s += w * std::norm(f.values[j]);
  }
  return std::sqrt(s * f.grid.h);
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  if (workers <= 1 || count < 2) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const int w = std::min(workers, count);
  pool.reserve(static_cast<std::size_t>(w));
  for (int t = 0; t < w; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace resdirac
