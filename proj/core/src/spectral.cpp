#include "resdirac/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

namespace resdirac {

int winding_number(const std::vector<cplx>& samples) {
  double total = 0.0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double d = std::arg(samples[k] / samples[k - 1]);
    // a wrapped step this large cannot be told apart from one of the opposite sign
    if (std::abs(d) > 0.75 * pi) throw ValidationError("winding", "grid too coarse for winding number");
    total += d;
  }
  return static_cast<int>(std::lround(-total / (2.0 * pi)));
}

namespace {

struct ContourSum {
  double darg = 0.0;
  cplx m1 = 0.0;  // (1/2 pi i) \oint z dlog f
  cplx m2 = 0.0;  // (1/2 pi i) \oint z^2 dlog f
  bool hit = false;
};

class Tracer {
public:
  Tracer(const Evaluator& f, double step, double scale) : f_(f), step_(step), scale_(scale) {}

  cplx eval(cplx z) {
    auto key = std::make_pair(z.real(), z.imag());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ++evals_;
    const cplx v = f_(z);
    cache_.emplace(key, v);
    return v;
  }

  // Accumulates dlog f along the straight segment a -> b. Initial points sit on a lattice
  // of spacing step_ so neighbouring boxes reuse evaluations.
  void segment(cplx a, cplx b, ContourSum& acc) {
    std::vector<cplx> pts{a};
    const bool horizontal = a.imag() == b.imag();
    const double lo = horizontal ? std::min(a.real(), b.real()) : std::min(a.imag(), b.imag());
    const double hi = horizontal ? std::max(a.real(), b.real()) : std::max(a.imag(), b.imag());
    std::vector<double> inner;
    for (double t = std::floor(lo / step_ + 1.0) * step_; t < hi - 1e-12 * scale_; t += step_)
      if (t > lo + 1e-12 * scale_) inner.push_back(t);
    const bool forward = horizontal ? b.real() > a.real() : b.imag() > a.imag();
    if (!forward) std::reverse(inner.begin(), inner.end());
    for (double t : inner) pts.push_back(horizontal ? cplx(t, a.imag()) : cplx(a.real(), t));
    pts.push_back(b);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) refine(pts[k], eval(pts[k]), pts[k + 1], eval(pts[k + 1]), acc, 0);
  }

  int evaluations() const { return evals_; }

private:
  void refine(cplx za, cplx fa, cplx zb, cplx fb, ContourSum& acc, int depth) {
    if (fa == 0.0 || fb == 0.0) {
      acc.hit = true;
      return;
    }
    const cplx ratio = fb / fa;
    const double d = std::arg(ratio);
    if (std::abs(d) > 0.25 && depth < 60 && std::abs(zb - za) > 1e-13 * scale_) {
      const cplx zm = 0.5 * (za + zb);
      const cplx fm = eval(zm);
      refine(za, fa, zm, fm, acc, depth + 1);
      refine(zm, fm, zb, fb, acc, depth + 1);
      return;
    }
    if (std::abs(d) > 0.25) acc.hit = true;
    const cplx dlog(std::log(std::abs(ratio)), d);
    const cplx zm = 0.5 * (za + zb);
    acc.darg += d;
    acc.m1 += zm * dlog;
    acc.m2 += zm * zm * dlog;
  }

  const Evaluator& f_;
  double step_;
  double scale_;
  int evals_ = 0;
  std::map<std::pair<double, double>, cplx> cache_;
};

struct Box {
  double re0, re1, im0, im1;
  int count;
  cplx m1, m2;
  int depth;
  double size() const { return std::max(re1 - re0, im1 - im0); }
  bool contains(cplx z, double slack) const {
    return z.real() >= re0 - slack && z.real() <= re1 + slack && z.imag() >= im0 - slack &&
           z.imag() <= im1 + slack;
  }
};

struct BoxCount {
  int count = 0;
  cplx m1, m2;
  bool reliable = true;
};

BoxCount box_contour(Tracer& tr, double re0, double re1, double im0, double im1) {
  ContourSum acc;
  tr.segment({re0, im0}, {re1, im0}, acc);
  tr.segment({re1, im0}, {re1, im1}, acc);
  tr.segment({re1, im1}, {re0, im1}, acc);
  tr.segment({re0, im1}, {re0, im0}, acc);
  BoxCount bc;
  const double w = acc.darg / (2.0 * pi);
  bc.count = static_cast<int>(std::lround(w));
  bc.reliable = !acc.hit && std::abs(w - bc.count) < 0.05 && bc.count >= 0;
  bc.m1 = acc.m1 / (2.0 * pi * I);
  bc.m2 = acc.m2 / (2.0 * pi * I);
  return bc;
}

cplx derivative(const Evaluator& f, cplx z) {
  const double d = 1e-6 * std::max(1.0, std::abs(z));
  return (f(z + d) - f(z - d)) / (2.0 * d);
}

bool confirm_multiple(const Evaluator& f, cplx z, double rho) {
  const cplx d0 = derivative(f, z);
  const cplx d1 = derivative(f, z + rho);
  return std::abs(d0) < 1e-2 * std::abs(d1);
}

}  // namespace

cplx polish_zero(const Evaluator& f, cplx z0, int m, int max_iter) {
  cplx z = z0;
  cplx best = z0;
  double best_val = std::abs(f(z0));
  for (int it = 0; it < max_iter; ++it) {
    const cplx fz = f(z);
    const double a = std::abs(fz);
    if (a < best_val) {
      best_val = a;
      best = z;
    }
    if (fz == 0.0) return z;
    const cplx dz = static_cast<double>(m) * fz / derivative(f, z);
    if (!std::isfinite(dz.real()) || !std::isfinite(dz.imag())) break;
    z -= dz;
    if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) {
      if (std::abs(f(z)) <= best_val) best = z;
      return best;
    }
  }
  return best;
}

int argument_count(const Evaluator& f, const SearchRegion& region) {
  const double scale = std::max({1.0, std::abs(region.re_min), std::abs(region.re_max),
                                 std::abs(region.im_min), std::abs(region.im_max)});
  Tracer tr(f, region.sample_step, scale);
  return box_contour(tr, region.re_min, region.re_max, region.im_min, region.im_max).count;
}

ResonanceSearch find_resonances(const Evaluator& f, const SearchRegion& region, double tol) {
  if (!(region.im_max <= 0.0)) throw ValidationError("region", "region must lie in lower half-plane");
  if (!(region.re_min < region.re_max) || !(region.im_min < region.im_max))
    throw ValidationError("region", "region extents must be increasing");
  const double scale = std::max({1.0, std::abs(region.re_min), std::abs(region.re_max),
                                 std::abs(region.im_min), std::abs(region.im_max)});
  Tracer tr(f, region.sample_step, scale);
  ResonanceSearch out;

  BoxCount top{};
  double grow = 0.0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    top = box_contour(tr, region.re_min - grow, region.re_max + grow, region.im_min - grow,
                      std::min(0.0, region.im_max + grow));
    if (top.reliable) break;
    grow = (attempt + 1) * 1e-7 * scale;  // a zero on the outer boundary: nudge outward
  }
  out.argument_count = top.count;

  std::vector<Box> stack;
  stack.push_back({region.re_min - grow, region.re_max + grow, region.im_min - grow,
                   std::min(0.0, region.im_max + grow), top.count, top.m1, top.m2, 0});
  static constexpr std::array<double, 6> fractions{0.5381966, 0.4381966, 0.5927051, 0.3854102, 0.6458980,
                                                   0.4763932};
  const double min_box = std::max(1e-9 * scale, tol);

  while (!stack.empty()) {
    Box bx = stack.back();
    stack.pop_back();
    ++out.boxes;
    if (bx.count <= 0) continue;
    const double slack = std::max(tol, 1e-10 * scale);

    if (bx.count == 1) {
      const cplx z = polish_zero(f, bx.m1);
      if (bx.contains(z, slack) && std::abs(z - bx.m1) < 2.0 * bx.size() + slack) {
        out.zeros.entries.push_back({z, 1, false});
        continue;
      }
    } else {
      const cplx c = bx.m1 / static_cast<double>(bx.count);
      bool coincident = bx.size() < 1e3 * min_box;
      if (bx.count == 2) {
        const cplx disc = std::sqrt(2.0 * bx.m2 - bx.m1 * bx.m1);  // r1 - r2
        coincident = coincident || std::abs(disc) < 1e-3 * bx.size();
      }
      if (coincident) {
        const cplx z = polish_zero(f, c, bx.count);
        if (bx.contains(z, slack) && confirm_multiple(f, z, 1e-3 * std::max(1.0, bx.size()))) {
          out.zeros.entries.push_back({z, bx.count, false});
          continue;
        }
      }
    }

    if (bx.depth >= region.max_depth || bx.size() < min_box) {
      const cplx z = polish_zero(f, bx.m1 / static_cast<double>(bx.count), bx.count);
      out.zeros.entries.push_back({z, bx.count, true});
      continue;
    }

    bool split = false;
    for (double frac : fractions) {
      Box a = bx, b = bx;
      a.depth = b.depth = bx.depth + 1;
      if (bx.re1 - bx.re0 >= bx.im1 - bx.im0) {
        const double xs = bx.re0 + frac * (bx.re1 - bx.re0);
        a.re1 = xs;
        b.re0 = xs;
      } else {
        const double ys = bx.im0 + frac * (bx.im1 - bx.im0);
        a.im1 = ys;
        b.im0 = ys;
      }
      const BoxCount ca = box_contour(tr, a.re0, a.re1, a.im0, a.im1);
      const BoxCount cb = box_contour(tr, b.re0, b.re1, b.im0, b.im1);
      if (!ca.reliable || !cb.reliable || ca.count + cb.count != bx.count) continue;
      a.count = ca.count;
      a.m1 = ca.m1;
      a.m2 = ca.m2;
      b.count = cb.count;
      b.m1 = cb.m1;
      b.m2 = cb.m2;
      stack.push_back(a);
      stack.push_back(b);
      split = true;
      break;
    }
    if (!split) {
      const cplx z = polish_zero(f, bx.m1 / static_cast<double>(bx.count), bx.count);
      out.zeros.entries.push_back({z, bx.count, true});
    }
  }
  out.zeros.normalize(region.merge_tol);
  out.evaluations = tr.evaluations();
  return out;
}

std::pair<int, int> count_in_sector(const ResonanceSet& R, double r, double delta) {
  if (delta < 0 || delta > pi / 2) throw ValidationError("sector", "delta must lie in [0, pi/2]");
  int np = 0, nm = 0;
  for (const auto& e : R.entries) {
    if (std::abs(e.z) > r) continue;
    const double a = std::abs(std::arg(e.z));
    if (!(a > delta && a < pi - delta)) continue;
    if (e.z.real() >= 0) np += e.multiplicity;
    if (e.z.real() <= 0) nm += e.multiplicity;
  }
  return {np, nm};
}

std::pair<double, double> levinson_ratio(const ResonanceSet& R, double gamma, double r) {
  if (!(r > 0)) throw ValidationError("levinson", "r must be positive");
  const auto [np, nm] = count_in_sector(R, r, 0.0);
  const double expected = gamma / pi * r;
  return {np / expected, nm / expected};
}

ForbiddenReport forbidden_domain_check(const ResonanceSet& R, double gamma, double eps, double strip_A) {
  if (!(eps > 0)) throw ValidationError("forbidden", "eps must be positive");
  ForbiddenReport rep;
  for (const auto& e : R.entries)
    rep.C_fit = std::max(rep.C_fit, std::abs(e.z) * (std::exp(2.0 * gamma * e.z.imag()) - eps));
  for (const auto& e : R.entries) {
    const double s = std::log(eps + rep.C_fit / std::abs(e.z)) - 2.0 * gamma * e.z.imag();
    rep.slack.push_back(s);
    if (s < -1e-12) rep.all_satisfied = false;
    if (e.z.imag() > -strip_A) rep.strip_count += e.multiplicity;
  }
  return rep;
}

cplx hadamard_evaluate(const ResonanceSet& R, cplx psi0, double gamma, cplx z, double r_cut) {
  if (psi0 == 0.0) throw ValidationError("hadamard", "psi(0) must be nonzero");
  std::vector<Resonance> sorted = R.entries;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Resonance& a, const Resonance& b) { return std::abs(a.z) < std::abs(b.z); });
  cplx p = psi0 * std::exp(I * gamma * z);
  for (const auto& e : sorted) {
    if (std::abs(e.z) > r_cut) break;
    const cplx fac = 1.0 - z / e.z;
    for (int k = 0; k < e.multiplicity; ++k) p *= fac;
  }
  return p;
}

double phase_derivative(const ResonanceSet& R, double gamma, double z, double r_cut) {
  double s = gamma;
  for (const auto& e : R.entries)
    if (std::abs(e.z) <= r_cut) s += e.multiplicity * e.z.imag() / std::norm(z - e.z);
  return s;
}

CartwrightEstimate cartwright_type(const Evaluator& f, double gamma, double y_max, int points) {
  CartwrightEstimate est;
  if (y_max <= 0) y_max = gamma > 0 ? 0.9 * default_im_cap_factor / gamma : 45.0;
  if (points < 2) points = 2;
  const double y_min = y_max / 4.0;  // keeps the log-order correction of log|psi| small
  auto slope = [&](double sign) {
    std::vector<double> ys, ls;
    for (int k = 0; k < points; ++k) {
      const double y = y_min * std::pow(y_max / y_min, static_cast<double>(k) / (points - 1));
      try {
        const double v = std::log(std::abs(f(cplx(0.0, sign * y))));
        if (std::isfinite(v)) {
          ys.push_back(y);
          ls.push_back(v);
          continue;
        }
      } catch (const std::exception&) {
      }
      est.reduced = true;
    }
    est.points = std::max(est.points, static_cast<int>(ys.size()));
    if (ys.size() < 2) return 0.0;
    double my = 0, ml = 0;
    for (std::size_t k = 0; k < ys.size(); ++k) {
      my += ys[k];
      ml += ls[k];
    }
    my /= ys.size();
    ml /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < ys.size(); ++k) {
      sxy += (ys[k] - my) * (ls[k] - ml);
      sxx += (ys[k] - my) * (ys[k] - my);
    }
    return sxy / sxx;
  };
  est.tau_plus = slope(1.0);
  est.tau_minus = slope(-1.0);
  return est;
}

}  // namespace resdirac
