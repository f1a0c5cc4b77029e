#include "resdirac/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "resdirac/forward.hpp"
#include "resdirac/inverse.hpp"
#include "resdirac/numerics.hpp"
#include "resdirac/potentials.hpp"
#include "resdirac/spectral.hpp"

namespace resdirac {

bool ClassReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ClassCheck& c) { return c.pass || !c.required; });
}

const ClassCheck* ClassReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

bool all_finite(const std::vector<cplx>& v) {
  return std::all_of(v.begin(), v.end(), [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

}  // namespace

ClassReport validate_class(const Potential& q, const ValidateOptions& opts) {
  ClassReport r;
  r.cls = "P";
  r.checks.push_back({"finite samples", all_finite(q.samples.values), 0.0});
  r.checks.push_back({"gamma > 0", q.gamma > 0, q.gamma});
  const double h = q.h();
  const double l2 = cell_l2(q.samples.values, h);
  r.checks.push_back({"finite L2 norm", std::isfinite(l2), l2});
  const double sup = support_supremum(q, opts.floor_rel);
  r.checks.push_back({"sup supp q = gamma", std::abs(sup - q.gamma) <= 0.5 * h, sup, opts.strict});
  return r;
}

ClassReport validate_class(const JostRep& rep, const ValidateOptions& opts) {
  ClassReport r;
  r.cls = "J";
  r.checks.push_back({"finite kernel", all_finite(rep.g.values), 0.0});
  const double top = rep.g.grid.right;
  r.checks.push_back({"kernel on [0, gamma]",
                      std::abs(rep.g.grid.left) < 1e-12 && top <= rep.gamma * (1 + 1e-12), top});
  double mn = std::numeric_limits<double>::infinity();
  const int m = std::max(2, opts.rect_samples);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const cplx z(-opts.rect_re + 2.0 * opts.rect_re * i / (m - 1), opts.rect_im * j / (m - 1));
      mn = std::min(mn, std::abs(eval_jost(rep, z)));
    }
  r.checks.push_back({"psi nonvanishing on closed upper half-plane", mn > opts.psi_floor, mn});
  const double l2 = l2_norm(rep.g);
  r.checks.push_back({"finite L2 kernel norm", std::isfinite(l2), l2});
  return r;
}

ClassReport validate_class(const ScatteringRep& S, const ValidateOptions& opts) {
  ClassReport r;
  r.cls = "S";
  r.checks.push_back({"finite kernel", all_finite(S.F.values), 0.0});
  const int m = std::max(2, opts.z_samples);
  std::vector<cplx> s(static_cast<std::size_t>(m));
  double dev = 0.0;
  for (int k = 0; k < m; ++k) {
    const double z = -opts.z_window + 2.0 * opts.z_window * k / (m - 1);
    s[static_cast<std::size_t>(k)] = eval_scattering(S, z);
    dev = std::max(dev, std::abs(std::abs(s[static_cast<std::size_t>(k)]) - 1.0));
  }
  r.checks.push_back({"|S| = 1 on real axis", dev < opts.unit_tol, dev});
  try {
    std::vector<cplx> unit(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) unit[k] = s[k] / std::abs(s[k]);
    const int w = winding_number(unit);
    r.checks.push_back({"W(S) = 0", w == 0, static_cast<double>(w)});
  } catch (const ValidationError&) {
    r.checks.push_back({"W(S) = 0", false, std::numeric_limits<double>::quiet_NaN()});
  }
  const double l1 = l1_norm(S.F), l2 = l2_norm(S.F);
  r.checks.push_back({"finite L1 kernel norm", std::isfinite(l1), l1});
  r.checks.push_back({"finite L2 kernel norm", std::isfinite(l2), l2});
  double mf = 0.0;
  for (const auto& v : S.F.values) mf = std::max(mf, std::abs(v));
  double inf_supp = 0.0;
  for (int k = 0; k <= S.F.grid.n && mf > 0; ++k)
    if (std::abs(S.F.values[static_cast<std::size_t>(k)]) > opts.floor_rel * mf) {
      inf_supp = S.F.grid.node(k);
      break;
    }
  r.checks.push_back({"inf supp F >= -gamma", inf_supp >= -S.gamma - S.F.grid.h, inf_supp});
  return r;
}

}  // namespace resdirac
