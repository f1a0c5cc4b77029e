#pragma once

#include <string>
#include <vector>

#include "resdirac/types.hpp"

namespace resdirac {

struct ClassCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  bool required = true;  // informational checks do not affect ClassReport::pass
};

struct ClassReport {
  std::string cls;
  std::vector<ClassCheck> checks;

  bool pass() const;
  const ClassCheck* find(const std::string& name) const;
};

struct ValidateOptions {
  bool strict = false;      // require sup supp q = gamma
  double floor_rel = 1e-12; // amplitude floor for support measurements
  double rect_re = 20.0;    // psi sampled on [-rect_re, rect_re] x [0, rect_im]
  double rect_im = 5.0;
  int rect_samples = 41;
  double psi_floor = 1e-8;
  double unit_tol = 1e-6;   // | |S| - 1 | on the real axis
  double z_window = 50.0;
  int z_samples = 4001;
};

ClassReport validate_class(const Potential& q, const ValidateOptions& opts = {});
ClassReport validate_class(const JostRep& rep, const ValidateOptions& opts = {});
ClassReport validate_class(const ScatteringRep& S, const ValidateOptions& opts = {});

}  // namespace resdirac
