#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace resdirac {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// Bad input, broken preconditions, malformed files. The CLI maps these to exit 2.
class ValidationError : public std::invalid_argument {
public:
  ValidationError(const std::string& kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

// Overflow, singular systems, failed convergence. The CLI maps these to exit 1.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Grid {
  double left = 0.0;
  double right = 1.0;
  int n = 1;
  double h = 1.0;

  double node(int j) const { return left + j * h; }
  int nodes() const { return n + 1; }
};

Grid make_grid(double left, double right, int n);

struct SampledComplexFunction {
  Grid grid;
  std::vector<cplx> values;

  SampledComplexFunction() = default;
  SampledComplexFunction(const Grid& g, std::vector<cplx> v);
  explicit SampledComplexFunction(const Grid& g) : grid(g), values(g.nodes(), cplx{}) {}

  std::size_t size() const { return values.size(); }
  const cplx& operator[](std::size_t j) const { return values[j]; }
  cplx& operator[](std::size_t j) { return values[j]; }
};

using Sampled = SampledComplexFunction;

// Sample q_j is the value of q on the cell [x_j, x_{j+1}); the last sample sits at
// gamma and does not enter any integral. A nonzero carrier kappa means
// q(x) = q_j exp(2 i kappa (x - x_j)) inside cell j, which keeps modulated potentials
// exactly representable.
struct Potential {
  double gamma = 1.0;
  Sampled samples;
  double carrier = 0.0;

  Potential() = default;
  Potential(double gamma, std::vector<cplx> node_values, double carrier = 0.0);

  int n() const { return samples.grid.n; }
  double h() const { return samples.grid.h; }
  const cplx& cell(int j) const { return samples.values[static_cast<std::size_t>(j)]; }
};

struct BoundaryParam {
  double alpha = 0.0;

  BoundaryParam() = default;
  explicit BoundaryParam(double a);

  cplx phase() const { return std::polar(1.0, -alpha); }  // e^{-i alpha}
};

struct JostRep {
  BoundaryParam alpha;
  Sampled g;
  double gamma = 1.0;
};

struct ScatteringRep {
  BoundaryParam alpha;
  Sampled F;  // on [-gamma, t_max]
  double gamma = 1.0;
  double t_max = 8.0;
};

struct Resonance {
  cplx z;
  int multiplicity = 1;
  bool boundary_ambiguous = false;
};

struct ResonanceSet {
  std::vector<Resonance> entries;

  std::size_t size() const { return entries.size(); }
  int total_multiplicity() const;
  void normalize(double merge_tol = 1e-8);  // sort by modulus, merge near duplicates
};

}  // namespace resdirac
