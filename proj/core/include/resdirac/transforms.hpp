#pragma once

#include <vector>

#include "resdirac/forward.hpp"
#include "resdirac/types.hpp"

namespace resdirac {

struct ResonanceMove {
  cplx from;
  cplx to;
};

struct BlaschkeResult {
  Evaluator psi;  // base psi times prod (z - to) / (z - from)
  JostRep rep;
  std::vector<ResonanceMove> applied;  // sources replaced by the polished zeros actually divided out
};

struct BlaschkeOptions {
  double source_tol = 1e-6;  // polished source must lie this close to the stated one
};

// Multiplies psi by one Blaschke factor per move. Each factor updates the kernel exactly:
// psi / (z - z0) has kernel e^{-2 i z0 s} (-2i)(e^{-i alpha} + \int_0^s g(u) e^{2 i z0 u} du)
// whenever psi(z0) = 0. The rational evaluator uses `base` when given (for instance the
// forward solver), otherwise the quadrature of rep.
BlaschkeResult blaschke_modify(const JostRep& rep, const std::vector<ResonanceMove>& moves,
                               const Evaluator& base = nullptr, const BlaschkeOptions& opts = {});

struct MoveResult {
  Potential q;
  JostRep rep;
  std::vector<ResonanceMove> applied;
};

MoveResult move_resonances_full(const Potential& q, BoundaryParam alpha, const std::vector<ResonanceMove>& moves,
                                const BlaschkeOptions& opts = {});

// Potential whose Jost function is the Blaschke-modified psi of q, recovered on q's grid.
Potential move_resonances(const Potential& q, BoundaryParam alpha, const std::vector<ResonanceMove>& moves);

// q_k with psi(z + k, q) = psi(z, q_k), that is q_k(x) = e^{-2 i k x} q(x).
Potential shift_potential(const Potential& q, double k);

// q_o = e^{4 i alpha} conj(q), so that conj(psi(-conj z, q)) = e^{2 i alpha} psi(z, q_o).
Potential reflect_potential(const Potential& q, BoundaryParam alpha);

}  // namespace resdirac
