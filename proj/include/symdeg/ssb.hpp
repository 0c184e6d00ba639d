// Symmetry degrees of thermal states: Gibbs-state construction that is
// stable at large inverse temperature, the (beta, lambda) surface, the
// spin-1/2 closed form, and the double-limit witness for spontaneous
// symmetry breaking.
#pragma once

#include <functional>
#include <optional>
#include <span>

#include "symdeg/dos.hpp"
#include "symdeg/groupkit.hpp"
#include "symdeg/types.hpp"

namespace symdeg {

struct ThermalState {
  SquareOperator rho;
  double beta = 0;
  // Z = exp(-beta * energy_shift) * z_shifted; the shifted form stays
  // finite at any beta.
  double z_shifted = 0;
  double energy_shift = 0;
};

// Gibbs state exp(-beta H)/Z via shifted eigenvalues; beta may be infinite,
// in which case the state is the ground-space projector normalized by the
// ground degeneracy.
ThermalState thermal_state(const SquareOperator& h, double beta,
                           double degeneracy_tol = 1e-12);

using CellEvaluator = std::function<DoSResult(double beta, double lambda)>;

// Symmetry degree of the thermal state of H + lambda V under the ensemble.
// Monte Carlo cells draw from per-cell derived seeds so the surface is
// deterministic under any evaluation order.
CellEvaluator make_doss_evaluator(SquareOperator h, SquareOperator v, Ensemble ensemble,
                                  Method method = Method::Auto);

struct SsbSurface {
  std::vector<double> beta_grid;
  std::vector<double> lambda_grid;
  std::vector<std::vector<DoSResult>> cells;  // [beta index][lambda index]
  // Edge extractions: S at (beta_max, smallest nonzero |lambda|) and at
  // (beta_max, lambda = 0), when those columns exist.
  std::optional<double> limit_i;
  std::optional<double> limit_ii;
};

SsbSurface doss_surface(const CellEvaluator& evaluate, std::span<const double> beta_grid,
                        std::span<const double> lambda_grid);

// (3 + sech(beta * lambda)) / 4.
double spin_half_doss_closed_form(double beta, double lambda);

struct SsbWitness {
  double limit_i = 0;   // beta -> inf first, then lambda -> 0
  double limit_ii = 0;  // lambda -> 0 first, then beta -> inf
  bool is_ssb = false;
};

// Certifies the grid edges against beta-doubling (change below tol/10,
// otherwise RegimeError asks for a larger grid) and reports the two
// iterated limits; their gap above tol witnesses spontaneous breaking.
SsbWitness ssb_witness(const SsbSurface& surface, const CellEvaluator& evaluate, double tol);

}  // namespace symdeg
