#include "symdeg/ssb.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "symdeg/numkit.hpp"
#include "symdeg/rng.hpp"

namespace symdeg {

ThermalState thermal_state(const SquareOperator& h, double beta, double degeneracy_tol) {
  if (std::isnan(beta) || beta < 0)
    throw InvalidInput("thermal_state: beta must be non-negative");
  const EigenSystem es = hermitian_eigensystem(h);
  const int d = h.dim();
  const double e0 = es.values.front();
  const double scale = std::max(1.0, std::abs(es.values.back() - e0));

  std::vector<double> weights(static_cast<std::size_t>(d), 0.0);
  if (std::isinf(beta)) {
    for (int k = 0; k < d; ++k)
      if (es.values[static_cast<std::size_t>(k)] - e0 <= degeneracy_tol * scale)
        weights[static_cast<std::size_t>(k)] = 1.0;
  } else {
    for (int k = 0; k < d; ++k)
      weights[static_cast<std::size_t>(k)] =
          std::exp(-beta * (es.values[static_cast<std::size_t>(k)] - e0));
  }
  double z = 0;
  for (double w : weights) z += w;

  ThermalState out;
  out.beta = beta;
  out.z_shifted = z;
  out.energy_shift = e0;
  out.rho = SquareOperator(d);
  for (int k = 0; k < d; ++k) {
    const double p = weights[static_cast<std::size_t>(k)] / z;
    if (p == 0.0) continue;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        out.rho(r, c) += p * es.vectors(r, k) * std::conj(es.vectors(c, k));
  }
  return out;
}

namespace {

std::uint64_t cell_stream(double beta, double lambda) {
  const std::uint64_t b = std::bit_cast<std::uint64_t>(beta);
  const std::uint64_t l = std::bit_cast<std::uint64_t>(lambda);
  return derive_stream(b, std::rotl(l, 17) ^ 0x5eedc0de5eedc0deull);
}

}  // namespace

CellEvaluator make_doss_evaluator(SquareOperator h, SquareOperator v, Ensemble ensemble,
                                  Method method) {
  h.require_same_dim(v);
  return [h = std::move(h), v = std::move(v), ensemble = std::move(ensemble),
          method](double beta, double lambda) -> DoSResult {
    SquareOperator ht = h;
    ht += lambda * v;
    const ThermalState state = thermal_state(ht, beta);
    if (ensemble.is_continuous() && method == Method::MonteCarlo) {
      ContinuousGroupSpec spec = ensemble.continuous();
      spec.seed = derive_stream(spec.seed, cell_stream(beta, lambda));
      return evaluate_dos(state.rho, Ensemble(spec), Mode::State, method);
    }
    return evaluate_dos(state.rho, ensemble, Mode::State, method);
  };
}

SsbSurface doss_surface(const CellEvaluator& evaluate, std::span<const double> beta_grid,
                        std::span<const double> lambda_grid) {
  if (beta_grid.empty() || lambda_grid.empty())
    throw InvalidInput("doss_surface: grids must be non-empty");

  SsbSurface surface;
  surface.beta_grid.assign(beta_grid.begin(), beta_grid.end());
  surface.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  surface.cells.resize(beta_grid.size());
  for (std::size_t ib = 0; ib < beta_grid.size(); ++ib) {
    surface.cells[ib].resize(lambda_grid.size());
    for (std::size_t il = 0; il < lambda_grid.size(); ++il)
      surface.cells[ib][il] = evaluate(beta_grid[ib], lambda_grid[il]);
  }

  // edge extractions
  std::size_t ib_max = 0;
  for (std::size_t ib = 1; ib < beta_grid.size(); ++ib)
    if (beta_grid[ib] > beta_grid[ib_max]) ib_max = ib;
  std::optional<std::size_t> il_zero, il_probe;
  for (std::size_t il = 0; il < lambda_grid.size(); ++il) {
    if (lambda_grid[il] == 0.0) {
      il_zero = il;
      continue;
    }
    if (!il_probe || std::abs(lambda_grid[il]) < std::abs(lambda_grid[*il_probe])) il_probe = il;
  }
  if (il_probe) surface.limit_i = surface.cells[ib_max][*il_probe].S;
  if (il_zero) surface.limit_ii = surface.cells[ib_max][*il_zero].S;
  return surface;
}

double spin_half_doss_closed_form(double beta, double lambda) {
  return (3.0 + 1.0 / std::cosh(beta * lambda)) / 4.0;
}

SsbWitness ssb_witness(const SsbSurface& surface, const CellEvaluator& evaluate, double tol) {
  if (!(tol > 0)) throw InvalidInput("ssb_witness: tolerance must be positive");
  if (!surface.limit_i || !surface.limit_ii)
    throw InvalidInput("ssb_witness: the lambda grid must contain 0 and a nonzero coupling");

  double beta_max = surface.beta_grid.front();
  for (double b : surface.beta_grid) beta_max = std::max(beta_max, b);
  if (!(beta_max > 0)) throw InvalidInput("ssb_witness: the beta grid never leaves beta = 0");

  double lambda_probe = 0;
  for (double l : surface.lambda_grid)
    if (l != 0.0 && (lambda_probe == 0.0 || std::abs(l) < std::abs(lambda_probe)))
      lambda_probe = l;

  // Richardson-style edge check: doubling the edge beta must not move the
  // extracted values.
  const double doubled = std::isinf(beta_max) ? beta_max : 2.0 * beta_max;
  const double probe_i = evaluate(doubled, lambda_probe).S;
  const double probe_ii = evaluate(doubled, 0.0).S;
  const double drift = std::max(std::abs(probe_i - *surface.limit_i),
                                std::abs(probe_ii - *surface.limit_ii));
  if (drift >= tol / 10.0)
    throw RegimeError("ssb_witness: asymptotic regime not reached (edge doubling moved S by " +
                      std::to_string(drift) + "); extend the beta grid to at least " +
                      std::to_string(doubled));

  SsbWitness w;
  w.limit_i = *surface.limit_i;
  w.limit_ii = *surface.limit_ii;
  w.is_ssb = (w.limit_ii - w.limit_i) > tol;
  return w;
}

}  // namespace symdeg
