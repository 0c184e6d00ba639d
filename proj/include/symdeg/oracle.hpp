// Brute-force reference implementations kept deliberately separate from the
// canonical evaluators: literal group sums, plain-sum Monte Carlo with
// batch error bars, and a two-point slope estimate. Agreement between these
// and the fast paths is evidence, not tautology, so nothing here calls the
// norm or averaging code in numkit/dos.
#pragma once

#include <string>

#include "symdeg/dos.hpp"
#include "symdeg/groupkit.hpp"
#include "symdeg/series.hpp"
#include "symdeg/types.hpp"

namespace symdeg::oracle {

struct OracleReport {
  std::string name;
  double reference = 0;
  double candidate = 0;
  double abs_dev = 0;
  double rel_dev = 0;
  double tolerance = 0;
  bool pass = false;
};

OracleReport make_report(std::string name, double reference, double candidate, double tolerance);

enum class AvgForm { Commutator, Anticommutator };

// The literal n_G-term average of squared Frobenius norms of [R(g), F] or
// {R(g), F}; no rebias, no normalization, no algebraic shortcuts.
double direct_group_average(const SquareOperator& f, const FiniteGroup& g, AvgForm form);

struct McEstimate {
  double mean = 0;
  double stderr_ = 0;
};

// Plain-sum Monte Carlo estimate of the symmetry degree over n draws from
// the spec's sampler, with a 10-batch standard error. Hamiltonian mode
// subtracts the trace mean (own arithmetic); state mode uses F as given.
McEstimate mc_reference(const SquareOperator& f, const ContinuousGroupSpec& spec, Mode mode,
                        long n);

// Two-point log-slope through the innermost and outermost usable points of
// the dip window; cross-validates the least-squares fit.
double exponent_fit_reference(const ScanSeries& series, double lambda0);

}  // namespace symdeg::oracle
