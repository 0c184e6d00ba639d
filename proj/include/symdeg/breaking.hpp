// Symmetry-breaking analytics for the one-parameter family H + lambda V:
// the closed-form coefficient bundle, coupling scans, spectral flows with
// degeneracy and avoided-crossing detection, the embedded-U(2) extension at
// an accidental degeneracy, and the quadratic-dip fit.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "symdeg/dos.hpp"
#include "symdeg/groupkit.hpp"
#include "symdeg/series.hpp"
#include "symdeg/types.hpp"

namespace symdeg {

struct BreakingAnalysis {
  double A_GV = 0;        // asymmetry of the perturbation under the ensemble
  double A_stderr = 0;    // 0 unless Monte Carlo estimated
  double xi = 0;          // 2 Tr(Hb Vb) / ||Vb||^2
  double eta = 0;         // ||Hb||^2 / ||Vb||^2
  double phi = 0;         // angle between the re-biased operators, in (0, pi)
  bool phi_singular = false;  // Hb parallel to Vb: the minimum formula blows up
  std::optional<double> lambda_A;  // -2 eta / xi; absent when xi = 0
  std::optional<double> S_min;     // 1 - A csc^2(phi); absent with lambda_A or when singular
};

// Coefficients of S(lambda) = 1 - A lambda^2 / (lambda^2 + xi lambda + eta)
// for the family H + lambda V, with H symmetric under the ensemble.
BreakingAnalysis analyze_breaking(const SquareOperator& h, const SquareOperator& v,
                                  const Ensemble& ensemble);

double dos_closed_form(const BreakingAnalysis& analysis, double lambda);

// Per-lambda symmetry degree of H + lambda V next to the closed-form column.
// anchor shifts the closed form to a symmetric point other than lambda = 0
// (the embedded-U(2) extension is symmetric at its crossing, not at zero).
// Columns: lambda, S, A, S_closed_form, stderr.
ScanSeries scan_dos(const SquareOperator& h, const SquareOperator& v, const Ensemble& ensemble,
                    std::span<const double> grid, Method method = Method::Auto,
                    double anchor = 0.0);

struct DegeneracyEvent {
  double lambda = 0;
  int lower_level = 0;  // gap between sorted levels (lower, lower+1)
  double gap = 0;
};

struct AvoidedEvent {
  double lambda = 0;
  int lower_level = 0;
  double min_gap = 0;
};

struct SpectrumScan {
  std::vector<double> grid;
  std::vector<std::vector<double>> levels;  // ascending per grid point
  std::vector<DegeneracyEvent> degeneracies;
  std::vector<AvoidedEvent> avoided;
};

// Eigenvalues along the grid; local minima of adjacent-level gaps are
// refined by golden-section search (lambda interval 1e-12) and classified:
// refined gap below degeneracy_tol * spectral range means a crossing,
// anything else is an avoided crossing with a strictly positive minimum.
// Persistent degeneracies (flat zero gaps) are not isolated events.
SpectrumScan scan_spectrum(const SquareOperator& h, const SquareOperator& v,
                           std::span<const double> grid,
                           double degeneracy_tol = tol::degeneracy);

// The embedded-U(2) ensemble on the two-fold degenerate eigenspace of h0.
// Requires the named level pair to be degenerate and isolated (exactly two
// levels in the cluster), and every base-group element to act inside the
// embedded U(2) with identity on the complement ("G_T is still U(2)");
// anything larger is unsupported and rejected.
ContinuousGroupSpec extend_group_at(const SquareOperator& h0, std::pair<int, int> level_pair,
                                    const FiniteGroup& base_group, int samples = 20000,
                                    std::uint64_t seed = 0,
                                    double degeneracy_tol = tol::degeneracy);

struct DipFit {
  double exponent = 0;
  double coefficient = 0;
  double window_lo = 0;  // |lambda - lambda0| window used for the fit
  double window_hi = 0;
  int points = 0;
};

// Least-squares fit of log A against log |lambda - lambda0| over the window
// [1e-3, 1e-1] * grid span, both sides of the puncture. The expected
// exponent at an accidental crossing is 2.
DipFit quadratic_dip_fit(const ScanSeries& series, double lambda0);

}  // namespace symdeg
