#include "symdeg/breaking.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>

#include "symdeg/numkit.hpp"

namespace symdeg {

BreakingAnalysis analyze_breaking(const SquareOperator& h, const SquareOperator& v,
                                  const Ensemble& ensemble) {
  h.require_same_dim(v);
  const SquareOperator hb = rebias(h);
  const SquareOperator vb = rebias(v);
  const double hb_sq = frobenius_norm_sq(hb);
  const double vb_sq = frobenius_norm_sq(vb);
  if (hb_sq <= 0 || vb_sq <= 0)
    throw InvalidInput("analyze_breaking: degenerate norms (re-biased H or V vanishes)");

  BreakingAnalysis out;
  const double t = real_trace_product(hb, vb);
  out.xi = 2.0 * t / vb_sq;
  out.eta = hb_sq / vb_sq;

  double cos_phi = t / std::sqrt(hb_sq * vb_sq);
  cos_phi = std::clamp(cos_phi, -1.0, 1.0);
  out.phi = std::acos(cos_phi);
  out.phi_singular = (1.0 - cos_phi * cos_phi) < 1e-12;

  if (ensemble.is_finite()) {
    out.A_GV = doas(v, ensemble, Mode::Hamiltonian).A;
  } else if (ensemble.continuous().analytic_twirl_available) {
    out.A_GV = 1.0 - dos_via_twirl(v, ensemble, Mode::Hamiltonian).S;
  } else {
    const DoSResult mc = doas(v, ensemble, Mode::Hamiltonian);
    out.A_GV = mc.A;
    out.A_stderr = mc.stderr_;
  }

  const double xi_scale = std::max(1.0, std::sqrt(out.eta));
  if (std::abs(out.xi) > 1e-12 * xi_scale) {
    out.lambda_A = -2.0 * out.eta / out.xi;
    if (!out.phi_singular) {
      const double csc_sq = 1.0 / (1.0 - cos_phi * cos_phi);
      out.S_min = 1.0 - out.A_GV * csc_sq;
    }
  }
  return out;
}

double dos_closed_form(const BreakingAnalysis& analysis, double lambda) {
  const double denom = lambda * lambda + analysis.xi * lambda + analysis.eta;
  const double scale = lambda * lambda + std::abs(analysis.xi * lambda) + analysis.eta;
  if (std::abs(denom) <= 1e-12 * std::max(1.0, scale))
    throw NumericFailure("dos_closed_form: vanishing denominator at lambda = " +
                         std::to_string(lambda));
  return 1.0 - analysis.A_GV * lambda * lambda / denom;
}

ScanSeries scan_dos(const SquareOperator& h, const SquareOperator& v, const Ensemble& ensemble,
                    std::span<const double> grid, Method method, double anchor) {
  h.require_same_dim(v);
  SquareOperator h_anchor = h;
  if (anchor != 0.0) h_anchor += anchor * v;
  const BreakingAnalysis analysis = analyze_breaking(h_anchor, v, ensemble);

  const std::size_t n = grid.size();
  std::vector<double> s_col(n), a_col(n), cf_col(n), err_col(n);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      const double lambda = grid[i];
      SquareOperator ht = h;
      ht += lambda * v;
      const DoSResult r = evaluate_dos(ht, ensemble, Mode::Hamiltonian, method);
      s_col[i] = r.S;
      a_col[i] = r.A;
      err_col[i] = r.stderr_;
      cf_col[i] = dos_closed_form(analysis, lambda - anchor);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  ScanSeries series;
  series.columns = {"lambda", "S", "A", "S_closed_form", "stderr"};
  for (std::size_t i = 0; i < n; ++i)
    series.append_row({grid[i], s_col[i], a_col[i], cf_col[i], err_col[i]});
  return series;
}

namespace {

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol_x) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol_x) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

SpectrumScan scan_spectrum(const SquareOperator& h, const SquareOperator& v,
                           std::span<const double> grid, double degeneracy_tol) {
  h.require_same_dim(v);
  if (grid.size() < 2) throw InvalidInput("scan_spectrum: grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidInput("scan_spectrum: grid must ascend");

  SpectrumScan scan;
  scan.grid.assign(grid.begin(), grid.end());
  const std::size_t n = grid.size();
  const int d = h.dim();
  scan.levels.resize(n);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      SquareOperator ht = h;
      ht += grid[i] * v;
      scan.levels[i] = hermitian_eigensystem(ht).values;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  double lo = scan.levels[0][0], hi = scan.levels[0][0];
  for (const auto& lv : scan.levels) {
    lo = std::min(lo, lv.front());
    hi = std::max(hi, lv.back());
  }
  const double scale = std::max(hi - lo, 1e-30);
  const double flat_eps = 1e-12 * scale;

  auto gap_at = [&](int k, double lambda) {
    SquareOperator ht = h;
    ht += lambda * v;
    const auto values = hermitian_eigensystem(ht).values;
    return values[static_cast<std::size_t>(k + 1)] - values[static_cast<std::size_t>(k)];
  };

  for (int k = 0; k + 1 < d; ++k) {
    std::vector<double> gap(n);
    for (std::size_t i = 0; i < n; ++i)
      gap[i] = scan.levels[i][static_cast<std::size_t>(k + 1)] -
               scan.levels[i][static_cast<std::size_t>(k)];

    double last_event = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const bool local_min = gap[i] <= gap[i - 1] && gap[i] <= gap[i + 1];
      const bool not_flat = gap[i - 1] > gap[i] + flat_eps || gap[i + 1] > gap[i] + flat_eps;
      if (!local_min || !not_flat) continue;

      const double a = grid[i - 1], b = grid[i + 1];
      // refine below the 1e-12 reporting tolerance so regridding cannot move
      // a reported crossing by more than that
      const double lambda0 =
          golden_section_min([&](double x) { return gap_at(k, x); }, a, b, 1e-13);
      const double min_gap = gap_at(k, lambda0);

      const double step = std::min(grid[i] - grid[i - 1], grid[i + 1] - grid[i]);
      if (lambda0 - last_event < 0.5 * step) continue;  // duplicate bracket
      // certificate: the gap rises measurably on both sides of the refined
      // point; knees of flat-bottomed valleys (a level entering a
      // persistently degenerate multiplet) cannot be localized this way and
      // are not isolated events
      const double probe = 0.1 * step;
      if (!(gap_at(k, lambda0 - probe) > min_gap + flat_eps &&
            gap_at(k, lambda0 + probe) > min_gap + flat_eps))
        continue;
      last_event = lambda0;

      if (min_gap <= degeneracy_tol * scale)
        scan.degeneracies.push_back({lambda0, k, min_gap});
      else
        scan.avoided.push_back({lambda0, k, min_gap});
    }
  }
  return scan;
}

ContinuousGroupSpec extend_group_at(const SquareOperator& h0, std::pair<int, int> level_pair,
                                    const FiniteGroup& base_group, int samples,
                                    std::uint64_t seed, double degeneracy_tol) {
  if (base_group.dim() != h0.dim())
    throw InvalidInput("extend_group_at: base group dimension mismatch");
  const EigenSystem es = hermitian_eigensystem(h0);
  const int d = h0.dim();
  const int i = level_pair.first, j = level_pair.second;
  if (i < 0 || j < 0 || i >= d || j >= d || i == j)
    throw InvalidInput("extend_group_at: bad level pair");

  const double spread = es.values.back() - es.values.front();
  const double scale = std::max({spread, frobenius_norm(h0), 1e-30});
  const double ei = es.values[static_cast<std::size_t>(i)];
  const double ej = es.values[static_cast<std::size_t>(j)];
  if (std::abs(ei - ej) > degeneracy_tol * scale)
    throw InvalidInput("extend_group_at: the named levels are not degenerate (gap " +
                       std::to_string(std::abs(ei - ej)) + ")");
  // the cluster must contain exactly the two named levels
  const double mean = 0.5 * (ei + ej);
  for (int k = 0; k < d; ++k) {
    if (k == i || k == j) continue;
    if (std::abs(es.values[static_cast<std::size_t>(k)] - mean) <= degeneracy_tol * scale)
      throw InvalidInput("extend_group_at: degenerate subspace dimension exceeds 2 "
                         "(general N-level crossings are unsupported)");
  }

  std::vector<std::vector<Complex>> basis(2, std::vector<Complex>(static_cast<std::size_t>(d)));
  for (int r = 0; r < d; ++r) {
    basis[0][static_cast<std::size_t>(r)] = es.vectors(r, i);
    basis[1][static_cast<std::size_t>(r)] = es.vectors(r, j);
  }
  Carrier carrier = Carrier::embedded(std::move(basis));

  // Containment: each base element must preserve the subspace and act as
  // the identity on its complement.
  SquareOperator p(d);
  for (int a = 0; a < 2; ++a)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        p(r, c) += carrier.embed_basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)] *
                   std::conj(carrier.embed_basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)]);
  const SquareOperator pc = SquareOperator::identity(d) - p;
  for (std::size_t g = 0; g < base_group.elements.size(); ++g) {
    const SquareOperator& r = base_group.elements[g];
    if (frobenius_norm(commutator(r, p)) > 1e-9 ||
        frobenius_norm(pc * r * pc - pc) > 1e-9)
      throw InvalidInput("extend_group_at: base element '" + base_group.labels[g] +
                         "' lies outside the embedded U(2); the extension is unsupported");
  }

  ContinuousGroupSpec spec;
  spec.kind = ContinuousKind::U2Embedded;
  spec.carrier = std::move(carrier);
  spec.samples = samples;
  spec.seed = seed;
  spec.analytic_twirl_available = true;
  return spec;
}

namespace {

struct WindowPoints {
  std::vector<double> log_r;
  std::vector<double> log_a;
  double lo = 0, hi = 0;
  bool below = false, above = false;
};

WindowPoints dip_window_points(const ScanSeries& series, double lambda0) {
  int lambda_col = -1, a_col = -1;
  for (std::size_t c = 0; c < series.columns.size(); ++c) {
    if (series.columns[c] == "lambda") lambda_col = static_cast<int>(c);
    if (series.columns[c] == "A") a_col = static_cast<int>(c);
  }
  if (lambda_col < 0 || a_col < 0)
    throw InvalidInput("dip fit: series lacks 'lambda' and 'A' columns");
  if (series.rows.empty()) throw InvalidInput("dip fit: empty series");

  double lo = series.rows.front()[static_cast<std::size_t>(lambda_col)];
  double hi = lo;
  for (const auto& row : series.rows) {
    lo = std::min(lo, row[static_cast<std::size_t>(lambda_col)]);
    hi = std::max(hi, row[static_cast<std::size_t>(lambda_col)]);
  }
  const double span = hi - lo;
  if (span <= 0) throw InvalidInput("dip fit: degenerate grid span");

  WindowPoints w;
  w.lo = 1e-3 * span;
  w.hi = 1e-1 * span;
  for (const auto& row : series.rows) {
    const double lambda = row[static_cast<std::size_t>(lambda_col)];
    const double a = row[static_cast<std::size_t>(a_col)];
    const double r = std::abs(lambda - lambda0);
    if (r < w.lo || r > w.hi) continue;
    if (a <= 1e-14) continue;  // flat-symmetric points carry no dip signal
    w.log_r.push_back(std::log(r));
    w.log_a.push_back(std::log(a));
    (lambda < lambda0 ? w.below : w.above) = true;
  }
  return w;
}

}  // namespace

DipFit quadratic_dip_fit(const ScanSeries& series, double lambda0) {
  const WindowPoints w = dip_window_points(series, lambda0);
  if (w.log_r.size() < 4 || !w.below || !w.above)
    throw InvalidInput("dip fit: the asymmetry vanishes near lambda0 or the punctured "
                       "neighborhood is undersampled — no dip to fit");

  const std::size_t n = w.log_r.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += w.log_r[i];
    sy += w.log_a[i];
    sxx += w.log_r[i] * w.log_r[i];
    sxy += w.log_r[i] * w.log_a[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12)
    throw NumericFailure("dip fit: degenerate abscissa spread");
  DipFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.coefficient = std::exp(intercept);
  fit.window_lo = w.lo;
  fit.window_hi = w.hi;
  fit.points = static_cast<int>(n);
  return fit;
}

}  // namespace symdeg
