#include "symdeg/validate.hpp"

#include <cmath>

#include "symdeg/breaking.hpp"
#include "symdeg/dos.hpp"
#include "symdeg/models.hpp"
#include "symdeg/numkit.hpp"
#include "symdeg/rng.hpp"
#include "symdeg/ssb.hpp"

namespace symdeg {

namespace {

using oracle::OracleReport;

struct Suite {
  const ValidationOptions& options;
  std::vector<OracleReport> reports;

  void push(std::string name, double reference, double candidate, double tolerance) {
    if (options.inject_fault && *options.inject_fault == name)
      candidate += std::max(10.0 * tolerance, 1e-3);
    reports.push_back(oracle::make_report(std::move(name), reference, candidate, tolerance));
  }
};

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    g[static_cast<std::size_t>(i)] =
        (lo * (steps - 1 - i) + hi * i) / static_cast<double>(steps - 1);
  return g;
}

// Independent power-series exponential used only as a reference here.
SquareOperator series_exp_i(const SquareOperator& k) {
  const int n = k.dim();
  SquareOperator g = Complex(0, 1) * k;
  int squarings = 0;
  double scale = 0;
  for (Complex z : g.data()) scale = std::max(scale, std::abs(z));
  while (scale * n > 0.5 && squarings < 40) {
    g *= Complex(0.5);
    scale *= 0.5;
    ++squarings;
  }
  SquareOperator term = SquareOperator::identity(n);
  SquareOperator sum = term;
  for (int m = 1; m <= 24; ++m) {
    term = term * g;
    term *= Complex(1.0 / m);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

void numkit_checks(Suite& suite) {
  double triangle = 0, unitary_inv = 0, reconstruction = 0, rebias_comm = 0, exp_series = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int dim = 3 + static_cast<int>(seed % 4);
    const SquareOperator a = random_hermitian(dim, seed);
    const SquareOperator b = random_hermitian(dim, seed + 500);
    triangle = std::max(triangle, frobenius_norm(a + b) - frobenius_norm(a) - frobenius_norm(b));

    const SquareOperator u = random_unitary(dim, seed + 900);
    unitary_inv = std::max(unitary_inv,
                           std::abs(frobenius_norm(u * a * u.adjoint()) - frobenius_norm(a)));

    const EigenSystem es = hermitian_eigensystem(a);
    SquareOperator rec(dim);
    for (int k = 0; k < dim; ++k)
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
          rec(r, c) += es.values[static_cast<std::size_t>(k)] * es.vectors(r, k) *
                       std::conj(es.vectors(c, k));
    reconstruction =
        std::max(reconstruction, max_abs_diff(rec, a) / std::max(1.0, frobenius_norm(a)));

    rebias_comm = std::max(rebias_comm,
                           frobenius_norm(commutator(u, rebias(a)) - commutator(u, a)));

    SquareOperator k = a;
    const double nrm = frobenius_norm(k);
    if (nrm > 2.0) k *= Complex(2.0 / nrm);
    exp_series = std::max(exp_series, max_abs_diff(unitary_exp(k), series_exp_i(k)));
  }
  suite.push("numkit.triangle_inequality", 0.0, std::max(0.0, triangle), 1e-12);
  suite.push("numkit.unitary_norm_invariance", 0.0, unitary_inv, 1e-10);
  suite.push("numkit.eigen_reconstruction", 0.0, reconstruction, 1e-8);
  suite.push("numkit.rebias_commutator_invariance", 0.0, rebias_comm, 1e-10);
  suite.push("numkit.unitary_exp_series", 0.0, exp_series, 1e-10);
}

void groupkit_checks(Suite& suite) {
  const FiniteGroup td = builtin_group(BuiltinGroup::Td4);
  const FiniteGroup c3v = builtin_group(BuiltinGroup::C3v4);

  int axiom_failures = 0;
  for (auto which : {BuiltinGroup::Td4, BuiltinGroup::C3v4, BuiltinGroup::D3,
                     BuiltinGroup::Z2_3site})
    if (!verify_group_axioms(builtin_group(which))) ++axiom_failures;
  suite.push("groupkit.builtin_axioms", 0.0, axiom_failures, 0.5);

  double subgroup = 0;
  for (const auto& e : c3v.elements) {
    double best = 1e9;
    for (const auto& t : td.elements) best = std::min(best, frobenius_norm(e - t));
    subgroup = std::max(subgroup, best);
  }
  suite.push("groupkit.subgroup_witness", 0.0, subgroup, 1e-9);

  double closure = 0;
  for (const auto& a : td.elements)
    for (const auto& b : td.elements) {
      const SquareOperator prod = a * b;
      double best = 1e9;
      for (const auto& t : td.elements) best = std::min(best, frobenius_norm(prod - t));
      closure = std::max(closure, best);
    }
  suite.push("groupkit.representation_closure", 0.0, closure, 1e-9);

  // Haar invariance of a fixed matrix-element functional under left shifts.
  const AngularOperators ops = angular_operators(1, AngularSpace::SingleIrrep);
  ContinuousGroupSpec spec;
  spec.kind = ContinuousKind::SO3;
  spec.carrier = Carrier::spin_irrep(2);
  spec.seed = derive_stream(suite.options.seed, 0x11aa);
  spec.samples = suite.options.samples;
  const SquareOperator u0 = unitary_exp(Complex(-0.7) * ops.jx);
  std::vector<double> plain(static_cast<std::size_t>(spec.samples));
  std::vector<double> shifted(static_cast<std::size_t>(spec.samples));
  std::vector<double> twirl_mean(static_cast<std::size_t>(spec.samples));
  const double jz_sq = frobenius_norm_sq(ops.jz);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < spec.samples; ++i) {
    const SquareOperator r = haar_element(spec, static_cast<std::uint64_t>(i));
    plain[static_cast<std::size_t>(i)] = r(0, 1).real() + 0.5 * r(1, 0).imag();
    const SquareOperator ur = u0 * r;
    shifted[static_cast<std::size_t>(i)] = ur(0, 1).real() + 0.5 * ur(1, 0).imag();
    twirl_mean[static_cast<std::size_t>(i)] =
        real_trace_product(ops.jz, r.adjoint() * ops.jz * r) / jz_sq;
  }
  const MeanStderr mp = mean_and_stderr(plain);
  const MeanStderr ms = mean_and_stderr(shifted);
  suite.push("groupkit.haar_invariance", 0.0, std::abs(mp.mean - ms.mean),
             3.0 * (mp.stderr_ + ms.stderr_) + 1e-12);
  const MeanStderr mt = mean_and_stderr(twirl_mean);
  suite.push("groupkit.haar_twirl_mean", 0.0, std::abs(mt.mean),
             std::max(0.02, 3.0 * mt.stderr_));
}

void dos_property_checks(Suite& suite) {
  double lower = 0, upper = 0, basis = 0, scaling = 0, shift = 0, hierarchy = 0, duality = 0,
         twirl_identity = 0, irrep_identity = 0, saturation = 0;
  CounterRng picker(derive_stream(suite.options.seed, 0x22bb), 0);

  for (auto which : {BuiltinGroup::Td4, BuiltinGroup::C3v4, BuiltinGroup::D3,
                     BuiltinGroup::Z2_3site}) {
    const FiniteGroup g = builtin_group(which);
    const Ensemble ens(g);
    for (std::uint64_t trial = 1; trial <= 25; ++trial) {
      const SquareOperator h =
          random_hermitian(g.dim(), trial * 911 + static_cast<std::uint64_t>(which));
      const DoSResult s = dos(h, ens, Mode::Hamiltonian);
      const DoSResult a = doas(h, ens, Mode::Hamiltonian);
      lower = std::max(lower, 0.5 - s.S);
      upper = std::max(upper, s.S - 1.0);
      upper = std::max(upper, std::max(-a.A, a.A - 1.0));
      duality = std::max(duality, std::abs(s.S - (1.0 - a.A)));

      for (double c : {-3.0, 0.5, 10.0})
        scaling = std::max(scaling, std::abs(dos(c * h, ens, Mode::Hamiltonian).S - s.S));
      shift = std::max(shift, std::abs(dos(h + 2.7 * SquareOperator::identity(g.dim()), ens,
                                           Mode::Hamiltonian)
                                           .S -
                                       s.S));

      const SquareOperator w = random_unitary(g.dim(), trial * 31 + 5);
      FiniteGroup conj = g;
      for (auto& e : conj.elements) e = w * e * w.adjoint();
      basis = std::max(basis, std::abs(dos(w * h * w.adjoint(), Ensemble(conj),
                                           Mode::Hamiltonian)
                                           .S -
                                       s.S));

      twirl_identity =
          std::max(twirl_identity, std::abs(dos_via_twirl(h, ens, Mode::Hamiltonian).S - s.S));

      for (int sub = 0; sub < 10; ++sub) {
        std::vector<SquareOperator> subset;
        for (const auto& e : g.elements)
          if (picker.uniform() < 0.5) subset.push_back(e);
        if (subset.empty()) subset.push_back(g.elements.front());
        const double ns = static_cast<double>(subset.size()) *
                          dos(h, Ensemble::finite_set(subset), Mode::Hamiltonian).S;
        hierarchy = std::max(hierarchy, ns - g.order() * s.S);
      }
    }

    // completeness-relation identity on the multiplicity-free splits
    if (which == BuiltinGroup::Td4 || which == BuiltinGroup::D3) {
      const IrrepDecomposition dec = irrep_decompose(g, character_table(which));
      for (std::uint64_t trial = 1; trial <= 10; ++trial) {
        const SquareOperator h = random_hermitian(g.dim(), trial * 53 + 7);
        irrep_identity = std::max(irrep_identity,
                                  std::abs(dos_irrep_formula(h, dec).S -
                                           dos_via_twirl(h, ens, Mode::Hamiltonian).S));
      }
    }
  }

  const auto [h4, v4] = four_site_hamiltonians({});
  saturation = std::abs(dos(h4, Ensemble(builtin_group(BuiltinGroup::Td4)),
                            Mode::Hamiltonian)
                            .S -
                        1.0);

  suite.push("dos.group_lower_bound", 0.0, std::max(0.0, lower), 1e-12);
  suite.push("dos.range_bounds", 0.0, std::max(0.0, upper), 1e-12);
  suite.push("dos.basis_independence", 0.0, basis, 1e-10);
  suite.push("dos.scaling_invariance", 0.0, scaling, 1e-12);
  suite.push("dos.shift_invariance", 0.0, shift, 1e-12);
  suite.push("dos.hierarchy", 0.0, std::max(0.0, hierarchy), 1e-10);
  suite.push("dos.duality", 0.0, duality, 1e-12);
  suite.push("dos.twirl_identity", 0.0, twirl_identity, 1e-12);
  suite.push("dos.irrep_formula_identity", 0.0, irrep_identity, 1e-12);
  suite.push("dos.symmetric_saturation", 0.0, saturation, 1e-12);
}

void four_site_checks(Suite& suite) {
  const Ensemble td(builtin_group(BuiltinGroup::Td4));
  double dev_a = 0, dev_xi = 0, dev_eta = 0, dev_lambda_a = 0, dev_smin = 0, dev_inf = 0,
         dev_identity = 0, dev_star = 0;
  for (double gamma : {0.0, 1.0, 2.0}) {
    const FourSiteModel m{.eps = 0, .h = 1, .delta0 = gamma, .delta1 = 1};
    const auto [h, v] = four_site_hamiltonians(m);
    const FourSiteConstants c = four_site_constants(m);
    const BreakingAnalysis ba = analyze_breaking(h, v, td);

    dev_a = std::max(dev_a, std::abs(ba.A_GV - c.A_TdV));
    dev_xi = std::max(dev_xi, std::abs(ba.xi - 16.0 / (gamma * gamma + 8.0)));
    dev_eta = std::max(dev_eta, std::abs(ba.eta - ba.xi));  // eta = xi h / delta1 at h = delta1 = 1
    dev_lambda_a = std::max(dev_lambda_a, std::abs(*ba.lambda_A - c.lambda_A));

    const auto grid = linspace(-6, 6, 121);
    const ScanSeries scan = scan_dos(h, v, td, grid, Method::Direct);
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < scan.rows.size(); ++i)
      if (scan.rows[i][1] < scan.rows[argmin][1]) argmin = i;
    dev_smin = std::max(dev_smin, std::abs(scan.rows[argmin][1] - *ba.S_min));
    for (const auto& row : scan.rows) dev_identity = std::max(dev_identity, std::abs(row[1] - row[3]));

    SquareOperator far = h;
    far += 1e6 * v;
    dev_inf = std::max(dev_inf, std::abs(dos(far, td, Mode::Hamiltonian).S - c.S_inf));

    if (gamma < 2.0) {
      const SpectrumScan spectrum = scan_spectrum(h, v, linspace(-4, 2, 121));
      double best = 1e9;
      for (const auto& ev : spectrum.avoided)
        best = std::min(best, std::abs(ev.lambda - c.lambda_star));
      dev_star = std::max(dev_star, best);
    }
  }
  suite.push("model.four_site.A_TdV", 0.0, dev_a, 1e-12);
  suite.push("model.four_site.xi", 0.0, dev_xi, 1e-12);
  suite.push("model.four_site.eta", 0.0, dev_eta, 1e-12);
  suite.push("model.four_site.lambda_A", 0.0, dev_lambda_a, 1e-12);
  suite.push("model.four_site.S_min", 0.0, dev_smin, 1e-8);
  suite.push("model.four_site.asymptote", 0.0, dev_inf, 1e-5);
  suite.push("model.four_site.closed_form_identity", 0.0, dev_identity, 1e-10);
  suite.push("model.four_site.avoided_crossing", 0.0, dev_star, 1e-3);
}

void three_site_checks(Suite& suite) {
  const auto [h, v] = three_site_hamiltonians({});
  const ThreeSiteConstants c = three_site_constants({});

  const SpectrumScan spectrum = scan_spectrum(h, v, linspace(-1, 3, 81));
  double dev_deg = 1e9;
  if (spectrum.degeneracies.size() == 2)
    dev_deg = std::max(std::abs(spectrum.degeneracies[0].lambda - c.lambda01),
                       std::abs(spectrum.degeneracies[1].lambda - c.lambda02));
  suite.push("model.three_site.degeneracies", 0.0, dev_deg, 1e-9);

  SquareOperator at_crossing = h;
  at_crossing += c.lambda02 * v;
  const ContinuousGroupSpec ext =
      extend_group_at(at_crossing, {1, 2}, builtin_group(BuiltinGroup::Z2_3site),
                      suite.options.samples, derive_stream(suite.options.seed, 0x33cc));

  const auto grid = linspace(-3, 6, 61);
  const ScanSeries scan = scan_dos(h, v, Ensemble(ext), grid, Method::Twirl, c.lambda02);
  double dev_cf = 0;
  for (const auto& row : scan.rows)
    dev_cf = std::max(dev_cf, std::abs(row[1] - three_site_dos_closed_form({}, row[0])));
  suite.push("model.three_site.extension_closed_form", 0.0, dev_cf, 1e-12);

  const DoSResult mc = dos(h, Ensemble(ext), Mode::Hamiltonian);
  suite.push("model.three_site.extension_mc", 0.0, std::abs(mc.S - 0.625),
             std::max(5e-3, 3.0 * mc.stderr_));

  const ScanSeries dense = scan_dos(h, v, Ensemble(ext), linspace(0, 3, 601), Method::Twirl,
                                    c.lambda02);
  const DipFit fit = quadratic_dip_fit(dense, c.lambda02);
  suite.push("model.three_site.dip_exponent", 2.0, fit.exponent, 0.05);
  suite.push("model.three_site.dip_prefactor", 1.0 / 6.0, fit.coefficient, 0.05 / 6.0);
}

void angular_checks(Suite& suite) {
  double dev_eta = 0, dev_xi = 0;
  for (int j : {1, 2, 3}) {
    const AngularModel m{.j = j, .eps = 1};
    const auto [h, v] = angular_hamiltonians(m);
    const SquareOperator hb = rebias(h);
    const SquareOperator vb = rebias(v);
    dev_eta = std::max(dev_eta, std::abs(frobenius_norm_sq(hb) / frobenius_norm_sq(vb) -
                                         j * (j + 2.0) / 2.0));
    dev_xi = std::max(dev_xi, std::abs(2.0 * real_trace_product(hb, vb) / frobenius_norm_sq(vb)));
  }
  suite.push("model.angular.eta", 0.0, dev_eta, 1e-12);
  suite.push("model.angular.xi", 0.0, dev_xi, 1e-12);

  const AngularModel m{.j = 1, .eps = 1};
  const auto [h, v] = angular_hamiltonians(m);
  ContinuousGroupSpec spec;
  spec.kind = ContinuousKind::O3;
  spec.carrier = angular_model_carrier(m);
  spec.samples = suite.options.samples;
  spec.seed = derive_stream(suite.options.seed, 0x44dd);

  suite.push("model.angular.doas_perturbation", 0.5,
             1.0 - dos_via_twirl(v, Ensemble(spec), Mode::Hamiltonian).S, 1e-12);

  double dev_mc = 0, band = 5e-3;
  for (double lambda : {0.5, 1.0, 2.0}) {
    SquareOperator ht = h;
    ht += lambda * v;
    const DoSResult r = dos(ht, Ensemble(spec), Mode::Hamiltonian);
    dev_mc = std::max(dev_mc, std::abs(r.S - angular_dos_closed_form(m, lambda)));
    band = std::max(band, 3.0 * r.stderr_);
  }
  suite.push("model.angular.mc_closed_form", 0.0, dev_mc, band);
}

void ssb_checks(Suite& suite) {
  const SquareOperator mixed = Complex(1.0 / 3.0) * SquareOperator::identity(3);
  suite.push("ssb.maximally_mixed", 1.0,
             dos(mixed, Ensemble(builtin_group(BuiltinGroup::D3)), Mode::State).S, 1e-15);

  // state-mode shift dependence is real: |0><0| vs normalize(|0><0| + I)
  const FiniteGroup flip = close_group(
      std::vector<SquareOperator>{SquareOperator::from_rows({{0, 1}, {1, 0}})}, 4);
  SquareOperator pure(2);
  pure(0, 0) = 1.0;
  SquareOperator shifted = pure + SquareOperator::identity(2);
  shifted *= Complex(1.0 / 3.0);
  const double gap = std::abs(dos(shifted, Ensemble(flip), Mode::State).S -
                              dos(pure, Ensemble(flip), Mode::State).S);
  suite.push("ssb.state_shift_dependence", 0.2, gap, 1e-9);

  const auto [h, v] = spin_half_hamiltonians({.eps = 1});
  ContinuousGroupSpec spec;
  spec.kind = ContinuousKind::O3;
  spec.carrier = spin_half_carrier();
  spec.samples = suite.options.samples;
  spec.seed = derive_stream(suite.options.seed, 0x55ee);
  const std::vector<double> betas = linspace(0, 25, 5);
  const std::vector<double> lambdas = linspace(0, 2, 5);

  const CellEvaluator mc_eval = make_doss_evaluator(h, v, Ensemble(spec), Method::MonteCarlo);
  const SsbSurface mc_surface = doss_surface(mc_eval, betas, lambdas);
  double dev_mc = 0, band = 5e-3, dev_zero = 0;
  for (std::size_t ib = 0; ib < betas.size(); ++ib) {
    for (std::size_t il = 0; il < lambdas.size(); ++il) {
      const DoSResult& cell = mc_surface.cells[ib][il];
      const double expect = spin_half_doss_closed_form(betas[ib], lambdas[il]);
      if (lambdas[il] == 0.0)
        dev_zero = std::max(dev_zero, std::abs(cell.S - 1.0));
      else
        dev_mc = std::max(dev_mc, std::abs(cell.S - expect));
      band = std::max(band, 3.0 * cell.stderr_);
    }
  }
  suite.push("ssb.spin_half_surface_mc", 0.0, dev_mc, band);
  suite.push("ssb.spin_half_lambda0_column", 0.0, dev_zero, 1e-12);

  const CellEvaluator exact_eval = make_doss_evaluator(h, v, Ensemble(spec), Method::Auto);
  const SsbSurface surface = doss_surface(exact_eval, betas, lambdas);
  const SsbWitness w = ssb_witness(surface, exact_eval, 0.01);
  suite.push("ssb.witness_limit_i", 0.75, w.limit_i, 1e-3);
  suite.push("ssb.witness_limit_ii", 1.0, w.limit_ii, 1e-3);
  suite.push("ssb.witness_flag", 1.0, w.is_ssb ? 1.0 : 0.0, 0.5);
}

void oracle_checks(Suite& suite) {
  double dev_direct = 0;
  for (auto which : {BuiltinGroup::Td4, BuiltinGroup::D3}) {
    const FiniteGroup g = builtin_group(which);
    for (std::uint64_t trial = 60; trial < 66; ++trial) {
      const SquareOperator h = random_hermitian(g.dim(), trial);
      const SquareOperator hb = rebias(h);
      const double norm_sq = frobenius_norm_sq(hb);
      const double ref =
          oracle::direct_group_average(hb, g, oracle::AvgForm::Anticommutator) / (4.0 * norm_sq);
      dev_direct = std::max(dev_direct,
                            std::abs(dos(h, Ensemble(g), Mode::Hamiltonian).S - ref));
      dev_direct = std::max(dev_direct,
                            std::abs(dos_via_twirl(h, Ensemble(g), Mode::Hamiltonian).S - ref));
    }
  }
  suite.push("oracle.direct_agreement", 0.0, dev_direct, 1e-12);

  const auto [h, v] = three_site_hamiltonians({});
  SquareOperator at_crossing = h;
  at_crossing += 1.5 * v;
  const ContinuousGroupSpec ext =
      extend_group_at(at_crossing, {1, 2}, builtin_group(BuiltinGroup::Z2_3site),
                      suite.options.samples, derive_stream(suite.options.seed, 0x66ff));
  const oracle::McEstimate est =
      oracle::mc_reference(h, ext, Mode::Hamiltonian, std::max(10000, suite.options.samples));
  const double exact = dos_via_twirl(h, Ensemble(ext), Mode::Hamiltonian).S;
  suite.push("oracle.mc_agreement", exact, est.mean, 3.0 * est.stderr_);
}

}  // namespace

std::vector<oracle::OracleReport> run_validation_suite(const ValidationOptions& options) {
  Suite suite{options, {}};
  numkit_checks(suite);
  groupkit_checks(suite);
  dos_property_checks(suite);
  four_site_checks(suite);
  three_site_checks(suite);
  angular_checks(suite);
  ssb_checks(suite);
  oracle_checks(suite);
  return suite.reports;
}

}  // namespace symdeg
