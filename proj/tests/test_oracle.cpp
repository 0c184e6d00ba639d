#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symdeg/breaking.hpp"
#include "symdeg/models.hpp"
#include "symdeg/numkit.hpp"
#include "symdeg/oracle.hpp"
#include "symdeg/ssb.hpp"
#include "test_util.hpp"

using namespace symdeg;
using oracle::AvgForm;

namespace {

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    g[static_cast<std::size_t>(i)] =
        (lo * (steps - 1 - i) + hi * i) / static_cast<double>(steps - 1);
  return g;
}

}  // namespace

TEST_CASE("literal group averages") {
  const FiniteGroup td = builtin_group(BuiltinGroup::Td4);
  const auto [h, v] = four_site_hamiltonians({});

  SUBCASE("a symmetric pair has a vanishing commutator average") {
    CHECK(oracle::direct_group_average(h, td, AvgForm::Commutator) <= 1e-24);
  }
  SUBCASE("the anticommutator average of a symmetric operator saturates") {
    const SquareOperator hb = rebias(h);
    const double avg = oracle::direct_group_average(hb, td, AvgForm::Anticommutator);
    CHECK(std::abs(avg / (4.0 * frobenius_norm_sq(hb)) - 1.0) <= 1e-13);
  }
  SUBCASE("the perturbation asymmetry matches the fast evaluator") {
    const SquareOperator vb = rebias(v);
    const double avg = oracle::direct_group_average(vb, td, AvgForm::Commutator);
    const double a_ref = avg / (4.0 * frobenius_norm_sq(vb));
    CHECK(std::abs(a_ref - 0.25) <= 1e-13);
    const double a_fast = doas(v, Ensemble(td), Mode::Hamiltonian).A;
    CHECK(std::abs(a_ref - a_fast) <= 1e-12);
  }
}

TEST_CASE("every exact evaluator agrees with the literal path") {
  for (auto which : {BuiltinGroup::Td4, BuiltinGroup::C3v4, BuiltinGroup::D3,
                     BuiltinGroup::Z2_3site}) {
    const FiniteGroup g = builtin_group(which);
    for (std::uint64_t seed = 40; seed < 46; ++seed) {
      const SquareOperator h = random_hermitian(g.dim(), seed);
      const SquareOperator hb = rebias(h);
      const double norm_sq = frobenius_norm_sq(hb);
      const double s_ref =
          oracle::direct_group_average(hb, g, AvgForm::Anticommutator) / (4.0 * norm_sq);
      const double a_ref =
          oracle::direct_group_average(hb, g, AvgForm::Commutator) / (4.0 * norm_sq);

      CHECK(std::abs(dos(h, Ensemble(g), Mode::Hamiltonian).S - s_ref) <= 1e-12);
      CHECK(std::abs(doas(h, Ensemble(g), Mode::Hamiltonian).A - a_ref) <= 1e-12);
      CHECK(std::abs(dos_via_twirl(h, Ensemble(g), Mode::Hamiltonian).S - s_ref) <= 1e-12);
      CHECK(std::abs(s_ref + a_ref - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("monte carlo reference estimates") {
  SUBCASE("angular model") {
    const AngularModel m{.j = 1, .eps = 1};
    const auto [h, v] = angular_hamiltonians(m);
    SquareOperator ht = h;
    ht += 1.0 * v;
    ContinuousGroupSpec spec;
    spec.kind = ContinuousKind::O3;
    spec.carrier = angular_model_carrier(m);
    spec.seed = 1501;
    const oracle::McEstimate est = oracle::mc_reference(ht, spec, Mode::Hamiltonian, 20000);
    CHECK(est.stderr_ > 0);
    CHECK(std::abs(est.mean - 0.8) <= std::max(5e-3, 3.0 * est.stderr_));
  }

  SUBCASE("three-site extension at lambda = 0") {
    const auto [h, v] = three_site_hamiltonians({});
    SquareOperator at_crossing = h;
    at_crossing += 1.5 * v;
    const ContinuousGroupSpec spec =
        extend_group_at(at_crossing, {1, 2}, builtin_group(BuiltinGroup::Z2_3site), 20000, 7713);
    const oracle::McEstimate est = oracle::mc_reference(h, spec, Mode::Hamiltonian, 20000);
    CHECK(std::abs(est.mean - 0.625) <= std::max(5e-3, 3.0 * est.stderr_));

    // ... and the analytic twirl lands inside the reference error bars
    const double exact = dos_via_twirl(h, Ensemble(spec), Mode::Hamiltonian).S;
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.stderr_);
  }

  SUBCASE("spin-half thermal state") {
    const auto [h, v] = spin_half_hamiltonians({.eps = 1});
    SquareOperator ht = h;
    ht += 1.0 * v;
    const ThermalState ts = thermal_state(ht, 1.0);  // beta * lambda = 1
    ContinuousGroupSpec spec;
    spec.kind = ContinuousKind::O3;
    spec.carrier = spin_half_carrier();
    spec.seed = 6021;
    const oracle::McEstimate est = oracle::mc_reference(ts.rho, spec, Mode::State, 20000);
    const double expect = spin_half_doss_closed_form(1.0, 1.0);
    CHECK(std::abs(est.mean - expect) <= std::max(5e-3, 3.0 * est.stderr_));
  }

  SUBCASE("sample floor enforced") {
    ContinuousGroupSpec spec;
    spec.kind = ContinuousKind::SO3;
    spec.carrier = Carrier::orbital_sum(1);
    CHECK_THROWS_AS((void)oracle::mc_reference(SquareOperator::identity(4), spec,
                                               Mode::State, 100),
                    InvalidInput);
  }
}

TEST_CASE("two-point exponent reference") {
  SUBCASE("synthetic quadratic and quartic dips") {
    for (int power : {2, 4}) {
      ScanSeries series;
      series.columns = {"lambda", "A"};
      for (int i = 0; i <= 400; ++i) {
        const double lambda = i * 0.005;
        const double r = std::abs(lambda - 1.0);
        series.append_row({lambda, std::pow(r, power)});
      }
      CHECK(std::abs(oracle::exponent_fit_reference(series, 1.0) - power) <= 1e-9);
    }
  }

  SUBCASE("three-site dip cross-check") {
    const auto [h, v] = three_site_hamiltonians({});
    SquareOperator at_crossing = h;
    at_crossing += 1.5 * v;
    const ContinuousGroupSpec spec =
        extend_group_at(at_crossing, {1, 2}, builtin_group(BuiltinGroup::Z2_3site));
    const ScanSeries series =
        scan_dos(h, v, Ensemble(spec), linspace(0, 3, 601), Method::Twirl, 1.5);
    const double slope = oracle::exponent_fit_reference(series, 1.5);
    CHECK(std::abs(slope - 2.0) <= 0.05);
    const DipFit fit = quadratic_dip_fit(series, 1.5);
    CHECK(std::abs(slope - fit.exponent) <= 0.05);
  }
}

TEST_CASE("report records deviations") {
  const oracle::OracleReport good = oracle::make_report("unit", 1.0, 1.0 + 1e-14, 1e-12);
  CHECK(good.pass);
  CHECK(good.abs_dev <= 1e-13);
  const oracle::OracleReport bad = oracle::make_report("unit", 1.0, 1.01, 1e-3);
  CHECK(!bad.pass);
  CHECK(bad.rel_dev > 5e-3);
}
