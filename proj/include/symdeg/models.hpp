// The concrete lattice and angular-momentum systems with their closed-form
// constants. These double as ground-truth oracles for the generic machinery.
#pragma once

#include <utility>

#include "symdeg/groupkit.hpp"
#include "symdeg/types.hpp"

namespace symdeg {

// Four sites with all-to-all hopping (tetrahedron geometry); the
// perturbation retouches the energy and couplings of site 0, breaking Td
// down to C3v. gamma = delta0/delta1 is the shape parameter.
struct FourSiteModel {
  double eps = 0;
  double h = 1;
  double delta0 = 0;
  double delta1 = 1;

  double gamma() const {
    if (delta1 == 0) throw InvalidInput("four-site model: gamma undefined for delta1 = 0");
    return delta0 / delta1;
  }
};

std::pair<SquareOperator, SquareOperator> four_site_hamiltonians(const FourSiteModel& m);

struct FourSiteConstants {
  double A_TdV = 0;      // asymmetry of the perturbation under Td
  double S_inf = 0;      // strong-perturbation plateau of the symmetry degree
  double lambda_A = 0;   // location of the local minimum
  double lambda_star = 0;  // avoided-crossing point of the two A1 levels
};

FourSiteConstants four_site_constants(const FourSiteModel& m);

// Three sites, all-to-all hopping; the perturbation acts on sites 1 and 3
// and breaks D3 down to Z2 = {e, (1 3)}.
struct ThreeSiteModel {
  double eps = 0;
  double h = 1;
};

std::pair<SquareOperator, SquareOperator> three_site_hamiltonians(const ThreeSiteModel& m);

struct ThreeSiteConstants {
  double E1p = 0;       // upper symmetric-sector level
  double E1m = 0;       // lower symmetric-sector level
  double lambda01 = 0;  // first accidental degeneracy
  double lambda02 = 0;  // second accidental degeneracy
  double eps = 0;
  double h = 0;

  // The antisymmetric-sector level, the only lambda-dependent one.
  double e2(double lambda) const { return eps - h + 2.0 * lambda; }
};

ThreeSiteConstants three_site_constants(const ThreeSiteModel& m);

// Symmetry degree of H(lambda) with respect to the embedded U(2) extension
// at the second crossing: 1 - (3/8)(l - l02)^2 / (l^2 - l02 l + l02^2).
double three_site_dos_closed_form(const ThreeSiteModel& m, double lambda);

// H = eps J^2, V = Jz on the orbital direct sum l = 0..j. A single spin-j
// irrep would make the re-biased H vanish, so integer j >= 1 only.
struct AngularModel {
  int j = 1;
  double eps = 1;
};

std::pair<SquareOperator, SquareOperator> angular_hamiltonians(const AngularModel& m);
Carrier angular_model_carrier(const AngularModel& m);

// 1 - lambda^2 / (2 lambda^2 + eps^2 j (j+2)).
double angular_dos_closed_form(const AngularModel& m, double lambda);

// The spin-1/2 restriction used by the spontaneous-symmetry-breaking
// analysis: H = eps J^2 (a multiple of the identity on the irrep), V = Jz.
struct SpinHalfModel {
  double eps = 1;
};

std::pair<SquareOperator, SquareOperator> spin_half_hamiltonians(const SpinHalfModel& m);
Carrier spin_half_carrier();

}  // namespace symdeg
