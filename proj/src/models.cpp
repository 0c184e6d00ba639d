#include "symdeg/models.hpp"

namespace symdeg {

std::pair<SquareOperator, SquareOperator> four_site_hamiltonians(const FourSiteModel& m) {
  SquareOperator h(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h(i, j) = (i == j) ? m.eps : m.h;
  SquareOperator v(4);
  v(0, 0) = m.delta0;
  for (int i = 1; i <= 3; ++i) {
    v(i, 0) = m.delta1;
    v(0, i) = m.delta1;
  }
  return {h, v};
}

FourSiteConstants four_site_constants(const FourSiteModel& m) {
  const double g = m.gamma();
  FourSiteConstants c;
  c.A_TdV = (g * g + 4.0) / (2.0 * g * g + 16.0);
  c.S_inf = (g * g + 12.0) / (2.0 * g * g + 16.0);
  c.lambda_A = -2.0 * m.h / m.delta1;
  c.lambda_star = (6.0 - g) / (12.0 + g * g) * c.lambda_A;
  return c;
}

std::pair<SquareOperator, SquareOperator> three_site_hamiltonians(const ThreeSiteModel& m) {
  SquareOperator h(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h(i, j) = (i == j) ? m.eps : m.h;
  // sites 1 and 3 are basis indices 0 and 2
  SquareOperator v(3);
  v(0, 0) = 1.0;
  v(2, 2) = 1.0;
  v(0, 2) = -1.0;
  v(2, 0) = -1.0;
  return {h, v};
}

ThreeSiteConstants three_site_constants(const ThreeSiteModel& m) {
  ThreeSiteConstants c;
  c.eps = m.eps;
  c.h = m.h;
  c.lambda01 = 0.0;
  c.lambda02 = 1.5 * m.h;
  c.E1p = m.eps + 0.5 * m.h + c.lambda02;
  c.E1m = m.eps + 0.5 * m.h - c.lambda02;
  return c;
}

double three_site_dos_closed_form(const ThreeSiteModel& m, double lambda) {
  const double l02 = 1.5 * m.h;
  const double denom = lambda * lambda - l02 * lambda + l02 * l02;
  return 1.0 - 3.0 * (lambda - l02) * (lambda - l02) / (8.0 * denom);
}

std::pair<SquareOperator, SquareOperator> angular_hamiltonians(const AngularModel& m) {
  if (m.j < 1)
    throw InvalidInput("angular model: j must be a positive integer (j = 0 makes the DoS undefined)");
  const AngularOperators ops = angular_operators(m.j, AngularSpace::OrbitalSum);
  return {m.eps * ops.jsq, ops.jz};
}

Carrier angular_model_carrier(const AngularModel& m) {
  if (m.j < 1) throw InvalidInput("angular model: j must be a positive integer");
  return Carrier::orbital_sum(m.j);
}

double angular_dos_closed_form(const AngularModel& m, double lambda) {
  const double jj = static_cast<double>(m.j) * (m.j + 2.0);
  return 1.0 - lambda * lambda / (2.0 * lambda * lambda + m.eps * m.eps * jj);
}

std::pair<SquareOperator, SquareOperator> spin_half_hamiltonians(const SpinHalfModel& m) {
  const AngularOperators ops = angular_operators(0.5, AngularSpace::SingleIrrep);
  return {m.eps * ops.jsq, ops.jz};
}

Carrier spin_half_carrier() { return Carrier::spin_irrep(1); }

}  // namespace symdeg
