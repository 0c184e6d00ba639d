// The degree-of-symmetry measure: commutator/anticommutator group averages
// for Hamiltonians and density matrices, the twirl-based evaluator, and the
// irreducible-representation formula with its multiplicity-free guard.
#pragma once

#include <string>
#include <vector>

#include "symdeg/groupkit.hpp"
#include "symdeg/types.hpp"

namespace symdeg {

enum class Mode { Hamiltonian, State };

enum class Method { Direct, Twirl, Irrep, MonteCarlo, Auto };

std::string to_string(Method m);
std::string to_string(Mode m);

struct DoSResult {
  double S = 0;
  double A = 0;
  Method method = Method::Direct;
  double stderr_ = 0;  // 0 for exact methods
};

// Degree of asymmetry: the group-averaged normalized commutator norm.
// Hamiltonian mode normalizes by the re-biased operator and requires it to
// be nonzero; state mode takes the density matrix as-is (validated).
DoSResult doas(const SquareOperator& f, const Ensemble& ensemble, Mode mode);

// Degree of symmetry via the anticommutator average; equals 1 - doas up to
// rounding (exact ensembles) or the shared-draw identity (Monte Carlo).
DoSResult dos(const SquareOperator& f, const Ensemble& ensemble, Mode mode);

// D[F] = avg_g R(g)† F R(g). Finite groups average explicitly; U2Embedded
// uses the exact subspace-trace rule; other continuous specs fall back to a
// Monte Carlo average over spec.samples draws. Plain finite sets are
// rejected: the twirl identity needs group structure.
SquareOperator twirl(const SquareOperator& f, const Ensemble& ensemble);

// Exact twirl for carriers whose commutant is known in closed form:
// scalar-per-irrep-block, or the embedded-U(2) trace rule.
SquareOperator analytic_carrier_twirl(const SquareOperator& f, const Carrier& carrier);

// S = 1/2 + ||D[F]||^2 / (2 ||F||^2) with F the normalized operator for the
// mode. Exact for finite groups and for continuous specs with an analytic
// twirl; never sampled.
DoSResult dos_via_twirl(const SquareOperator& f, const Ensemble& ensemble,
                        Mode mode = Mode::Hamiltonian);

// Canonical dispatcher used by scans and the CLI. Auto picks the twirl for
// groups and analytic continuous specs, Monte Carlo otherwise.
DoSResult evaluate_dos(const SquareOperator& f, const Ensemble& ensemble, Mode mode,
                       Method method = Method::Auto);

struct IsotypicBlock {
  std::string label;
  int dim = 0;           // irrep dimension d_l
  int multiplicity = 0;  // copies of the irrep
  // multiplicity * dim orthonormal columns, consecutive chunks of dim
  // columns forming one (non-canonical) copy each
  std::vector<std::vector<Complex>> basis;
  SquareOperator projector;
};

struct IrrepDecomposition {
  int dim = 0;
  std::vector<IsotypicBlock> blocks;
};

// Isotypic projectors P_l = (d_l/n_G) sum_g chi_l(g)* R(g) with orthonormal
// bases extracted per block. Validates the character table against the
// computed class census.
IrrepDecomposition irrep_decompose(const FiniteGroup& g, const CharacterTable& table,
                                   double tolerance = tol::group_closure);

// The completeness-relation form of the measure. Guarded: when an irrep
// occurs more than once the split into copies is not unique and the formula
// can miss cross-copy contributions, so multiplicity > 1 requires the
// explicit override and the result is diagnostic only.
DoSResult dos_irrep_formula(const SquareOperator& h, const IrrepDecomposition& decomposition,
                            bool allow_multiplicity = false);

}  // namespace symdeg
