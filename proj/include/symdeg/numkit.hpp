// Dense complex linear algebra used everywhere else: Frobenius norms,
// commutators, trace re-biasing, a cyclic Jacobi Hermitian eigensolver and
// the unitary exponential, plus deterministic summation helpers.
#pragma once

#include <cstdint>
#include <span>

#include "symdeg/types.hpp"

namespace symdeg {

double frobenius_norm_sq(const SquareOperator& m);
double frobenius_norm(const SquareOperator& m);
double max_abs_diff(const SquareOperator& a, const SquareOperator& b);

// Tr(a† b) — the Hilbert-Schmidt inner product.
Complex hs_inner(const SquareOperator& a, const SquareOperator& b);
// Re Tr(a b) without forming the product matrix.
double real_trace_product(const SquareOperator& a, const SquareOperator& b);

SquareOperator commutator(const SquareOperator& a, const SquareOperator& b);
SquareOperator anticommutator(const SquareOperator& a, const SquareOperator& b);

// H - (Tr H / d) I. Requires a Hermitian input; the result is traceless.
SquareOperator rebias(const SquareOperator& h, double hermiticity_tol = tol::hermiticity);

// Cyclic Jacobi diagonalization. Converges when the off-diagonal Frobenius
// mass drops below tol::eigen_convergence * ||H||_F; capped at 100 sweeps.
// Eigenvalues ascend; ties are broken by lexicographic comparison of the
// phase-fixed eigenvectors, and degenerate clusters are re-orthonormalized
// by Gram-Schmidt in index order so the output is reproducible.
EigenSystem hermitian_eigensystem(const SquareOperator& h,
                                  double hermiticity_tol = tol::hermiticity);

// exp(iK) for Hermitian K, via the eigendecomposition of K.
SquareOperator unitary_exp(const SquareOperator& k,
                           double hermiticity_tol = tol::hermiticity);

// Deterministic reduction: fixed recursive halving, independent of thread
// count and evaluation order.
double pairwise_sum(std::span<const double> xs);

struct MeanStderr {
  double mean = 0;
  double stderr_ = 0;
};
// Sample mean and the standard error of the mean, both via pairwise sums.
MeanStderr mean_and_stderr(std::span<const double> xs);

// Reproducible random matrices for tests and the validation suite.
SquareOperator random_hermitian(int dim, std::uint64_t seed);
SquareOperator random_unitary(int dim, std::uint64_t seed);

}  // namespace symdeg
