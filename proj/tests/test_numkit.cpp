#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symdeg/numkit.hpp"
#include "symdeg/rng.hpp"
#include "test_util.hpp"

using namespace symdeg;
using testutil::all_to_all;
using testutil::pauli_x;
using testutil::pauli_y;
using testutil::pauli_z;

TEST_CASE("frobenius norm on fixed operators") {
  CHECK(frobenius_norm(SquareOperator::identity(4)) == doctest::Approx(2.0).epsilon(1e-14));
  // 3-site all-ones off-diagonal adjacency: six unit entries.
  CHECK(frobenius_norm(all_to_all(3, 0, 1)) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  CHECK(frobenius_norm(pauli_x()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(frobenius_norm(SquareOperator(5)) == 0.0);
}

TEST_CASE("commutator and anticommutator algebra") {
  const SquareOperator m = random_hermitian(4, 7);
  CHECK(max_abs_diff(commutator(m, SquareOperator::identity(4)), SquareOperator(4)) <= 1e-15);

  const SquareOperator two_i = 2.0 * SquareOperator::identity(2);
  CHECK(max_abs_diff(anticommutator(pauli_x(), pauli_x()), two_i) <= 1e-15);

  const SquareOperator expected = Complex(0, 2) * pauli_z();
  CHECK(max_abs_diff(commutator(pauli_x(), pauli_y()), expected) <= 1e-15);

  CHECK_THROWS_AS((void)commutator(pauli_x(), SquareOperator::identity(3)), InvalidInput);
}

TEST_CASE("rebias removes the trace mean") {
  SUBCASE("multiple of the identity maps to zero") {
    const SquareOperator h = 5.0 * SquareOperator::identity(3);
    CHECK(frobenius_norm(rebias(h)) <= 1e-14);
  }
  SUBCASE("four-site lattice at eps=5, h=1") {
    const SquareOperator h = all_to_all(4, 5, 1);
    const SquareOperator hb = rebias(h);
    CHECK(max_abs_diff(hb, all_to_all(4, 0, 1)) <= 1e-14);
    CHECK(frobenius_norm(hb) == doctest::Approx(std::sqrt(12.0)).epsilon(1e-14));
    CHECK(std::abs(hb.trace()) <= 1e-12 * 4 * frobenius_norm(h));
  }
  SUBCASE("idempotence") {
    const SquareOperator h = random_hermitian(6, 42);
    CHECK(max_abs_diff(rebias(rebias(h)), rebias(h)) <= 1e-14);
  }
  SUBCASE("non-Hermitian input rejected") {
    SquareOperator m(2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS((void)rebias(m), InvalidInput);
  }
}

TEST_CASE("hermitian eigensystem on fixed spectra") {
  SUBCASE("pauli z") {
    const EigenSystem es = hermitian_eigensystem(pauli_z());
    REQUIRE(es.values.size() == 2);
    CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("three-site adjacency") {
    const EigenSystem es = hermitian_eigensystem(all_to_all(3, 0, 1));
    CHECK(std::abs(es.values[0] + 1.0) <= 1e-12);
    CHECK(std::abs(es.values[1] + 1.0) <= 1e-12);
    CHECK(std::abs(es.values[2] - 2.0) <= 1e-12);
  }
  SUBCASE("four-site adjacency") {
    const EigenSystem es = hermitian_eigensystem(all_to_all(4, 0, 1));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(es.values[static_cast<std::size_t>(k)] + 1.0) <= 1e-12);
    CHECK(std::abs(es.values[3] - 3.0) <= 1e-12);
  }
  SUBCASE("non-Hermitian rejected") {
    SquareOperator m(3);
    m(0, 2) = Complex(0, 1);
    CHECK_THROWS_AS((void)hermitian_eigensystem(m), InvalidInput);
  }
}

TEST_CASE("eigensystem invariants on random operators") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int dim = 3 + static_cast<int>(seed % 6);
    const SquareOperator h = random_hermitian(dim, seed);
    const EigenSystem es = hermitian_eigensystem(h);
    const double scale = frobenius_norm(h);

    // Residual H v = lambda v.
    for (int c = 0; c < dim; ++c) {
      for (int r = 0; r < dim; ++r) {
        Complex hv = 0;
        for (int k = 0; k < dim; ++k) hv += h(r, k) * es.vectors(k, c);
        const Complex resid = hv - es.values[static_cast<std::size_t>(c)] * es.vectors(r, c);
        CHECK(std::abs(resid) <= 1e-9 * std::max(1.0, scale));
      }
    }
    // Orthonormality.
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        Complex g = 0;
        for (int k = 0; k < dim; ++k) g += std::conj(es.vectors(k, a)) * es.vectors(k, b);
        CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) <= 1e-9);
      }
    }
    // Reconstruction sum lambda_k v v†.
    SquareOperator rec(dim);
    for (int k = 0; k < dim; ++k)
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
          rec(r, c) += es.values[static_cast<std::size_t>(k)] * es.vectors(r, k) *
                       std::conj(es.vectors(c, k));
    CHECK(max_abs_diff(rec, h) <= 1e-8 * std::max(1.0, scale));
    // Ascending order.
    for (std::size_t k = 1; k < es.values.size(); ++k) CHECK(es.values[k] >= es.values[k - 1] - 1e-12);
  }
}

TEST_CASE("eigensystem output is deterministic") {
  const SquareOperator h = random_hermitian(5, 99);
  const EigenSystem a = hermitian_eigensystem(h);
  const EigenSystem b = hermitian_eigensystem(h);
  CHECK(max_abs_diff(a.vectors, b.vectors) == 0.0);
  for (std::size_t k = 0; k < a.values.size(); ++k) CHECK(a.values[k] == b.values[k]);
}

TEST_CASE("unitary exponential") {
  SUBCASE("zero generator") {
    CHECK(max_abs_diff(unitary_exp(SquareOperator(3)), SquareOperator::identity(3)) <= 1e-14);
  }
  SUBCASE("exp(i pi sigma_x) = -I") {
    const SquareOperator k = M_PI * pauli_x();
    const SquareOperator u = unitary_exp(k);
    CHECK(max_abs_diff(u, Complex(-1.0) * SquareOperator::identity(2)) <= 1e-12);
  }
  SUBCASE("matches the power series on random generators") {
    for (std::uint64_t seed = 10; seed < 18; ++seed) {
      SquareOperator k = random_hermitian(4, seed);
      const double nrm = frobenius_norm(k);
      if (nrm > 2.0) k *= Complex(2.0 / nrm);
      const SquareOperator a = unitary_exp(k);
      const SquareOperator b = testutil::series_unitary_exp(k);
      CHECK(max_abs_diff(a, b) <= 1e-10);
      CHECK(a.unitarity_residual() <= 1e-9);
    }
  }
  SUBCASE("non-Hermitian generator rejected") {
    SquareOperator m(2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS((void)unitary_exp(m), InvalidInput);
  }
}

TEST_CASE("norm properties on random inputs") {
  for (std::uint64_t seed = 30; seed < 50; ++seed) {
    const int dim = 3 + static_cast<int>(seed % 4);
    const SquareOperator a = random_hermitian(dim, seed);
    const SquareOperator b = random_hermitian(dim, seed + 1000);
    CHECK(frobenius_norm(a + b) <= frobenius_norm(a) + frobenius_norm(b) + 1e-12);

    const SquareOperator u = random_unitary(dim, seed);
    const SquareOperator conj = u * a * u.adjoint();
    CHECK(std::abs(frobenius_norm(conj) - frobenius_norm(a)) <= 1e-10);

    // rebias leaves commutators unchanged.
    const SquareOperator r = random_unitary(dim, seed + 2000);
    CHECK(max_abs_diff(commutator(r, rebias(a)), commutator(r, a)) <= 1e-10);
  }
}

TEST_CASE("pairwise sum and stderr") {
  std::vector<double> xs(1000);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 1.0 / static_cast<double>(i + 1);
  double serial = 0;
  for (double x : xs) serial += x;
  CHECK(std::abs(pairwise_sum(xs) - serial) <= 1e-12);

  std::vector<double> constant(64, 2.5);
  const MeanStderr ms = mean_and_stderr(constant);
  CHECK(ms.mean == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(ms.stderr_ == 0.0);
}

TEST_CASE("counter rng streams are order independent") {
  CounterRng a(123, 5);
  CounterRng b(123, 5);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c(123, 6);
  CHECK(CounterRng(123, 5).next_u64() != c.next_u64());

  // Normals have roughly the right first two moments.
  CounterRng d(7, 0);
  double s1 = 0, s2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = d.normal();
    s1 += z;
    s2 += z * z;
  }
  CHECK(std::abs(s1 / n) < 0.03);
  CHECK(std::abs(s2 / n - 1.0) < 0.05);
}
