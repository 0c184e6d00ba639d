#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "symdeg/groupkit.hpp"
#include "symdeg/numkit.hpp"
#include "test_util.hpp"

using namespace symdeg;

namespace {

std::vector<int> sorted_class_sizes(const FiniteGroup& g) {
  std::vector<int> sizes;
  for (const auto& cls : conjugacy_classes(g)) sizes.push_back(static_cast<int>(cls.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

TEST_CASE("builtin groups have the expected orders and axioms") {
  const FiniteGroup td = builtin_group(BuiltinGroup::Td4);
  const FiniteGroup c3v = builtin_group(BuiltinGroup::C3v4);
  const FiniteGroup d3 = builtin_group(BuiltinGroup::D3);
  const FiniteGroup z2 = builtin_group(BuiltinGroup::Z2_3site);

  CHECK(td.order() == 24);
  CHECK(c3v.order() == 6);
  CHECK(d3.order() == 6);
  CHECK(z2.order() == 2);

  for (const FiniteGroup* g : {&td, &c3v, &d3, &z2}) CHECK(verify_group_axioms(*g));

  // Subgroup witness: every C3v4 element is a Td4 element.
  for (const auto& e : c3v.elements) CHECK(find_element(td, e).has_value());

  // Z2_3site is {e, sigma} with sigma interchanging sites 1 and 3.
  CHECK(z2.labels[0] == "e");
  CHECK(z2.labels[1] == "(1 3)");
  const SquareOperator sigma = z2.elements[1];
  SquareOperator expect(3);
  expect(2, 0) = 1;
  expect(1, 1) = 1;
  expect(0, 2) = 1;
  CHECK(max_abs_diff(sigma, expect) == 0.0);
}

TEST_CASE("representation property: products land on group elements") {
  for (auto which : {BuiltinGroup::Td4, BuiltinGroup::D3, BuiltinGroup::Z2_3site}) {
    const FiniteGroup g = builtin_group(which);
    for (int a = 0; a < g.order(); ++a) {
      for (int b = 0; b < g.order(); ++b) {
        const SquareOperator prod =
            g.elements[static_cast<std::size_t>(a)] * g.elements[static_cast<std::size_t>(b)];
        const auto idx = find_element(g, prod, 1e-9);
        REQUIRE(idx.has_value());
        // labels compose: the product of two permutations carries the
        // composed permutation's cycle label
        const auto perm = permutation_of(prod);
        REQUIRE(perm.has_value());
        const int base = (which == BuiltinGroup::Td4) ? 0 : 1;
        CHECK(g.labels[static_cast<std::size_t>(*idx)] == cycle_label(*perm, base));
      }
    }
  }
}

TEST_CASE("generator closure") {
  SUBCASE("single swap closes to order 2") {
    const SquareOperator swap13 = permutation_matrix(std::vector<int>{2, 1, 0});
    const FiniteGroup g = close_group(std::vector<SquareOperator>{swap13}, 10);
    CHECK(g.order() == 2);
    CHECK(verify_group_axioms(g));
  }
  SUBCASE("adjacent transpositions on 4 sites close to S4") {
    const std::vector<SquareOperator> gens = {
        permutation_matrix(std::vector<int>{1, 0, 2, 3}),
        permutation_matrix(std::vector<int>{0, 2, 1, 3}),
        permutation_matrix(std::vector<int>{0, 1, 3, 2}),
    };
    const FiniteGroup g = close_group(gens, 30);
    CHECK(g.order() == 24);
    CHECK(verify_group_axioms(g));
  }
  SUBCASE("3-cycle plus swap closes to S3") {
    const std::vector<SquareOperator> gens = {
        permutation_matrix(std::vector<int>{1, 2, 0}),
        permutation_matrix(std::vector<int>{2, 1, 0}),
    };
    const FiniteGroup g = close_group(gens, 10);
    CHECK(g.order() == 6);
    CHECK(verify_group_axioms(g));
  }
  SUBCASE("non-unitary generator rejected") {
    SquareOperator m(2);
    m(0, 0) = 2.0;
    CHECK_THROWS_AS((void)close_group(std::vector<SquareOperator>{m}, 10), InvalidInput);
  }
  SUBCASE("irrational rotation exceeds the cap") {
    const double c = std::cos(1.0), s = std::sin(1.0);
    const SquareOperator rot = SquareOperator::from_rows({{c, -s}, {s, c}});
    CHECK_THROWS_AS((void)close_group(std::vector<SquareOperator>{rot}, 50), NumericFailure);
  }
}

TEST_CASE("conjugacy classes match cycle-type censuses") {
  CHECK(sorted_class_sizes(builtin_group(BuiltinGroup::Z2_3site)) == std::vector<int>{1, 1});
  CHECK(sorted_class_sizes(builtin_group(BuiltinGroup::Td4)) == std::vector<int>{1, 3, 6, 6, 8});
  CHECK(sorted_class_sizes(builtin_group(BuiltinGroup::D3)) == std::vector<int>{1, 2, 3});

  // classes coincide with cycle types for permutation groups
  const FiniteGroup td = builtin_group(BuiltinGroup::Td4);
  for (const auto& cls : conjugacy_classes(td)) {
    const auto first = permutation_of(td.elements[static_cast<std::size_t>(cls.front())]);
    REQUIRE(first.has_value());
    const std::string type = cycle_type(*first);
    for (int idx : cls) {
      const auto p = permutation_of(td.elements[static_cast<std::size_t>(idx)]);
      REQUIRE(p.has_value());
      CHECK(cycle_type(*p) == type);
    }
  }
}

TEST_CASE("character tables are consistent") {
  for (auto which : {BuiltinGroup::Td4, BuiltinGroup::C3v4, BuiltinGroup::D3,
                     BuiltinGroup::Z2_3site}) {
    const CharacterTable t = character_table(which);
    const FiniteGroup g = builtin_group(which);
    int order = 0;
    for (int s : t.class_sizes) order += s;
    CHECK(order == g.order());
    int dim_sq = 0;
    for (const auto& irrep : t.irreps) dim_sq += irrep.dim * irrep.dim;
    CHECK(dim_sq == g.order());
    // first-column characters are the dimensions; orthogonality of rows
    for (const auto& irrep : t.irreps) CHECK(irrep.chi[0] == irrep.dim);
    for (std::size_t a = 0; a < t.irreps.size(); ++a) {
      for (std::size_t b = 0; b < t.irreps.size(); ++b) {
        double inner = 0;
        for (std::size_t c = 0; c < t.class_types.size(); ++c)
          inner += t.class_sizes[c] * t.irreps[a].chi[c] * t.irreps[b].chi[c];
        inner /= static_cast<double>(g.order());
        CHECK(std::abs(inner - (a == b ? 1.0 : 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("angular momentum operators") {
  SUBCASE("spin one-half") {
    const AngularOperators ops = angular_operators(0.5, AngularSpace::SingleIrrep);
    CHECK(ops.jz.dim() == 2);
    CHECK(std::abs(ops.jz(0, 0) - 0.5) <= 1e-15);
    CHECK(std::abs(ops.jz(1, 1) + 0.5) <= 1e-15);
  }
  SUBCASE("spin one") {
    const AngularOperators ops = angular_operators(1, AngularSpace::SingleIrrep);
    CHECK(ops.jz.dim() == 3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(ops.jz(k, k) - static_cast<double>(1 - k)) <= 1e-15);
  }
  SUBCASE("orbital sum with jmax=1") {
    const AngularOperators ops = angular_operators(1, AngularSpace::OrbitalSum);
    CHECK(ops.jz.dim() == 4);
    const EigenSystem es = hermitian_eigensystem(ops.jsq);
    CHECK(std::abs(es.values[0]) <= 1e-10);
    for (int k = 1; k < 4; ++k) CHECK(std::abs(es.values[static_cast<std::size_t>(k)] - 2.0) <= 1e-10);
  }
  SUBCASE("commutation relations and block Casimir") {
    for (double j : {0.5, 1.0, 1.5, 2.0}) {
      const AngularOperators ops = angular_operators(j, AngularSpace::SingleIrrep);
      CHECK(max_abs_diff(commutator(ops.jx, ops.jy), Complex(0, 1) * ops.jz) <= 1e-10);
      CHECK(max_abs_diff(commutator(ops.jy, ops.jz), Complex(0, 1) * ops.jx) <= 1e-10);
      CHECK(max_abs_diff(commutator(ops.jz, ops.jx), Complex(0, 1) * ops.jy) <= 1e-10);
      CHECK(max_abs_diff(ops.jsq, (j * (j + 1)) * SquareOperator::identity(ops.jz.dim())) <= 1e-10);
    }
    const AngularOperators orb = angular_operators(2, AngularSpace::OrbitalSum);
    CHECK(max_abs_diff(commutator(orb.jx, orb.jy), Complex(0, 1) * orb.jz) <= 1e-10);
    for (const auto& [offset, dim] : orb.blocks) {
      const int l = (dim - 1) / 2;
      for (int k = 0; k < dim; ++k)
        CHECK(std::abs(orb.jsq(offset + k, offset + k) - static_cast<double>(l * (l + 1))) <= 1e-10);
    }
  }
  SUBCASE("half-integer jmax with orbital space rejected") {
    CHECK_THROWS_AS((void)angular_operators(1.5, AngularSpace::OrbitalSum), InvalidInput);
  }
}

TEST_CASE("haar draws") {
  SUBCASE("zero samples yield an empty list") {
    ContinuousGroupSpec spec;
    spec.kind = ContinuousKind::SO3;
    spec.carrier = Carrier::spin_irrep(2);
    spec.samples = 0;
    CHECK(haar_draw(spec).empty());
  }

  SUBCASE("drawn elements are unitary and deterministic per index") {
    for (auto kind : {ContinuousKind::SU2, ContinuousKind::SO3, ContinuousKind::O3}) {
      ContinuousGroupSpec spec;
      spec.kind = kind;
      spec.carrier = (kind == ContinuousKind::SU2) ? Carrier::spin_irrep(3) : Carrier::orbital_sum(2);
      spec.seed = 11;
      for (std::uint64_t i = 0; i < 25; ++i) {
        const SquareOperator r = haar_element(spec, i);
        CHECK(r.unitarity_residual() <= 1e-9);
        CHECK(max_abs_diff(r, haar_element(spec, i)) == 0.0);
      }
    }
  }

  SUBCASE("SO3 twirled matrix element averages to zero") {
    const AngularOperators ops = angular_operators(1, AngularSpace::SingleIrrep);
    ContinuousGroupSpec spec;
    spec.kind = ContinuousKind::SO3;
    spec.carrier = Carrier::spin_irrep(2);
    spec.seed = 2024;
    spec.samples = 20000;
    const double jz_norm_sq = frobenius_norm_sq(ops.jz);
    double acc = 0;
    for (int i = 0; i < spec.samples; ++i) {
      const SquareOperator r = haar_element(spec, static_cast<std::uint64_t>(i));
      acc += real_trace_product(ops.jz, r.adjoint() * ops.jz * r) / jz_norm_sq;
    }
    CHECK(std::abs(acc / spec.samples) <= 0.02);
  }

  SUBCASE("embedded U(2) raw draws average to zero on the subspace block") {
    const double s3 = 1.0 / std::sqrt(3.0), s2 = 1.0 / std::sqrt(2.0);
    ContinuousGroupSpec spec;
    spec.kind = ContinuousKind::U2Embedded;
    spec.carrier = Carrier::embedded({{s3, s3, s3}, {s2, 0.0, -s2}});
    spec.seed = 5;
    spec.samples = 20000;
    Complex mean[2][2] = {};
    for (int i = 0; i < spec.samples; ++i) {
      const SquareOperator r = haar_element(spec, static_cast<std::uint64_t>(i));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Complex block = 0;
          for (int rr = 0; rr < 3; ++rr)
            for (int cc = 0; cc < 3; ++cc)
              block += std::conj(spec.carrier.embed_basis[static_cast<std::size_t>(a)]
                                                         [static_cast<std::size_t>(rr)]) *
                       r(rr, cc) *
                       spec.carrier.embed_basis[static_cast<std::size_t>(b)]
                                               [static_cast<std::size_t>(cc)];
          mean[a][b] += block;
        }
    }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(std::abs(mean[a][b]) / spec.samples <= 0.02);
  }

  SUBCASE("haar invariance under fixed left multiplication") {
    const AngularOperators ops = angular_operators(1, AngularSpace::SingleIrrep);
    ContinuousGroupSpec spec;
    spec.kind = ContinuousKind::SO3;
    spec.carrier = Carrier::spin_irrep(2);
    spec.seed = 77;
    spec.samples = 20000;
    const SquareOperator u0 = unitary_exp(Complex(-0.7) * ops.jx);
    auto f = [](const SquareOperator& r) {
      return r(0, 1).real() + 0.5 * r(1, 0).imag();
    };
    std::vector<double> plain(static_cast<std::size_t>(spec.samples));
    std::vector<double> shifted(static_cast<std::size_t>(spec.samples));
    for (int i = 0; i < spec.samples; ++i) {
      const SquareOperator r = haar_element(spec, static_cast<std::uint64_t>(i));
      plain[static_cast<std::size_t>(i)] = f(r);
      shifted[static_cast<std::size_t>(i)] = f(u0 * r);
    }
    const MeanStderr a = mean_and_stderr(plain);
    const MeanStderr b = mean_and_stderr(shifted);
    CHECK(std::abs(a.mean - b.mean) <= 3.0 * (a.stderr_ + b.stderr_) + 1e-12);
  }
}

TEST_CASE("parity operator") {
  const Carrier orb = Carrier::orbital_sum(2);
  const SquareOperator p = parity_operator(orb);
  CHECK(std::abs(p(0, 0) - 1.0) <= 1e-15);              // l = 0
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(p(k, k) + 1.0) <= 1e-15);  // l = 1
  for (int k = 4; k <= 8; ++k) CHECK(std::abs(p(k, k) - 1.0) <= 1e-15);  // l = 2

  const Carrier spin = Carrier::spin_irrep(1);
  CHECK(max_abs_diff(parity_operator(spin), SquareOperator::identity(2)) == 0.0);
}

TEST_CASE("ensemble handle") {
  Ensemble g(builtin_group(BuiltinGroup::D3));
  CHECK(g.is_group());
  CHECK(g.is_finite());
  CHECK(g.dim() == 3);
  CHECK(g.finite_elements().size() == 6);

  Ensemble set = Ensemble::finite_set({SquareOperator::identity(3)});
  CHECK(!set.is_group());
  CHECK(set.is_finite());
  CHECK_THROWS_AS((void)set.group(), InvalidInput);

  ContinuousGroupSpec spec;
  spec.kind = ContinuousKind::SO3;
  spec.carrier = Carrier::orbital_sum(1);
  Ensemble cont(spec);
  CHECK(cont.is_continuous());
  CHECK(cont.dim() == 4);
  CHECK_THROWS_AS((void)cont.finite_elements(), InvalidInput);
}
