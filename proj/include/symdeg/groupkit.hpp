// Transformation ensembles: finite groups built by generator closure or from
// the built-in point groups, conjugacy classes and character tables for the
// projection-operator machinery, angular momentum operators, and Haar
// samplers for the continuous groups.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symdeg/types.hpp"

namespace symdeg {

// ---------------------------------------------------------------------------
// Finite groups

struct FiniteGroup {
  std::vector<SquareOperator> elements;  // identity first
  std::vector<std::string> labels;       // cycle notation for permutation groups

  int order() const { return static_cast<int>(elements.size()); }
  int dim() const { return elements.empty() ? 0 : elements.front().dim(); }
};

enum class BuiltinGroup { Td4, C3v4, D3, Z2_3site };

BuiltinGroup builtin_group_from_name(const std::string& name);
std::string to_string(BuiltinGroup g);

// Td4: all 24 site permutations of the tetrahedron vertices 0..3.
// C3v4: the 6 permutations fixing site 0. D3: all 6 permutations of sites
// 1..3. Z2_3site: identity plus the interchange of sites 1 and 3.
FiniteGroup builtin_group(BuiltinGroup which);

// Breadth-first closure of unitary generators, deduplicated at Frobenius
// distance dedup_tol. Throws if the closure would exceed cap (an infinite or
// huge group) or a generator is not unitary.
FiniteGroup close_group(std::span<const SquareOperator> generators, int cap,
                        double dedup_tol = tol::group_dedup,
                        double unitarity_tol = tol::unitarity);

// Identity present, inverses present, closure under products.
bool verify_group_axioms(const FiniteGroup& g, double tolerance = tol::group_closure);

// Partition of element indices under h g h^{-1}; classes are ordered by
// their smallest element index.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g,
                                                double tolerance = tol::group_closure);

// Index of the element nearest to m, if within tolerance (Frobenius).
std::optional<int> find_element(const FiniteGroup& g, const SquareOperator& m,
                                double tolerance = tol::group_closure);

// Permutation helpers (a permutation matrix maps basis state i to p[i]).
SquareOperator permutation_matrix(std::span<const int> perm);
std::optional<std::vector<int>> permutation_of(const SquareOperator& m, double tolerance = 1e-9);
// Cycle notation with site names offset by site_base, e.g. "(1 3)".
std::string cycle_label(std::span<const int> perm, int site_base);
// Cycle-type tag ignoring fixed points: "e", "2", "3", "2+2", "4", ...
std::string cycle_type(std::span<const int> perm);

// ---------------------------------------------------------------------------
// Character tables

struct IrrepCharacters {
  std::string name;
  int dim = 0;
  std::vector<double> chi;  // indexed like CharacterTable::class_types
};

struct CharacterTable {
  std::string group;
  std::vector<std::string> class_types;  // cycle-type tags
  std::vector<int> class_sizes;
  std::vector<IrrepCharacters> irreps;
};

CharacterTable character_table(BuiltinGroup which);

// ---------------------------------------------------------------------------
// Angular momentum operators

enum class AngularSpace { SingleIrrep, OrbitalSum };

struct AngularOperators {
  double jmax = 0;
  AngularSpace space = AngularSpace::SingleIrrep;
  SquareOperator jx, jy, jz, jsq;
  // (offset, dim) of each irrep block, l ascending for the orbital sum.
  std::vector<std::pair<int, int>> blocks;
};

// Ladder-operator construction; the orbital sum stacks l = 0..jmax blocks
// (integer jmax only) into a space of dimension (jmax+1)^2.
AngularOperators angular_operators(double jmax, AngularSpace space);

// ---------------------------------------------------------------------------
// Continuous ensembles

enum class ContinuousKind { SU2, SO3, O3, U2Embedded };

struct IrrepBlock {
  int offset = 0;
  int two_j = 0;
  int dim() const { return two_j + 1; }
};

// The representation space a continuous group acts on. Either a list of
// inequivalent irrep blocks (SU2/SO3/O3 kinds) or an orthonormal two-column
// subspace basis with identity action on the complement (U2Embedded).
struct Carrier {
  int dim = 0;
  std::vector<IrrepBlock> blocks;
  std::vector<std::vector<Complex>> embed_basis;  // two columns of length dim

  static Carrier spin_irrep(int two_j);
  static Carrier orbital_sum(int jmax);
  static Carrier embedded(std::vector<std::vector<Complex>> basis_columns);
};

struct ContinuousGroupSpec {
  ContinuousKind kind = ContinuousKind::SO3;
  Carrier carrier;
  int samples = 20000;
  std::uint64_t seed = 0;
  // Exact twirl available: always for U2Embedded, and for irrep-block
  // carriers (the commutant is scalar per block).
  bool analytic_twirl_available = true;
};

void validate_spec(const ContinuousGroupSpec& spec);

// The index-th Haar draw; deterministic in (spec.seed, index) and
// independent of any other draw.
SquareOperator haar_element(const ContinuousGroupSpec& spec, std::uint64_t index);

// All spec.samples draws, in index order.
std::vector<SquareOperator> haar_draw(const ContinuousGroupSpec& spec);

// Parity on the carrier: (-1)^l per orbital block, identity on spin-1/2 and
// other single-irrep carriers.
SquareOperator parity_operator(const Carrier& carrier);

// ---------------------------------------------------------------------------
// The transformation-ensemble handle consumed by the measure evaluators.

class Ensemble {
 public:
  Ensemble(FiniteGroup g) : v_(std::move(g)) {}
  Ensemble(ContinuousGroupSpec spec) : v_(std::move(spec)) {}

  // A plain finite transformation set with no group structure assumed.
  static Ensemble finite_set(std::vector<SquareOperator> elements);

  bool is_group() const { return std::holds_alternative<FiniteGroup>(v_); }
  bool is_finite() const { return !std::holds_alternative<ContinuousGroupSpec>(v_); }
  bool is_continuous() const { return std::holds_alternative<ContinuousGroupSpec>(v_); }

  const FiniteGroup& group() const;
  const ContinuousGroupSpec& continuous() const;
  std::span<const SquareOperator> finite_elements() const;

  int dim() const;

 private:
  Ensemble() = default;
  std::variant<FiniteGroup, std::vector<SquareOperator>, ContinuousGroupSpec> v_;
};

}  // namespace symdeg
