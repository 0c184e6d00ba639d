#include "symdeg/groupkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "symdeg/numkit.hpp"
#include "symdeg/rng.hpp"

namespace symdeg {

// ---------------------------------------------------------------------------
// Permutation helpers

SquareOperator permutation_matrix(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  SquareOperator m(n);
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    const int t = perm[static_cast<std::size_t>(i)];
    if (t < 0 || t >= n || hit[static_cast<std::size_t>(t)])
      throw InvalidInput("permutation_matrix: not a permutation");
    hit[static_cast<std::size_t>(t)] = true;
    m(t, i) = 1.0;  // |i> -> |perm[i]>
  }
  return m;
}

std::optional<std::vector<int>> permutation_of(const SquareOperator& m, double tolerance) {
  const int n = m.dim();
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int target = -1;
    for (int r = 0; r < n; ++r) {
      const Complex z = m(r, i);
      if (std::abs(z - 1.0) <= tolerance) {
        if (target >= 0) return std::nullopt;
        target = r;
      } else if (std::abs(z) > tolerance) {
        return std::nullopt;
      }
    }
    if (target < 0) return std::nullopt;
    perm[static_cast<std::size_t>(i)] = target;
  }
  return perm;
}

namespace {

std::vector<std::vector<int>> cycles_of(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> cycles;
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> cyc;
    int k = i;
    while (!seen[static_cast<std::size_t>(k)]) {
      seen[static_cast<std::size_t>(k)] = true;
      cyc.push_back(k);
      k = perm[static_cast<std::size_t>(k)];
    }
    if (cyc.size() > 1) cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace

std::string cycle_label(std::span<const int> perm, int site_base) {
  const auto cycles = cycles_of(perm);
  if (cycles.empty()) return "e";
  std::ostringstream os;
  for (const auto& cyc : cycles) {
    os << '(';
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (k) os << ' ';
      os << cyc[k] + site_base;
    }
    os << ')';
  }
  return os.str();
}

std::string cycle_type(std::span<const int> perm) {
  auto cycles = cycles_of(perm);
  if (cycles.empty()) return "e";
  std::vector<std::size_t> lens;
  lens.reserve(cycles.size());
  for (const auto& c : cycles) lens.push_back(c.size());
  std::sort(lens.rbegin(), lens.rend());
  std::ostringstream os;
  for (std::size_t k = 0; k < lens.size(); ++k) {
    if (k) os << '+';
    os << lens[k];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Builtins and closure

BuiltinGroup builtin_group_from_name(const std::string& name) {
  if (name == "Td4") return BuiltinGroup::Td4;
  if (name == "C3v4") return BuiltinGroup::C3v4;
  if (name == "D3") return BuiltinGroup::D3;
  if (name == "Z2_3site") return BuiltinGroup::Z2_3site;
  throw InvalidInput("unknown builtin group: " + name);
}

std::string to_string(BuiltinGroup g) {
  switch (g) {
    case BuiltinGroup::Td4: return "Td4";
    case BuiltinGroup::C3v4: return "C3v4";
    case BuiltinGroup::D3: return "D3";
    case BuiltinGroup::Z2_3site: return "Z2_3site";
  }
  throw InvalidInput("unknown builtin group enum");
}

namespace {

FiniteGroup from_permutations(std::vector<std::vector<int>> perms, int site_base) {
  FiniteGroup g;
  for (const auto& p : perms) {
    g.elements.push_back(permutation_matrix(p));
    g.labels.push_back(cycle_label(p, site_base));
  }
  return g;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

FiniteGroup builtin_group(BuiltinGroup which) {
  switch (which) {
    case BuiltinGroup::Td4:
      return from_permutations(all_permutations(4), 0);
    case BuiltinGroup::C3v4: {
      std::vector<std::vector<int>> keep;
      for (auto& p : all_permutations(4))
        if (p[0] == 0) keep.push_back(std::move(p));
      return from_permutations(std::move(keep), 0);
    }
    case BuiltinGroup::D3:
      // sites are named 1..3 in the three-site lattice
      return from_permutations(all_permutations(3), 1);
    case BuiltinGroup::Z2_3site:
      return from_permutations({{0, 1, 2}, {2, 1, 0}}, 1);
  }
  throw InvalidInput("unknown builtin group enum");
}

std::optional<int> find_element(const FiniteGroup& g, const SquareOperator& m, double tolerance) {
  int best = -1;
  double best_dist = tolerance;
  for (int i = 0; i < g.order(); ++i) {
    const double d = frobenius_norm(g.elements[static_cast<std::size_t>(i)] - m);
    if (d <= best_dist) {
      best_dist = d;
      best = i;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

FiniteGroup close_group(std::span<const SquareOperator> generators, int cap, double dedup_tol,
                        double unitarity_tol) {
  if (generators.empty()) throw InvalidInput("close_group: no generators");
  const int dim = generators.front().dim();
  for (const auto& gen : generators) {
    if (gen.dim() != dim) throw InvalidInput("close_group: generator dimension mismatch");
    if (!gen.is_unitary(unitarity_tol))
      throw InvalidInput("close_group: generator is not unitary (residual " +
                         std::to_string(gen.unitarity_residual()) + ")");
  }

  std::vector<SquareOperator> elems;
  elems.push_back(SquareOperator::identity(dim));
  auto contains = [&](const SquareOperator& m) {
    for (const auto& e : elems)
      if (frobenius_norm(e - m) <= dedup_tol) return true;
    return false;
  };
  for (const auto& gen : generators)
    if (!contains(gen)) elems.push_back(gen);

  // Fixed-point products; insertion order is deterministic.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t snapshot = elems.size();
    for (std::size_t a = 0; a < snapshot; ++a) {
      for (std::size_t b = 0; b < snapshot; ++b) {
        const SquareOperator prod = elems[a] * elems[b];
        if (!contains(prod)) {
          if (static_cast<int>(elems.size()) >= cap)
            throw NumericFailure("close_group: closure exceeds cap " + std::to_string(cap) +
                                 " (infinite or huge group?)");
          elems.push_back(prod);
          grew = true;
        }
      }
    }
  }

  FiniteGroup g;
  g.elements = std::move(elems);
  g.labels.reserve(g.elements.size());
  bool all_perms = true;
  for (const auto& e : g.elements)
    if (!permutation_of(e)) all_perms = false;
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    if (all_perms)
      g.labels.push_back(cycle_label(*permutation_of(g.elements[i]), 0));
    else
      g.labels.push_back("g" + std::to_string(i));
  }
  return g;
}

bool verify_group_axioms(const FiniteGroup& g, double tolerance) {
  if (g.order() == 0) return false;
  if (!find_element(g, SquareOperator::identity(g.dim()), tolerance)) return false;
  for (const auto& e : g.elements) {
    if (!e.is_unitary(tolerance)) return false;
    if (!find_element(g, e.adjoint(), tolerance)) return false;
  }
  for (const auto& a : g.elements)
    for (const auto& b : g.elements)
      if (!find_element(g, a * b, tolerance)) return false;
  // No duplicates at the dedup scale.
  for (int i = 0; i < g.order(); ++i)
    for (int j = i + 1; j < g.order(); ++j)
      if (frobenius_norm(g.elements[static_cast<std::size_t>(i)] -
                         g.elements[static_cast<std::size_t>(j)]) <= tol::group_dedup)
        return false;
  return true;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g, double tolerance) {
  std::vector<std::vector<int>> classes;
  std::vector<bool> assigned(static_cast<std::size_t>(g.order()), false);
  for (int i = 0; i < g.order(); ++i) {
    if (assigned[static_cast<std::size_t>(i)]) continue;
    std::vector<int> cls;
    for (const auto& h : g.elements) {
      const SquareOperator conj = h * g.elements[static_cast<std::size_t>(i)] * h.adjoint();
      const auto idx = find_element(g, conj, tolerance);
      if (!idx)
        throw NumericFailure("conjugacy_classes: closure violation detected");
      if (!assigned[static_cast<std::size_t>(*idx)]) {
        assigned[static_cast<std::size_t>(*idx)] = true;
        cls.push_back(*idx);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Character tables

CharacterTable character_table(BuiltinGroup which) {
  CharacterTable t;
  t.group = to_string(which);
  switch (which) {
    case BuiltinGroup::Td4:
      t.class_types = {"e", "3", "2+2", "4", "2"};
      t.class_sizes = {1, 8, 3, 6, 6};
      t.irreps = {
          {"A1", 1, {1, 1, 1, 1, 1}},
          {"A2", 1, {1, 1, 1, -1, -1}},
          {"E", 2, {2, -1, 2, 0, 0}},
          {"T1", 3, {3, 0, -1, 1, -1}},
          {"T2", 3, {3, 0, -1, -1, 1}},
      };
      break;
    case BuiltinGroup::C3v4:
    case BuiltinGroup::D3:
      t.class_types = {"e", "3", "2"};
      t.class_sizes = {1, 2, 3};
      t.irreps = {
          {"A1", 1, {1, 1, 1}},
          {"A2", 1, {1, 1, -1}},
          {"E", 2, {2, -1, 0}},
      };
      break;
    case BuiltinGroup::Z2_3site:
      t.class_types = {"e", "2"};
      t.class_sizes = {1, 1};
      t.irreps = {
          {"Gamma1", 1, {1, 1}},
          {"Gamma2", 1, {1, -1}},
      };
      break;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Angular momentum operators

namespace {

int checked_two_j(double jmax) {
  if (jmax < 0) throw InvalidInput("angular_operators: jmax must be non-negative");
  const double two_j = 2.0 * jmax;
  const double rounded = std::round(two_j);
  if (std::abs(two_j - rounded) > 1e-9)
    throw InvalidInput("angular_operators: jmax must be integer or half-integer");
  return static_cast<int>(rounded);
}

// Writes the spin-j block at the given offset; basis m = j, j-1, ..., -j.
void fill_block(SquareOperator& jx, SquareOperator& jy, SquareOperator& jz, int offset,
                int two_j) {
  const double j = two_j / 2.0;
  const int d = two_j + 1;
  for (int k = 0; k < d; ++k) {
    const double m = j - k;
    jz(offset + k, offset + k) = m;
    if (k > 0) {
      // <m+1| J+ |m> with m = j - k
      const double amp = std::sqrt(j * (j + 1) - m * (m + 1));
      jx(offset + k - 1, offset + k) += 0.5 * amp;
      jx(offset + k, offset + k - 1) += 0.5 * amp;
      jy(offset + k - 1, offset + k) += Complex(0, -0.5) * amp;
      jy(offset + k, offset + k - 1) += Complex(0, 0.5) * amp;
    }
  }
}

}  // namespace

AngularOperators angular_operators(double jmax, AngularSpace space) {
  const int two_j = checked_two_j(jmax);
  AngularOperators ops;
  ops.jmax = two_j / 2.0;
  ops.space = space;

  if (space == AngularSpace::SingleIrrep) {
    const int d = two_j + 1;
    ops.jx = SquareOperator(d);
    ops.jy = SquareOperator(d);
    ops.jz = SquareOperator(d);
    fill_block(ops.jx, ops.jy, ops.jz, 0, two_j);
    ops.blocks = {{0, d}};
  } else {
    if (two_j % 2 != 0)
      throw InvalidInput("angular_operators: the orbital direct sum requires integer jmax");
    const int j = two_j / 2;
    const int d = (j + 1) * (j + 1);
    ops.jx = SquareOperator(d);
    ops.jy = SquareOperator(d);
    ops.jz = SquareOperator(d);
    int offset = 0;
    for (int l = 0; l <= j; ++l) {
      fill_block(ops.jx, ops.jy, ops.jz, offset, 2 * l);
      ops.blocks.emplace_back(offset, 2 * l + 1);
      offset += 2 * l + 1;
    }
  }
  ops.jsq = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
  return ops;
}

// ---------------------------------------------------------------------------
// Carriers and Haar sampling

Carrier Carrier::spin_irrep(int two_j) {
  if (two_j < 0) throw InvalidInput("Carrier::spin_irrep: negative spin");
  Carrier c;
  c.dim = two_j + 1;
  c.blocks = {{0, two_j}};
  return c;
}

Carrier Carrier::orbital_sum(int jmax) {
  if (jmax < 0) throw InvalidInput("Carrier::orbital_sum: negative jmax");
  Carrier c;
  c.dim = (jmax + 1) * (jmax + 1);
  int offset = 0;
  for (int l = 0; l <= jmax; ++l) {
    c.blocks.push_back({offset, 2 * l});
    offset += 2 * l + 1;
  }
  return c;
}

Carrier Carrier::embedded(std::vector<std::vector<Complex>> basis_columns) {
  if (basis_columns.size() != 2)
    throw InvalidInput("Carrier::embedded: exactly two basis columns required");
  const std::size_t d = basis_columns[0].size();
  if (basis_columns[1].size() != d || d < 2)
    throw InvalidInput("Carrier::embedded: malformed basis columns");
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Complex g = 0;
      for (std::size_t k = 0; k < d; ++k)
        g += std::conj(basis_columns[static_cast<std::size_t>(a)][k]) *
             basis_columns[static_cast<std::size_t>(b)][k];
      if (std::abs(g - (a == b ? 1.0 : 0.0)) > 1e-9)
        throw InvalidInput("Carrier::embedded: basis columns are not orthonormal");
    }
  }
  Carrier c;
  c.dim = static_cast<int>(d);
  c.embed_basis = std::move(basis_columns);
  return c;
}

void validate_spec(const ContinuousGroupSpec& spec) {
  if (spec.samples < 0) throw InvalidInput("continuous spec: negative sample count");
  if (spec.kind == ContinuousKind::U2Embedded) {
    if (spec.carrier.embed_basis.size() != 2)
      throw InvalidInput("continuous spec: U2Embedded requires a two-column subspace basis");
    return;
  }
  if (spec.carrier.blocks.empty())
    throw InvalidInput("continuous spec: carrier has no irrep blocks");
  if (spec.kind == ContinuousKind::SO3) {
    for (const auto& b : spec.carrier.blocks)
      if (b.two_j % 2 != 0)
        throw InvalidInput("continuous spec: SO3 requires integer-spin carriers");
  }
}

SquareOperator parity_operator(const Carrier& carrier) {
  SquareOperator p = SquareOperator::identity(carrier.dim);
  for (const auto& b : carrier.blocks) {
    if (b.two_j % 2 != 0) continue;  // identity on half-integer blocks
    const int l = b.two_j / 2;
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k < b.dim(); ++k) p(b.offset + k, b.offset + k) = sign;
  }
  return p;
}

namespace {

struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;
};

// Uniform on S^3, i.e. Haar on SU(2).
Quaternion haar_quaternion(CounterRng& rng) {
  Quaternion q;
  q.w = rng.normal();
  q.x = rng.normal();
  q.y = rng.normal();
  q.z = rng.normal();
  const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  if (n < 1e-12) return Quaternion{};
  q.w /= n;
  q.x /= n;
  q.y /= n;
  q.z /= n;
  return q;
}

// The fundamental representation: w I - i (x sx + y sy + z sz).
void spin_half_matrix(const Quaternion& q, Complex out[2][2]) {
  out[0][0] = Complex(q.w, -q.z);
  out[0][1] = Complex(-q.y, -q.x);
  out[1][0] = Complex(q.y, -q.x);
  out[1][1] = Complex(q.w, q.z);
}

SquareOperator rotation_on_blocks(const Carrier& carrier, const Quaternion& q) {
  SquareOperator r(carrier.dim);
  const double sin_half = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  const double omega = 2.0 * std::atan2(sin_half, q.w);
  double nx = 0, ny = 0, nz = 1;
  if (sin_half > 1e-14) {
    nx = q.x / sin_half;
    ny = q.y / sin_half;
    nz = q.z / sin_half;
  }
  for (const auto& b : carrier.blocks) {
    if (b.two_j == 0) {
      r(b.offset, b.offset) = 1.0;
      continue;
    }
    if (b.two_j == 1) {
      Complex u[2][2];
      spin_half_matrix(q, u);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(b.offset + i, b.offset + j) = u[i][j];
      continue;
    }
    SquareOperator jx(b.dim()), jy(b.dim()), jz(b.dim());
    fill_block(jx, jy, jz, 0, b.two_j);
    SquareOperator gen = nx * jx + ny * jy + nz * jz;
    gen *= Complex(-omega);
    const SquareOperator u = unitary_exp(gen);
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j) r(b.offset + i, b.offset + j) = u(i, j);
  }
  return r;
}

}  // namespace

SquareOperator haar_element(const ContinuousGroupSpec& spec, std::uint64_t index) {
  CounterRng rng(spec.seed, index);
  const Quaternion q = haar_quaternion(rng);

  if (spec.kind == ContinuousKind::U2Embedded) {
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const Complex phase(std::cos(phi), std::sin(phi));
    Complex u[2][2];
    spin_half_matrix(q, u);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) u[i][j] *= phase;

    const auto& basis = spec.carrier.embed_basis;
    const int d = spec.carrier.dim;
    SquareOperator r = SquareOperator::identity(d);
    // complement projector part: I - sum_k b_k b_k†, then add the rotated block
    for (int k = 0; k < 2; ++k)
      for (int rr = 0; rr < d; ++rr)
        for (int cc = 0; cc < d; ++cc)
          r(rr, cc) -= basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(rr)] *
                       std::conj(basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(cc)]);
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int rr = 0; rr < d; ++rr)
          for (int cc = 0; cc < d; ++cc)
            r(rr, cc) += u[k][l] *
                         basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(rr)] *
                         std::conj(basis[static_cast<std::size_t>(l)][static_cast<std::size_t>(cc)]);
    return r;
  }

  SquareOperator r = rotation_on_blocks(spec.carrier, q);
  if (spec.kind == ContinuousKind::O3) {
    const bool flip = rng.uniform() < 0.5;
    if (flip) r = r * parity_operator(spec.carrier);
  }
  return r;
}

std::vector<SquareOperator> haar_draw(const ContinuousGroupSpec& spec) {
  validate_spec(spec);
  std::vector<SquareOperator> out;
  out.reserve(static_cast<std::size_t>(spec.samples));
  for (int i = 0; i < spec.samples; ++i)
    out.push_back(haar_element(spec, static_cast<std::uint64_t>(i)));
  return out;
}

// ---------------------------------------------------------------------------
// Ensemble

Ensemble Ensemble::finite_set(std::vector<SquareOperator> elements) {
  if (elements.empty()) throw InvalidInput("Ensemble::finite_set: empty set");
  const int d = elements.front().dim();
  for (const auto& e : elements)
    if (e.dim() != d) throw InvalidInput("Ensemble::finite_set: dimension mismatch");
  Ensemble e;
  e.v_ = std::move(elements);
  return e;
}

const FiniteGroup& Ensemble::group() const {
  if (const auto* g = std::get_if<FiniteGroup>(&v_)) return *g;
  throw InvalidInput("ensemble is not a finite group");
}

const ContinuousGroupSpec& Ensemble::continuous() const {
  if (const auto* s = std::get_if<ContinuousGroupSpec>(&v_)) return *s;
  throw InvalidInput("ensemble is not a continuous-group spec");
}

std::span<const SquareOperator> Ensemble::finite_elements() const {
  if (const auto* g = std::get_if<FiniteGroup>(&v_)) return g->elements;
  if (const auto* s = std::get_if<std::vector<SquareOperator>>(&v_)) return *s;
  throw InvalidInput("ensemble is not finite");
}

int Ensemble::dim() const {
  if (const auto* g = std::get_if<FiniteGroup>(&v_)) return g->dim();
  if (const auto* s = std::get_if<std::vector<SquareOperator>>(&v_))
    return s->empty() ? 0 : s->front().dim();
  return std::get<ContinuousGroupSpec>(v_).carrier.dim;
}

}  // namespace symdeg
