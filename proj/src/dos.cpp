#include "symdeg/dos.hpp"

#include <cmath>

#include "symdeg/numkit.hpp"

namespace symdeg {

std::string to_string(Method m) {
  switch (m) {
    case Method::Direct: return "direct";
    case Method::Twirl: return "twirl";
    case Method::Irrep: return "irrep";
    case Method::MonteCarlo: return "montecarlo";
    case Method::Auto: return "auto";
  }
  throw InvalidInput("unknown method enum");
}

std::string to_string(Mode m) {
  return m == Mode::Hamiltonian ? "hamiltonian" : "state";
}

namespace {

void validate_state(const SquareOperator& rho) {
  if (!rho.is_hermitian())
    throw InvalidInput("state mode: density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-9)
    throw InvalidInput("state mode: density matrix trace differs from 1");
  const EigenSystem es = hermitian_eigensystem(rho);
  for (double v : es.values)
    if (v < -1e-9) throw InvalidInput("state mode: density matrix is not positive semidefinite");
}

// The operator the averages act on: rebias(H) in Hamiltonian mode (never
// the raw H, so the zero-point cancels), the density matrix itself in state
// mode.
SquareOperator normalized_operator(const SquareOperator& f, Mode mode) {
  if (mode == Mode::Hamiltonian) {
    const SquareOperator fb = rebias(f);
    if (frobenius_norm(fb) <= 0)
      throw InvalidInput("DoS undefined: Hamiltonian is proportional to the identity");
    return fb;
  }
  validate_state(f);
  return f;
}

enum class AvgForm { Commutator, Anticommutator };

double single_term(const SquareOperator& r, const SquareOperator& fhat, double norm_sq,
                   AvgForm form) {
  const SquareOperator op =
      form == AvgForm::Commutator ? commutator(r, fhat) : anticommutator(r, fhat);
  return frobenius_norm_sq(op) / (4.0 * norm_sq);
}

MeanStderr finite_average(const SquareOperator& fhat, std::span<const SquareOperator> elements,
                          AvgForm form) {
  const double norm_sq = frobenius_norm_sq(fhat);
  std::vector<double> terms(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    terms[i] = single_term(elements[i], fhat, norm_sq, form);
  MeanStderr out;
  out.mean = pairwise_sum(terms) / static_cast<double>(terms.size());
  out.stderr_ = 0;  // exact sum
  return out;
}

MeanStderr mc_average(const SquareOperator& fhat, const ContinuousGroupSpec& spec, AvgForm form) {
  validate_spec(spec);
  if (spec.samples < 1)
    throw InvalidInput("Monte Carlo evaluation requires a positive sample count");
  const double norm_sq = frobenius_norm_sq(fhat);
  std::vector<double> terms(static_cast<std::size_t>(spec.samples));
  const int n = spec.samples;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const SquareOperator r = haar_element(spec, static_cast<std::uint64_t>(i));
    terms[static_cast<std::size_t>(i)] = single_term(r, fhat, norm_sq, form);
  }
  return mean_and_stderr(terms);
}

DoSResult from_asymmetry(MeanStderr a, Method method) {
  DoSResult r;
  r.A = a.mean;
  r.S = 1.0 - a.mean;
  r.method = method;
  r.stderr_ = a.stderr_;
  return r;
}

DoSResult from_symmetry(MeanStderr s, Method method) {
  DoSResult r;
  r.S = s.mean;
  r.A = 1.0 - s.mean;
  r.method = method;
  r.stderr_ = s.stderr_;
  return r;
}

}  // namespace

DoSResult doas(const SquareOperator& f, const Ensemble& ensemble, Mode mode) {
  const SquareOperator fhat = normalized_operator(f, mode);
  if (ensemble.is_finite())
    return from_asymmetry(finite_average(fhat, ensemble.finite_elements(), AvgForm::Commutator),
                          Method::Direct);
  return from_asymmetry(mc_average(fhat, ensemble.continuous(), AvgForm::Commutator),
                        Method::MonteCarlo);
}

DoSResult dos(const SquareOperator& f, const Ensemble& ensemble, Mode mode) {
  const SquareOperator fhat = normalized_operator(f, mode);
  if (ensemble.is_finite())
    return from_symmetry(finite_average(fhat, ensemble.finite_elements(), AvgForm::Anticommutator),
                         Method::Direct);
  return from_symmetry(mc_average(fhat, ensemble.continuous(), AvgForm::Anticommutator),
                       Method::MonteCarlo);
}

SquareOperator analytic_carrier_twirl(const SquareOperator& f, const Carrier& carrier) {
  if (f.dim() != carrier.dim)
    throw InvalidInput("analytic_carrier_twirl: dimension mismatch");

  if (!carrier.embed_basis.empty()) {
    // Subspace block -> (trace/2) I_2, cross blocks -> 0, complement kept.
    const auto& basis = carrier.embed_basis;
    const int d = carrier.dim;
    // P = sum_k b_k b_k†
    SquareOperator p(d);
    for (int k = 0; k < 2; ++k)
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          p(r, c) += basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] *
                     std::conj(basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)]);
    SquareOperator pc = SquareOperator::identity(d) - p;
    Complex block_trace = 0;
    for (int k = 0; k < 2; ++k) {
      Complex t = 0;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          t += std::conj(basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)]) *
               f(r, c) * basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
      block_trace += t;
    }
    return (block_trace / 2.0) * p + pc * f * pc;
  }

  // Inequivalent irrep blocks: the commutant is scalar per block.
  SquareOperator d_out(carrier.dim);
  for (const auto& b : carrier.blocks) {
    Complex t = 0;
    for (int k = 0; k < b.dim(); ++k) t += f(b.offset + k, b.offset + k);
    const Complex scale = t / static_cast<double>(b.dim());
    for (int k = 0; k < b.dim(); ++k) d_out(b.offset + k, b.offset + k) = scale;
  }
  return d_out;
}

SquareOperator twirl(const SquareOperator& f, const Ensemble& ensemble) {
  if (f.dim() != ensemble.dim()) throw InvalidInput("twirl: dimension mismatch");
  if (ensemble.is_finite()) {
    if (!ensemble.is_group())
      throw InvalidInput("twirl: finite ensemble is not a group (twirl identity needs group structure)");
    const auto elems = ensemble.finite_elements();
    SquareOperator acc(f.dim());
    for (const auto& r : elems) acc += r.adjoint() * f * r;
    acc *= Complex(1.0 / static_cast<double>(elems.size()));
    return acc;
  }
  const ContinuousGroupSpec& spec = ensemble.continuous();
  validate_spec(spec);
  if (spec.kind == ContinuousKind::U2Embedded)
    return analytic_carrier_twirl(f, spec.carrier);
  // Sampler path: plain Monte Carlo mean, serial fixed-order accumulation.
  if (spec.samples < 1)
    throw InvalidInput("twirl: Monte Carlo path requires a positive sample count");
  SquareOperator acc(f.dim());
  for (int i = 0; i < spec.samples; ++i) {
    const SquareOperator r = haar_element(spec, static_cast<std::uint64_t>(i));
    acc += r.adjoint() * f * r;
  }
  acc *= Complex(1.0 / static_cast<double>(spec.samples));
  return acc;
}

DoSResult dos_via_twirl(const SquareOperator& f, const Ensemble& ensemble, Mode mode) {
  const SquareOperator fhat = normalized_operator(f, mode);
  SquareOperator d(fhat.dim());
  if (ensemble.is_finite()) {
    if (!ensemble.is_group()) throw InvalidInput("dos_via_twirl: ensemble must be a group");
    d = twirl(fhat, ensemble);
  } else {
    const ContinuousGroupSpec& spec = ensemble.continuous();
    validate_spec(spec);
    if (!spec.analytic_twirl_available)
      throw InvalidInput("dos_via_twirl: no analytic twirl for this continuous spec");
    d = analytic_carrier_twirl(fhat, spec.carrier);
  }
  const double s = 0.5 + frobenius_norm_sq(d) / (2.0 * frobenius_norm_sq(fhat));
  return from_symmetry({s, 0.0}, Method::Twirl);
}

DoSResult evaluate_dos(const SquareOperator& f, const Ensemble& ensemble, Mode mode,
                       Method method) {
  switch (method) {
    case Method::Auto:
      if (ensemble.is_group()) return dos_via_twirl(f, ensemble, mode);
      if (ensemble.is_finite()) return dos(f, ensemble, mode);
      if (ensemble.continuous().analytic_twirl_available) return dos_via_twirl(f, ensemble, mode);
      return dos(f, ensemble, mode);
    case Method::Direct:
      if (!ensemble.is_finite())
        throw InvalidInput("direct evaluation requires a finite ensemble");
      return dos(f, ensemble, mode);
    case Method::Twirl:
      return dos_via_twirl(f, ensemble, mode);
    case Method::MonteCarlo:
      if (!ensemble.is_continuous())
        throw InvalidInput("Monte Carlo evaluation requires a continuous ensemble");
      return dos(f, ensemble, mode);
    case Method::Irrep:
      throw InvalidInput("irrep evaluation needs an explicit decomposition; use dos_irrep_formula");
  }
  throw InvalidInput("unknown method enum");
}

IrrepDecomposition irrep_decompose(const FiniteGroup& g, const CharacterTable& table,
                                   double tolerance) {
  const int n = g.order();
  const int d = g.dim();
  if (n == 0) throw InvalidInput("irrep_decompose: empty group");

  int dim_sq = 0;
  for (const auto& irrep : table.irreps) dim_sq += irrep.dim * irrep.dim;
  if (dim_sq != n)
    throw InvalidInput("irrep_decompose: character table order mismatch (sum d_l^2 != n_G)");

  // Column index of each element's class in the table, via cycle types.
  const auto classes = conjugacy_classes(g, tolerance);
  std::vector<int> class_of(static_cast<std::size_t>(n), -1);
  std::vector<int> census(table.class_types.size(), 0);
  for (const auto& cls : classes) {
    const auto perm = permutation_of(g.elements[static_cast<std::size_t>(cls.front())]);
    if (!perm)
      throw InvalidInput("irrep_decompose: character tables are keyed by cycle type and need a permutation representation");
    const std::string type = cycle_type(*perm);
    int col = -1;
    for (std::size_t c = 0; c < table.class_types.size(); ++c)
      if (table.class_types[c] == type) col = static_cast<int>(c);
    if (col < 0)
      throw InvalidInput("irrep_decompose: class of type '" + type + "' missing from the table");
    census[static_cast<std::size_t>(col)] += static_cast<int>(cls.size());
    for (int idx : cls) class_of[static_cast<std::size_t>(idx)] = col;
  }
  for (std::size_t c = 0; c < census.size(); ++c)
    if (census[c] != table.class_sizes[c])
      throw InvalidInput("irrep_decompose: class census disagrees with the character table");

  IrrepDecomposition out;
  out.dim = d;
  SquareOperator completeness(d);
  for (const auto& irrep : table.irreps) {
    SquareOperator p(d);
    for (int i = 0; i < n; ++i) {
      const double chi = irrep.chi[static_cast<std::size_t>(class_of[static_cast<std::size_t>(i)])];
      if (chi == 0.0) continue;
      p += chi * g.elements[static_cast<std::size_t>(i)];
    }
    p *= Complex(static_cast<double>(irrep.dim) / static_cast<double>(n));

    if (p.hermiticity_residual() > 1e-9 || max_abs_diff(p * p, p) > 1e-9)
      throw NumericFailure("irrep_decompose: projector for " + irrep.name + " is not a projection");

    const double trace = p.trace().real();
    const double mult_real = trace / irrep.dim;
    const int mult = static_cast<int>(std::lround(mult_real));
    if (std::abs(mult_real - mult) > 1e-6 || mult < 0)
      throw NumericFailure("irrep_decompose: non-integer multiplicity for " + irrep.name);
    if (mult == 0) continue;

    IsotypicBlock block;
    block.label = irrep.name;
    block.dim = irrep.dim;
    block.multiplicity = mult;
    block.projector = p;

    // Orthonormal basis from the projector columns, Gram-Schmidt in index
    // order for reproducibility.
    const int want = mult * irrep.dim;
    for (int col = 0; col < d && static_cast<int>(block.basis.size()) < want; ++col) {
      std::vector<Complex> v(static_cast<std::size_t>(d));
      for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] = p(r, col);
      for (const auto& b : block.basis) {
        Complex proj = 0;
        for (int r = 0; r < d; ++r) proj += std::conj(b[static_cast<std::size_t>(r)]) * v[static_cast<std::size_t>(r)];
        for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] -= proj * b[static_cast<std::size_t>(r)];
      }
      double nrm = 0;
      for (const Complex& z : v) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
      if (nrm < 1e-7) continue;
      for (Complex& z : v) z *= (1.0 / nrm);
      block.basis.push_back(std::move(v));
    }
    if (static_cast<int>(block.basis.size()) != want)
      throw NumericFailure("irrep_decompose: rank of projector for " + irrep.name +
                           " disagrees with its trace");
    completeness += p;
    out.blocks.push_back(std::move(block));
  }

  if (max_abs_diff(completeness, SquareOperator::identity(d)) > 1e-9)
    throw NumericFailure("irrep_decompose: isotypic projectors do not resolve the identity");
  for (const auto& block : out.blocks)
    for (const auto& r : g.elements)
      if (max_abs_diff(block.projector * r, r * block.projector) > 1e-9)
        throw NumericFailure("irrep_decompose: projector does not commute with the representation");
  return out;
}

DoSResult dos_irrep_formula(const SquareOperator& h, const IrrepDecomposition& decomposition,
                            bool allow_multiplicity) {
  if (h.dim() != decomposition.dim) throw InvalidInput("dos_irrep_formula: dimension mismatch");
  for (const auto& block : decomposition.blocks)
    if (block.multiplicity > 1 && !allow_multiplicity)
      throw InvalidInput("dos_irrep_formula: block " + block.label +
                         " has multiplicity > 1; the formula may disagree with the exact average "
                         "(pass allow_multiplicity to evaluate it anyway)");

  const SquareOperator hb = rebias(h);
  const double hb_norm_sq = frobenius_norm_sq(hb);
  if (hb_norm_sq <= 0)
    throw InvalidInput("DoS undefined: Hamiltonian is proportional to the identity");
  const double trace_term = h.trace().real() / static_cast<double>(h.dim());

  double s = 0.5;
  const int d = decomposition.dim;
  for (const auto& block : decomposition.blocks) {
    for (int copy = 0; copy < block.multiplicity; ++copy) {
      double diag = 0;
      for (int a = 0; a < block.dim; ++a) {
        const auto& v = block.basis[static_cast<std::size_t>(copy * block.dim + a)];
        Complex expect = 0;
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            expect += std::conj(v[static_cast<std::size_t>(r)]) * h(r, c) * v[static_cast<std::size_t>(c)];
        diag += expect.real();
      }
      const double centered = diag - trace_term * block.dim;
      s += centered * centered / (2.0 * block.dim * hb_norm_sq);
    }
  }
  DoSResult r;
  r.S = s;
  r.A = 1.0 - s;
  r.method = Method::Irrep;
  r.stderr_ = 0;
  return r;
}

}  // namespace symdeg
