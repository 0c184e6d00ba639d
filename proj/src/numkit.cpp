#include "symdeg/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "symdeg/rng.hpp"

namespace symdeg {

double SquareOperator::unitarity_residual() const {
  const SquareOperator g = adjoint() * (*this);
  SquareOperator d = g;
  for (int i = 0; i < dim(); ++i) d(i, i) -= 1.0;
  return frobenius_norm(d);
}

double frobenius_norm_sq(const SquareOperator& m) {
  double s = 0;
  for (Complex z : m.data()) s += std::norm(z);
  return s;
}

double frobenius_norm(const SquareOperator& m) { return std::sqrt(frobenius_norm_sq(m)); }

double max_abs_diff(const SquareOperator& a, const SquareOperator& b) {
  a.require_same_dim(b);
  double r = 0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) r = std::max(r, std::abs(da[i] - db[i]));
  return r;
}

Complex hs_inner(const SquareOperator& a, const SquareOperator& b) {
  a.require_same_dim(b);
  Complex s = 0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += std::conj(da[i]) * db[i];
  return s;
}

double real_trace_product(const SquareOperator& a, const SquareOperator& b) {
  a.require_same_dim(b);
  const int n = a.dim();
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) s += (a(i, k) * b(k, i)).real();
  return s;
}

SquareOperator commutator(const SquareOperator& a, const SquareOperator& b) {
  a.require_same_dim(b);
  return a * b - b * a;
}

SquareOperator anticommutator(const SquareOperator& a, const SquareOperator& b) {
  a.require_same_dim(b);
  return a * b + b * a;
}

SquareOperator rebias(const SquareOperator& h, double hermiticity_tol) {
  if (!h.is_hermitian(hermiticity_tol))
    throw InvalidInput("rebias: input is not Hermitian");
  const Complex shift = h.trace() / static_cast<double>(h.dim());
  SquareOperator out = h;
  for (int i = 0; i < h.dim(); ++i) out(i, i) -= shift;
  return out;
}

namespace {

double offdiag_norm(const SquareOperator& a) {
  double s = 0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Exact symmetrization so the sweep works on a numerically Hermitian copy.
SquareOperator hermitize(const SquareOperator& h) {
  SquareOperator a(h.dim());
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  return a;
}

// Deterministic sign convention: the largest-magnitude component of each
// eigenvector is made real and positive.
void phase_fix_column(SquareOperator& v, int col) {
  const int n = v.dim();
  int k0 = 0;
  double best = -1;
  for (int k = 0; k < n; ++k) {
    const double m = std::abs(v(k, col));
    if (m > best + 1e-15) {
      best = m;
      k0 = k;
    }
  }
  if (best <= 0) return;
  const Complex phase = std::conj(v(k0, col)) / best;
  for (int k = 0; k < n; ++k) v(k, col) *= phase;
}

bool lex_less_column(const SquareOperator& v, int a, int b) {
  for (int k = 0; k < v.dim(); ++k) {
    const Complex x = v(k, a), y = v(k, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

EigenSystem hermitian_eigensystem(const SquareOperator& h, double hermiticity_tol) {
  if (h.dim() == 0) throw InvalidInput("hermitian_eigensystem: empty operator");
  if (!h.is_hermitian(hermiticity_tol))
    throw InvalidInput("hermitian_eigensystem: input is not Hermitian (residual " +
                       std::to_string(h.hermiticity_residual()) + ")");
  const int n = h.dim();
  SquareOperator a = hermitize(h);
  SquareOperator v = SquareOperator::identity(n);

  const double scale = frobenius_norm(a);
  const double thresh = tol::eigen_convergence * scale;
  constexpr int kMaxSweeps = 100;

  double off = offdiag_norm(a);
  bool polish = false;  // one extra sweep after crossing the threshold drives
                        // the residual to the quadratic-convergence floor
  for (int sweep = 0; sweep < kMaxSweeps + 1 && n > 1; ++sweep) {
    if (off <= thresh) {
      if (polish) break;
      polish = true;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase = apq / mag;  // e^{i phi}
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex sp = s * phase;             // s e^{i phi}
        const Complex spc = s * std::conj(phase); // s e^{-i phi}

        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - spc * akq;
          a(k, q) = sp * akp + c * akq;
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = spc * apk + c * aqk;
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - spc * vkq;
          v(k, q) = sp * vkp + c * vkq;
        }
      }
    }
    off = offdiag_norm(a);
  }
  if (n > 1 && off > thresh)
    throw NumericFailure("hermitian_eigensystem: Jacobi sweep cap reached, off-diagonal residual " +
                         std::to_string(off));

  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i).real();
  for (int i = 0; i < n; ++i) phase_fix_column(v, i);

  const double spread = (n > 0)
      ? *std::max_element(values.begin(), values.end()) -
        *std::min_element(values.begin(), values.end())
      : 0.0;
  const double tie_tol = 1e-12 * std::max(1.0, std::max(spread, scale));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double vi = values[static_cast<std::size_t>(i)];
    const double vj = values[static_cast<std::size_t>(j)];
    if (vi != vj) return vi < vj;  // strictly ascending; lex order only on exact ties
    return lex_less_column(v, i, j);
  });

  EigenSystem out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors = SquareOperator(n);
  for (int c = 0; c < n; ++c) {
    out.values[static_cast<std::size_t>(c)] = values[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])];
    for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[static_cast<std::size_t>(c)]);
  }

  // Gram-Schmidt inside degenerate clusters, in index order.
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && out.values[static_cast<std::size_t>(end)] -
                          out.values[static_cast<std::size_t>(end - 1)] <= tie_tol)
      ++end;
    for (int c = start; c < end; ++c) {
      for (int b = start; b < c; ++b) {
        Complex proj = 0;
        for (int r = 0; r < n; ++r) proj += std::conj(out.vectors(r, b)) * out.vectors(r, c);
        for (int r = 0; r < n; ++r) out.vectors(r, c) -= proj * out.vectors(r, b);
      }
      double nrm = 0;
      for (int r = 0; r < n; ++r) nrm += std::norm(out.vectors(r, c));
      nrm = std::sqrt(nrm);
      if (nrm < 1e-12)
        throw NumericFailure("hermitian_eigensystem: degenerate cluster collapsed during re-orthonormalization");
      for (int r = 0; r < n; ++r) out.vectors(r, c) *= (1.0 / nrm);
      phase_fix_column(out.vectors, c);
    }
    start = end;
  }
  return out;
}

SquareOperator unitary_exp(const SquareOperator& k, double hermiticity_tol) {
  if (!k.is_hermitian(hermiticity_tol))
    throw InvalidInput("unitary_exp: generator is not Hermitian");
  const EigenSystem es = hermitian_eigensystem(k, hermiticity_tol);
  const int n = k.dim();
  SquareOperator out(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Complex s = 0;
      for (int m = 0; m < n; ++m) {
        const double lam = es.values[static_cast<std::size_t>(m)];
        const Complex ph(std::cos(lam), std::sin(lam));
        s += es.vectors(r, m) * ph * std::conj(es.vectors(c, m));
      }
      out(r, c) = s;
    }
  }
  return out;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

MeanStderr mean_and_stderr(std::span<const double> xs) {
  MeanStderr r;
  const std::size_t n = xs.size();
  if (n == 0) return r;
  r.mean = pairwise_sum(xs) / static_cast<double>(n);
  if (n < 2) return r;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = xs[i] - r.mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  r.stderr_ = std::sqrt(var / static_cast<double>(n));
  return r;
}

SquareOperator random_hermitian(int dim, std::uint64_t seed) {
  CounterRng rng(seed, 0x48d);
  SquareOperator m(dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = rng.normal();
    for (int j = i + 1; j < dim; ++j) {
      const Complex z(rng.normal() * 0.5, rng.normal() * 0.5);
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

SquareOperator random_unitary(int dim, std::uint64_t seed) {
  return unitary_exp(random_hermitian(dim, seed ^ 0x75fa3f1aull));
}

}  // namespace symdeg
