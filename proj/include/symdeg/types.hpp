// Core value types shared across the library: a dense complex square
// operator with Hermiticity/unitarity predicates, the eigensystem bundle,
// error types, and the default numeric tolerances.
#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace symdeg {

using Complex = std::complex<double>;

// Default tolerances. Operations that depend on one accept it as a
// defaulted parameter so callers can override per call site.
namespace tol {
inline constexpr double hermiticity = 1e-9;
inline constexpr double unitarity = 1e-9;
inline constexpr double group_closure = 1e-9;
inline constexpr double group_dedup = 1e-6;
inline constexpr double degeneracy = 1e-9;
// Relative off-diagonal mass at which the Jacobi sweep stops.
inline constexpr double eigen_convergence = 1e-12;
}  // namespace tol

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Precondition violations: bad dimensions, unknown names, ill-formed inputs.
struct InvalidInput : Error {
  using Error::Error;
};
// Validation or convergence failures on otherwise well-formed numeric data.
struct NumericFailure : Error {
  using Error::Error;
};
// An asymptotic-limit extraction was requested outside its regime.
struct RegimeError : Error {
  using Error::Error;
};

// Dense complex square matrix, row-major. Immutable-by-convention value
// type; all algebra returns fresh values.
class SquareOperator {
 public:
  SquareOperator() = default;
  explicit SquareOperator(int dim) : dim_(check_dim(dim)), a_(static_cast<std::size_t>(dim) * dim) {}

  static SquareOperator identity(int dim) {
    SquareOperator m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareOperator diagonal(std::span<const double> entries) {
    SquareOperator m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
    return m;
  }

  static SquareOperator from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    SquareOperator m(static_cast<int>(rows.size()));
    int r = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != m.dim())
        throw InvalidInput("SquareOperator::from_rows: ragged rows");
      int c = 0;
      for (Complex z : row) m(r, c++) = z;
      ++r;
    }
    return m;
  }

  int dim() const noexcept { return dim_; }

  Complex& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  Complex operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

  std::span<Complex> data() { return a_; }
  std::span<const Complex> data() const { return a_; }

  SquareOperator& operator+=(const SquareOperator& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  SquareOperator& operator-=(const SquareOperator& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  SquareOperator& operator*=(Complex s) {
    for (auto& z : a_) z *= s;
    return *this;
  }

  friend SquareOperator operator+(SquareOperator a, const SquareOperator& b) { return a += b; }
  friend SquareOperator operator-(SquareOperator a, const SquareOperator& b) { return a -= b; }
  friend SquareOperator operator*(Complex s, SquareOperator m) { return m *= s; }
  friend SquareOperator operator*(SquareOperator m, Complex s) { return m *= s; }
  friend SquareOperator operator*(double s, SquareOperator m) { return m *= Complex(s); }

  friend SquareOperator operator*(const SquareOperator& a, const SquareOperator& b) {
    a.require_same_dim(b);
    const int n = a.dim_;
    SquareOperator c(n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  SquareOperator adjoint() const {
    SquareOperator m(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Complex trace() const {
    Complex t = 0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  // max_ij |M_ij - conj(M_ji)|
  double hermiticity_residual() const {
    double r = 0;
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return r;
  }

  bool is_hermitian(double tolerance = tol::hermiticity) const {
    return hermiticity_residual() <= tolerance;
  }

  // ||U†U - I||_F
  double unitarity_residual() const;

  bool is_unitary(double tolerance = tol::unitarity) const {
    return unitarity_residual() <= tolerance;
  }

  void require_same_dim(const SquareOperator& o) const {
    if (dim_ != o.dim_) throw InvalidInput("operator dimension mismatch");
  }

 private:
  static int check_dim(int dim) {
    if (dim <= 0) throw InvalidInput("SquareOperator: dimension must be positive");
    return dim;
  }

  int dim_ = 0;
  std::vector<Complex> a_;
};

// Full spectral decomposition of a Hermitian operator. values are ascending;
// vectors holds the matching orthonormal eigenvectors as columns.
struct EigenSystem {
  std::vector<double> values;
  SquareOperator vectors;
};

}  // namespace symdeg
