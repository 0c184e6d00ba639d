#include "symdeg/oracle.hpp"

#include <cmath>

namespace symdeg::oracle {

namespace {

// Self-contained complex matrix arithmetic on nested vectors.
using Mat = std::vector<std::vector<Complex>>;

Mat to_mat(const SquareOperator& m) {
  const int d = m.dim();
  Mat out(static_cast<std::size_t>(d), std::vector<Complex>(static_cast<std::size_t>(d)));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  return out;
}

Mat mul(const Mat& a, const Mat& b) {
  const std::size_t d = a.size();
  Mat out(d, std::vector<Complex>(d, Complex{}));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Complex s = 0;
      for (std::size_t k = 0; k < d; ++k) s += a[i][k] * b[k][j];
      out[i][j] = s;
    }
  return out;
}

double norm_sq_of_combination(const Mat& ab, const Mat& ba, double sign) {
  double s = 0;
  for (std::size_t i = 0; i < ab.size(); ++i)
    for (std::size_t j = 0; j < ab.size(); ++j) s += std::norm(ab[i][j] + sign * ba[i][j]);
  return s;
}

Mat subtract_trace_mean(Mat m) {
  Complex t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  t /= static_cast<double>(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= t;
  return m;
}

double norm_sq(const Mat& m) {
  double s = 0;
  for (const auto& row : m)
    for (const Complex& z : row) s += std::norm(z);
  return s;
}

}  // namespace

OracleReport make_report(std::string name, double reference, double candidate, double tolerance) {
  OracleReport r;
  r.name = std::move(name);
  r.reference = reference;
  r.candidate = candidate;
  r.abs_dev = std::abs(candidate - reference);
  const double scale = std::max(std::abs(reference), std::abs(candidate));
  r.rel_dev = scale > 0 ? r.abs_dev / scale : 0.0;
  r.tolerance = tolerance;
  r.pass = r.abs_dev <= tolerance;
  return r;
}

double direct_group_average(const SquareOperator& f, const FiniteGroup& g, AvgForm form) {
  if (g.order() == 0) throw InvalidInput("direct_group_average: empty group");
  if (g.dim() != f.dim()) throw InvalidInput("direct_group_average: dimension mismatch");
  const Mat fm = to_mat(f);
  const double sign = form == AvgForm::Commutator ? -1.0 : 1.0;
  double acc = 0;
  for (const auto& element : g.elements) {
    const Mat r = to_mat(element);
    const Mat rf = mul(r, fm);
    const Mat fr = mul(fm, r);
    acc += norm_sq_of_combination(rf, fr, sign);
  }
  return acc / static_cast<double>(g.order());
}

McEstimate mc_reference(const SquareOperator& f, const ContinuousGroupSpec& spec, Mode mode,
                        long n) {
  if (n < 10000) throw InvalidInput("mc_reference: at least 10^4 samples required");
  validate_spec(spec);

  Mat fhat = to_mat(f);
  if (mode == Mode::Hamiltonian) fhat = subtract_trace_mean(fhat);
  const double fhat_norm_sq = norm_sq(fhat);
  if (fhat_norm_sq <= 0) throw InvalidInput("mc_reference: normalized operator vanishes");

  constexpr int kBatches = 10;
  double total = 0;
  double batch_means[kBatches] = {};
  const long per_batch = n / kBatches;
  long index = 0;
  for (int b = 0; b < kBatches; ++b) {
    const long count = (b == kBatches - 1) ? n - per_batch * (kBatches - 1) : per_batch;
    double acc = 0;
    for (long i = 0; i < count; ++i, ++index) {
      const Mat r = to_mat(haar_element(spec, static_cast<std::uint64_t>(index)));
      const Mat rf = mul(r, fhat);
      const Mat fr = mul(fhat, r);
      acc += norm_sq_of_combination(rf, fr, +1.0) / (4.0 * fhat_norm_sq);
    }
    batch_means[b] = acc / static_cast<double>(count);
    total += acc;
  }

  McEstimate est;
  est.mean = total / static_cast<double>(n);
  double varsum = 0;
  for (double m : batch_means) varsum += (m - est.mean) * (m - est.mean);
  est.stderr_ = std::sqrt(varsum / (kBatches - 1) / kBatches);
  return est;
}

double exponent_fit_reference(const ScanSeries& series, double lambda0) {
  int lambda_col = -1, a_col = -1;
  for (std::size_t c = 0; c < series.columns.size(); ++c) {
    if (series.columns[c] == "lambda") lambda_col = static_cast<int>(c);
    if (series.columns[c] == "A") a_col = static_cast<int>(c);
  }
  if (lambda_col < 0 || a_col < 0)
    throw InvalidInput("exponent_fit_reference: series lacks 'lambda' and 'A' columns");
  if (series.rows.empty()) throw InvalidInput("exponent_fit_reference: empty series");

  double lo = series.rows.front()[static_cast<std::size_t>(lambda_col)];
  double hi = lo;
  for (const auto& row : series.rows) {
    lo = std::min(lo, row[static_cast<std::size_t>(lambda_col)]);
    hi = std::max(hi, row[static_cast<std::size_t>(lambda_col)]);
  }
  const double span = hi - lo;
  const double r_lo = 1e-3 * span, r_hi = 1e-1 * span;

  double best_in_r = 0, best_in_a = 0, best_out_r = 0, best_out_a = 0;
  for (const auto& row : series.rows) {
    const double r = std::abs(row[static_cast<std::size_t>(lambda_col)] - lambda0);
    const double a = row[static_cast<std::size_t>(a_col)];
    if (r < r_lo || r > r_hi || a <= 1e-14) continue;
    if (best_in_r == 0 || r < best_in_r) {
      best_in_r = r;
      best_in_a = a;
    }
    if (r > best_out_r) {
      best_out_r = r;
      best_out_a = a;
    }
  }
  if (best_in_r == 0 || best_out_r <= best_in_r)
    throw InvalidInput("exponent_fit_reference: no usable point pair in the window");
  return (std::log(best_out_a) - std::log(best_in_a)) /
         (std::log(best_out_r) - std::log(best_in_r));
}

}  // namespace symdeg::oracle
