#include "ybt/oscillator.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "ybt/errors.hpp"

namespace ybt {

double hermite(int n, double x) {
  if (n < 0) throw Error(Errc::InvalidParameters, "degree must be nonnegative");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_coefficients(int n) {
  if (n < 0) throw Error(Errc::InvalidParameters, "degree must be nonnegative");
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{0.0, 2.0};
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(k + 2, 0.0);
    for (int i = 0; i <= k; ++i) next[i + 1] += 2.0 * cur[i];
    for (int i = 0; i < k; ++i) next[i] -= 2.0 * k * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<double> rodrigues_hermite_coefficients(int n) {
  if (n < 0) throw Error(Errc::InvalidParameters, "degree must be nonnegative");
  std::vector<double> p{1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) next[i - 1] += static_cast<double>(i) * p[i];
    for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] -= 2.0 * p[i];
    p = std::move(next);
  }
  if (n % 2 == 1) {
    for (double& c : p) c = -c;
  }
  return p;
}

double evaluate_polynomial(const std::vector<double>& coeffs, double x) {
  double r = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
  return r;
}

double hermite_inner_product(int m, int n) {
  auto f = [m, n](double x) { return hermite(m, x) * hermite(n, x) * std::exp(-x * x); };
  return boost::math::quadrature::gauss<double, 200>::integrate(f, -10.0, 10.0);
}

double hermite_orthogonality_residual(int max_degree) {
  double worst = 0.0;
  for (int m = 0; m <= max_degree; ++m) {
    for (int n = 0; n <= max_degree; ++n) {
      double expected = 0.0;
      if (m == n) expected = std::sqrt(std::acos(-1.0)) * std::pow(2.0, n) * std::tgamma(n + 1.0);
      worst = std::max(worst, std::abs(hermite_inner_product(m, n) - expected));
    }
  }
  return worst;
}

TruncatedFock truncated_fock(int cutoff) {
  if (cutoff < 2) throw Error(Errc::InvalidTruncation, "cutoff must be at least 2");
  TruncatedFock f;
  f.cutoff = cutoff;
  f.a = RealMatrix::Zero(cutoff, cutoff);
  for (int k = 1; k < cutoff; ++k) f.a(k - 1, k) = std::sqrt(static_cast<double>(k));
  f.adag = f.a.transpose();
  f.number = f.adag * f.a;
  return f;
}

Operator jordan_schwinger(const Matrix& m, int cutoff) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n || n < 1) throw Error(Errc::DimensionNotASquare, "Jordan–Schwinger needs a square matrix");
  double states = 1.0;
  for (int i = 0; i < n; ++i) states *= cutoff;
  if (states > 65536.0) throw Error(Errc::StateSpaceTooLarge, "cutoff^modes exceeds 2^16");
  const TruncatedFock f = truncated_fock(cutoff);
  const std::vector<int> dims(n, cutoff);
  std::vector<Matrix> a(n), adag(n);
  for (int i = 0; i < n; ++i) {
    a[i] = embed_local(Operator(Matrix(f.a.cast<cplx>())), i, dims).matrix();
    adag[i] = a[i].transpose();
  }
  const long d = a[0].rows();
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m(i, j) != 0.0) out += m(i, j) * adag[i] * a[j];
  return Operator(dims, out);
}

std::vector<long> shell_indices(int modes, int cutoff, int max_total) {
  long total_states = 1;
  for (int i = 0; i < modes; ++i) total_states *= cutoff;
  std::vector<long> out;
  for (long s = 0; s < total_states; ++s) {
    long rem = s;
    int total = 0;
    for (int i = 0; i < modes; ++i) {
      total += static_cast<int>(rem % cutoff);
      rem /= cutoff;
    }
    if (total <= max_total) out.push_back(s);
  }
  return out;
}

double shell_restricted_norm(const Operator& op, const std::vector<long>& shell) {
  double worst = 0.0;
  for (long r : shell)
    for (long c : shell) worst = std::max(worst, std::abs(op(r, c)));
  return worst;
}

double Sl2Residuals::max() const { return std::max({h_e, h_f, e_f}); }

Sl2Residuals jordan_schwinger_sl2_residuals(int cutoff) {
  Matrix e = Matrix::Zero(2, 2), f = Matrix::Zero(2, 2), h = Matrix::Zero(2, 2);
  e(0, 1) = 1.0;
  f(1, 0) = 1.0;
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  const Operator je = jordan_schwinger(e, cutoff), jf = jordan_schwinger(f, cutoff), jh = jordan_schwinger(h, cutoff);
  const auto shell = shell_indices(2, cutoff, cutoff - 2);
  auto comm = [](const Operator& x, const Operator& y) { return x * y - y * x; };
  Sl2Residuals r;
  r.h_e = shell_restricted_norm(comm(jh, je) - cplx(2.0) * je, shell);
  r.h_f = shell_restricted_norm(comm(jh, jf) + cplx(2.0) * jf, shell);
  r.e_f = shell_restricted_norm(comm(je, jf) - jh, shell);
  return r;
}

}  // namespace ybt
