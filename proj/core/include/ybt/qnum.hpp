#pragma once

// q-arithmetic, basic hypergeometric series and q-Racah polynomials.
//
// Conventions:
//   (a; q)_n        = prod_{k=0}^{n-1} (1 - a q^k), empty product 1.
//   [n]_q           = (1 - q^n) / (1 - q), with the classical limit n near q = 1.
//   {n}_q symmetric = (q^n - q^{-n}) / (q - q^{-1}), used by U_q(sl2).

#include <complex>
#include <vector>

#include "ybt/errors.hpp"

namespace ybt {

using cplx = std::complex<double>;

// |q - 1| below this switches q-numbers to their classical limits.
inline constexpr double kQOneThreshold = 1e-8;
// Relative tolerance when recognising a parameter as q^{-n}.
inline constexpr double kTerminationTol = 1e-12;

cplx q_pochhammer(cplx a, double q, int n);
// Allows n < 0 via (a; q)_{-n} = 1 / (a q^{-n}; q)_n.
cplx q_pochhammer_signed(cplx a, double q, int n);

double q_integer(int n, double q);
double q_factorial(int n, double q);
double q_binomial(int l, int j, double q);
double q_number_symmetric(int n, double q);
double q_factorial_symmetric(int n, double q);

// If a equals q^{-n} for some integer n >= 0 (relative tolerance), returns n.
int termination_index(cplx a, double q, int max_n = 4096);

struct HypergeometricSpec {
  std::vector<cplx> upper;
  std::vector<cplx> lower;
  double q = 0.5;
  cplx z = 0.0;
  int max_terms = 10000;
};

// r phi s with the (-1)^{(1+s-r)k} q^{(1+s-r) k(k-1)/2} balancing factor.
cplx basic_hypergeometric(const HypergeometricSpec& spec);

struct QRacahParams {
  int n = 0;
  int x = 0;
  cplx alpha = 0.0;
  cplx beta = 0.0;
  cplx gamma = 0.0;
  cplx delta = 0.0;
  double q = 0.5;
  int N = 0;
};

// mu(x) = q^{-x} + gamma delta q^{x+1}; the polynomial variable of q_racah.
cplx q_racah_mu(const QRacahParams& p);

// 4phi3(q^{-n}, alpha beta q^{n+1}, q^{-x}, gamma delta q^{x+1};
//       alpha q, beta delta q, gamma q; q, q).
cplx q_racah(const QRacahParams& p);

// The same series multiplied through by (alpha q, beta delta q, gamma q; q)_n,
// summed termwise so that lower parameters hitting q^{-k} with k < n are
// harmless. Requires no truncation condition.
cplx q_racah_regularized(const QRacahParams& p);

// Balanced terminating series sum_k (uppers; q)_k / (q; q)_k z^k
// prod_b (b q^k; q)_{n-k}: a 4phi3-type sum with its lower Pochhammers
// cleared. n is the termination degree.
cplx terminating_series_regularized(int n, const std::vector<cplx>& upper,
                                    const std::vector<cplx>& lower, double q,
                                    cplx z);

// Scalar-generic forms of the above, used where extended precision is
// needed. T is any field type with abs() found by lookup.
template <class T>
T q_pochhammer_t(const T& a, const T& q, int n) {
  T r(1);
  T qk(1);
  for (int k = 0; k < n; ++k) {
    r *= T(1) - a * qk;
    qk *= q;
  }
  return r;
}

// Negative lengths divide; a factor below pole_tol is reported as a pole.
template <class T>
T q_pochhammer_signed_t(const T& a, const T& q, int n, double pole_tol = 1e-12) {
  using std::abs;
  if (n >= 0) return q_pochhammer_t(a, q, n);
  T shifted = a;
  for (int k = 0; k < -n; ++k) shifted /= q;
  T denom(1);
  T qk(1);
  for (int k = 0; k < -n; ++k) {
    const T f = T(1) - shifted * qk;
    if (abs(f) <= pole_tol) throw Error(Errc::PoleInPochhammer, "negative-length Pochhammer hits zero");
    denom *= f;
    qk *= q;
  }
  return T(1) / denom;
}

template <class T>
T terminating_series_regularized_t(int n, const std::vector<T>& upper, const std::vector<T>& lower,
                                   const T& q, const T& z) {
  T sum(0);
  T zk(1);
  T qk(1);
  for (int k = 0; k <= n; ++k) {
    T t = zk / q_pochhammer_t(q, q, k);
    for (const auto& a : upper) t *= q_pochhammer_t(a, q, k);
    for (const auto& b : lower) t *= q_pochhammer_t(T(b * qk), q, n - k);
    sum += t;
    zk *= z;
    qk *= q;
  }
  return sum;
}

}  // namespace ybt
