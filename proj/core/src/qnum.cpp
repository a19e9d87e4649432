#include "ybt/qnum.hpp"

#include <cmath>
#include <limits>

#include "ybt/errors.hpp"

namespace ybt {

namespace {

bool near_one(double q) { return std::abs(q - 1.0) < kQOneThreshold; }

cplx product_pochhammer(const std::vector<cplx>& params, double q, int k) {
  cplx r = 1.0;
  for (const auto& a : params) r *= q_pochhammer(a, q, k);
  return r;
}

}  // namespace

cplx q_pochhammer(cplx a, double q, int n) {
  cplx r = 1.0;
  double qk = 1.0;
  for (int k = 0; k < n; ++k) {
    r *= 1.0 - a * qk;
    qk *= q;
  }
  return r;
}

cplx q_pochhammer_signed(cplx a, double q, int n) {
  if (n >= 0) return q_pochhammer(a, q, n);
  const cplx denom = q_pochhammer(a * std::pow(q, n), q, -n);
  if (denom == 0.0) throw Error(Errc::PoleInPochhammer, "negative-length Pochhammer hits zero");
  return 1.0 / denom;
}

double q_integer(int n, double q) {
  if (near_one(q)) return n;
  return (1.0 - std::pow(q, n)) / (1.0 - q);
}

double q_factorial(int n, double q) {
  double r = 1.0;
  for (int k = 1; k <= n; ++k) r *= q_integer(k, q);
  return r;
}

double q_binomial(int l, int j, double q) {
  if (j < 0 || j > l || l < 0) return 0.0;
  // Product form keeps large l stable: prod_{i=1}^{j} [l-j+i] / [i].
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r *= q_integer(l - j + i, q) / q_integer(i, q);
  return r;
}

double q_number_symmetric(int n, double q) {
  if (near_one(q)) return n;
  return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
}

double q_factorial_symmetric(int n, double q) {
  double r = 1.0;
  for (int k = 1; k <= n; ++k) r *= q_number_symmetric(k, q);
  return r;
}

int termination_index(cplx a, double q, int max_n) {
  if (near_one(q) || q <= 0.0) return a == 1.0 ? 0 : -1;
  // a = q^{-n}  <=>  n = -log|a| / log q, with a real and positive.
  if (std::abs(a.imag()) > kTerminationTol * std::abs(a) || a.real() <= 0.0) return -1;
  const double n = -std::log(a.real()) / std::log(q);
  const long nr = std::lround(n);
  if (nr < 0 || nr > max_n) return -1;
  const double target = std::pow(q, -static_cast<double>(nr));
  if (std::abs(a.real() - target) <= kTerminationTol * std::abs(target)) return static_cast<int>(nr);
  return -1;
}

cplx basic_hypergeometric(const HypergeometricSpec& spec) {
  const double q = spec.q;
  const int r = static_cast<int>(spec.upper.size());
  const int s = static_cast<int>(spec.lower.size());
  const int e = 1 + s - r;

  int stop = -1;
  for (const auto& a : spec.upper) {
    const int n = termination_index(a, q);
    if (n >= 0 && (stop < 0 || n < stop)) stop = n;
  }
  for (const auto& b : spec.lower) {
    const int k = termination_index(b, q);
    if (k >= 0 && (stop < 0 || k < stop)) {
      throw Error(Errc::PoleInLowerParameters, "lower parameter equals q^{-k} before termination");
    }
  }
  if (spec.z == 0.0) return 1.0;

  // Term ratio t_{k+1}/t_k built incrementally.
  cplx term = 1.0;
  cplx sum = 1.0;
  const int limit = stop >= 0 ? stop : spec.max_terms;
  int small_run = 0;
  for (int k = 0; k < limit; ++k) {
    const double qk = std::pow(q, k);
    cplx ratio = spec.z / (1.0 - q * qk);
    for (const auto& a : spec.upper) ratio *= 1.0 - a * qk;
    for (const auto& b : spec.lower) ratio /= 1.0 - b * qk;
    if (e != 0) ratio *= std::pow(-1.0, e) * std::pow(qk, e);
    term *= ratio;
    sum += term;
    if (stop < 0) {
      if (std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum)) {
        if (++small_run >= 3) return sum;
      } else {
        small_run = 0;
      }
      if (!std::isfinite(std::abs(sum))) break;
    }
  }
  if (stop >= 0) return sum;
  throw Error(Errc::NonTerminatingDivergent, "series neither terminated nor converged");
}

cplx q_racah_mu(const QRacahParams& p) {
  return std::pow(p.q, -p.x) + p.gamma * p.delta * std::pow(p.q, p.x + 1);
}

namespace {

void check_racah(const QRacahParams& p) {
  if (p.n < 0 || p.x < 0 || p.n > p.N || p.x > p.N) {
    throw Error(Errc::InvalidParameters, "q-Racah requires 0 <= n, x <= N");
  }
  const double target = std::pow(p.q, -p.N);
  auto hits = [&](cplx v) { return std::abs(v - target) <= 1e-10 * std::abs(target); };
  const int count = static_cast<int>(hits(p.alpha * p.q)) +
                    static_cast<int>(hits(p.beta * p.delta * p.q)) +
                    static_cast<int>(hits(p.gamma * p.q));
  if (count != 1) {
    throw Error(Errc::InvalidParameters,
                "exactly one of alpha q, beta delta q, gamma q must equal q^{-N}");
  }
}

}  // namespace

cplx q_racah(const QRacahParams& p) {
  check_racah(p);
  const double q = p.q;
  HypergeometricSpec spec;
  spec.q = q;
  spec.z = q;
  spec.upper = {std::pow(q, -p.n), p.alpha * p.beta * std::pow(q, p.n + 1), std::pow(q, -p.x),
                p.gamma * p.delta * std::pow(q, p.x + 1)};
  spec.lower = {p.alpha * q, p.beta * p.delta * q, p.gamma * q};
  // The series stops at k = min(n, x); only lower parameters that vanish
  // before that index are poles.
  const int stop = std::min(p.n, p.x);
  for (const auto& b : spec.lower) {
    for (int k = 0; k < stop; ++k) {
      if (std::abs(1.0 - b * std::pow(q, k)) < 1e-14) {
        throw Error(Errc::PoleInLowerParameters, "lower parameter hits q^{-k} before termination");
      }
    }
  }
  cplx sum = 0.0;
  for (int k = 0; k <= stop; ++k) {
    sum += product_pochhammer(spec.upper, q, k) / product_pochhammer(spec.lower, q, k) /
           q_pochhammer(q, q, k) * std::pow(q, k);
  }
  return sum;
}

cplx terminating_series_regularized(int n, const std::vector<cplx>& upper,
                                    const std::vector<cplx>& lower, double q, cplx z) {
  return terminating_series_regularized_t<cplx>(n, upper, lower, cplx(q), z);
}

cplx q_racah_regularized(const QRacahParams& p) {
  const double q = p.q;
  const std::vector<cplx> upper = {std::pow(q, -p.n), p.alpha * p.beta * std::pow(q, p.n + 1),
                                   std::pow(q, -p.x), p.gamma * p.delta * std::pow(q, p.x + 1)};
  const std::vector<cplx> lower = {p.alpha * q, p.beta * p.delta * q, p.gamma * q};
  return terminating_series_regularized(p.n, upper, lower, q, q);
}

}  // namespace ybt
