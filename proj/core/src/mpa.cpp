#include "ybt/mpa.hpp"

#include <cmath>

#include "ybt/errors.hpp"

namespace ybt {

OscillatorRep q_oscillator(int M, double q) {
  if (M < 2) throw Error(Errc::InvalidTruncation, "truncation must be at least 2");
  if (!(q > 0.0 && q < 1.0)) throw Error(Errc::InvalidDeformation, "q must lie in (0, 1)");
  OscillatorRep r;
  r.M = M;
  r.q = q;
  r.F = RealMatrix::Zero(M, M);
  r.Fdag = RealMatrix::Zero(M, M);
  for (int k = 1; k < M; ++k) r.F(k - 1, k) = std::sqrt(1.0 - std::pow(q, k));
  for (int k = 0; k + 1 < M; ++k) r.Fdag(k + 1, k) = std::sqrt(1.0 - std::pow(q, k + 1));
  r.D = r.F + RealMatrix::Identity(M, M);
  r.E = r.Fdag + RealMatrix::Identity(M, M);
  return r;
}

std::vector<double> boundary_coefficients(double q, double a, double c, int M) {
  if (!(a > 0.0)) throw Error(Errc::ZeroLeadingRate, "leading rate of the boundary recurrence must be positive");
  if (M < 1) throw Error(Errc::InvalidTruncation, "need at least one coefficient");
  std::vector<double> l(M, 0.0);
  l[0] = 1.0;
  for (int k = 0; k + 1 < M; ++k) {
    const double prev = k > 0 ? l[k - 1] : 0.0;
    l[k + 1] = -((a - c + q - 1.0) * l[k] - c * std::sqrt(1.0 - std::pow(q, k)) * prev) /
               (a * std::sqrt(1.0 - std::pow(q, k + 1)));
  }
  return l;
}

namespace {

std::pair<double, double> kappa(double q, double u, double v) {
  const double s = 1.0 - q - u + v;
  const double root = std::sqrt(s * s + 4.0 * u * v);
  return {(s + root) / (2.0 * u), (s - root) / (2.0 * u)};
}

void check_params(const AsepParams& p) {
  if (p.L < 1) throw Error(Errc::InvalidParameters, "need at least one site");
  if (p.L > 12) throw Error(Errc::StateSpaceTooLarge, "configuration enumeration is limited to L <= 12");
  if (!(p.q > 0.0 && p.q < 1.0)) throw Error(Errc::InvalidDeformation, "q must lie in (0, 1)");
  if (p.gamma < 0.0 || p.delta < 0.0) throw Error(Errc::InvalidParameters, "rates must be nonnegative");
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) throw Error(Errc::ZeroLeadingRate, "alpha and beta must be positive");
}

}  // namespace

AskeyWilsonParameters askey_wilson_parameters(const AsepParams& p) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) throw Error(Errc::ZeroLeadingRate, "alpha and beta must be positive");
  const auto [a, b] = kappa(p.q, p.alpha, p.gamma);
  const auto [c, d] = kappa(p.q, p.beta, p.delta);
  return {a, b, c, d};
}

double pairing_ratio(const AsepParams& p) {
  const auto aw = askey_wilson_parameters(p);
  return std::max(std::abs(aw.a), std::abs(aw.b)) * std::max(std::abs(aw.c), std::abs(aw.d));
}

bool in_convergent_regime(const AsepParams& p) {
  return pairing_ratio(p) < 1.0;
}

Eigen::VectorXd mpa_weights(const AsepParams& p, int M) {
  check_params(p);
  const OscillatorRep rep = q_oscillator(M, p.q);
  const std::vector<double> lw = boundary_coefficients(p.q, p.alpha, p.gamma, M);
  const std::vector<double> rv = boundary_coefficients(p.q, p.beta, p.delta, M);
  const Eigen::Map<const Eigen::VectorXd> w(lw.data(), M), v(rv.data(), M);

  const long n = 1L << p.L;
  Eigen::VectorXd out(n);
  // Depth-first over configurations, site 0 most significant, reusing prefixes.
  std::vector<Eigen::RowVectorXd> prefix(p.L + 1);
  prefix[0] = w.transpose();
  for (long c = 0; c < n; ++c) {
    int start = 0;
    if (c > 0) {
      // First site whose bit changed from the previous configuration.
      const long diff = c ^ (c - 1);
      int high = 0;
      while ((diff >> (high + 1)) != 0) ++high;
      start = p.L - 1 - high;
    }
    for (int i = start; i < p.L; ++i) {
      const bool particle = (c >> (p.L - 1 - i)) & 1L;
      prefix[i + 1] = prefix[i] * (particle ? rep.D : rep.E);
    }
    out(c) = prefix[p.L].dot(v);
  }
  return out;
}

double total_variation(const ProbVector& a, const ProbVector& b) { return 0.5 * (a - b).cwiseAbs().sum(); }

MpaResult mpa_stationary_measure(const AsepParams& p, int M, double tv_tol) {
  check_params(p);
  if (M < 2) throw Error(Errc::InvalidTruncation, "truncation must be at least 2");
  if (!in_convergent_regime(p)) {
    throw Error(Errc::TruncationNotConverged, "boundary rates lie outside the convergent regime of the truncation");
  }
  // Small truncations may be unresolved, even signed; only the converged
  // measure has to be a probability vector.
  MpaResult res;
  Eigen::VectorXd prev;
  for (int m = M; m <= 1024; m *= 2) {
    const Eigen::VectorXd w = mpa_weights(p, m);
    const double z = w.sum();
    if (!std::isfinite(z) || z <= 0.0) {
      prev.resize(0);
      continue;
    }
    const Eigen::VectorXd cur = w / z;
    if (prev.size() > 0) {
      const double tv = total_variation(prev, cur);
      res.tv_deltas.push_back(tv);
      if (tv < tv_tol) {
        if (cur.minCoeff() < -1e-12) throw Error(Errc::NegativeWeight, "a configuration received negative weight");
        res.measure = cur.cwiseMax(0.0);
        res.measure /= res.measure.sum();
        res.truncation = m;
        return res;
      }
    }
    prev = cur;
  }
  throw Error(Errc::TruncationNotConverged, "measure still moving at truncation 1024");
}

MpaRelationReport relation_checks(const AsepParams& p, int M) {
  check_params(p);
  const OscillatorRep r = q_oscillator(M, p.q);
  const double q = p.q;
  const int in = M - 1;
  const RealMatrix id = RealMatrix::Identity(M, M);
  MpaRelationReport rep;

  auto interior = [&](const RealMatrix& m) { return m.topLeftCorner(in, in).cwiseAbs().maxCoeff(); };
  rep.oscillator = interior(r.F * r.Fdag - q * r.Fdag * r.F - (1.0 - q) * id);
  rep.algebra = interior(r.D * r.E - q * r.E * r.D - (1.0 - q) * (r.D + r.E));
  rep.adjoint = (r.Fdag - r.F.transpose()).cwiseAbs().maxCoeff();

  // Two-site products X_a X_b over (EE, ED, DE, DD); scalars Xbar = (q-1, 1-q).
  const RealMatrix x[2] = {r.E, r.D};
  const double xbar[2] = {q - 1.0, 1.0 - q};
  const RealMatrix w = asep_bulk_w(q).matrix().real();
  double bulk = 0.0;
  for (int i = 0; i < 4; ++i) {
    RealMatrix lhs = RealMatrix::Zero(M, M);
    for (int j = 0; j < 4; ++j) lhs += w(j, i) * x[j / 2] * x[j % 2];
    const RealMatrix rhs = xbar[i % 2] * x[i / 2] - xbar[i / 2] * x[i % 2];
    bulk = std::max(bulk, interior(lhs - rhs));
  }
  rep.bulk = bulk;

  const std::vector<double> lw = boundary_coefficients(q, p.alpha, p.gamma, M);
  const std::vector<double> rv = boundary_coefficients(q, p.beta, p.delta, M);
  const Eigen::Map<const Eigen::VectorXd> wv(lw.data(), M), vv(rv.data(), M);
  const Eigen::RowVectorXd left = wv.transpose() * (p.alpha * r.E - p.gamma * r.D + (q - 1.0) * id);
  const Eigen::VectorXd right = (p.delta * r.E - p.beta * r.D + (1.0 - q) * id) * vv;
  rep.left = left.head(in).cwiseAbs().maxCoeff();
  rep.right = right.head(in).cwiseAbs().maxCoeff();
  return rep;
}

}  // namespace ybt
