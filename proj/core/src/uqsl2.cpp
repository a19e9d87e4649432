#include "ybt/uqsl2.hpp"

#include <algorithm>
#include <cmath>

#include "ybt/errors.hpp"
#include "ybt/qnum.hpp"

namespace ybt {

namespace {

void check_same_q(const RepM& a, const RepM& b) {
  if (a.q != b.q) throw Error(Errc::DeformationMismatch, "modules use different deformation parameters");
}

Matrix identity(long d) { return Matrix::Identity(d, d); }

Matrix kronm(const Matrix& a, const Matrix& b) { return kron(Operator(a), Operator(b)).matrix(); }

Matrix matrix_power(const Matrix& a, int n) {
  Matrix r = identity(a.rows());
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

}  // namespace

RepM rep(int m, double q) {
  if (m < 0) throw Error(Errc::InvalidParameters, "spin label must be nonnegative");
  if (!(q > 0.0) || std::abs(q - 1.0) < kQOneThreshold) {
    throw Error(Errc::InvalidDeformation, "q must be positive and different from 1");
  }
  const int d = m + 1;
  Matrix e = Matrix::Zero(d, d), f = Matrix::Zero(d, d), k = Matrix::Zero(d, d), kinv = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (i < m) e(i + 1, i) = q_number_symmetric(m - i, q);
    if (i > 0) f(i - 1, i) = q_number_symmetric(i, q);
    k(i, i) = std::pow(q, 2 * i - m);
    kinv(i, i) = std::pow(q, m - 2 * i);
  }
  return RepM{m, q, Operator(e), Operator(f), Operator(k), Operator(kinv)};
}

double RelationReport::max() const { return std::max({k_e, k_f, e_f, k_kinv, antipode, counit}); }

RelationReport relation_residuals(const Matrix& E, const Matrix& F, const Matrix& K, const Matrix& Kinv,
                                  double q) {
  RelationReport r;
  const double qq = q - 1.0 / q;
  r.k_e = max_norm(K * E * Kinv - q * q * E);
  r.k_f = max_norm(K * F * Kinv - F / (q * q));
  r.e_f = max_norm(E * F - F * E - (K - Kinv) / qq);
  r.k_kinv = max_norm(K * Kinv - identity(K.rows()));
  const Matrix se = -Kinv * E;
  const Matrix sf = -F * K;
  r.antipode = std::max(max_norm(sf * se - se * sf - (Kinv - K) / qq), max_norm(K * se * Kinv - q * q * se));
  return r;
}

RelationReport check_relations(const RepM& r) {
  RelationReport out =
      relation_residuals(r.E.matrix(), r.F.matrix(), r.K.matrix(), r.Kinv.matrix(), r.q);
  const RepM triv = rep(0, r.q);
  double counit = std::max({max_norm(triv.E.matrix()), max_norm(triv.F.matrix()),
                            max_norm(triv.K.matrix() - identity(1))});
  const Operator* gens[] = {&r.E, &r.F, &r.K};
  const Generator ids[] = {Generator::E, Generator::F, Generator::K};
  for (int i = 0; i < 3; ++i) {
    counit = std::max(counit, max_norm(coproduct_action(triv, r, ids[i]).matrix() - gens[i]->matrix()));
    counit = std::max(counit, max_norm(coproduct_action(r, triv, ids[i]).matrix() - gens[i]->matrix()));
  }
  out.counit = counit;
  return out;
}

Operator coproduct_action(const RepM& rl, const RepM& rm, Generator gen) {
  check_same_q(rl, rm);
  const Matrix il = identity(rl.dim()), im = identity(rm.dim());
  Matrix out;
  switch (gen) {
    case Generator::E: out = kronm(rl.K.matrix(), rm.E.matrix()) + kronm(rl.E.matrix(), im); break;
    case Generator::F: out = kronm(il, rm.F.matrix()) + kronm(rl.F.matrix(), rm.Kinv.matrix()); break;
    case Generator::K: out = kronm(rl.K.matrix(), rm.K.matrix()); break;
    case Generator::Kinv: out = kronm(rl.Kinv.matrix(), rm.Kinv.matrix()); break;
  }
  return Operator({rl.dim(), rm.dim()}, out);
}

Operator opposite_coproduct_action(const RepM& rl, const RepM& rm, Generator gen) {
  check_same_q(rl, rm);
  const Matrix il = identity(rl.dim()), im = identity(rm.dim());
  Matrix out;
  switch (gen) {
    case Generator::E: out = kronm(rl.E.matrix(), rm.K.matrix()) + kronm(il, rm.E.matrix()); break;
    case Generator::F: out = kronm(rl.F.matrix(), im) + kronm(rl.Kinv.matrix(), rm.F.matrix()); break;
    case Generator::K: out = kronm(rl.K.matrix(), rm.K.matrix()); break;
    case Generator::Kinv: out = kronm(rl.Kinv.matrix(), rm.Kinv.matrix()); break;
  }
  return Operator({rl.dim(), rm.dim()}, out);
}

Operator universal_r(const RepM& rl, const RepM& rm) {
  check_same_q(rl, rm);
  const double q = rl.q;
  const long n = static_cast<long>(rl.dim()) * rm.dim();
  Matrix sum = Matrix::Zero(n, n);
  for (int i = 0; i <= std::min(rl.m, rm.m); ++i) {
    const double c = std::pow(q - 1.0 / q, i) * std::pow(q, 0.5 * i * (i - 1)) / q_factorial_symmetric(i, q);
    sum += c * kronm(matrix_power(rl.F.matrix(), i), matrix_power(rm.E.matrix(), i));
  }
  // q^{h⊗h/2} on the weight basis: h v_a = (2a - l) v_a.
  Eigen::VectorXcd diag(n);
  for (int a = 0; a < rl.dim(); ++a) {
    for (int b = 0; b < rm.dim(); ++b) {
      diag(a * rm.dim() + b) = std::pow(q, 0.5 * (2 * a - rl.m) * (2 * b - rm.m));
    }
  }
  return Operator({rl.dim(), rm.dim()}, diag.asDiagonal() * sum);
}

double intertwining_residual(const RepM& rl, const RepM& rm, const Operator& r) {
  double res = 0.0;
  for (Generator g : {Generator::E, Generator::F, Generator::K}) {
    const Matrix lhs = r.matrix() * coproduct_action(rl, rm, g).matrix();
    const Matrix rhs = opposite_coproduct_action(rl, rm, g).matrix() * r.matrix();
    res = std::max(res, max_norm(lhs - rhs));
  }
  return res;
}

}  // namespace ybt
