#include "ybt/ybe.hpp"

#include <cmath>

#include "ybt/errors.hpp"

namespace ybt {

namespace {

void check_rate(double r, const char* name) {
  if (!(r >= 0.0 && r <= 1.0)) throw Error(Errc::RateOutOfRange, std::string(name) + " must lie in [0, 1]");
}

int square_side(const Operator& r) {
  const long n = r.dim();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (static_cast<long>(d) * d != n) throw Error(Errc::DimensionNotASquare, "operator does not act on V ⊗ V");
  return d;
}

Matrix on12(const Matrix& r, int d) { return embed_local(Operator({d, d}, r), 0, 3, d).matrix(); }
Matrix on23(const Matrix& r, int d) { return embed_local(Operator({d, d}, r), 1, 3, d).matrix(); }
Matrix on13(const Matrix& r, int d) {
  const Matrix p23 = embed_local(permutation_operator(d, d), 1, 3, d).matrix();
  return p23 * on12(r, d) * p23;
}

Matrix swap(int d) { return permutation_operator(d, d).matrix(); }

Operator evaluate(const std::function<Operator(cplx)>& f, cplx z) {
  try {
    return f(z);
  } catch (const Error& e) {
    throw Error(Errc::EvaluationPole, std::string("family undefined at the requested point: ") + e.what());
  }
}

Matrix r_form(const SpectralRFamily& fam, cplx z) {
  const Matrix m = evaluate(fam.evaluator, z).matrix();
  return fam.convention == Convention::RCheck ? Matrix(swap(fam.site_dim) * m) : m;
}

}  // namespace

Operator r_alpha_beta(double alpha, double beta) {
  check_rate(alpha, "alpha");
  check_rate(beta, "beta");
  Matrix m = Matrix::Identity(4, 4);
  m(1, 1) = 1.0 - alpha;
  m(1, 2) = alpha;
  m(2, 1) = beta;
  m(2, 2) = 1.0 - beta;
  return Operator({2, 2}, m);
}

Operator particle_hole() {
  Matrix t(2, 2);
  t << 0.0, 1.0, 1.0, 0.0;
  return Operator(t);
}

Operator asep_spectral_r(cplx z, double q) {
  const cplx d = q * z - 1.0;
  if (std::abs(d) < 1e-14) throw Error(Errc::PoleAtQZEqualsOne, "qz = 1");
  Matrix m = Matrix::Identity(4, 4);
  m(1, 1) = q * (z - 1.0) / d;
  m(1, 2) = (q - 1.0) / d;
  m(2, 1) = (q - 1.0) * z / d;
  m(2, 2) = (z - 1.0) / d;
  return Operator({2, 2}, m);
}

Operator frt_r(double q) {
  const double a = 1.0 / (q * q);
  const double b = 1.0 / q;
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 2) = b;
  m(2, 1) = b;
  m(2, 2) = a - 1.0;
  m(3, 3) = a;
  return Operator({2, 2}, m);
}

SpectralRFamily asep_family(double q) {
  return SpectralRFamily{[q](cplx z) { return asep_spectral_r(z, q); }, q, 2, Convention::R, "asep"};
}

BraidedYbeResidual verify_braided_ybe(const Operator& r) {
  const int d = square_side(r);
  const Matrix& m = r.matrix();
  const Matrix a = on12(m, d), b = on23(m, d), c = on13(m, d);
  return {max_norm(a * b * a - b * a * b), max_norm(a * c * b - b * c * a)};
}

double verify_spectral_ybe(const SpectralRFamily& fam, cplx z, cplx w) {
  const int d = fam.site_dim;
  const Matrix r12 = on12(r_form(fam, z), d);
  const Matrix r13 = on13(r_form(fam, z * w), d);
  const Matrix r23 = on23(r_form(fam, w), d);
  return max_norm(r12 * r13 * r23 - r23 * r13 * r12);
}

double verify_hecke_quadratic(const Operator& r, cplx lam1, cplx lam2) {
  const Matrix id = Matrix::Identity(r.dim(), r.dim());
  return max_norm((r.matrix() - lam1 * id) * (r.matrix() - lam2 * id));
}

Operator reflection_k(cplx x, double q, double a, double c, Side side) {
  Matrix k(2, 2);
  const cplx x2 = x * x;
  if (side == Side::Left) {
    const cplx d = x2 * c + q * x + x * a - x * c - x - a;
    if (std::abs(d) < 1e-14) throw Error(Errc::PoleInDenominator, "left reflection denominator vanishes");
    k(0, 0) = (-x * a + x * c + q + a - c - 1.0) * x / d;
    k(0, 1) = (x2 - 1.0) * c / d;
    k(1, 0) = a * (x2 - 1.0) / d;
    k(1, 1) = -(-q * x - x * a + x * c + x + a - c) / d;
  } else {
    // Here a is the injection rate delta and c the ejection rate beta.
    const cplx d = -x2 * c + q * x - x * a + x * c - x + a;
    if (std::abs(d) < 1e-14) throw Error(Errc::PoleInDenominator, "right reflection denominator vanishes");
    k(0, 0) = (x * a - x * c + q - a + c - 1.0) * x / d;
    k(0, 1) = -(x2 - 1.0) * c / d;
    k(1, 0) = -(x2 - 1.0) * a / d;
    k(1, 1) = (q * x - x * a + x * c - x + a - c) / d;
  }
  // The matrices above act on columns; store the row form.
  return Operator(Matrix(k.transpose()));
}

ReflectionFamily reflection_family(double q, double a, double c, Side side) {
  return ReflectionFamily{[=](cplx x) { return reflection_k(x, q, a, c, side); }, q, a, c, side};
}

double verify_reflection_equation(const SpectralRFamily& rfam, const ReflectionFamily& kfam, cplx z,
                                  cplx w) {
  const Matrix p = swap(2);
  const Matrix id2 = Matrix::Identity(2, 2);
  auto rmap = [&](cplx s) { return Matrix(r_form(rfam, s).transpose()); };
  auto kmap = [&](cplx s) { return Matrix(evaluate(kfam.evaluator, s).matrix().transpose()); };
  const Matrix r12a = rmap(z / w), r12b = rmap(z * w);
  const Matrix r21a = p * r12a * p, r21b = p * r12b * p;
  const Matrix k1 = kron(Operator(kmap(z)), Operator(id2)).matrix();
  const Matrix k2 = kron(Operator(id2), Operator(kmap(w))).matrix();
  return max_norm(r12a * k1 * r21b * k2 - k2 * r12b * k1 * r21a);
}

Operator central_difference(const std::function<Operator(cplx)>& f, cplx x0, double h) {
  auto cd = [&](double s) { return Matrix((f(x0 + s).matrix() - f(x0 - s).matrix()) / (2.0 * s)); };
  const Matrix coarse = cd(h), fine = cd(h / 2.0);
  const Operator base = f(x0);
  return Operator(base.site_dims(), (4.0 * fine - coarse) / 3.0);
}

MarkovReport markov_structure_report(const SpectralRFamily& fam, const Operator& w_local, double tol,
                                     const std::vector<double>& z_grid, double a, double b) {
  MarkovReport rep;
  const int d = fam.site_dim;
  const Matrix p = swap(d);
  auto r_at = [&](cplx z) { return Operator({d, d}, r_form(fam, z)); };
  rep.regularity = max_norm(r_at(1.0).matrix() - p);
  if (rep.regularity > tol) throw Error(Errc::NotRegular, "R(1) differs from the swap");

  const Matrix deriv = central_difference(r_at, 1.0).matrix();
  const Matrix lhs = p * deriv.transpose();
  const Matrix wt = w_local.matrix().transpose();
  const cplx num = (wt.adjoint() * lhs).trace();
  const double den = wt.squaredNorm();
  const cplx rho = den > 0.0 ? num / den : cplx(0.0);
  rep.rho = rho.real();
  rep.derivative_residual = max_norm(lhs - rho * wt);

  for (double z : z_grid) {
    Matrix m;
    try {
      m = r_at(z).matrix();
    } catch (const Error&) {
      continue;
    }
    for (long i = 0; i < m.rows(); ++i) rep.row_sum_residual = std::max(rep.row_sum_residual, std::abs(m.row(i).sum() - 1.0));
  }
  if (d != 2) return rep;
  for (double z : z_grid) {
    for (double w : z_grid) {
      Matrix r;
      try {
        r = r_at(z / w).matrix();
      } catch (const Error&) {
        continue;  // the ratio sits on a pole of the family
      }
      Eigen::VectorXcd v(4);
      v << a * z * a * w, a * z * b, b * a * w, b * b;
      const Eigen::VectorXcd out = r.transpose() * v;
      rep.fixed_point_residual = std::max(rep.fixed_point_residual, (out - v).cwiseAbs().maxCoeff());
    }
  }
  return rep;
}

}  // namespace ybt
