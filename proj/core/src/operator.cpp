#include "ybt/operator.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "ybt/errors.hpp"

namespace ybt {

long product(const std::vector<int>& dims) {
  long p = 1;
  for (int d : dims) {
    if (d < 1) throw Error(Errc::DimensionMismatch, "site dimension must be positive");
    p *= d;
    if (p > kMaxStates) throw Error(Errc::StateSpaceTooLarge, "state space exceeds 2^20 states");
  }
  return p;
}

Operator::Operator(std::vector<int> site_dims, Matrix entries)
    : site_dims_(std::move(site_dims)), m_(std::move(entries)) {
  const long n = product(site_dims_);
  if (m_.rows() != n || m_.cols() != n) {
    throw Error(Errc::DimensionMismatch, "matrix side does not equal the product of site dimensions");
  }
}

Operator::Operator(Matrix entries) : site_dims_{static_cast<int>(entries.rows())}, m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw Error(Errc::DimensionNotASquare, "operator must be square");
  product(site_dims_);
}

Operator Operator::identity(const std::vector<int>& site_dims) {
  const long n = product(site_dims);
  return Operator(site_dims, Matrix::Identity(n, n));
}

Operator Operator::zero(const std::vector<int>& site_dims) {
  const long n = product(site_dims);
  return Operator(site_dims, Matrix::Zero(n, n));
}

Operator Operator::transpose() const { return Operator(site_dims_, m_.transpose()); }
Operator Operator::adjoint() const { return Operator(site_dims_, m_.adjoint()); }

Operator Operator::operator*(const Operator& o) const {
  if (dim() != o.dim()) throw Error(Errc::DimensionMismatch, "product of operators of different size");
  return Operator(site_dims_, m_ * o.m_);
}

Operator Operator::operator+(const Operator& o) const {
  if (dim() != o.dim()) throw Error(Errc::DimensionMismatch, "sum of operators of different size");
  return Operator(site_dims_, m_ + o.m_);
}

Operator Operator::operator-(const Operator& o) const {
  if (dim() != o.dim()) throw Error(Errc::DimensionMismatch, "difference of operators of different size");
  return Operator(site_dims_, m_ - o.m_);
}

Operator Operator::operator*(cplx s) const { return Operator(site_dims_, m_ * s); }

Operator kron(const Operator& a, const Operator& b) {
  std::vector<int> dims = a.site_dims();
  dims.insert(dims.end(), b.site_dims().begin(), b.site_dims().end());
  const long na = a.dim();
  const long nb = b.dim();
  product(dims);
  Matrix m(na * nb, na * nb);
  for (long i = 0; i < na; ++i) {
    for (long j = 0; j < na; ++j) m.block(i * nb, j * nb, nb, nb) = a(i, j) * b.matrix();
  }
  return Operator(std::move(dims), std::move(m));
}

double max_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Operator embed_local(const Operator& op, int site, const std::vector<int>& site_dims) {
  const int k = op.sites();
  const int n = static_cast<int>(site_dims.size());
  if (site < 0 || site + k > n) throw Error(Errc::DimensionMismatch, "local operator does not fit in the chain");
  for (int i = 0; i < k; ++i) {
    if (op.site_dims()[i] != site_dims[site + i]) {
      throw Error(Errc::DimensionMismatch, "local operator site dimensions do not match target slots");
    }
  }
  const std::vector<int> left(site_dims.begin(), site_dims.begin() + site);
  const std::vector<int> right(site_dims.begin() + site + k, site_dims.end());
  Operator out = op;
  if (!left.empty()) out = kron(Operator::identity(left), out);
  if (!right.empty()) out = kron(out, Operator::identity(right));
  return Operator(site_dims, out.matrix());
}

Operator embed_local(const Operator& op, int site, int n_sites, int d) {
  return embed_local(op, site, std::vector<int>(n_sites, d));
}

Operator permutation_operator(int d1, int d2) {
  const long n = static_cast<long>(d1) * d2;
  Matrix m = Matrix::Zero(n, n);
  // Row convention on basis vectors: e_{(a,b)} maps to e_{(b,a)}.
  for (int a = 0; a < d1; ++a) {
    for (int b = 0; b < d2; ++b) m(a * d2 + b, b * d1 + a) = 1.0;
  }
  if (d1 == d2) return Operator({d1, d2}, std::move(m));
  // Mixed dimensions: the map changes the space, so keep a single factor.
  return Operator(std::move(m));
}

bool is_generator(const Operator& g, double tol) {
  const Matrix& m = g.matrix();
  for (long i = 0; i < m.rows(); ++i) {
    if (std::abs(m.row(i).sum()) > tol) return false;
    for (long j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j).imag()) > tol) return false;
      if (i != j && m(i, j).real() < -tol) return false;
    }
  }
  return true;
}

bool is_stochastic(const Operator& p, double tol) {
  const Matrix& m = p.matrix();
  for (long i = 0; i < m.rows(); ++i) {
    if (std::abs(m.row(i).sum() - 1.0) > tol) return false;
    for (long j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j).imag()) > tol || m(i, j).real() < -tol) return false;
    }
  }
  return true;
}

namespace {

constexpr long kFullPivotLimit = 1024;

ProbVector normalise_null_vector(const Eigen::VectorXd& v, double tol) {
  const double s = v.sum();
  if (std::abs(s) < tol) throw Error(Errc::ReducibleChain, "null vector sums to zero");
  ProbVector p = v / s;
  for (long i = 0; i < p.size(); ++i) {
    if (p(i) < -std::sqrt(tol)) throw Error(Errc::ReducibleChain, "null vector has mixed signs");
    if (p(i) < 0.0) p(i) = 0.0;
  }
  return p / p.sum();
}

ProbVector solve_irreducible(const RealMatrix& g, double tol) {
  const long n = g.rows();
  if (n == 1) return ProbVector::Ones(1);
  if (n <= kFullPivotLimit) {
    Eigen::FullPivLU<RealMatrix> lu(g.transpose());
    lu.setThreshold(1e-10);
    const RealMatrix kernel = lu.kernel();
    if (kernel.cols() != 1) {
      throw Error(Errc::ReducibleChain, "null space has dimension " + std::to_string(kernel.cols()));
    }
    return normalise_null_vector(kernel.col(0), tol);
  }
  // Large chains: replace one balance equation by the normalisation.
  RealMatrix a = g.transpose();
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  const Eigen::VectorXd v = a.partialPivLu().solve(rhs);
  if ((v.transpose() * g).cwiseAbs().maxCoeff() > 1e3 * tol || !v.allFinite()) {
    throw Error(Errc::ReducibleChain, "normalised balance system is singular");
  }
  return normalise_null_vector(v, tol);
}

}  // namespace

ProbVector stationary_distribution(const Operator& g, double tol,
                                   const std::optional<std::vector<long>>& closed_class) {
  if (!is_generator(g, tol)) throw Error(Errc::NotAGenerator, "rows must sum to 0 with nonnegative off-diagonals");
  const RealMatrix full = g.matrix().real();
  if (!closed_class) return solve_irreducible(full, tol);

  const auto& cls = *closed_class;
  const long k = static_cast<long>(cls.size());
  RealMatrix sub(k, k);
  for (long i = 0; i < k; ++i) {
    for (long j = 0; j < k; ++j) sub(i, j) = full(cls[i], cls[j]);
    if (std::abs(sub.row(i).sum()) > tol) {
      throw Error(Errc::InvalidParameters, "requested class is not closed");
    }
  }
  const ProbVector local = solve_irreducible(sub, tol);
  ProbVector out = ProbVector::Zero(full.rows());
  for (long i = 0; i < k; ++i) out(cls[i]) = local(i);
  return out;
}

namespace {

// Uniformization works on slices with rate * dt <= kSliceMass so that the
// Poisson weights never underflow.
constexpr double kSliceMass = 20.0;

std::vector<double> poisson_weights(double mean, double tol) {
  std::vector<double> w;
  double p = std::exp(-mean);
  for (int k = 0;; ++k) {
    if (k > 0) p *= mean / k;
    w.push_back(p);
    // Past the mode the tail is below the geometric bound p m / (k + 1 - m).
    if (k + 1 > mean && p * mean / (k + 1 - mean) < tol * 1e-2) break;
    if (k > 10000) break;
  }
  return w;
}

}  // namespace

Operator transition_semigroup(const Operator& g, double t, double tol) {
  if (!is_generator(g, 1e-9)) throw Error(Errc::NotAGenerator, "transition semigroup needs a generator");
  if (t < 0.0) throw Error(Errc::InvalidParameters, "time must be nonnegative");
  const long n = g.dim();
  const RealMatrix gen = g.matrix().real();
  const double rate = (-gen.diagonal()).maxCoeff();
  if (rate <= 0.0 || t == 0.0) return Operator::identity(g.site_dims());

  const int slices = std::max(1, static_cast<int>(std::ceil(rate * t / kSliceMass)));
  const double dt = t / slices;
  const RealMatrix step = RealMatrix::Identity(n, n) + gen / rate;
  const auto w = poisson_weights(rate * dt, tol);
  RealMatrix power = RealMatrix::Identity(n, n);
  RealMatrix slice = RealMatrix::Zero(n, n);
  for (std::size_t k = 0; k < w.size(); ++k) {
    slice += w[k] * power;
    power = power * step;
  }
  RealMatrix out = slice;
  for (int s = 1; s < slices; ++s) out = out * slice;
  return Operator(g.site_dims(), out.cast<cplx>());
}

Eigen::VectorXd propagate_distribution(const SparseGenerator& g, const Eigen::VectorXd& p0, double t,
                                       double tol) {
  double rate = 0.0;
  for (long i = 0; i < g.rows(); ++i) rate = std::max(rate, -g.coeff(i, i));
  if (rate <= 0.0 || t == 0.0) return p0;
  const int slices = std::max(1, static_cast<int>(std::ceil(rate * t / kSliceMass)));
  const double dt = t / slices;
  const auto w = poisson_weights(rate * dt, tol);
  const SparseGenerator gt = g.transpose();
  Eigen::VectorXd p = p0;
  for (int s = 0; s < slices; ++s) {
    Eigen::VectorXd v = p;
    Eigen::VectorXd acc = w[0] * v;
    for (std::size_t k = 1; k < w.size(); ++k) {
      v = v + (gt * v) / rate;
      acc += w[k] * v;
    }
    p = acc;
  }
  return p;
}

std::string to_csv(const Operator& op) {
  std::ostringstream os;
  os.precision(17);
  const Matrix& m = op.matrix();
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << '"' << m(i, j).real() << ',' << m(i, j).imag() << '"';
    }
    os << '\n';
  }
  return os.str();
}

Operator from_csv(const std::string& text, const std::vector<int>& site_dims) {
  const long n = product(site_dims);
  Matrix m(n, n);
  std::istringstream is(text);
  std::string line;
  long row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= n) throw Error(Errc::DimensionMismatch, "too many CSV rows");
    long col = 0;
    std::size_t pos = 0;
    while ((pos = line.find('"', pos)) != std::string::npos) {
      const std::size_t end = line.find('"', pos + 1);
      if (end == std::string::npos) throw Error(Errc::InvalidParameters, "unterminated CSV cell");
      const std::string cell = line.substr(pos + 1, end - pos - 1);
      const std::size_t comma = cell.find(',');
      if (comma == std::string::npos || col >= n) throw Error(Errc::InvalidParameters, "malformed CSV cell");
      m(row, col++) = cplx(std::stod(cell.substr(0, comma)), std::stod(cell.substr(comma + 1)));
      pos = end + 1;
    }
    if (col != n) throw Error(Errc::DimensionMismatch, "CSV row has the wrong number of cells");
    ++row;
  }
  if (row != n) throw Error(Errc::DimensionMismatch, "CSV has the wrong number of rows");
  return Operator(site_dims, std::move(m));
}

}  // namespace ybt
