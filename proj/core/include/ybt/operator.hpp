#pragma once

// Dense operators on tensor-product state spaces.
//
// Basis ordering is lexicographic in the site indices with site 0 slowest:
// the state (s_0, ..., s_{N-1}) has index ((s_0 d_1 + s_1) d_2 + s_2) ...
// Markov matrices use the row convention: G(c, c') is the rate (or
// probability) of moving from c to c', so generator rows sum to 0 and
// stochastic rows sum to 1.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace ybt {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using SparseGenerator = Eigen::SparseMatrix<double, Eigen::RowMajor>;

inline constexpr long kMaxStates = 1L << 20;

class Operator {
 public:
  Operator() = default;
  Operator(std::vector<int> site_dims, Matrix entries);
  // Single-site operator on a space of dimension entries.rows().
  explicit Operator(Matrix entries);

  static Operator identity(const std::vector<int>& site_dims);
  static Operator zero(const std::vector<int>& site_dims);

  const std::vector<int>& site_dims() const { return site_dims_; }
  const Matrix& matrix() const { return m_; }
  long dim() const { return m_.rows(); }
  int sites() const { return static_cast<int>(site_dims_.size()); }
  cplx operator()(long r, long c) const { return m_(r, c); }

  Operator transpose() const;
  Operator adjoint() const;

  Operator operator*(const Operator& o) const;
  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(cplx s) const;
  friend Operator operator*(cplx s, const Operator& o) { return o * s; }

 private:
  std::vector<int> site_dims_;
  Matrix m_;
};

long product(const std::vector<int>& dims);

Operator kron(const Operator& a, const Operator& b);

// Largest entry modulus, the residual norm used throughout.
double max_norm(const Matrix& m);
inline double max_norm(const Operator& o) { return max_norm(o.matrix()); }

// Places op on sites [site, site + op.sites()) of a chain with the given
// per-site dimensions; identity elsewhere. Sites are numbered from 0.
Operator embed_local(const Operator& op, int site, const std::vector<int>& site_dims);
// Convenience for n_sites copies of dimension d.
Operator embed_local(const Operator& op, int site, int n_sites, int d);

// P(u ⊗ v) = v ⊗ u, from C^{d1} ⊗ C^{d2} to C^{d2} ⊗ C^{d1}.
Operator permutation_operator(int d1, int d2);

bool is_generator(const Operator& g, double tol);
bool is_stochastic(const Operator& p, double tol);

using ProbVector = Eigen::VectorXd;

// Stationary law pi G = 0 of a generator. When the null space has more than
// one dimension, closed_class selects a closed communicating class and the
// result is supported on it.
ProbVector stationary_distribution(const Operator& g, double tol,
                                   const std::optional<std::vector<long>>& closed_class = {});

// exp(tG) by uniformization.
Operator transition_semigroup(const Operator& g, double t, double tol);

// Row vector p0 exp(tG) by uniformization, for sparse generators.
Eigen::VectorXd propagate_distribution(const SparseGenerator& g, const Eigen::VectorXd& p0,
                                       double t, double tol);

// Row-major CSV, one matrix row per line, each cell written as "re,im" in
// quotes. Site dimensions are not stored; from_csv takes them.
std::string to_csv(const Operator& op);
Operator from_csv(const std::string& text, const std::vector<int>& site_dims);

}  // namespace ybt
