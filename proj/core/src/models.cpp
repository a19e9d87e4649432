#include "ybt/models.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>
#include <unsupported/Eigen/NonLinearOptimization>

#include "ybt/errors.hpp"
#include "ybt/ybe.hpp"

namespace ybt {

namespace {

Operator two_site(const Matrix& m) { return Operator({2, 2}, m); }

int chain_length(const Operator& op) {
  const long n = op.dim();
  int len = 0;
  while ((1L << len) < n) ++len;
  if ((1L << len) != n) throw Error(Errc::DimensionMismatch, "operator does not act on a chain of two-state sites");
  return len;
}

}  // namespace

Operator asep_local_generator(double q) {
  Matrix m = Matrix::Zero(4, 4);
  m(1, 1) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = q * q;
  m(2, 2) = -q * q;
  return two_site(m);
}

Operator asep_bulk_w(double q) {
  Matrix m = Matrix::Zero(4, 4);
  m(1, 1) = -q;
  m(1, 2) = q;
  m(2, 1) = 1.0;
  m(2, 2) = -1.0;
  return two_site(m);
}

Operator particle_hole_relabel(const Operator& op) {
  const int n = chain_length(op);
  Operator t = particle_hole();
  Operator all = t;
  for (int i = 1; i < n; ++i) all = kron(all, t);
  return Operator(op.site_dims(), all.matrix() * op.matrix() * all.matrix());
}

Operator asep_left_boundary(double alpha, double gamma) {
  Matrix b(2, 2);
  b << -alpha, alpha, gamma, -gamma;
  return Operator(b);
}

Operator asep_right_boundary(double beta, double delta) {
  Matrix b(2, 2);
  b << -delta, delta, beta, -beta;
  return Operator(b);
}

Operator asep_generator(const AsepParams& p, bool open_boundary) {
  if (p.L < 1) throw Error(Errc::InvalidParameters, "need at least one site");
  const std::vector<int> dims(p.L, 2);
  Operator g = Operator::zero(dims);
  const Operator w = asep_bulk_w(p.q);
  for (int i = 0; i + 1 < p.L; ++i) g = g + embed_local(w, i, dims);
  if (open_boundary) {
    g = g + embed_local(asep_left_boundary(p.alpha, p.gamma), 0, dims);
    g = g + embed_local(asep_right_boundary(p.beta, p.delta), p.L - 1, dims);
  }
  return g;
}

Operator pauli(int a) {
  Matrix s(2, 2);
  const cplx i(0.0, 1.0);
  switch (a) {
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -i, i, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw Error(Errc::InvalidParameters, "Pauli index must be 1, 2 or 3");
  }
  return Operator(s);
}

Operator xxz_local_block(const XxzParams& p) {
  const Operator id = Operator::identity({2});
  const Operator s3 = pauli(3);
  return cplx(p.Jx) * kron(pauli(1), pauli(1)) + cplx(p.Jy) * kron(pauli(2), pauli(2)) +
         cplx(p.Jz) * kron(s3, s3) + cplx(p.h_field) * (kron(s3, id) + kron(id, s3));
}

Operator xxz_hamiltonian(const XxzParams& p) {
  if (p.N < 2) throw Error(Errc::InvalidParameters, "need at least two sites");
  const std::vector<int> dims(p.N, 2);
  std::array<Operator, 4> s;
  for (int a = 1; a <= 3; ++a) s[a] = pauli(a);
  auto site = [&](int a, int j) { return embed_local(s[a], j, dims); };
  Operator h = Operator::zero(dims);
  const int bonds = p.periodic ? p.N : p.N - 1;
  const double coupling[4] = {0.0, p.Jx, p.Jy, p.Jz};
  for (int j = 0; j < bonds; ++j) {
    const int k = (j + 1) % p.N;
    for (int a = 1; a <= 3; ++a) h = h + cplx(coupling[a]) * (site(a, j) * site(a, k));
  }
  for (int j = 0; j < p.N; ++j) h = h - cplx(p.h_field) * site(3, j);
  return cplx(-0.5) * h;
}

double symmetry_commutator(const Operator& h, int a) {
  const int n = chain_length(h);
  const std::vector<int> dims(n, 2);
  Operator total = Operator::zero(dims);
  for (int j = 0; j < n; ++j) total = total + embed_local(pauli(a), j, dims);
  return max_norm(h.matrix() * total.matrix() - total.matrix() * h.matrix());
}

Operator gauge_conjugate(const Operator& h, const Operator& g) {
  if (h.dim() != g.dim()) throw Error(Errc::DimensionMismatch, "gauge and operator sizes differ");
  Eigen::FullPivLU<Matrix> lu(g.matrix());
  if (!lu.isInvertible()) throw Error(Errc::SingularGauge, "gauge matrix is singular");
  return Operator(h.site_dims(), lu.inverse() * h.matrix() * g.matrix());
}

Operator xxz_gauge_matrix(double gamma) {
  Matrix g = Matrix::Identity(4, 4);
  g(1, 2) = gamma - 1.0;
  g(2, 2) = gamma;
  return two_site(g);
}

namespace {

struct GaugeResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  RealMatrix target;

  int inputs() const { return 2; }
  int values() const { return 16; }

  // Returns the conjugated block and the best scale for it.
  std::pair<RealMatrix, double> fit(const Eigen::VectorXd& x) const {
    XxzParams p;
    p.Jx = p.Jy = x(0);
    const Matrix b = xxz_local_block(p).matrix() - Matrix::Identity(4, 4);
    const Matrix g = xxz_gauge_matrix(x(1)).matrix();
    const RealMatrix a = (g.inverse() * b * g).real();
    const double s = (a.array() * target.array()).sum() / target.squaredNorm();
    return {a, s};
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const auto [a, s] = fit(x);
    const RealMatrix r = a - s * target;
    f = Eigen::Map<const Eigen::VectorXd>(r.data(), 16);
    return 0;
  }
};

}  // namespace

GaugeFit gauge_search(double q) {
  GaugeResidual functor{asep_local_generator(q).matrix().real()};
  Eigen::NumericalDiff<GaugeResidual> numeric(functor);
  GaugeFit best;
  best.residual = std::numeric_limits<double>::infinity();
  const double starts[][2] = {{0.5, 0.5}, {1.5, 1.5}, {0.8, 2.0}, {1.2, 0.3}, {2.0, 4.0}};
  for (const auto& s : starts) {
    Eigen::VectorXd x(2);
    x << s[0], s[1];
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<GaugeResidual>> lm(numeric);
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-15;
    lm.parameters.maxfev = 4000;
    lm.minimize(x);
    if (std::abs(x(1)) < 1e-12) continue;
    const auto [a, scale] = functor.fit(x);
    const double res = max_norm(Matrix((a - scale * functor.target).cast<cplx>()));
    if (res < best.residual && std::abs(scale) > 1e-8) best = GaugeFit{x(0), x(1), scale, res};
  }
  return best;
}

Operator ground_state_transform(const Operator& h, const Eigen::VectorXcd& g, double tol) {
  if (g.size() != h.dim()) throw Error(Errc::DimensionMismatch, "vector length differs from operator size");
  for (long i = 0; i < g.size(); ++i) {
    if (std::abs(g(i)) <= tol) throw Error(Errc::ZeroEntryInGroundState, "vector has a zero entry");
  }
  const Eigen::VectorXcd hg = h.matrix() * g;
  const cplx c = g.dot(hg) / g.squaredNorm();
  if ((hg - c * g).cwiseAbs().maxCoeff() > tol * std::max(1.0, hg.cwiseAbs().maxCoeff())) {
    throw Error(Errc::NotAnEigenvector, "H g is not a multiple of g");
  }
  const long n = h.dim();
  Matrix out(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) out(i, j) = h(i, j) * g(j) / g(i);
    out(i, i) -= c;
  }
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      if (i != j && (out(i, j).real() < -tol || std::abs(out(i, j).imag()) > tol)) {
        throw Error(Errc::NegativeOffDiagonal, "transformed operator has a negative rate");
      }
    }
  }
  return Operator(h.site_dims(), out);
}

namespace {

void check_positions(const std::vector<int>& y, const std::vector<int>& x) {
  if (y.size() != x.size() || y.empty()) throw Error(Errc::InvalidParameters, "x and y need the same positive length");
  if (y.size() > 3) throw Error(Errc::InvalidParameters, "at most three particles");
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] <= y[i - 1] || x[i] <= x[i - 1]) throw Error(Errc::InvalidParameters, "positions must be strictly increasing");
  }
}

// One quadrature evaluation with n nodes per circle.
cplx tw_quadrature(const std::vector<int>& y, const std::vector<int>& x, double t, double q, double r, int n) {
  const int np = static_cast<int>(y.size());
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<cplx> xi(n);
  for (int k = 0; k < n; ++k) xi[k] = std::polar(r, two_pi * k / n);

  // Scattering factors S(xi_i, xi_j) on the grid, with a pole scan.
  std::vector<cplx> smat;
  if (np > 1) {
    smat.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const cplx common = 1.0 + q * xi[i] * xi[j];
        const cplx den = common - (1.0 + q) * xi[j];
        if (std::abs(den) < 1e-8) throw Error(Errc::ContourHitsPole, "scattering factor is singular on the contour");
        smat[i * n + j] = -(common - (1.0 + q) * xi[i]) / den;
      }
    }
  }

  std::vector<int> sigma(np);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));

  std::vector<cplx> partial(perms.size());
  auto work = [&](std::size_t pi) {
    const auto& s = perms[pi];
    std::vector<int> pos(np);  // pos[v] = sigma^{-1}(v)
    for (int j = 0; j < np; ++j) pos[s[j]] = j;
    std::vector<std::pair<int, int>> inversions;
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < a; ++b)
        if (pos[a] < pos[b]) inversions.emplace_back(a, b);
    // base[v][k]: xi^{x_{pos v} - y_v - 1} e^{eps(xi) t} xi / n.
    std::vector<std::vector<cplx>> base(np, std::vector<cplx>(n));
    for (int v = 0; v < np; ++v) {
      const int e = x[pos[v]] - y[v];
      for (int k = 0; k < n; ++k) {
        const cplx z = xi[k];
        base[v][k] = std::pow(z, e) * std::exp((1.0 / z + q * z - (1.0 + q)) * t) / static_cast<double>(n);
      }
    }
    cplx acc = 0.0;
    std::vector<int> k(np, 0);
    const long total = static_cast<long>(std::pow(n, np));
    for (long idx = 0; idx < total; ++idx) {
      long rem = idx;
      for (int v = np - 1; v >= 0; --v) {
        k[v] = static_cast<int>(rem % n);
        rem /= n;
      }
      cplx term = 1.0;
      for (int v = 0; v < np; ++v) term *= base[v][k[v]];
      for (const auto& [a, b] : inversions) term *= smat[k[a] * n + k[b]];
      acc += term;
    }
    partial[pi] = acc;
  };

  std::vector<std::thread> threads;
  for (std::size_t pi = 0; pi < perms.size(); ++pi) threads.emplace_back(work, pi);
  for (auto& th : threads) th.join();
  cplx sum = 0.0;
  for (const auto& p : partial) sum += p;
  return sum;
}

}  // namespace

cplx tw_transition_amplitude(const std::vector<int>& y, const std::vector<int>& x, double t, double q,
                             const TwOptions& opts) {
  check_positions(y, x);
  if (t < 0.0) throw Error(Errc::InvalidParameters, "time must be nonnegative");
  if (!(opts.radius > 0.0)) throw Error(Errc::InvalidParameters, "contour radius must be positive");
  const int np = static_cast<int>(y.size());
  int cap = opts.max_n_quad;
  if (cap <= 0) cap = np == 1 ? (1 << 14) : np == 2 ? 2048 : 512;
  int n = std::max(8, opts.n_quad);
  cplx prev = tw_quadrature(y, x, t, q, opts.radius, n);
  while (2 * n <= cap) {
    n *= 2;
    const cplx next = tw_quadrature(y, x, t, q, opts.radius, n);
    if (std::abs(next - prev) <= 1e-8) return next;
    prev = next;
  }
  throw Error(Errc::NonConvergedQuadrature, "doubling the node count kept changing the result");
}

double tw_transition_probability(const std::vector<int>& y, const std::vector<int>& x, double t, double q,
                                 const TwOptions& opts) {
  return tw_transition_amplitude(y, x, t, q, opts).real();
}

namespace {

double ctmc_window(const std::vector<int>& y, const std::vector<int>& x, double t, double q, int window) {
  const int np = static_cast<int>(y.size());
  const int lo = std::min(x.front(), y.front()) - window;
  const int hi = std::max(x.back(), y.back()) + window;
  const int width = hi - lo + 1;

  std::vector<std::vector<int>> states;
  std::map<std::vector<int>, long> index;
  std::vector<int> c(np);
  // Enumerate increasing tuples in [lo, hi].
  std::function<void(int, int)> rec = [&](int slot, int start) {
    if (slot == np) {
      index.emplace(c, static_cast<long>(states.size()));
      states.push_back(c);
      return;
    }
    for (int s = start; s <= hi; ++s) {
      c[slot] = s;
      rec(slot + 1, s + 1);
    }
  };
  double count = 1.0;
  for (int i = 0; i < np; ++i) count = count * (width - i) / (i + 1);
  if (count > static_cast<double>(kMaxStates)) throw Error(Errc::WindowTooSmall, "window needed exceeds the state cap");
  rec(0, lo);

  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t si = 0; si < states.size(); ++si) {
    const auto& s = states[si];
    double out = 0.0;
    for (int k = 0; k < np; ++k) {
      for (const auto& [step, rate] : {std::pair<int, double>{1, 1.0}, std::pair<int, double>{-1, q}}) {
        if (rate == 0.0) continue;
        const int target = s[k] + step;
        if (target < lo || target > hi) continue;
        if (std::find(s.begin(), s.end(), target) != s.end()) continue;
        std::vector<int> ns = s;
        ns[k] = target;
        trips.emplace_back(static_cast<int>(si), static_cast<int>(index.at(ns)), rate);
        out += rate;
      }
    }
    trips.emplace_back(static_cast<int>(si), static_cast<int>(si), -out);
  }
  SparseGenerator g(static_cast<long>(states.size()), static_cast<long>(states.size()));
  g.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(static_cast<long>(states.size()));
  p0(index.at(y)) = 1.0;
  const Eigen::VectorXd p = propagate_distribution(g, p0, t, 1e-14);
  return p(index.at(x));
}

}  // namespace

double ctmc_oracle_probability(const std::vector<int>& y, const std::vector<int>& x, double t, double q,
                               int window) {
  check_positions(y, x);
  if (t < 0.0) throw Error(Errc::InvalidParameters, "time must be nonnegative");
  if (window < 1) throw Error(Errc::InvalidParameters, "window must be positive");
  double prev = ctmc_window(y, x, t, q, window);
  for (int w = 2 * window; w <= 64 * window; w *= 2) {
    const double next = ctmc_window(y, x, t, q, w);
    if (std::abs(next - prev) < 1e-9) return next;
    prev = next;
  }
  throw Error(Errc::WindowTooSmall, "probability did not stabilise as the window grew");
}

}  // namespace ybt
