#include "ybt/sixvertex.hpp"

#include <cmath>
#include <map>
#include "json.hpp"
#include <sstream>

#include "ybt/errors.hpp"
#include "ybt/qnum.hpp"

namespace ybt {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::pow;

constexpr double kPoleTol = 1e-12;

WeightReal ipow(const WeightReal& x, int n) {
  WeightReal r = 1;
  const WeightReal base = n >= 0 ? x : WeightReal(1) / x;
  for (int i = 0; i < std::abs(n); ++i) r *= base;
  return r;
}

WeightReal q_binomial_t(int l, int j, const WeightReal& q) {
  if (j < 0 || j > l || l < 0) return 0;
  WeightReal r = 1;
  for (int i = 1; i <= j; ++i) r *= (1 - ipow(q, l - j + i)) / (1 - ipow(q, i));
  return r;
}

void check_capacities(int l, int m) {
  if (l < 1 || m < 1) throw Error(Errc::InvalidParameters, "capacities must be at least 1");
}

}  // namespace

VertexWeights::VertexWeights(int l_, int m_, double z_, double q_) : l(l_), m(m_), z(z_), q(q_) {
  table.assign(static_cast<std::size_t>(states()) * states(), WeightReal(0));
}

std::size_t VertexWeights::index(int j1, int k1, int j2, int k2) const {
  const int n = states();
  return static_cast<std::size_t>(j1 * (m + 1) + k1) * n + static_cast<std::size_t>(j2 * (m + 1) + k2);
}

double VertexWeights::max_row_sum_residual() const {
  WeightReal worst = 0;
  for (int j1 = 0; j1 <= l; ++j1) {
    for (int k1 = 0; k1 <= m; ++k1) {
      WeightReal s = 0;
      for (int j2 = 0; j2 <= l; ++j2)
        for (int k2 = 0; k2 <= m; ++k2) s += at(j1, k1, j2, k2);
      worst = std::max(worst, WeightReal(abs(s - 1)));
    }
  }
  return static_cast<double>(worst);
}

double VertexWeights::conservation_violation() const {
  WeightReal worst = 0;
  for (int j1 = 0; j1 <= l; ++j1)
    for (int k1 = 0; k1 <= m; ++k1)
      for (int j2 = 0; j2 <= l; ++j2)
        for (int k2 = 0; k2 <= m; ++k2)
          if (j1 + k1 != j2 + k2) worst = std::max(worst, WeightReal(abs(at(j1, k1, j2, k2))));
  return static_cast<double>(worst);
}

Operator VertexWeights::to_operator() const {
  const int n = states();
  Matrix mat(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) mat(r, c) = static_cast<double>(table[static_cast<std::size_t>(r) * n + c]);
  return Operator({l + 1, m + 1}, mat);
}

double max_entry_difference(const VertexWeights& a, const VertexWeights& b) {
  if (a.l != b.l || a.m != b.m) throw Error(Errc::DimensionMismatch, "weight tables have different capacities");
  WeightReal worst = 0;
  for (std::size_t i = 0; i < a.table.size(); ++i) worst = std::max(worst, WeightReal(abs(a.table[i] - b.table[i])));
  return static_cast<double>(worst);
}

VertexWeights six_vertex_weights(double b1, double b2) {
  if (!(b1 >= 0.0 && b1 <= 1.0) || !(b2 >= 0.0 && b2 <= 1.0)) {
    throw Error(Errc::RateOutOfRange, "b1 and b2 must lie in [0, 1]");
  }
  VertexWeights w(1, 1, 0.0, 0.0);
  w.at(0, 0, 0, 0) = 1;
  w.at(1, 1, 1, 1) = 1;
  w.at(0, 1, 0, 1) = b1;
  w.at(0, 1, 1, 0) = 1 - WeightReal(b1);
  w.at(1, 0, 1, 0) = b2;
  w.at(1, 0, 0, 1) = 1 - WeightReal(b2);
  return w;
}

namespace {

VertexWeights base_weights(int m, const WeightReal& z, const WeightReal& q, double z_tag, double q_tag) {
  const WeightReal top = ipow(q, m + 1);
  const WeightReal d = top - z;
  if (abs(d) <= kPoleTol * std::max(WeightReal(1), WeightReal(abs(z)))) {
    throw Error(Errc::PoleAtZEqualsQPower, "spectral parameter equals q^{m+1}");
  }
  VertexWeights w(1, m, z_tag, q_tag);
  for (int g = 0; g <= m; ++g) {
    const WeightReal q2g = ipow(q, 2 * g);
    w.at(0, g, 0, g) = (top - q2g * z) / d;
    if (g >= 1) w.at(0, g, 1, g - 1) = z * (q2g - 1) / d;
    w.at(1, g, 1, g) = (ipow(q, 2 * g - m + 1) - z) / d;
    if (g + 1 <= m) w.at(1, g, 0, g + 1) = (top - ipow(q, 2 * g - m + 1)) / d;
  }
  return w;
}

VertexWeights fuse(int l, int m, const WeightReal& z, const WeightReal& q, double z_tag, double q_tag) {
  if (l == 1) return base_weights(m, z, q, z_tag, q_tag);
  const WeightReal Q = q * q;
  const VertexWeights low = fuse(l - 1, m, z, q, z_tag, q_tag);
  const VertexWeights top = base_weights(m, z * ipow(Q, l - 1), q, z_tag, q_tag);
  VertexWeights w(l, m, z_tag, q_tag);
  for (int j1 = 0; j1 <= l; ++j1) {
    const WeightReal whole = q_binomial_t(l, j1, Q);
    const WeightReal split[2] = {q_binomial_t(l - 1, j1, Q) / whole,
                                 ipow(Q, l - j1) * q_binomial_t(l - 1, j1 - 1, Q) / whole};
    for (int k1 = 0; k1 <= m; ++k1) {
      for (int j2 = 0; j2 <= l; ++j2) {
        const int k2 = j1 + k1 - j2;
        if (k2 < 0 || k2 > m) continue;
        WeightReal s = 0;
        for (int a = 0; a <= 1; ++a) {
          if (split[a] == 0) continue;
          for (int b = 0; b <= 1; ++b) {
            // Vertical occupation between the lower block and the top line.
            const int mid = j1 - a + k1 - (j2 - b);
            if (mid < 0 || mid > m || j1 - a < 0 || j1 - a > l - 1 || j2 - b < 0 || j2 - b > l - 1) continue;
            s += split[a] * low.at(j1 - a, k1, j2 - b, mid) * top.at(a, mid, b, k2);
          }
        }
        w.at(j1, k1, j2, k2) = s;
      }
    }
  }
  return w;
}

}  // namespace

VertexWeights higher_spin_base_weights(int m, double z, double q) {
  check_capacities(1, m);
  return base_weights(m, WeightReal(z), WeightReal(q), z, q);
}

VertexWeights fused_weights_recurrence(int l, int m, double z, double q) {
  check_capacities(l, m);
  try {
    return fuse(l, m, WeightReal(z), WeightReal(q), z, q);
  } catch (const Error& e) {
    if (e.code() == Errc::PoleAtZEqualsQPower) {
      throw Error(Errc::PoleInSpectralLadder, "a line of the fusion ladder sits on a pole");
    }
    throw;
  }
}

namespace {

VertexWeights closed_form_at(int l, int m, const WeightReal& z, double q) {
  const WeightReal qr = q;
  const WeightReal Q = qr * qr;
  const WeightReal s = ipow(qr, -m);
  const WeightReal nu = s * s;
  const WeightReal u = z / qr;
  const WeightReal al = -s * u;

  // Pochhammers in the denominator; a vanishing factor is a true pole.
  auto checked = [&](const WeightReal& a, int n) {
    WeightReal r = 1;
    WeightReal qk = 1;
    for (int k = 0; k < n; ++k) {
      const WeightReal f = 1 - a * qk;
      if (abs(f) <= kPoleTol) throw Error(Errc::PoleInPochhammer, "denominator Pochhammer vanishes");
      r *= f;
      qk *= Q;
    }
    return r;
  };

  VertexWeights w(l, m, static_cast<double>(z), q);
  for (int j1 = 0; j1 <= l; ++j1) {
    for (int k1 = 0; k1 <= m; ++k1) {
      for (int j2 = 0; j2 <= l; ++j2) {
        const int k2 = j1 + k1 - j2;
        if (k2 < 0 || k2 > m) continue;
        const int e4 = (2 * j1 - j1 * j1) - (2 * j2 - j2 * j2) + (k2 * k2 + k1 * k1) + 2 * (k2 * (j2 - 1) + k1 * j1);
        WeightReal pref = pow(Q, WeightReal(e4) / 4) * ipow(nu, j1 - k2) * ipow(al, j2 - j1 + k2);
        pref *= q_pochhammer_signed_t<WeightReal>(-al / nu, Q, j2 - k1, kPoleTol);
        pref /= q_pochhammer_t<WeightReal>(Q, Q, k2) * checked(-al, k2 + j2);
        pref *= q_pochhammer_t<WeightReal>(Q, Q, j1) *
                q_pochhammer_signed_t<WeightReal>(nu * ipow(Q, k1), Q, j1 - j2, kPoleTol) /
                q_pochhammer_t<WeightReal>(Q, Q, j2);
        const std::vector<WeightReal> upper = {ipow(Q, -k1), ipow(Q, -k2), s * u * ipow(Q, l), Q * s / u};
        const std::vector<WeightReal> lower = {nu, ipow(Q, 1 + j2 - k1), ipow(Q, l + 1 - k1 - j1)};
        w.at(j1, k1, j2, k2) = pref * terminating_series_regularized_t<WeightReal>(k1, upper, lower, Q, Q);
      }
    }
  }
  return w;
}

}  // namespace

VertexWeights fused_weights_closed_form(int l, int m, double z, double q) {
  check_capacities(l, m);
  if (z == 0.0) throw Error(Errc::InvalidParameters, "closed form needs z != 0");
  try {
    return closed_form_at(l, m, z, q);
  } catch (const Error& e) {
    if (e.code() != Errc::PoleInPochhammer) throw;
  }
  // A vanishing factor can be cancelled by a vanishing numerator. Evaluate on
  // both sides in quad: a removable point gives agreeing sides, a pole does not.
  const WeightReal eps = 1e-9;
  const VertexWeights lo = closed_form_at(l, m, WeightReal(z) * (1 - eps), q);
  const VertexWeights hi = closed_form_at(l, m, WeightReal(z) * (1 + eps), q);
  VertexWeights w(l, m, z, q);
  for (std::size_t i = 0; i < w.table.size(); ++i) {
    const WeightReal mid = (lo.table[i] + hi.table[i]) / 2;
    if (abs(hi.table[i] - lo.table[i]) > 1e-3 * std::max<WeightReal>(1, abs(mid)))
      throw Error(Errc::PoleInPochhammer, "denominator Pochhammer vanishes at a pole of the weights");
    w.table[i] = mid;
  }
  return w;
}

SpectralRFamily fused_family(int l, double q, FusionMethod method) {
  SpectralRFamily fam;
  fam.q = q;
  fam.site_dim = l + 1;
  fam.convention = Convention::R;
  fam.name = method == FusionMethod::Recurrence ? "fused-recurrence" : "fused-closed";
  fam.evaluator = [l, q, method](cplx z) {
    if (z.imag() != 0.0) throw Error(Errc::InvalidParameters, "fused weights take a real spectral parameter");
    const double zz = z.real() * std::pow(q, 1 - l);
    const VertexWeights w = method == FusionMethod::Recurrence ? fused_weights_recurrence(l, l, zz, q)
                                                               : fused_weights_closed_form(l, l, zz, q);
    return w.to_operator();
  };
  return fam;
}

LatticeBoundary step_boundary(int width, int height) {
  return LatticeBoundary{std::vector<int>(height, 1), std::vector<int>(width, 0), "step"};
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  // SplitMix64 finaliser over a Weyl sequence position.
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

LatticeConfig sample_lattice(const VertexWeights& w, int width, int height, const LatticeBoundary& boundary,
                             std::uint64_t seed) {
  if (width < 1 || height < 1) throw Error(Errc::InvalidParameters, "lattice must be at least 1 x 1");
  if (static_cast<int>(boundary.left.size()) != height || static_cast<int>(boundary.bottom.size()) != width) {
    throw Error(Errc::InconsistentBoundary, "boundary lengths do not match the lattice");
  }
  for (int v : boundary.left)
    if (v < 0 || v > w.l) throw Error(Errc::InconsistentBoundary, "left boundary exceeds horizontal capacity");
  for (int v : boundary.bottom)
    if (v < 0 || v > w.m) throw Error(Errc::InconsistentBoundary, "bottom boundary exceeds vertical capacity");

  // Cumulative laws per input pair, in double.
  const int n = w.states();
  std::vector<std::vector<double>> cdf(n, std::vector<double>(n));
  for (int in = 0; in < n; ++in) {
    double acc = 0.0;
    for (int out = 0; out < n; ++out) {
      const double p = static_cast<double>(w.table[static_cast<std::size_t>(in) * n + out]);
      if (p < -1e-12) throw Error(Errc::NegativeWeight, "sampling needs nonnegative weights");
      acc += std::max(p, 0.0);
      cdf[in][out] = acc;
    }
  }

  LatticeConfig cfg{width, height, seed, boundary, {}, {}};
  cfg.vertices.resize(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      Vertex v;
      v.j1 = x == 0 ? boundary.left[y] : cfg.at(x - 1, y).j2;
      v.k1 = y == 0 ? boundary.bottom[x] : cfg.at(x, y - 1).k2;
      const int in = v.j1 * (w.m + 1) + v.k1;
      const std::uint64_t counter = static_cast<std::uint64_t>(y) * width + x;
      const double u = counter_uniform(seed, counter) * cdf[in][n - 1];
      int out = 0;
      while (out < n - 1 && u >= cdf[in][out]) ++out;
      v.j2 = out / (w.m + 1);
      v.k2 = out % (w.m + 1);
      cfg.vertices[static_cast<std::size_t>(y) * width + x] = v;
    }
  }
  cfg.top_height.resize(width);
  int acc = 0;
  for (int x = 0; x < width; ++x) {
    acc += cfg.at(x, height - 1).k2;
    cfg.top_height[x] = acc;
  }
  return cfg;
}

namespace {

std::string header(const LatticeConfig& c) {
  nlohmann::ordered_json h;
  h["width"] = c.width;
  h["height"] = c.height;
  h["seed"] = c.seed;
  h["boundary"] = {{"kind", c.boundary.kind}, {"left", c.boundary.left}, {"bottom", c.boundary.bottom}};
  return "# " + h.dump() + "\n";
}

}  // namespace

std::string lattice_to_csv(const LatticeConfig& c) {
  std::ostringstream os;
  os << header(c) << "x,y,j1,k1,j2,k2\n";
  for (int y = 0; y < c.height; ++y) {
    for (int x = 0; x < c.width; ++x) {
      const Vertex& v = c.at(x, y);
      os << x << ',' << y << ',' << v.j1 << ',' << v.k1 << ',' << v.j2 << ',' << v.k2 << '\n';
    }
  }
  return os.str();
}

std::string height_to_csv(const LatticeConfig& c) {
  std::ostringstream os;
  os << header(c) << "x,height\n";
  for (int x = 0; x < c.width; ++x) os << x << ',' << c.top_height[x] << '\n';
  return os.str();
}

namespace {

// Column-action swap V_a ⊗ V_b -> V_b ⊗ V_a.
Matrix swap_map(int da, int db) { return permutation_operator(da, db).matrix().transpose(); }

}  // namespace

Operator gauge_transform(const Operator& r, int dim_l, int dim_m, const Eigen::VectorXcd& g_lm,
                         const Eigen::VectorXcd& g_ml) {
  const long n = static_cast<long>(dim_l) * dim_m;
  if (r.dim() != n || g_lm.size() != n || g_ml.size() != n) {
    throw Error(Errc::DimensionMismatch, "gauge sizes do not match V_l ⊗ V_m");
  }
  for (long i = 0; i < n; ++i) {
    if (std::abs(g_lm(i)) == 0.0 || std::abs(g_ml(i)) == 0.0) throw Error(Errc::SingularGauge, "gauge has a zero entry");
  }
  const Matrix s = swap_map(dim_m, dim_l) * g_ml.cwiseInverse().asDiagonal() * swap_map(dim_l, dim_m) * r.matrix() *
                   g_lm.asDiagonal();
  return Operator({dim_l, dim_m}, s);
}

DiagonalGaugeFit fit_diagonal_gauge(const Operator& r, const Operator& target, int dim_l, int dim_m) {
  const long n = static_cast<long>(dim_l) * dim_m;
  if (r.dim() != n || target.dim() != n) throw Error(Errc::DimensionMismatch, "operators do not act on V_l ⊗ V_m");
  // S(i, j) = R(i, j) g_lm(j) / g_ml(pi(i)), pi the index map of the swaps.
  const Matrix perm = swap_map(dim_l, dim_m);
  std::vector<long> pi(n);
  for (long i = 0; i < n; ++i) {
    for (long k = 0; k < n; ++k)
      if (perm(k, i) != 0.0) pi[i] = k;
  }
  const double scale_r = max_norm(r), scale_t = max_norm(target);
  std::vector<std::pair<long, long>> support;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (std::abs(r(i, j)) > 1e-12 * scale_r && std::abs(target(i, j)) > 1e-12 * scale_t) support.emplace_back(i, j);

  // Unknowns: log g_lm (n), log g_ml (n), log scale.
  const long rows = static_cast<long>(support.size());
  RealMatrix a = RealMatrix::Zero(rows, 2 * n + 1);
  Eigen::VectorXcd rhs(rows);
  for (long e = 0; e < rows; ++e) {
    const auto [i, j] = support[e];
    a(e, j) += 1.0;
    a(e, n + pi[i]) -= 1.0;
    a(e, 2 * n) -= 1.0;
    rhs(e) = std::log(target(i, j) / r(i, j));
  }
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(a);
  const Eigen::VectorXd re = cod.solve(Eigen::VectorXd(rhs.real()));
  const Eigen::VectorXd im = cod.solve(Eigen::VectorXd(rhs.imag()));
  Eigen::VectorXcd x(2 * n + 1);
  for (long k = 0; k < 2 * n + 1; ++k) x(k) = std::exp(cplx(re(k), im(k)));

  DiagonalGaugeFit fit;
  fit.g_lm = x.head(n);
  fit.g_ml = x.segment(n, n);
  fit.scale = x(2 * n);
  const Operator s = gauge_transform(r, dim_l, dim_m, fit.g_lm, fit.g_ml);
  fit.residual = max_norm(s.matrix() - fit.scale * target.matrix());
  return fit;
}

}  // namespace ybt
