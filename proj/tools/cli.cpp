#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ybt/errors.hpp"
#include "ybt/models.hpp"
#include "ybt/mpa.hpp"
#include "ybt/operator.hpp"
#include "ybt/oscillator.hpp"
#include "ybt/sixvertex.hpp"
#include "ybt/uqsl2.hpp"
#include "ybt/ybe.hpp"

namespace ybt::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError {
  std::string flag;
  std::string message;
};

struct Global {
  std::optional<double> tol;
  bool json_out = false;
  bool csv_out = false;
  std::uint64_t seed = 0;
  std::string out;
  bool timing = false;
};

struct Report {
  std::string command;
  json params = json::object();
  json results = json::object();
  json residuals = json::object();
  json tolerances = json::object();
  bool pass = true;
  std::optional<std::string> csv;

  void residual(const std::string& name, double value, double default_tol, const Global& g) {
    const double tol = g.tol.value_or(default_tol);
    tolerances[name] = tol;
    if (std::isfinite(value)) {
      residuals[name] = value;
    } else {
      residuals[name] = nullptr;
    }
    if (!(value <= tol)) pass = false;
  }
};

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::vector<double> parse_grid(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError{flag, "'" + s + "' is not a number"};
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError{flag, "'" + s + "' is not a number"};
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw UsageError{flag, "ranges are start:stop:step"};
    const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || b < a) throw UsageError{flag, "need start <= stop and step > 0"};
    const long n = std::lround(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 1000) throw UsageError{flag, "at most 1000 grid points"};
    for (long i = 0; i < n; ++i) out.push_back(std::round((a + i * step) * 1e12) / 1e12);
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(number(part));
  }
  if (out.empty()) throw UsageError{flag, "empty grid"};
  return out;
}

std::vector<int> parse_positions(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw UsageError{flag, "'" + part + "' is not an integer"};
    }
    if (used != part.size()) throw UsageError{flag, "'" + part + "' is not an integer"};
    if (!out.empty() && v <= out.back()) throw UsageError{flag, "positions must be strictly increasing"};
    out.push_back(v);
  }
  if (out.empty()) throw UsageError{flag, "need at least one position"};
  return out;
}

std::string bitstring(long state, int L) {
  std::string s(L, '0');
  for (int i = 0; i < L; ++i)
    if ((state >> (L - 1 - i)) & 1L) s[i] = '1';
  return s;
}

std::string measure_csv(const ProbVector& mu, int L) {
  std::ostringstream s;
  s << "bitstring,probability\n";
  for (long c = 0; c < mu.size(); ++c) s << bitstring(c, L) << ',' << format_double(mu(c)) << '\n';
  return s.str();
}

json density_profile(const ProbVector& mu, int L) {
  json d = json::array();
  for (int i = 0; i < L; ++i) {
    double rho = 0.0;
    for (long c = 0; c < mu.size(); ++c)
      if ((c >> (L - 1 - i)) & 1L) rho += mu(c);
    d.push_back(rho);
  }
  return d;
}

// ---- verify ----

struct VerifyArgs {
  std::string kind;
  std::string family;
  double q = 0.5;
  double alpha = 0.6, beta = 0.4, gamma = 0.1, delta = 0.2;
  int m = 1;
  int l = 2;
  std::string side = "left";
  std::string grid;
  std::string grid_w;
  std::optional<double> lambda1, lambda2;
  bool alpha_set = false, beta_set = false;
};

Operator constant_family(const VerifyArgs& a, Report& report) {
  if (a.family == "permutation") return permutation_operator(2, 2);
  if (a.family == "identity") return Operator::identity({2, 2});
  if (a.family == "r-alpha-beta") {
    if (!a.alpha_set) throw UsageError{"--alpha", "required for --family r-alpha-beta"};
    if (!a.beta_set) throw UsageError{"--beta", "required for --family r-alpha-beta"};
    report.params["alpha"] = a.alpha;
    report.params["beta"] = a.beta;
    return r_alpha_beta(a.alpha, a.beta);
  }
  if (a.family == "frt") {
    report.params["q"] = a.q;
    return frt_r(a.q);
  }
  if (a.family == "universal") {
    report.params["q"] = a.q;
    report.params["m"] = a.m;
    const RepM r = rep(a.m, a.q);
    return permutation_operator(r.dim(), r.dim()) * universal_r(r, r);
  }
  throw UsageError{"--family", "'" + a.family + "' has no constant R"};
}

void verify_ybe(const VerifyArgs& a, const Global& g, Report& report) {
  if (a.family == "asep" || a.family == "fused") {
    const bool fused = a.family == "fused";
    const SpectralRFamily fam = fused ? fused_family(a.l, a.q) : asep_family(a.q);
    const std::vector<double> grid = parse_grid(a.grid.empty() ? (fused ? "0.3:0.9:0.1" : "0.2:0.9:0.1") : a.grid,
                                                "--grid");
    report.params["q"] = a.q;
    if (fused) report.params["l"] = a.l;
    report.params["grid"] = grid;
    double worst = 0.0;
    json at = json::object();
    int skipped = 0;
    for (double z : grid) {
      for (double w : grid) {
        double r = 0.0;
        try {
          r = verify_spectral_ybe(fam, z, w);
        } catch (const Error& e) {
          // The equation is an identity of rational functions; poles are not points of it.
          if (e.code() != Errc::EvaluationPole) throw;
          ++skipped;
          continue;
        }
        if (!(r <= worst)) {
          worst = r;
          at = {{"z", z}, {"w", w}};
        }
      }
    }
    const long points = static_cast<long>(grid.size() * grid.size());
    if (skipped == points) throw UsageError{"--grid", "every grid point is a pole of the family"};
    const int d = fam.site_dim;
    report.results["site_dim"] = d;
    report.results["grid_points"] = points;
    report.results["pole_points_skipped"] = skipped;
    report.results["worst_point"] = at;
    report.residual("spectral_ybe", worst, fused ? 1e-9 : 1e-10, g);
    report.residual("regularity", max_norm(fam.evaluator(1.0) - permutation_operator(d, d)), 1e-12, g);
    return;
  }
  const Operator r = constant_family(a, report);
  const BraidedYbeResidual res = verify_braided_ybe(r);
  if (a.family == "r-alpha-beta") report.results["alpha_times_one_minus_beta"] = a.alpha * (1.0 - a.beta);
  report.results["site_dim"] = r.site_dims().front();
  report.results["unbraided"] = res.unbraided;
  report.residual("braided_ybe", res.braided, 1e-10, g);
}

void verify_reflection(const VerifyArgs& a, const Global& g, Report& report) {
  if (a.family != "asep") throw UsageError{"--family", "reflection supports only asep"};
  const bool left = a.side == "left";
  const Side side = left ? Side::Left : Side::Right;
  // Left uses (alpha, gamma); right uses (delta, beta).
  const double ka = left ? a.alpha : a.delta, kc = left ? a.gamma : a.beta;
  report.params["q"] = a.q;
  report.params["side"] = a.side;
  if (left) {
    report.params["alpha"] = a.alpha;
    report.params["gamma"] = a.gamma;
  } else {
    report.params["beta"] = a.beta;
    report.params["delta"] = a.delta;
  }
  const std::vector<double> zs = parse_grid(a.grid.empty() ? "0.3,0.5,0.7" : a.grid, "--grid");
  const std::vector<double> ws = parse_grid(a.grid_w.empty() ? "0.4,0.8,0.9" : a.grid_w, "--grid-w");
  report.params["grid"] = zs;
  report.params["grid_w"] = ws;
  const SpectralRFamily rfam = asep_family(a.q);
  const ReflectionFamily kfam = reflection_family(a.q, ka, kc, side);
  double worst = 0.0;
  int skipped = 0;
  for (double z : zs) {
    for (double w : ws) {
      try {
        worst = std::max(worst, verify_reflection_equation(rfam, kfam, z, w));
      } catch (const Error& e) {
        if (e.code() != Errc::EvaluationPole && e.code() != Errc::PoleInDenominator &&
            e.code() != Errc::PoleAtQZEqualsOne)
          throw;
        ++skipped;
      }
    }
  }
  report.results["pairs"] = zs.size() * ws.size();
  report.results["pole_pairs_skipped"] = skipped;
  const double rho = 1.0 / (a.q - 1.0);
  const Matrix dk = central_difference(kfam.evaluator, 1.0).matrix();
  const Matrix expect = left ? Matrix(2 * rho * asep_left_boundary(a.alpha, a.gamma).matrix())
                             : Matrix(-2 * rho * asep_right_boundary(a.beta, a.delta).matrix());
  report.results["rho"] = rho;
  report.residual("reflection_equation", worst, 1e-10, g);
  report.residual("k_at_one", max_norm(kfam.evaluator(1.0) - Operator::identity({2})), 1e-12, g);
  report.residual("derivative_at_one", max_norm(dk - expect), 1e-6, g);
}

void verify_hecke(const VerifyArgs& a, const Global& g, Report& report) {
  Operator r;
  double l1 = 1.0, l2 = -1.0;
  if (a.family == "frt") {
    r = frt_r(a.q);
    l1 = std::pow(a.q, -2);
    report.params["q"] = a.q;
  } else if (a.family == "permutation") {
    r = permutation_operator(2, 2);
  } else {
    r = constant_family(a, report);
    if (!a.lambda1 || !a.lambda2) throw UsageError{"--lambda1", "eigenvalues are required for this family"};
  }
  if (a.lambda1) l1 = *a.lambda1;
  if (a.lambda2) l2 = *a.lambda2;
  report.params["lambda1"] = l1;
  report.params["lambda2"] = l2;
  report.residual("hecke_quadratic", verify_hecke_quadratic(r, l1, l2), 1e-10, g);
}

void verify_markov(const VerifyArgs& a, const Global& g, Report& report) {
  if (a.family != "asep") throw UsageError{"--family", "markov supports only asep"};
  report.params["q"] = a.q;
  const MarkovReport m = markov_structure_report(asep_family(a.q), asep_bulk_w(a.q), g.tol.value_or(1e-10));
  report.results["rho"] = m.rho;
  report.results["rho_expected"] = 1.0 / (a.q - 1.0);
  report.residual("regularity", m.regularity, 1e-12, g);
  report.residual("rho", std::abs(m.rho - 1.0 / (a.q - 1.0)), 1e-5, g);
  report.residual("derivative", m.derivative_residual, 1e-6, g);
  report.residual("row_sums", m.row_sum_residual, 1e-12, g);
  report.residual("fixed_point", m.fixed_point_residual, 1e-10, g);
}

// ---- other subcommands ----

void rep_check(int m, double q, const Global& g, Report& report) {
  report.params["m"] = m;
  report.params["q"] = q;
  const RelationReport r = check_relations(rep(m, q));
  report.results["dim"] = m + 1;
  report.residual("k_e", r.k_e, 1e-10, g);
  report.residual("k_f", r.k_f, 1e-10, g);
  report.residual("e_f", r.e_f, 1e-10, g);
  report.residual("k_kinv", r.k_kinv, 1e-10, g);
  report.residual("antipode", r.antipode, 1e-10, g);
  report.residual("counit", r.counit, 1e-10, g);
}

void universal(int l, int m, double q, const Global& g, Report& report) {
  report.params["l"] = l;
  report.params["m"] = m;
  report.params["q"] = q;
  const RepM rl = rep(l, q), rm = rep(m, q);
  const Operator r = universal_r(rl, rm);
  const Matrix mat = r.matrix();
  report.results["dim"] = mat.rows();
  report.results["max_entry"] = max_norm(mat);
  report.residual("intertwining", intertwining_residual(rl, rm, r), 1e-10, g);
  report.residual("inverse", max_norm(Matrix(mat * mat.inverse() - Matrix::Identity(mat.rows(), mat.cols()))), 1e-10, g);
  if (l == m) {
    const Operator braided = permutation_operator(rl.dim(), rl.dim()) * r;
    report.residual("braided_ybe", verify_braided_ybe(braided).braided, 1e-10, g);
  }
}

AsepParams asep_params(int L, double q, double alpha, double beta, double gamma, double delta) {
  AsepParams p;
  p.L = L;
  p.q = q;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.delta = delta;
  return p;
}

void asep_stationary(const AsepParams& p, bool open, std::optional<int> particles, const Global& g, Report& report) {
  report.params["L"] = p.L;
  report.params["q"] = p.q;
  report.params["open"] = open;
  if (p.L > 12) throw UsageError{"--L", "at most 12 sites"};
  std::optional<std::vector<long>> cls;
  if (open) {
    report.params["alpha"] = p.alpha;
    report.params["beta"] = p.beta;
    report.params["gamma"] = p.gamma;
    report.params["delta"] = p.delta;
  } else {
    if (!particles) throw UsageError{"--particles", "required without --open"};
    if (*particles < 0 || *particles > p.L) throw UsageError{"--particles", "must lie in [0, L]"};
    report.params["particles"] = *particles;
    std::vector<long> states;
    for (long c = 0; c < (1L << p.L); ++c)
      if (__builtin_popcountl(c) == *particles) states.push_back(c);
    cls = states;
  }
  const Operator gen = asep_generator(p, open);
  const ProbVector mu = stationary_distribution(gen, 1e-13, cls);
  const Eigen::RowVectorXd balance = mu.transpose() * gen.matrix().real();
  report.results["states"] = mu.size();
  report.results["density"] = density_profile(mu, p.L);
  report.residual("balance", balance.cwiseAbs().maxCoeff(), 1e-10, g);
  report.residual("normalisation", std::abs(mu.sum() - 1.0), 1e-12, g);
  report.csv = measure_csv(mu, p.L);
}

void mpa(const AsepParams& p, int truncation, const Global& g, Report& report) {
  report.params["L"] = p.L;
  report.params["q"] = p.q;
  report.params["alpha"] = p.alpha;
  report.params["beta"] = p.beta;
  report.params["gamma"] = p.gamma;
  report.params["delta"] = p.delta;
  report.params["truncation"] = truncation;
  if (p.L > 12) throw UsageError{"--L", "at most 12 sites"};
  const AskeyWilsonParameters aw = askey_wilson_parameters(p);
  report.results["askey_wilson"] = {{"a", aw.a}, {"b", aw.b}, {"c", aw.c}, {"d", aw.d}};
  report.results["pairing_ratio"] = pairing_ratio(p);
  const MpaResult r = mpa_stationary_measure(p, truncation);
  report.results["truncation_used"] = r.truncation;
  report.results["tv_deltas"] = r.tv_deltas;
  report.results["density"] = density_profile(r.measure, p.L);
  const ProbVector oracle = stationary_distribution(asep_generator(p, true), 1e-13);
  const MpaRelationReport rel = relation_checks(p, r.truncation);
  report.residual("oracle_tv", total_variation(r.measure, oracle), 1e-8, g);
  report.residual("bulk_relation", rel.bulk, 1e-9, g);
  report.residual("left_boundary", rel.left, 1e-9, g);
  report.residual("right_boundary", rel.right, 1e-9, g);
  report.csv = measure_csv(r.measure, p.L);
}

void fuse(int l, int m, double z, double q, const std::string& method, const Global& g, Report& report) {
  report.params["l"] = l;
  report.params["m"] = m;
  report.params["z"] = z;
  report.params["q"] = q;
  report.params["method"] = method;
  std::optional<VertexWeights> rec, closed;
  if (method != "closed") rec = fused_weights_recurrence(l, m, z, q);
  if (method != "recurrence") closed = fused_weights_closed_form(l, m, z, q);
  const VertexWeights& any = rec ? *rec : *closed;
  double lo = 0.0, hi = 0.0;
  for (const auto& v : any.table) {
    lo = std::min(lo, static_cast<double>(v));
    hi = std::max(hi, static_cast<double>(v));
  }
  report.results["states"] = any.states();
  report.results["min_weight"] = lo;
  report.results["max_weight"] = hi;
  if (rec) {
    report.residual("row_sums_recurrence", rec->max_row_sum_residual(), 1e-9, g);
    report.residual("conservation_recurrence", rec->conservation_violation(), 0.0, g);
  }
  if (closed) {
    report.residual("row_sums_closed", closed->max_row_sum_residual(), 1e-9, g);
    report.residual("conservation_closed", closed->conservation_violation(), 0.0, g);
  }
  if (rec && closed) report.residual("method_difference", max_entry_difference(*rec, *closed), 1e-8, g);

  std::ostringstream s;
  s << "j1,k1,j2,k2";
  if (rec) s << ",recurrence";
  if (closed) s << ",closed";
  s << '\n';
  for (int j1 = 0; j1 <= l; ++j1)
    for (int k1 = 0; k1 <= m; ++k1)
      for (int j2 = 0; j2 <= l; ++j2)
        for (int k2 = 0; k2 <= m; ++k2) {
          s << j1 << ',' << k1 << ',' << j2 << ',' << k2;
          if (rec) s << ',' << format_double(rec->weight(j1, k1, j2, k2));
          if (closed) s << ',' << format_double(closed->weight(j1, k1, j2, k2));
          s << '\n';
        }
  report.csv = s.str();
}

void sample6v(double b1, double b2, int width, int height, const std::string& boundary, bool heights,
              const Global& g, Report& report) {
  report.params["b1"] = b1;
  report.params["b2"] = b2;
  report.params["width"] = width;
  report.params["height"] = height;
  report.params["boundary"] = boundary;
  report.params["seed"] = g.seed;
  const VertexWeights w = six_vertex_weights(b1, b2);
  const LatticeConfig c = sample_lattice(w, width, height, step_boundary(width, height), g.seed);
  int broken = 0;
  for (const Vertex& v : c.vertices)
    if (v.j1 + v.k1 != v.j2 + v.k2) ++broken;
  report.results["top_height"] = c.top_height;
  report.results["arrows_out_top"] = c.top_height.empty() ? 0 : c.top_height.back();
  report.residual("conservation", broken, 0.0, g);
  report.residual("weight_row_sums", w.max_row_sum_residual(), 1e-12, g);
  report.csv = heights ? height_to_csv(c) : lattice_to_csv(c);
}

void twprob(double t, double q, const std::vector<int>& y, const std::vector<int>& x, const TwOptions& opts,
            bool oracle, const Global& g, Report& report) {
  if (y.size() != x.size()) throw UsageError{"--x", "needs as many positions as --y"};
  report.params["t"] = t;
  report.params["q"] = q;
  report.params["y"] = y;
  report.params["x"] = x;
  report.params["radius"] = opts.radius;
  report.params["nquad"] = opts.n_quad;
  const cplx amp = tw_transition_amplitude(y, x, t, q, opts);
  report.results["probability"] = amp.real();
  report.results["imaginary_part"] = amp.imag();
  report.residual("imaginary_part", std::abs(amp.imag()), 1e-8, g);
  if (oracle) {
    const double o = ctmc_oracle_probability(y, x, t, q);
    report.results["oracle_probability"] = o;
    report.residual("oracle_difference", std::abs(amp.real() - o), 1e-5, g);
  }
}

void oscillator(const std::string& kind, int max_degree, int cutoff, const std::string& xs, const Global& g,
                Report& report) {
  if (kind == "hermite") {
    if (max_degree < 0 || max_degree > 12) throw UsageError{"--max-degree", "must lie in [0, 12]"};
    report.params["max_degree"] = max_degree;
    double rodrigues = 0.0;
    for (int n = 0; n <= max_degree; ++n) {
      const std::vector<double> a = hermite_coefficients(n), b = rodrigues_hermite_coefficients(n);
      for (std::size_t i = 0; i < a.size(); ++i)
        rodrigues = std::max(rodrigues, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
    }
    if (!xs.empty()) {
      const std::vector<double> points = parse_grid(xs, "--x");
      report.params["x"] = points;
      json values = json::array();
      for (double x : points) {
        json row = json::array();
        for (int n = 0; n <= max_degree; ++n) row.push_back(hermite(n, x));
        values.push_back(row);
      }
      report.results["values"] = values;
    }
    report.residual("orthogonality", hermite_orthogonality_residual(max_degree), 1e-6, g);
    report.residual("rodrigues", rodrigues, 1e-12, g);
    return;
  }
  if (cutoff < 3) throw UsageError{"--cutoff", "must be at least 3"};
  report.params["cutoff"] = cutoff;
  if (kind == "fock") {
    const TruncatedFock f = truncated_fock(cutoff);
    const RealMatrix c = f.a * f.adag - f.adag * f.a - RealMatrix::Identity(cutoff, cutoff);
    double number = 0.0;
    for (int n = 0; n < cutoff; ++n) number = std::max(number, std::abs(f.number(n, n) - n));
    report.results["edge_defect"] = c(cutoff - 1, cutoff - 1);
    report.residual("commutator", c.topLeftCorner(cutoff - 1, cutoff - 1).cwiseAbs().maxCoeff(), 1e-12, g);
    report.residual("number_spectrum", number, 1e-12, g);
    return;
  }
  if (cutoff > 256) throw UsageError{"--cutoff", "two modes need cutoff <= 256"};
  const Sl2Residuals r = jordan_schwinger_sl2_residuals(cutoff);
  report.results["shell_states"] = shell_indices(2, cutoff, cutoff - 2).size();
  report.residual("h_e", r.h_e, 1e-10, g);
  report.residual("h_f", r.h_f, 1e-10, g);
  report.residual("e_f", r.e_f, 1e-10, g);
}

json envelope(const Report& report, const Global& g, double seconds) {
  json j;
  j["command"] = report.command;
  json params = report.params;
  params["tol"] = report.tolerances;
  j["params"] = params;
  j["results"] = report.results;
  j["residuals"] = report.residuals;
  j["pass"] = report.pass;
  if (g.timing) j["wall_time"] = seconds;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Yang–Baxter toolkit: verifiers, solvers and samplers", "ybt"};
  app.require_subcommand(1);
  Global g;
  double tol = 0.0;
  CLI::Option* tol_opt = app.add_option("--tol", tol, "Tolerance applied to every residual")->check(CLI::NonNegativeNumber);
  CLI::Option* json_flag = app.add_flag("--json", g.json_out, "JSON report (default)");
  CLI::Option* csv_flag = app.add_flag("--csv", g.csv_out, "CSV table for commands that produce one");
  json_flag->excludes(csv_flag);
  app.add_option("--seed", g.seed, "Sampler seed");
  app.add_option("--out", g.out, "Write output to this file instead of standard output");
  app.add_flag("--timing", g.timing, "Add wall_time to the report");

  // verify
  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Yang–Baxter, reflection, Hecke and Markov checks");
  verify->add_option("kind", va.kind)->required()->check(CLI::IsMember({"ybe", "reflection", "hecke", "markov"}));
  verify->add_option("--family", va.family)
      ->check(CLI::IsMember({"permutation", "identity", "r-alpha-beta", "frt", "universal", "asep", "fused"}));
  verify->add_option("--q", va.q)->check(CLI::PositiveNumber);
  CLI::Option* va_alpha = verify->add_option("--alpha", va.alpha);
  CLI::Option* va_beta = verify->add_option("--beta", va.beta);
  verify->add_option("--gamma", va.gamma)->check(CLI::NonNegativeNumber);
  verify->add_option("--delta", va.delta)->check(CLI::NonNegativeNumber);
  verify->add_option("--m", va.m)->check(CLI::Range(0, 6));
  verify->add_option("--l", va.l)->check(CLI::Range(1, 4));
  verify->add_option("--side", va.side)->check(CLI::IsMember({"left", "right"}));
  verify->add_option("--grid", va.grid, "Spectral grid: list a,b,c or range start:stop:step");
  verify->add_option("--grid-w", va.grid_w, "Second grid for reflection checks");
  verify->add_option("--lambda1", va.lambda1);
  verify->add_option("--lambda2", va.lambda2);
  verify->fallthrough();

  int rc_m = 1;
  double rc_q = 0.5;
  CLI::App* repcheck = app.add_subcommand("rep-check", "Relations of the spin-m/2 representation");
  repcheck->add_option("--m", rc_m)->required()->check(CLI::Range(0, 32));
  repcheck->add_option("--q", rc_q)->required()->check(CLI::PositiveNumber);
  repcheck->fallthrough();

  int ur_l = 1, ur_m = 1;
  double ur_q = 0.5;
  CLI::App* univ = app.add_subcommand("universal-r", "Universal R on a pair of representations");
  univ->add_option("--l", ur_l)->required()->check(CLI::Range(0, 8));
  univ->add_option("--m", ur_m)->required()->check(CLI::Range(0, 8));
  univ->add_option("--q", ur_q)->required()->check(CLI::PositiveNumber);
  univ->fallthrough();

  int L = 2;
  double aq = 0.5, aa = 0.0, ab = 0.0, ag = 0.0, ad = 0.0;
  bool open = false;
  std::optional<int> particles;
  std::string asep_kind;
  CLI::App* asep = app.add_subcommand("asep", "ASEP stationary measure by null space");
  asep->add_option("kind", asep_kind)->required()->check(CLI::IsMember({"stationary"}));
  asep->add_option("--L", L)->required()->check(CLI::Range(1, 12));
  asep->add_option("--q", aq)->required()->check(CLI::NonNegativeNumber);
  asep->add_option("--alpha", aa)->check(CLI::NonNegativeNumber);
  asep->add_option("--beta", ab)->check(CLI::NonNegativeNumber);
  asep->add_option("--gamma", ag)->check(CLI::NonNegativeNumber);
  asep->add_option("--delta", ad)->check(CLI::NonNegativeNumber);
  asep->add_flag("--open", open, "Open boundaries");
  asep->add_option("--particles", particles, "Particle number for the closed segment");
  asep->fallthrough();

  int mL = 2, trunc = 16;
  double mq = 0.5, ma = 0.0, mb = 0.0, mg = 0.0, md = 0.0;
  CLI::App* mpa_cmd = app.add_subcommand("mpa", "Matrix product stationary measure of open ASEP");
  mpa_cmd->add_option("--L", mL)->required()->check(CLI::Range(1, 12));
  mpa_cmd->add_option("--q", mq)->required()->check(CLI::Range(0.0, 1.0));
  mpa_cmd->add_option("--alpha", ma)->required()->check(CLI::PositiveNumber);
  mpa_cmd->add_option("--beta", mb)->required()->check(CLI::PositiveNumber);
  mpa_cmd->add_option("--gamma", mg)->required()->check(CLI::NonNegativeNumber);
  mpa_cmd->add_option("--delta", md)->required()->check(CLI::NonNegativeNumber);
  mpa_cmd->add_option("--truncation", trunc, "Starting truncation, doubled until converged")
      ->check(CLI::Range(2, 1024));
  mpa_cmd->fallthrough();

  int fl = 1, fm = 1;
  double fz = 0.1, fq = 0.5;
  std::string method = "both";
  CLI::App* fuse_cmd = app.add_subcommand("fuse", "Fused higher-spin vertex weights");
  fuse_cmd->add_option("--l", fl)->required()->check(CLI::Range(1, 8));
  fuse_cmd->add_option("--m", fm)->required()->check(CLI::Range(1, 8));
  fuse_cmd->add_option("--z", fz)->required();
  fuse_cmd->add_option("--q", fq)->required()->check(CLI::PositiveNumber);
  fuse_cmd->add_option("--method", method)->check(CLI::IsMember({"recurrence", "closed", "both"}));
  fuse_cmd->fallthrough();

  double b1 = 0.5, b2 = 0.5;
  int width = 10, height = 10;
  std::string boundary = "step";
  bool heights = false;
  CLI::App* s6v = app.add_subcommand("sample6v", "Sample the stochastic six-vertex model");
  s6v->add_option("--b1", b1)->required()->check(CLI::Range(0.0, 1.0));
  s6v->add_option("--b2", b2)->required()->check(CLI::Range(0.0, 1.0));
  s6v->add_option("--width", width)->required()->check(CLI::Range(1, 4096));
  s6v->add_option("--height", height)->required()->check(CLI::Range(1, 4096));
  s6v->add_option("--boundary", boundary)->check(CLI::IsMember({"step"}));
  s6v->add_flag("--heights", heights, "CSV of the top height profile instead of the vertices");
  s6v->fallthrough();

  double tt = 0.5, tq = 0.5;
  std::string ty, tx;
  TwOptions topts;
  bool no_oracle = false;
  CLI::App* tw = app.add_subcommand("twprob", "ASEP transition probability by contour integrals");
  tw->add_option("--t", tt)->required()->check(CLI::NonNegativeNumber);
  tw->add_option("--q", tq)->required()->check(CLI::Range(0.0, 1.0));
  tw->add_option("--y", ty, "Initial positions, comma separated")->required();
  tw->add_option("--x", tx, "Final positions, comma separated")->required();
  tw->add_option("--radius", topts.radius)->check(CLI::PositiveNumber);
  tw->add_option("--nquad", topts.n_quad)->check(CLI::Range(4, 1 << 16));
  tw->add_flag("--no-oracle", no_oracle, "Skip the master-equation comparison");
  tw->fallthrough();

  std::string osc_kind, osc_x;
  int max_degree = 6, cutoff = 6;
  CLI::App* osc = app.add_subcommand("oscillator", "Hermite, Fock space and Jordan–Schwinger checks");
  osc->add_option("kind", osc_kind)->required()->check(CLI::IsMember({"hermite", "fock", "js"}));
  osc->add_option("--max-degree", max_degree);
  osc->add_option("--cutoff", cutoff);
  osc->add_option("--x", osc_x, "Evaluation points for hermite");
  osc->fallthrough();

  std::vector<std::string> argv_store = {"ybt"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ybt: usage error: " << e.what() << "\n";
    return 2;
  }
  if (tol_opt->count() > 0) g.tol = tol;
  va.alpha_set = va_alpha->count() > 0;
  va.beta_set = va_beta->count() > 0;

  Report report;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (verify->parsed()) {
      report.command = "verify " + va.kind;
      if (va.family.empty()) {
        va.family = va.kind == "ybe" ? "r-alpha-beta" : va.kind == "hecke" ? "frt" : "asep";
      }
      report.params["family"] = va.family;
      if (va.kind == "ybe") verify_ybe(va, g, report);
      if (va.kind == "reflection") verify_reflection(va, g, report);
      if (va.kind == "hecke") verify_hecke(va, g, report);
      if (va.kind == "markov") verify_markov(va, g, report);
    } else if (repcheck->parsed()) {
      report.command = "rep-check";
      rep_check(rc_m, rc_q, g, report);
    } else if (univ->parsed()) {
      report.command = "universal-r";
      universal(ur_l, ur_m, ur_q, g, report);
    } else if (asep->parsed()) {
      report.command = "asep stationary";
      asep_stationary(asep_params(L, aq, aa, ab, ag, ad), open, particles, g, report);
    } else if (mpa_cmd->parsed()) {
      report.command = "mpa";
      mpa(asep_params(mL, mq, ma, mb, mg, md), trunc, g, report);
    } else if (fuse_cmd->parsed()) {
      report.command = "fuse";
      fuse(fl, fm, fz, fq, method, g, report);
    } else if (s6v->parsed()) {
      report.command = "sample6v";
      sample6v(b1, b2, width, height, boundary, heights, g, report);
    } else if (tw->parsed()) {
      report.command = "twprob";
      twprob(tt, tq, parse_positions(ty, "--y"), parse_positions(tx, "--x"), topts, !no_oracle, g, report);
    } else if (osc->parsed()) {
      report.command = "oscillator " + osc_kind;
      oscillator(osc_kind, max_degree, cutoff, osc_x, g, report);
    }
  } catch (const UsageError& e) {
    err << "ybt: usage error: " << e.flag << ": " << e.message << "\n";
    return 2;
  } catch (const Error& e) {
    err << "ybt: parameter error in " << report.command << ": " << e.what() << "\n";
    return 2;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string text;
  if (g.csv_out) {
    if (!report.csv) {
      err << "ybt: usage error: --csv: " << report.command << " has no table output\n";
      return 2;
    }
    text = *report.csv;
  } else {
    text = envelope(report, g, seconds).dump(2) + "\n";
  }
  if (!g.out.empty()) {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      err << "ybt: usage error: --out: cannot open " << g.out << "\n";
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  return report.pass ? 0 : 1;
}

}  // namespace ybt::cli
