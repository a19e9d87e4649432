#pragma once

// Stationary measure of open ASEP from the matrix product ansatz with a
// truncated q-oscillator representation.
//
// Rates follow asep_generator: particles hop right at 1 and left at q,
// enter at alpha and leave at gamma on site 0, enter at delta and leave at
// beta on site L-1. Site value 1 is a particle and contributes D, 0 a hole
// and contributes E.

#include <vector>

#include "ybt/models.hpp"
#include "ybt/operator.hpp"

namespace ybt {

struct OscillatorRep {
  int M = 0;
  double q = 0.0;
  RealMatrix F, Fdag, D, E;
};

// F|k> = {k}^{1/2}|k-1>, F†|k> = {k+1}^{1/2}|k+1>, {k} = 1 - q^k, D = F + 1,
// E = F† + 1, as column actions on |0>, ..., |M-1>.
OscillatorRep q_oscillator(int M, double q);

// l_0 = 1, l_{-1} = 0 and
// a {k+1}^{1/2} l_{k+1} + (a - c + q - 1) l_k - c {k}^{1/2} l_{k-1} = 0,
// the componentwise form of <W|(aE - cD + q - 1) = 0. With (a, c) =
// (beta, delta) it gives the coefficients of |V>.
std::vector<double> boundary_coefficients(double q, double a, double c, int M);

struct AskeyWilsonParameters {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

// a, b = k±(alpha, gamma) and c, d = k±(beta, delta) with
// k±(u, v) = [(1 - q - u + v) ± sqrt((1 - q - u + v)^2 + 4uv)] / (2u).
AskeyWilsonParameters askey_wilson_parameters(const AsepParams& p);
// l_k grows like max(|a|, |b|)^k and r_k like max(|c|, |d|)^k, so the
// pairing <W|...|V> converges geometrically at the product of the two.
double pairing_ratio(const AsepParams& p);
// pairing_ratio < 1.
bool in_convergent_regime(const AsepParams& p);

struct MpaResult {
  ProbVector measure;  // indexed like asep_generator states
  int truncation = 0;
  std::vector<double> tv_deltas;  // total variation between successive truncations
};

// Doubles the truncation from M (default 16) up to 1024 until successive
// measures differ by less than tv_tol in total variation.
MpaResult mpa_stationary_measure(const AsepParams& p, int M = 16, double tv_tol = 1e-10);

// Unnormalised weights <W| prod (tau ? D : E) |V> at a fixed truncation.
Eigen::VectorXd mpa_weights(const AsepParams& p, int M);

struct MpaRelationReport {
  double algebra = 0.0;   // DE - qED - (1-q)(D+E), interior block
  double bulk = 0.0;      // w^T (X ⊗ X) - X ⊗ Xbar + Xbar ⊗ X, interior block
  double left = 0.0;      // <W|(alpha E - gamma D + q - 1), last slot excluded
  double right = 0.0;     // (delta E - beta D + 1 - q)|V>, last slot excluded
  double adjoint = 0.0;   // F† - F^T
  double oscillator = 0.0;  // F F† - q F† F - (1-q), interior block
};

MpaRelationReport relation_checks(const AsepParams& p, int M);

double total_variation(const ProbVector& a, const ProbVector& b);

}  // namespace ybt
