#pragma once

// R and K families and the verifiers built on them.
//
// Everything is stored in the row convention of operator.hpp. Identities
// that are statements about linear maps (the reflection equation, the
// Markov structure) are evaluated on transposes; braided and spectral
// Yang–Baxter residuals are unchanged by simultaneous transposition.

#include <functional>
#include <string>
#include <vector>

#include "ybt/operator.hpp"

namespace ybt {

// Basis of C^2 ⊗ C^2 in the order e1e1, e1e2, e2e1, e2e2.
// e1e2 -> (1-a) e1e2 + a e2e1 and e2e1 -> b e1e2 + (1-b) e2e1.
Operator r_alpha_beta(double alpha, double beta);

// Swap of the two single-site states.
Operator particle_hole();

// Stochastic two-site R(z) of the open ASEP; R(1) is the swap.
Operator asep_spectral_r(cplx z, double q);

// Constant R of the fundamental U_q(sl2) module with eigenvalues q^{-2}, -1.
Operator frt_r(double q);

enum class Convention { R, RCheck };

struct SpectralRFamily {
  std::function<Operator(cplx)> evaluator;
  double q = 0.5;
  int site_dim = 2;
  Convention convention = Convention::R;
  std::string name;
};

SpectralRFamily asep_family(double q);

struct BraidedYbeResidual {
  double braided = 0.0;    // R12 R23 R12 - R23 R12 R23
  double unbraided = 0.0;  // R12 R13 R23 - R23 R13 R12
};

BraidedYbeResidual verify_braided_ybe(const Operator& r);

// R12(z) R13(zw) R23(w) - R23(w) R13(zw) R12(z), after converting a checked
// family to R by composing with the swap.
double verify_spectral_ybe(const SpectralRFamily& fam, cplx z, cplx w);

// ||(R - lam1)(R - lam2)||.
double verify_hecke_quadratic(const Operator& r, cplx lam1, cplx lam2);

enum class Side { Left, Right };

// Left: injection rate a, ejection rate c at the first site.
// Right: injection rate a (delta), ejection rate c (beta) at the last site.
// K(1) = Id, rows sum to 1, K'(1) = 2 rho B (left) or -2 rho Bbar (right)
// with rho = 1/(q-1).
Operator reflection_k(cplx x, double q, double a, double c, Side side);

struct ReflectionFamily {
  std::function<Operator(cplx)> evaluator;
  double q = 0.5;
  double a = 0.0;
  double c = 0.0;
  Side side = Side::Left;
};

ReflectionFamily reflection_family(double q, double a, double c, Side side);

// R12(z/w) K1(z) R21(zw) K2(w) - K2(w) R12(zw) K1(z) R21(z/w) for the maps
// R = R_row^T, K = K_row^T, R21 = P R P.
double verify_reflection_equation(const SpectralRFamily& rfam, const ReflectionFamily& kfam, cplx z,
                                  cplx w);

// Central difference with one Richardson step.
Operator central_difference(const std::function<Operator(cplx)>& f, cplx x0, double h = 1e-5);

struct MarkovReport {
  double regularity = 0.0;         // ||R(1) - P||
  double rho = 0.0;                // least-squares fit of P R'(1)^T = rho w^T
  double derivative_residual = 0.0;
  double row_sum_residual = 0.0;   // max |row sum - 1| on the z grid
  double fixed_point_residual = 0.0;  // max ||R(z/w)^T v(z)⊗v(w) - v(z)⊗v(w)||
};

// w_local is a row-convention two-site generator. v(z) = (a z, b). Grid
// points where the family has a pole are skipped.
MarkovReport markov_structure_report(const SpectralRFamily& fam, const Operator& w_local, double tol,
                                     const std::vector<double>& z_grid = {0.35, 0.6, 0.85, 1.3, 1.75},
                                     double a = 1.0, double b = 1.0);

}  // namespace ybt
