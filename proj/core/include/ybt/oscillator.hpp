#pragma once

// Hermite polynomials, ladder operators on a truncated Fock space and the
// Jordan–Schwinger map.

#include <vector>

#include "ybt/operator.hpp"

namespace ybt {

// Physicists' Hermite polynomial by H_{n+1} = 2x H_n - 2n H_{n-1}.
double hermite(int n, double x);
// Monomial coefficients c_0..c_n of H_n from the same recurrence.
std::vector<double> hermite_coefficients(int n);
// Coefficients of (-1)^n e^{z^2} d^n/dz^n e^{-z^2}, differentiating
// p(z) e^{-z^2} -> (p' - 2 z p) e^{-z^2} n times.
std::vector<double> rodrigues_hermite_coefficients(int n);
double evaluate_polynomial(const std::vector<double>& coeffs, double x);

// Integral of H_m H_n e^{-x^2} over [-10, 10], 200-point Gauss–Legendre.
double hermite_inner_product(int m, int n);
// max over m, n <= max_degree of |<H_m, H_n> - sqrt(pi) 2^n n! delta_mn|.
double hermite_orthogonality_residual(int max_degree);

struct TruncatedFock {
  int cutoff = 0;
  RealMatrix a, adag, number;
};

// a|n> = sqrt(n)|n-1>, a†|n> = sqrt(n+1)|n+1> for n < cutoff - 1.
TruncatedFock truncated_fock(int cutoff);

// sum_ij a_i† M_ij a_j on n = M.rows() modes, each truncated at cutoff.
// Mode 0 is the slowest index.
Operator jordan_schwinger(const Matrix& m, int cutoff);

// Basis indices with total occupation <= max_total.
std::vector<long> shell_indices(int modes, int cutoff, int max_total);
// Largest entry of op on rows and columns in the shell.
double shell_restricted_norm(const Operator& op, const std::vector<long>& shell);

struct Sl2Residuals {
  double h_e = 0.0;  // [h, e] - 2e
  double h_f = 0.0;  // [h, f] + 2f
  double e_f = 0.0;  // [e, f] - h
  double max() const;
};

// Images of E12, E21 and E11 - E22 on two modes, checked below the top two levels.
Sl2Residuals jordan_schwinger_sl2_residuals(int cutoff);

}  // namespace ybt
