#pragma once

// Finite-dimensional U_q(sl2) modules, the coproduct on tensor products and
// the universal R element evaluated on a pair of modules.
//
// Representation matrices act on column vectors: E(k+1, k) is the
// coefficient of v_{k+1} in E v_k.

#include "ybt/operator.hpp"

namespace ybt {

struct RepM {
  int m = 0;
  double q = 0.5;
  Operator E, F, K, Kinv;
  int dim() const { return m + 1; }
};

// E v_k = {m-k} v_{k+1}, F v_k = {k} v_{k-1}, K = diag(q^{2k-m}), with
// symmetric q-integers {n} = (q^n - q^{-n}) / (q - q^{-1}).
RepM rep(int m, double q);

struct RelationReport {
  double k_e = 0.0;       // K E K^{-1} - q^2 E
  double k_f = 0.0;       // K F K^{-1} - q^{-2} F
  double e_f = 0.0;       // EF - FE - (K - K^{-1}) / (q - q^{-1})
  double k_kinv = 0.0;    // K K^{-1} - Id
  double antipode = 0.0;  // S reverses products: S(F)S(E) - S(E)S(F) and K S(E) K^{-1} - q^2 S(E)
  double counit = 0.0;    // Delta followed by the trivial module on either side returns x
  double max() const;
  bool pass(double tol) const { return max() <= tol; }
};

// Residuals of the defining relations for arbitrary matrices.
RelationReport relation_residuals(const Matrix& E, const Matrix& F, const Matrix& K,
                                  const Matrix& Kinv, double q);
RelationReport check_relations(const RepM& r);

enum class Generator { E, F, K, Kinv };

// Delta(e) = K⊗E + E⊗1, Delta(f) = 1⊗F + F⊗K^{-1}, Delta(k) = K⊗K.
Operator coproduct_action(const RepM& rl, const RepM& rm, Generator gen);
// Delta^op = flip ∘ Delta, written on the same space V_l ⊗ V_m.
Operator opposite_coproduct_action(const RepM& rl, const RepM& rm, Generator gen);

// q^{h⊗h/2} sum_i (q - q^{-1})^i q^{i(i-1)/2} / {i}! F^i ⊗ E^i on V_l ⊗ V_m.
// The sum stops at min(l, m) by nilpotency.
Operator universal_r(const RepM& rl, const RepM& rm);

// max over x in {e, f, k} of ||R Delta(x) - Delta^op(x) R||.
double intertwining_residual(const RepM& rl, const RepM& rm, const Operator& r);

}  // namespace ybt
