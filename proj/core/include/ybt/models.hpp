#pragma once

// ASEP and XXZ operators, the gauge relating them, and the contour-integral
// transition probability of ASEP on Z with its master-equation oracle.
//
// Two rate normalisations appear. asep_local_generator uses index 0 =
// particle with rates (1, q^2); asep_bulk_w and asep_generator use index 0 =
// empty, a particle hopping right at rate 1 and left at rate q. They are
// related by T⊗T L(q) T⊗T = w(q^2) with T the particle–hole swap.

#include <vector>

#include "ybt/operator.hpp"

namespace ybt {

struct AsepParams {
  double q = 0.5;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  int L = 2;
};

struct XxzParams {
  double Jx = 1.0;
  double Jy = 1.0;
  double Jz = 1.0;
  double h_field = 0.0;
  int N = 2;
  bool periodic = false;
};

// Middle block [[-1, 1], [q^2, -q^2]], index 0 = particle.
Operator asep_local_generator(double q);
// [[0,0,0,0], [0,-q,q,0], [0,1,-1,0], [0,0,0,0]], index 0 = empty.
Operator asep_bulk_w(double q);
// Conjugation by the particle–hole swap on every site.
Operator particle_hole_relabel(const Operator& op);

// Left boundary: empty -> particle at alpha, particle -> empty at gamma.
Operator asep_left_boundary(double alpha, double gamma);
// Right boundary: empty -> particle at delta, particle -> empty at beta.
Operator asep_right_boundary(double beta, double delta);

// Sum of bulk terms on bonds (i, i+1); with open_boundary also the left
// boundary on site 0 and the right boundary on site L-1.
Operator asep_generator(const AsepParams& p, bool open_boundary);

Operator pauli(int a);
// Jx s1s1 + Jy s2s2 + Jz s3s3 + h (s3 ⊗ 1 + 1 ⊗ s3): corners Jz ± 2h, Jx - Jy.
Operator xxz_local_block(const XxzParams& p);
// -1/2 sum_j (Jx s1_j s1_{j+1} + Jy s2_j s2_{j+1} + Jz s3_j s3_{j+1} - h s3_j),
// bonds wrapping around when periodic.
Operator xxz_hamiltonian(const XxzParams& p);

// ||[H, sum_j sigma^a_j]||.
double symmetry_commutator(const Operator& h, int a);

// G^{-1} H G.
Operator gauge_conjugate(const Operator& h, const Operator& g);
// Identity except (1,2) = gamma - 1 and (2,2) = gamma.
Operator xxz_gauge_matrix(double gamma);

struct GaugeFit {
  double Jx = 0.0;
  double gamma = 0.0;
  double scale = 0.0;  // G^{-1}(B - Id)G = scale · L(q)
  double residual = 0.0;
};

// Searches (Jx, gamma) with Jy = Jx, Jz = 1, h = 0 so that the conjugated
// XXZ block minus the identity is a multiple of asep_local_generator(q).
GaugeFit gauge_search(double q);

// G^{-1} H G - c Id with G = diag(g) and H g = c g. Checks that the result
// is a generator.
Operator ground_state_transform(const Operator& h, const Eigen::VectorXcd& g, double tol);

// Right jumps at rate 1, left jumps at rate q; positions strictly increasing.
struct TwOptions {
  double radius = 0.5;
  int n_quad = 256;
  int max_n_quad = 0;  // 0 picks a cap from the particle number
};

cplx tw_transition_amplitude(const std::vector<int>& y, const std::vector<int>& x, double t, double q,
                             const TwOptions& opts = {});
double tw_transition_probability(const std::vector<int>& y, const std::vector<int>& x, double t, double q,
                                 const TwOptions& opts = {});

// exp(tG)(y, x) for the same process restricted to a window of sites
// [min - window, max + window], widened until stable to 1e-9.
double ctmc_oracle_probability(const std::vector<int>& y, const std::vector<int>& x, double t, double q,
                               int window = 10);

}  // namespace ybt
