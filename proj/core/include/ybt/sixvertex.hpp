#pragma once

// Stochastic vertex weights: the six-vertex model, its sampler, and the
// fused higher-spin weights built two ways (line-by-line recurrence and the
// q-Racah closed form).
//
// A vertex has horizontal occupation j (capacity l) entering from the left
// and leaving to the right, and vertical occupation k (capacity m) entering
// from below and leaving at the top. Weights are stored in quad precision:
// away from the positive regime the fused weights grow like 1e10 while rows
// still sum to 1, which double arithmetic cannot resolve.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "ybt/operator.hpp"
#include "ybt/ybe.hpp"

namespace ybt {

using WeightReal = boost::multiprecision::cpp_bin_float_quad;

struct VertexWeights {
  int l = 1;
  int m = 1;
  double z = 0.0;
  double q = 0.0;
  std::vector<WeightReal> table;

  VertexWeights() = default;
  VertexWeights(int l, int m, double z, double q);

  int states() const { return (l + 1) * (m + 1); }
  std::size_t index(int j1, int k1, int j2, int k2) const;
  WeightReal& at(int j1, int k1, int j2, int k2) { return table[index(j1, k1, j2, k2)]; }
  const WeightReal& at(int j1, int k1, int j2, int k2) const { return table[index(j1, k1, j2, k2)]; }
  double weight(int j1, int k1, int j2, int k2) const { return static_cast<double>(at(j1, k1, j2, k2)); }

  // max |sum_{j2,k2} W(j1,k1 -> j2,k2) - 1|, summed in quad precision.
  double max_row_sum_residual() const;
  // Largest |W| over entries with j1 + k1 != j2 + k2.
  double conservation_violation() const;
  // Matrix on V_l ⊗ V_m with state (j, k) at j (m + 1) + k, rows = inputs.
  Operator to_operator() const;
};

// Largest entrywise difference, evaluated in quad precision.
double max_entry_difference(const VertexWeights& a, const VertexWeights& b);

// (0,1 -> 0,1) = b1, (0,1 -> 1,0) = 1 - b1, (1,0 -> 1,0) = b2,
// (1,0 -> 0,1) = 1 - b2, empty and doubly occupied vertices pass through.
VertexWeights six_vertex_weights(double b1, double b2);

// l = 1 weights with vertical capacity m, d = q^{m+1} - z:
// (0,g -> 0,g) = (q^{m+1} - q^{2g} z)/d, (0,g -> 1,g-1) = z (q^{2g} - 1)/d,
// (1,g -> 1,g) = (q^{2g-m+1} - z)/d, (1,g -> 0,g+1) = (q^{m+1} - q^{2g-m+1})/d.
VertexWeights higher_spin_base_weights(int m, double z, double q);

// Fusion of l single lines at spectral parameters z, z q^2, ..., z q^{2(l-1)}.
// Each step splits the incoming j1 arrows as (j1 - a) into the lower l-1
// lines and a into the top line, with probabilities
// P(0) = C(l-1, j1)_Q / C(l, j1)_Q and P(1) = Q^{l-j1} C(l-1, j1-1)_Q / C(l, j1)_Q,
// Q = q^2.
VertexWeights fused_weights_recurrence(int l, int m, double z, double q);

// The same weights from the product formula with a terminating balanced
// 4phi3 factor.
VertexWeights fused_weights_closed_form(int l, int m, double z, double q);

enum class FusionMethod { Recurrence, ClosedForm };

// z -> S^{l,l}(z q^{1-l}), a regular spectral family in the R convention.
SpectralRFamily fused_family(int l, double q, FusionMethod method = FusionMethod::Recurrence);

struct LatticeBoundary {
  std::vector<int> left;    // arrows entering row y from the left
  std::vector<int> bottom;  // arrows entering column x from below
  std::string kind = "custom";
};

// One arrow enters every row from the left, none from below.
LatticeBoundary step_boundary(int width, int height);

struct Vertex {
  int j1 = 0, k1 = 0, j2 = 0, k2 = 0;
};

struct LatticeConfig {
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  LatticeBoundary boundary;
  std::vector<Vertex> vertices;  // vertex (x, y) at y * width + x, y = 0 at the bottom
  std::vector<int> top_height;   // arrows leaving the top edge at columns <= x
  const Vertex& at(int x, int y) const { return vertices[static_cast<std::size_t>(y) * width + x]; }
};

// Uniform double in [0, 1) from a counter-based generator keyed on (seed, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

// Raster order, bottom row first and left to right; each vertex draws its
// outputs from the weight row of its inputs.
LatticeConfig sample_lattice(const VertexWeights& w, int width, int height, const LatticeBoundary& boundary,
                             std::uint64_t seed);

// First line "# {json header}", then "x,y,j1,k1,j2,k2" rows.
std::string lattice_to_csv(const LatticeConfig& config);
std::string height_to_csv(const LatticeConfig& config);

// S = P_ml G_ml^{-1} P_lm R G_lm with P_lm the swap V_l ⊗ V_m -> V_m ⊗ V_l.
// Matrices are used as given; gauges are diagonal.
Operator gauge_transform(const Operator& r, int dim_l, int dim_m, const Eigen::VectorXcd& g_lm,
                         const Eigen::VectorXcd& g_ml);

struct DiagonalGaugeFit {
  Eigen::VectorXcd g_lm;
  Eigen::VectorXcd g_ml;
  cplx scale = 0.0;
  double residual = 0.0;  // ||gauge_transform(r) - scale · target||
};

// Log-linear least squares for diagonal gauges taking r to a multiple of target.
DiagonalGaugeFit fit_diagonal_gauge(const Operator& r, const Operator& target, int dim_l, int dim_m);

}  // namespace ybt
