#pragma once

// Grid function phi_k(tau) = ||B_d(tau)^k||, its odd extension, symmetric
// finite differences, and the short-time expansion of ||B_d(tau)^{m+1}||.

#include <vector>

#include "hypokit/cayley.hpp"

namespace hypokit {

struct StencilWeights {
  int order = 0;
  int halfwidth = 0;
  std::vector<int> offsets;     // -halfwidth..halfwidth
  std::vector<double> weights;  // unit spacing
};

/// Exact central weights (computed in rational arithmetic, Fornberg's recursion).
StencilWeights fornberg_weights(int order, int halfwidth);

struct GridFunction {
  double tau = 0.0;
  int k_max = 0;
  std::vector<double> nonnegative;  // phi_0..phi_kmax

  /// phi_k for |k| <= k_max, with phi_{-k} = 2 - phi_k.
  double at(int k) const;
};

GridFunction grid_function(const CayleyPair& pair, int k_max);

/// sum_i w_i phi_{offset_i}, the undivided difference at k = 0.
double apply_stencil(const StencilWeights& w, const GridFunction& g);

/// 1 - ||B_d^power|| from the telescoped Gram factor, accurate down to tiny deficits.
double cayley_power_deficit(const CayleyPair& pair, int power);

struct PeanoEstimate {
  double tau = 0.0;
  int m = 0;
  double estimate = 0.0;            // (phi_{m+1} - 1)/tau^{2m+1}
  double stencil_value = 0.0;       // full order-(2m+1) stencil on the odd-extended grid
  double collapse_residual = 0.0;   // |stencil_value - (phi_{m+1} - 1)|
  std::vector<double> lower_order;  // [Delta^j phi]_0, j = 0..2m
  double lower_order_residual = 0.0;  // max_j |[Delta^j phi]_0 - delta_0j|
};

/// m must equal the continuous index of the pair (IndexMismatch otherwise).
PeanoEstimate peano_estimate(const CayleyPair& pair, int m);

struct OnsetFit {
  int index = 0;
  double c_hat = 0.0;
  double slope = 0.0;         // log-log slope, expected 2m+1
  int points_used = 0;
  double reference_c = 0.0;   // decay_constant of the continuous system
  double relative_error = 0.0;
  std::vector<double> taus;
  std::vector<double> deficits;
};

OnsetFit contraction_onset_expansion(const ContinuousSystem& sys, const std::vector<double>& tau_grid);

struct Lemma53Result {
  int m = 0;
  double min_value = 0.0;
  double closed_form = 0.0;  // 1/binom(2m,m)
  RVector minimizer;
  bool conditioning_warning = false;
};

Lemma53Result lemma53_minimum(int m);

}  // namespace hypokit
