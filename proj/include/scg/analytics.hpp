#pragma once

#include "scg/model.hpp"

namespace scg {

/// Existential constants that parameterize the percolation and delay bounds.
struct BoundInputs {
  double d = 1.0;            ///< witness distance (d₁ or d₂)
  double eps = 0.75;         ///< ε in (0,1)
  double delta = 0.5;        ///< δ ≥ 0
  double delta_cross = 1.0;  ///< crossing probability δ_nsp or δ_sp
  double d_cross = 1.0;      ///< crossing box scale
};

/// π γ(x) r² is the area of B(z, x r) outside B(0, r) when ‖z‖ = r.
double gamma_fn(double x);

double avg_out_degree(const ModelParams& params);
double avg_in_degree(const ModelParams& params);

struct DegreeLimits {
  double interference_limited = 0.0;
  double noise_limited = 0.0;
};

/// Throws DegenerateDenominator when either limit's denominator vanishes.
DegreeLimits degree_limits(const ModelParams& params);

/// +inf when the criticality denominator is not positive.
double mean_nnc_time(const ModelParams& params);

/// Critical λ_l/λ_e ratio at which mean_nnc_time becomes finite, for
/// fixed p, β_l, β_e. +inf when no ratio works.
double critical_ratio(double p, double beta_l, double beta_e);

struct NspBound {
  double multiplier = 0.0;  ///< condition is λ_l > multiplier · λ_e
  long long n_s = 1;
  double c = 0.0;
};

NspBound percolation_bound_nsp(const ModelParams& params, const BoundInputs& inputs);

struct SpBound {
  double rho_sp = 0.0;
  double rho_nsp = 0.0;
  double threshold = 0.0;
  long long n_s = 1;
  double c = 0.0;
};

SpBound percolation_bound_sp(const ModelParams& params, const BoundInputs& inputs);

/// Smallest admissible δ_cross for the hop and delay bounds, (8/9)^{1/4}.
double min_delta_cross();

double hop_bound(const ModelParams& params, const BoundInputs& inputs);

enum class Scheme { nsp, sp };

double delay_upper_bound(const ModelParams& params, const BoundInputs& inputs, Scheme scheme);

/// Clamped at 0 for d < η.
double delay_lower_bound_opt(const ModelParams& params, double d);

}  // namespace scg
