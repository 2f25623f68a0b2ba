#include "scg/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "scg/errors.hpp"

namespace scg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(const BoundInputs& in) {
  if (!(in.d > 0.0) || !std::isfinite(in.d)) throw InvalidParam("d", "must be finite and > 0");
  if (!(in.eps > 0.0 && in.eps < 1.0)) throw InvalidParam("eps", "must lie in (0,1)");
  if (!(in.delta >= 0.0)) throw InvalidParam("delta", "must be >= 0");
  if (!(in.delta < std::log(1.0 / (1.0 - in.eps))))
    throw DeltaOutOfRange("delta must be below log(1/(1-eps)) = " +
                          std::to_string(std::log(1.0 / (1.0 - in.eps))));
}

long long tile_count(const ModelParams& params, double d) {
  return std::max(1LL, static_cast<long long>(std::ceil(d * kSqrt3 / params.eta)));
}

// log(1/(1 - exp(-t))), written to stay accurate for small and large t.
double log_inv_one_minus_exp(double t) { return -std::log(-std::expm1(-t)); }

// λ_e π β_e² + λ_l p/(1-p) π γ(β_l)
double delay_rate(const ModelParams& params) {
  return params.lambda_e * kPi * params.beta_e * params.beta_e +
         params.lambda_l * params.p / (1.0 - params.p) * kPi * gamma_fn(params.beta_l);
}

}  // namespace

double gamma_fn(double x) {
  if (!(x >= 0.0)) throw NegativeArgument("gamma_fn requires x >= 0");
  if (x >= 2.0) return x * x - 1.0;
  const double lens = x * x * std::acos(x / 2.0) + std::acos(1.0 - x * x / 2.0) -
                      (x / 2.0) * std::sqrt(4.0 - x * x);
  return x * x - lens / kPi;
}

double avg_out_degree(const ModelParams& params) {
  require_valid(params);
  const double k = params.blocking_rate();
  const double area = kPi * params.eta * params.eta;
  if (k == 0.0) return params.lambda_l * (1.0 - params.p) * area;
  return params.lambda_l * (1.0 - params.p) * (-std::expm1(-k * area)) / k;
}

double avg_in_degree(const ModelParams& params) {
  require_valid(params);
  const double k = params.blocking_rate();
  const double area = kPi * params.eta * params.eta;
  if (k == 0.0) return params.lambda_l * params.p * area;
  return params.lambda_l * params.p * (-std::expm1(-k * area)) / k;
}

DegreeLimits degree_limits(const ModelParams& params) {
  require_valid(params);
  const double k = params.blocking_rate();
  const double ke = params.lambda_e * params.beta_e * params.beta_e;
  if (!(k > 0.0))
    throw DegenerateDenominator("interference-limited degree needs lambda_l p beta_l^2 + lambda_e beta_e^2 > 0");
  if (!(ke > 0.0))
    throw DegenerateDenominator("noise-limited degree needs lambda_e beta_e^2 > 0");
  DegreeLimits out;
  out.interference_limited = params.lambda_l * (1.0 - params.p) / k;
  out.noise_limited =
      params.lambda_l * (1.0 - params.p) * (-std::expm1(-ke * kPi * params.eta * params.eta)) / ke;
  return out;
}

double mean_nnc_time(const ModelParams& params) {
  require_valid(params);
  const double denom = params.lambda_l - params.lambda_e * params.beta_e * params.beta_e -
                       params.p / (1.0 - params.p) * params.lambda_l * gamma_fn(params.beta_l);
  if (!(denom > 0.0)) return kInf;
  return params.lambda_l / denom;
}

double critical_ratio(double p, double beta_l, double beta_e) {
  const double free_share = 1.0 - p / (1.0 - p) * gamma_fn(beta_l);
  if (!(free_share > 0.0)) return kInf;
  return beta_e * beta_e / free_share;
}

NspBound percolation_bound_nsp(const ModelParams& params, const BoundInputs& inputs) {
  require_valid(params);
  check_inputs(inputs);
  NspBound out;
  out.n_s = tile_count(params, inputs.d);
  out.c = std::log(1.0 / (1.0 - inputs.eps)) - inputs.delta;
  const double ns = static_cast<double>(out.n_s);
  const double be = params.beta_e;
  out.multiplier = (ns + 2.0 * kSqrt3 * be) * (1.0 + 2.0 * kSqrt3 * be) *
                   log_inv_one_minus_exp(inputs.delta / ns) / out.c;
  return out;
}

SpBound percolation_bound_sp(const ModelParams& params, const BoundInputs& inputs) {
  const NspBound nsp = percolation_bound_nsp(params, inputs);
  SpBound out;
  out.n_s = nsp.n_s;
  out.c = nsp.c;
  out.rho_nsp = nsp.multiplier;
  const double be = params.beta_e;
  const double ns = static_cast<double>(nsp.n_s);
  out.rho_sp = 4.0 * (1.0 + 2.0 * kSqrt3 * be) * (4.0 + kSqrt3 * be) / nsp.c *
               log_inv_one_minus_exp(inputs.delta / (2.0 * (ns + 4.0)));
  out.threshold = std::min(out.rho_sp, out.rho_nsp);
  return out;
}

double min_delta_cross() { return std::pow(8.0 / 9.0, 0.25); }

double hop_bound(const ModelParams& params, const BoundInputs& inputs) {
  require_valid(params);
  const double dc = inputs.delta_cross;
  if (!(dc > min_delta_cross()))
    throw SubcriticalDelta("delta_cross must exceed (8/9)^(1/4)");
  if (!(inputs.d_cross > 0.0)) throw InvalidParam("d_cross", "must be > 0");
  const double d4 = dc * dc * dc * dc;
  return 12.0 * inputs.d_cross * inputs.d_cross / (kPi * params.eta * params.eta) * 9.0 * d4 /
             (9.0 * d4 - 8.0) +
         (1.0 + d4) / d4;
}

double delay_upper_bound(const ModelParams& params, const BoundInputs& inputs, Scheme scheme) {
  const double hops = hop_bound(params, inputs);
  const double c = scheme == Scheme::nsp ? 1.0 / 3.0 : 1.0;
  return std::exp(c * params.eta * params.eta * delay_rate(params)) * hops;
}

double delay_lower_bound_opt(const ModelParams& params, double d) {
  require_valid(params);
  if (!(d > 0.0)) throw InvalidParam("d", "must be > 0");
  const double rate = params.lambda_l * params.p / (1.0 - params.p) * kPi * gamma_fn(params.beta_l);
  return std::max(0.0, (d / params.eta - 1.0) * std::exp(params.eta * params.eta * rate));
}

}  // namespace scg
