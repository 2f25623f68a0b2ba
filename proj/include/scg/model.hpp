#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "scg/errors.hpp"

namespace scg {

/// Protocol parameters of the secure connectivity graph.
///
/// Densities are per unit area, `eta` is the link range, and the two beta
/// factors scale the interference disk around a receiver and the eavesdropper
/// disk around a transmitter by the link length.
struct ModelParams {
  double lambda_l = 1.0;
  double lambda_e = 0.0;
  double p = 0.5;
  double eta = 1.0;
  double beta_l = 0.0;
  double beta_e = 0.0;

  /// λ_l p β_l² + λ_e β_e², the exponent rate shared by the degree formulas.
  double blocking_rate() const noexcept {
    return lambda_l * p * beta_l * beta_l + lambda_e * beta_e * beta_e;
  }
};

/// Axis-aligned simulation rectangle with an optional guard band.
struct Window {
  double x_min = -1.0;
  double y_min = -1.0;
  double x_max = 1.0;
  double y_max = 1.0;
  double guard_margin = 0.0;

  double width() const noexcept { return x_max - x_min; }
  double height() const noexcept { return y_max - y_min; }
  double area() const noexcept { return width() * height(); }

  bool contains(double x, double y) const noexcept {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }

  /// Rectangle shrunk by the guard margin on every side.
  Window core() const noexcept {
    return {x_min + guard_margin, y_min + guard_margin, x_max - guard_margin,
            y_max - guard_margin, 0.0};
  }

  bool in_core(double x, double y) const noexcept { return core().contains(x, y); }

  /// Square of half-width `half` centered on the origin.
  static Window centered(double half, double guard = 0.0) {
    return {-half, -half, half, half, guard};
  }
};

/// How eavesdroppers behave across slots in the single-hop dynamics.
enum class EdMode { static_eds, per_slot_iid };

/// How the origin and its target draw their roles in the single-hop dynamics.
/// `palm` holds origin→transmit and target→receive every slot, `aloha` samples
/// them like every other node.
enum class PairRoles { palm, aloha };

struct SimConfig {
  std::uint64_t seed = 1;
  std::uint64_t trials = 1000;
  std::uint64_t slot_cap = 10000;
  EdMode ed_mode = EdMode::static_eds;
  PairRoles pair_roles = PairRoles::palm;
  unsigned workers = 1;
};

/// Returns the first violated invariant, or nothing when `params` is valid.
std::optional<InvalidParam> validate(const ModelParams& params);
std::optional<InvalidParam> validate(const Window& window);
std::optional<InvalidParam> validate(const SimConfig& config);

/// Throwing forms used at every module boundary.
void require_valid(const ModelParams& params);
void require_valid(const Window& window);
void require_valid(const SimConfig& config);

std::string_view to_string(EdMode mode) noexcept;
std::string_view to_string(PairRoles roles) noexcept;
EdMode parse_ed_mode(std::string_view text);
PairRoles parse_pair_roles(std::string_view text);

}  // namespace scg
