#include "scg/model.hpp"

#include <cmath>

namespace scg {

namespace {

bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::optional<InvalidParam> validate(const ModelParams& params) {
  if (!finite_non_negative(params.lambda_l))
    return InvalidParam("lambda_l", "must be finite and >= 0");
  if (!finite_non_negative(params.lambda_e))
    return InvalidParam("lambda_e", "must be finite and >= 0");
  if (!(params.p >= 0.0 && params.p < 1.0)) return InvalidParam("p", "must lie in [0, 1)");
  if (!(std::isfinite(params.eta) && params.eta > 0.0))
    return InvalidParam("eta", "must be finite and > 0");
  if (!finite_non_negative(params.beta_l))
    return InvalidParam("beta_l", "must be finite and >= 0");
  if (!finite_non_negative(params.beta_e))
    return InvalidParam("beta_e", "must be finite and >= 0");
  return std::nullopt;
}

std::optional<InvalidParam> validate(const Window& w) {
  for (double v : {w.x_min, w.y_min, w.x_max, w.y_max})
    if (!std::isfinite(v)) return InvalidParam("window", "bounds must be finite");
  if (!finite_non_negative(w.guard_margin))
    return InvalidParam("guard_margin", "must be finite and >= 0");
  if (!(w.width() > 2.0 * w.guard_margin))
    return InvalidParam("x_max", "core region is empty along x");
  if (!(w.height() > 2.0 * w.guard_margin))
    return InvalidParam("y_max", "core region is empty along y");
  return std::nullopt;
}

std::optional<InvalidParam> validate(const SimConfig& config) {
  if (config.trials < 1) return InvalidParam("trials", "must be >= 1");
  if (config.slot_cap < 1) return InvalidParam("slot_cap", "must be >= 1");
  if (config.workers < 1) return InvalidParam("workers", "must be >= 1");
  return std::nullopt;
}

void require_valid(const ModelParams& params) {
  if (auto err = validate(params)) throw *err;
}

void require_valid(const Window& window) {
  if (auto err = validate(window)) throw *err;
}

void require_valid(const SimConfig& config) {
  if (auto err = validate(config)) throw *err;
}

std::string_view to_string(EdMode mode) noexcept {
  return mode == EdMode::static_eds ? "static" : "per_slot_iid";
}

std::string_view to_string(PairRoles roles) noexcept {
  return roles == PairRoles::palm ? "palm" : "aloha";
}

EdMode parse_ed_mode(std::string_view text) {
  if (text == "static") return EdMode::static_eds;
  if (text == "per_slot_iid") return EdMode::per_slot_iid;
  throw InvalidParam("ed_mode", "expected 'static' or 'per_slot_iid'");
}

PairRoles parse_pair_roles(std::string_view text) {
  if (text == "palm") return PairRoles::palm;
  if (text == "aloha") return PairRoles::aloha;
  throw InvalidParam("pair_roles", "expected 'palm' or 'aloha'");
}

}  // namespace scg
