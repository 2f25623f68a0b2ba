#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "scg/model.hpp"
#include "scg/protocol.hpp"

namespace scg {

/// A slot count that may have hit the cap. Censored ⇒ value == slot_cap.
struct CensoredSlots {
  std::uint64_t value = 0;
  bool censored = false;
};

/// First slot (1-based) at which node 0 securely reaches its nearest
/// neighbour. Throws NoNeighbor when node 0 is alone.
CensoredSlots simulate_nnc_time(const NetworkRealization& realization, const SimConfig& config,
                                const RandomStream& stream);

/// First slot at which node 0 securely reaches any receiver within η.
CensoredSlots simulate_one_hop_time(const NetworkRealization& realization, const SimConfig& config,
                                    const RandomStream& stream);

/// Nearest other legitimate node to node 0; ties go to the lowest id.
NodeId nearest_neighbor_of_origin(const NetworkRealization& realization);

enum class SingleHopKind { nnc, one_hop };

/// Windows large enough that edge effects are negligible for node 0.
Window nnc_window(const ModelParams& params);
Window one_hop_window(const ModelParams& params);

/// Independent Palm trials; trial i uses substream i of config.seed. Static
/// eavesdroppers are only sampled in static mode.
std::vector<CensoredSlots> run_single_hop_trials(const ModelParams& params, const SimConfig& config,
                                                 SingleHopKind kind);

/// `trial,mode,value,censored`, mode being the eavesdropper mode.
void write_nnc_csv(std::span<const CensoredSlots> results, EdMode mode,
                   const std::filesystem::path& path);

/// Mean of min(T, slot_cap) over trials, counting censored trials at the cap.
double censored_mean(std::span<const CensoredSlots> results);

}  // namespace scg
