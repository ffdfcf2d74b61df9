#pragma once

#include <string>
#include <string_view>

#include "mec/control.hpp"
#include "mec/queues.hpp"
#include "mec/rng.hpp"
#include "mec/slot_draw.hpp"
#include "mec/topology.hpp"

namespace mec {

enum class PolicyKind { Ojtora, Random, Greedy };

/// "ojtora" | "random" | "greedy"; throws ConfigError otherwise.
PolicyKind parse_policy(std::string_view name);
std::string_view policy_name(PolicyKind kind);

struct Observation {
  const QueueState& queues;
  const SlotDraw& draw;
  const Topology& topology;
  const SystemParams& params;
};

/**
 * Builds the slot decision. Every policy uses the closed-form frequency and
 * power and the same edge allocation; they differ only in which covering
 * server an offloading client (psi > 0) uses:
 *  - Ojtora: the candidate with the lowest per-client objective,
 *  - Random: uniform over the covering servers, drawn from `rng`,
 *  - Greedy: the nearest covering server.
 */
SlotDecision decide(PolicyKind kind, const Observation& obs, Rng& rng);

}  // namespace mec
