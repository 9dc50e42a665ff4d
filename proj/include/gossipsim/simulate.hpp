#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gossipsim/graph.hpp"
#include "gossipsim/protocols.hpp"
#include "gossipsim/random.hpp"
#include "gossipsim/spanner.hpp"

namespace gossipsim {

using LocalMessage = std::vector<std::int64_t>;
using LocalOutput = std::vector<std::int64_t>;

struct InboxEntry {
  NodeId from;
  LocalMessage message;
};

struct LocalNodeState {
  virtual ~LocalNodeState() = default;
};

/// A synchronous LOCAL-model algorithm. In each round every node emits one
/// broadcast (possibly none), all broadcasts reach all neighbors within the
/// round, and states absorb their inbox. halted() means the node's output is
/// ready; the run stops once every node reports ready, and ready nodes keep
/// participating until then. All randomness comes from the init-time tape,
/// so a run is fully determined by the tape seed.
class LocalAlgorithm {
 public:
  virtual ~LocalAlgorithm() = default;

  virtual std::unique_ptr<LocalNodeState> init(NodeId node, std::span<const NodeId> neighbors,
                                               RandomTape& tape) const = 0;
  virtual std::optional<LocalMessage> broadcast(const LocalNodeState& state) const = 0;
  virtual void receive(LocalNodeState& state, std::span<const InboxEntry> inbox) const = 0;
  virtual bool halted(const LocalNodeState& state) const = 0;
  virtual LocalOutput output(const LocalNodeState& state) const = 0;
};

enum class SimulatorKind {
  kLocalReference,
  kSuperstep,
  kRoundRobin,
  kDirectExchange,
  kSpannerComposed,
};

std::string simulator_name(SimulatorKind kind);

struct SimulationOutcome {
  SimulatorKind kind = SimulatorKind::kLocalReference;
  std::vector<LocalOutput> outputs;
  std::size_t local_rounds = 0;   // rounds of the simulated LOCAL execution
  std::size_t gossip_rounds = 0;  // 0 for the reference executor
  std::optional<bool> matches_reference;
};

constexpr std::size_t kDefaultLocalRoundCap = 100000;

/// Reference synchronous LOCAL execution.
SimulationOutcome run_local(const Graph& g, const LocalAlgorithm& alg, std::uint64_t tape_seed,
                            std::size_t round_cap = kDefaultLocalRoundCap);

/// One Superstep invocation per LOCAL round carries that round's broadcasts
/// to all neighbors.
SimulationOutcome simulate_superstep(const Graph& g, const LocalAlgorithm& alg,
                                     std::uint64_t tape_seed, const RandomSource& rng,
                                     const SuperstepOptions& opts = {},
                                     std::size_t round_cap = kDefaultLocalRoundCap);

/// Deterministic transport: node u contacts its k-th neighbor in gossip
/// round k, budgeting max-degree rounds per LOCAL round regardless of early
/// completion.
SimulationOutcome simulate_round_robin(const Graph& g, const LocalAlgorithm& alg,
                                       std::uint64_t tape_seed,
                                       std::size_t round_cap = kDefaultLocalRoundCap);

/// Discovers a DirectExchange schedule once, then replays it per LOCAL round.
/// Discovery is skipped entirely for 0-round algorithms.
SimulationOutcome simulate_direct_exchange(const Graph& g, const LocalAlgorithm& alg,
                                           std::uint64_t tape_seed, double epsilon,
                                           std::size_t round_cap = kDefaultLocalRoundCap);

/// Communicates only over a certified (alpha, 0)-stretch spanner: each LOCAL
/// round on g becomes alpha flooding rounds on the spanner, themselves run
/// through the `inner` simulator (the spanner's hereditary density is what
/// makes direct-exchange transport cheap there). The stretch certificate is
/// re-verified; a spanner that cannot reach some neighbor pair is rejected.
SimulationOutcome simulate_via_spanner(const Graph& g, const LocalAlgorithm& alg,
                                       std::uint64_t tape_seed, const SpannerResult& s,
                                       SimulatorKind inner = SimulatorKind::kDirectExchange,
                                       double epsilon = 0.5,
                                       const RandomSource& rng = RandomSource(0),
                                       std::size_t round_cap = kDefaultLocalRoundCap);

/// Runs the reference executor and stores the comparison on `outcome`.
bool check_equivalence(const Graph& g, const LocalAlgorithm& alg, std::uint64_t tape_seed,
                       SimulationOutcome& outcome);

// ---- shipped algorithms -------------------------------------------------

/// All-to-all rumor flooding; halts once n distinct origins are known.
/// Output: sorted list of known origins.
std::unique_ptr<LocalAlgorithm> make_flooding(std::size_t n);

/// Hop-distance labeling from a source; a node halts once labeled.
/// Output: {distance}.
std::unique_ptr<LocalAlgorithm> make_bfs_labeling(NodeId source);

/// Single-round neighbor-ID collection. Output: sorted neighbor ids.
std::unique_ptr<LocalAlgorithm> make_neighbor_collect();

/// Factory by name: "flooding", "bfs", "collect".
std::unique_ptr<LocalAlgorithm> make_local_algorithm(const std::string& name, const Graph& g,
                                                     NodeId source = 0);

/// Transformation behind additive-stretch composition: every node floods its
/// initial knowledge (neighbor list and tape seed) for `horizon` rounds and
/// then simulates the wrapped algorithm locally on the gathered ball to
/// compute its own output. Exact for algorithms that halt within `horizon`
/// reference rounds. State grows with the ball, so keep horizons small.
std::unique_ptr<LocalAlgorithm> gatherize(std::shared_ptr<const LocalAlgorithm> inner,
                                          std::size_t horizon);

}  // namespace gossipsim
