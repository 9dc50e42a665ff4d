#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gossipsim/engine.hpp"
#include "gossipsim/graph.hpp"

namespace gossipsim {

/// Rounds per UniformGossip phase: ceil(c_tau * log2(2m)^2). The proof behind
/// Superstep needs enough rounds to mix inside every cluster of the
/// conductance decomposition; the constant is configurable because only the
/// growth order is fixed.
std::size_t default_tau(const Graph& g, double c_tau = 2.0);

/// Iteration cap before a Superstep run is declared failed. Frontier volume
/// halves per iteration with high probability, so anything past
/// 4*ceil(log2(2m+2)) + 8 signals the excluded low-probability event.
std::size_t superstep_iteration_cap(const Graph& g);

struct SuperstepOptions {
  std::size_t tau = 0;         // 0: default_tau(g, c_tau)
  double c_tau = 2.0;
  std::size_t max_iterations = 0;  // 0: superstep_iteration_cap(g)
  bool record_traces = false;
  bool record_exchanged = false;
  bool throw_on_cap = true;    // false: report completed=false instead
};

struct SuperstepIterationStats {
  std::size_t frontier_size = 0;  // directed edges at iteration start
  std::size_t pruned_size = 0;    // directed edges pruned
  bool frontier_symmetric = false;
  bool pruned_exchanged = false;   // payloads had crossed every pruned edge
  bool reversal_transpose = false; // X_uw == Y_wu over all neighbor pairs
};

struct SuperstepReport {
  std::size_t iterations = 0;
  std::size_t tau = 0;
  std::size_t total_rounds = 0;  // 2 * tau * iterations
  bool completed = false;
  std::vector<SuperstepIterationStats> per_iteration;
  std::vector<std::pair<NodeId, NodeId>> exchanged;  // unordered pairs, when recorded
  TransferStats transfer;
  std::vector<ProcessTrace> traces;  // one per iteration, when recorded

  /// Claims (a) and (c) plus the reversal transpose, over all iterations.
  bool invariants_ok() const;
};

/// One NeighborExchange via repeated UniformGossip + reversal: every pair of
/// neighbors in g exchanges the payloads recorded in `state`. Auxiliary
/// markers decide pruning; they are scoped to (instance, iteration, phase)
/// and discarded, only payload knowledge persists in `state`.
/// `payload_slots[v]` is the knowledge slot of v's payload, or -1 when v has
/// none this invocation.
SuperstepReport superstep_on(const Graph& g, KnowledgeState& state,
                             std::span<const std::int64_t> payload_slots,
                             const RandomSource& rng, const SuperstepOptions& opts = {});

/// Fresh everyone-knows-own-payload run.
SuperstepReport superstep(const Graph& g, const RandomSource& rng,
                          const SuperstepOptions& opts = {});

struct RumorInvocation {
  std::size_t iterations = 0;
  std::size_t rounds = 0;
};

struct RumorReport {
  std::size_t invocations = 0;
  std::size_t total_rounds = 0;
  bool completed = false;
  std::size_t diameter = 0;
  std::vector<RumorInvocation> per_invocation;
};

/// Repeats Superstep until every node knows every payload. Requires a
/// connected graph; completes within diameter(g) invocations.
RumorReport rumor_by_superstep(const Graph& g, const RandomSource& rng,
                               const SuperstepOptions& opts = {});

/// Per-node ordered list of neighbors to contact directly.
struct ExchangeSchedule {
  std::vector<std::vector<NodeId>> contacts;
  std::size_t total_rounds = 0;  // rounds the producing discovery run used
};

struct DirectExchangeReport {
  ExchangeSchedule schedule;
  std::size_t rounds_used = 0;
  std::vector<std::uint32_t> initiations;
  std::uint32_t max_initiations = 0;
  bool completed = false;
  double final_delta_prime = 0;
};

/// Deterministic NeighborExchange by direct contacts only. Nodes double
/// their budget delta' by (1+epsilon) per phase; a node whose unexchanged
/// neighbor count fits the budget spends one synchronized window contacting
/// them all, then stops initiating. No knowledge of the hereditary density
/// is needed.
DirectExchangeReport direct_exchange(const Graph& g, double epsilon, double c_in = 4.0);

/// Re-executes only the direct contacts of a discovered schedule; completes
/// NeighborExchange in max contact-list-length rounds. Throws
/// ScheduleGraphMismatch when the schedule does not fit g or misses an edge.
std::size_t schedule_replay(const Graph& g, const ExchangeSchedule& schedule);

struct BaselineReport {
  std::size_t rounds = 0;  // rounds executed (== cap when not completed)
  std::uint64_t contacts = 0;
  bool completed = false;
};

/// Each round, every node that has not yet heard from some neighbor
/// (directly or indirectly) contacts one such neighbor uniformly at random;
/// nodes with none go inactive for good. Exchanges move full knowledge sets,
/// simultaneously, against pre-round knowledge.
BaselineReport greedy_unheard_baseline(const Graph& g, const RandomSource& rng,
                                       std::size_t round_cap);

}  // namespace gossipsim
