#include "gossipsim/protocols.hpp"

#include <algorithm>
#include <cmath>

#include "gossipsim/errors.hpp"

namespace gossipsim {

namespace {

constexpr double kTol = 1e-12;

double log2_2m(const Graph& g) {
  return std::log2(2.0 * static_cast<double>(g.edge_count()));
}

void require_protocol_graph(const Graph& g, const char* who) {
  if (!g.is_unweighted())
    throw InvalidParams(std::string(who) + ": protocols run on unweighted, loop-free graphs");
}

}  // namespace

std::size_t default_tau(const Graph& g, double c_tau) {
  if (c_tau <= 0) throw InvalidConfig("default_tau: c_tau must be positive");
  if (g.edge_count() < 1) throw InvalidParams("default_tau: graph has no edges");
  const double level = log2_2m(g);
  return static_cast<std::size_t>(std::ceil(c_tau * level * level));
}

std::size_t superstep_iteration_cap(const Graph& g) {
  const double level = std::log2(2.0 * static_cast<double>(g.edge_count()) + 2.0);
  return 4 * static_cast<std::size_t>(std::ceil(level)) + 8;
}

bool SuperstepReport::invariants_ok() const {
  return std::all_of(per_iteration.begin(), per_iteration.end(), [](const auto& it) {
    return it.frontier_symmetric && it.pruned_exchanged && it.reversal_transpose;
  });
}

SuperstepReport superstep_on(const Graph& g, KnowledgeState& state,
                             std::span<const std::int64_t> payload_slots,
                             const RandomSource& rng, const SuperstepOptions& opts) {
  require_protocol_graph(g, "superstep");
  const std::size_t n = g.node_count();
  if (state.node_count() != n) throw InvalidParams("superstep: state does not match graph");
  if (payload_slots.size() != n) throw InvalidParams("superstep: payload slot map does not match graph");

  SuperstepReport report;
  DirectedEdgeSet frontier = DirectedEdgeSet::full(g);
  if (frontier.empty()) {
    report.completed = true;
    return report;
  }
  report.tau = opts.tau > 0 ? opts.tau : default_tau(g, opts.c_tau);
  const std::size_t cap = opts.max_iterations > 0 ? opts.max_iterations : superstep_iteration_cap(g);

  while (!frontier.empty() && report.iterations < cap) {
    const std::uint32_t iter = static_cast<std::uint32_t>(report.iterations);
    SuperstepIterationStats stats;
    stats.frontier_size = frontier.size();
    stats.frontier_symmetric = frontier.is_symmetric();

    // First half: fresh markers a(v), tau rounds of UniformGossip on the
    // frontier, trace recorded. Markers ride the same closures as payloads.
    KnowledgeState aux_a(n);
    for (NodeId v = 0; v < n; ++v) aux_a.grant(v, MessageId{MessageKind::kAuxA, v, iter});
    const RandomSource iter_rng = rng.stream(iter);
    ProcessTrace trace;
    trace.rounds.reserve(report.tau);
    for (std::size_t t = 0; t < report.tau; ++t) {
      ActivationSet a = sample_activation(g, frontier, iter_rng, t);
      const DirectedEdgeSet closure = symmetric_closure(a);
      TransferStats aux_moves;
      state.exchange(closure, &report.transfer);
      aux_a.exchange(closure, &aux_moves);
      report.transfer.transfers += aux_moves.transfers;  // markers are messages too
      trace.rounds.push_back(std::move(a));
    }

    // Second half: fresh markers b(v), the reverse process of the first half.
    KnowledgeState aux_b(n);
    for (NodeId v = 0; v < n; ++v) aux_b.grant(v, MessageId{MessageKind::kAuxB, v, iter});
    for (std::size_t t = trace.rounds.size(); t > 0; --t) {
      const DirectedEdgeSet closure = symmetric_closure(trace.rounds[t - 1]);
      TransferStats aux_moves;
      state.exchange(closure, &report.transfer);
      aux_b.exchange(closure, &aux_moves);
      report.transfer.transfers += aux_moves.transfers;
    }

    // Pruning: drop every frontier edge (u,w) where u saw a(w) or b(w).
    // Claim (c) check: by then w's payload must have reached u as well.
    DirectedEdgeSet pruned(n);
    stats.pruned_exchanged = true;
    for (NodeId u = 0; u < n; ++u) {
      for (const NodeId w : frontier.out(u)) {
        const bool x = aux_a.knows_slot(u, w);
        const bool y = aux_b.knows_slot(u, w);
        if (!x && !y) continue;
        pruned.insert(u, w);
        const std::int64_t slot = payload_slots[w];
        if (slot >= 0 && !state.knows_slot(u, static_cast<std::size_t>(slot)))
          stats.pruned_exchanged = false;
      }
    }

    // X_uw == Y_wu over every directed graph edge, a consequence of running
    // the exact reverse trace.
    stats.reversal_transpose = true;
    for (NodeId u = 0; u < n && stats.reversal_transpose; ++u)
      for (const auto& [w, weight] : g.neighbors(u)) {
        (void)weight;
        if (aux_a.knows_slot(u, w) != aux_b.knows_slot(w, u)) {
          stats.reversal_transpose = false;
          break;
        }
      }

    stats.pruned_size = pruned.size();
    frontier = frontier.minus(pruned);
    report.per_iteration.push_back(stats);
    ++report.iterations;
    if (opts.record_traces) report.traces.push_back(std::move(trace));
  }

  report.total_rounds = 2 * report.tau * report.iterations;
  report.completed = frontier.empty();
  if (opts.record_exchanged) {
    report.exchanged = DirectedEdgeSet::full(g).minus(frontier).unordered_pairs();
  }
  if (!report.completed && opts.throw_on_cap)
    throw IterationCapExceeded("superstep: frontier not empty after " +
                               std::to_string(report.iterations) + " iterations");
  return report;
}

SuperstepReport superstep(const Graph& g, const RandomSource& rng, const SuperstepOptions& opts) {
  KnowledgeState state = KnowledgeState::with_payloads(g.node_count());
  std::vector<std::int64_t> slots(g.node_count());
  for (std::size_t v = 0; v < slots.size(); ++v) slots[v] = static_cast<std::int64_t>(v);
  return superstep_on(g, state, slots, rng, opts);
}

RumorReport rumor_by_superstep(const Graph& g, const RandomSource& rng,
                               const SuperstepOptions& opts) {
  require_protocol_graph(g, "rumor");
  if (!is_connected(g)) throw Disconnected("rumor: graph is disconnected");
  const std::size_t n = g.node_count();

  RumorReport report;
  report.diameter = diameter(g);

  KnowledgeState state = KnowledgeState::with_payloads(n);
  std::vector<std::int64_t> slots(n);
  for (std::size_t v = 0; v < n; ++v) slots[v] = static_cast<std::int64_t>(v);

  auto done = [&] {
    for (NodeId u = 0; u < n; ++u)
      if (!state.knows_first(u, n)) return false;
    return true;
  };

  while (!done()) {
    if (report.invocations >= std::max<std::size_t>(report.diameter, 1))
      throw NonConvergence("rumor: exceeded diameter-many Superstep invocations");
    const SuperstepReport inv =
        superstep_on(g, state, slots, rng.stream(report.invocations), opts);
    report.per_invocation.push_back({inv.iterations, inv.total_rounds});
    report.total_rounds += inv.total_rounds;
    ++report.invocations;
  }
  report.completed = true;
  return report;
}

// ---- DirectExchange ------------------------------------------------------------

DirectExchangeReport direct_exchange(const Graph& g, double epsilon, double c_in) {
  require_protocol_graph(g, "direct_exchange");
  if (epsilon <= 0) throw InvalidParams("direct_exchange: epsilon must be positive");
  if (c_in <= 0) throw InvalidParams("direct_exchange: c_in must be positive");
  const std::size_t n = g.node_count();

  DirectExchangeReport report;
  report.schedule.contacts.assign(n, {});
  report.initiations.assign(n, 0);
  if (n == 0) {
    report.completed = true;
    return report;
  }

  // heard[u] is indexed by u's adjacency position.
  std::vector<std::vector<char>> heard(n);
  std::vector<std::size_t> heard_count(n, 0);
  for (NodeId u = 0; u < n; ++u) heard[u].assign(g.degree(u), 0);
  auto mark = [&](NodeId u, NodeId w) {
    const auto row = g.neighbors(u);
    const auto it = std::lower_bound(row.begin(), row.end(), w,
                                     [](const auto& e, NodeId id) { return e.first < id; });
    const std::size_t pos = static_cast<std::size_t>(it - row.begin());
    if (!heard[u][pos]) {
      heard[u][pos] = 1;
      ++heard_count[u];
    }
  };

  std::vector<char> terminated(n, 0);
  std::size_t remaining = n;
  const std::size_t windows_per_phase = static_cast<std::size_t>(
      std::ceil(c_in / epsilon * std::log2(static_cast<double>(std::max<std::size_t>(n, 2)))));
  double delta_prime = 1.0;

  while (remaining > 0) {
    delta_prime *= 1.0 + epsilon;
    if (delta_prime > (1.0 + epsilon) * static_cast<double>(n + 1))
      throw NonConvergence("direct_exchange: budget grew past the node count");
    const std::size_t window_rounds = static_cast<std::size_t>(std::ceil(delta_prime - kTol));

    for (std::size_t window = 0; window < windows_per_phase && remaining > 0; ++window) {
      // Plan against the heard sets as of the window start; every node whose
      // unexchanged neighbors fit the budget bursts them all, in id order.
      std::vector<NodeId> finishing;
      for (NodeId u = 0; u < n; ++u) {
        if (terminated[u]) continue;
        const std::size_t unheard = g.degree(u) - heard_count[u];
        if (static_cast<double>(unheard) <= delta_prime + kTol) {
          auto& plan = report.schedule.contacts[u];
          const auto row = g.neighbors(u);
          for (std::size_t pos = 0; pos < row.size(); ++pos)
            if (!heard[u][pos]) plan.push_back(row[pos].first);
          report.initiations[u] = static_cast<std::uint32_t>(plan.size());
          finishing.push_back(u);
        }
      }
      // The window runs for ceil(delta') rounds in lockstep whether or not a
      // node is bursting; heard updates become visible at the next planning.
      for (const NodeId u : finishing)
        for (const NodeId w : report.schedule.contacts[u]) {
          mark(u, w);
          mark(w, u);
        }
      report.rounds_used += window_rounds;
      for (const NodeId u : finishing) terminated[u] = 1;
      remaining -= finishing.size();
    }
  }

  report.completed = true;
  for (NodeId u = 0; u < n; ++u)
    if (heard_count[u] != g.degree(u)) report.completed = false;
  report.max_initiations =
      report.initiations.empty()
          ? 0
          : *std::max_element(report.initiations.begin(), report.initiations.end());
  report.final_delta_prime = delta_prime;
  report.schedule.total_rounds = report.rounds_used;
  return report;
}

std::size_t schedule_replay(const Graph& g, const ExchangeSchedule& schedule) {
  const std::size_t n = g.node_count();
  if (schedule.contacts.size() != n)
    throw ScheduleGraphMismatch("schedule_replay: schedule is for a different node count");

  std::vector<std::vector<char>> heard(n);
  for (NodeId u = 0; u < n; ++u) heard[u].assign(g.degree(u), 0);
  auto mark = [&](NodeId u, NodeId w) {
    const auto row = g.neighbors(u);
    const auto it = std::lower_bound(row.begin(), row.end(), w,
                                     [](const auto& e, NodeId id) { return e.first < id; });
    if (it == row.end() || it->first != w)
      throw ScheduleGraphMismatch("schedule_replay: contact is not a graph edge");
    heard[u][static_cast<std::size_t>(it - row.begin())] = 1;
  };

  std::size_t rounds = 0;
  for (NodeId u = 0; u < n; ++u) {
    rounds = std::max(rounds, schedule.contacts[u].size());
    for (const NodeId w : schedule.contacts[u]) {
      mark(u, w);
      mark(w, u);
    }
  }
  for (NodeId u = 0; u < n; ++u)
    for (std::size_t pos = 0; pos < heard[u].size(); ++pos)
      if (!heard[u][pos])
        throw ScheduleGraphMismatch("schedule_replay: schedule misses an edge");
  return rounds;
}

// ---- random-unheard-neighbor baseline ---------------------------------------------

BaselineReport greedy_unheard_baseline(const Graph& g, const RandomSource& rng,
                                       std::size_t round_cap) {
  require_protocol_graph(g, "greedy_unheard_baseline");
  if (round_cap < 1) throw InvalidParams("greedy_unheard_baseline: round cap must be positive");
  const std::size_t n = g.node_count();
  KnowledgeState state = KnowledgeState::with_payloads(n);

  BaselineReport report;
  std::vector<NodeId> candidates;
  for (std::size_t round = 1; round <= round_cap; ++round) {
    ActivationSet a(n);
    bool anyone_active = false;
    for (NodeId u = 0; u < n; ++u) {
      candidates.clear();
      for (const auto& [w, weight] : g.neighbors(u)) {
        (void)weight;
        if (!state.knows_slot(u, w)) candidates.push_back(w);
      }
      if (candidates.empty()) continue;  // inactive for good: heard sets only grow
      anyone_active = true;
      ++report.contacts;
      a.choice[u] = candidates[rng.uniform(candidates.size(), round, u)];
    }
    if (!anyone_active) {
      report.completed = true;
      return report;
    }
    state.exchange(symmetric_closure(a));
    report.rounds = round;
  }
  // Completed exactly when no node has an unheard neighbor left.
  report.completed = true;
  for (NodeId u = 0; u < n && report.completed; ++u)
    for (const auto& [w, weight] : g.neighbors(u)) {
      (void)weight;
      if (!state.knows_slot(u, w)) {
        report.completed = false;
        break;
      }
    }
  return report;
}

}  // namespace gossipsim
