#include "gossipsim/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#include "gossipsim/engine.hpp"
#include "gossipsim/errors.hpp"

namespace gossipsim {

std::string simulator_name(SimulatorKind kind) {
  switch (kind) {
    case SimulatorKind::kLocalReference: return "local";
    case SimulatorKind::kSuperstep: return "superstep";
    case SimulatorKind::kRoundRobin: return "round_robin";
    case SimulatorKind::kDirectExchange: return "direct_exchange";
    case SimulatorKind::kSpannerComposed: return "spanner";
  }
  return "unknown";
}

namespace {

std::vector<NodeId> neighbor_ids(const Graph& g, NodeId u) {
  std::vector<NodeId> ids;
  ids.reserve(g.degree(u));
  for (const auto& [v, w] : g.neighbors(u)) {
    (void)w;
    ids.push_back(v);
  }
  return ids;
}

// Shared synchronous driver. Transport differences live in the callers; the
// LOCAL-level semantics (simultaneous broadcast + absorb, global stop once
// everyone is ready) are identical across the reference and all simulators,
// which is what makes outputs bit-comparable.
class LocalDriver {
 public:
  LocalDriver(const Graph& g, const LocalAlgorithm& alg, std::uint64_t tape_seed)
      : g_(g), alg_(alg) {
    const RandomSource base(tape_seed);
    states_.reserve(g.node_count());
    neighbors_.reserve(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
      neighbors_.push_back(neighbor_ids(g, u));
      RandomTape tape(base.stream(u));
      states_.push_back(alg.init(u, neighbors_.back(), tape));
    }
  }

  bool all_halted() const {
    for (const auto& state : states_)
      if (!alg_.halted(*state)) return false;
    return true;
  }

  std::vector<std::optional<LocalMessage>> collect_broadcasts() const {
    std::vector<std::optional<LocalMessage>> msgs;
    msgs.reserve(states_.size());
    for (const auto& state : states_) msgs.push_back(alg_.broadcast(*state));
    return msgs;
  }

  void absorb(const std::vector<std::optional<LocalMessage>>& msgs) {
    std::vector<InboxEntry> inbox;
    for (NodeId u = 0; u < states_.size(); ++u) {
      inbox.clear();
      for (const NodeId w : neighbors_[u])
        if (msgs[w]) inbox.push_back({w, *msgs[w]});
      alg_.receive(*states_[u], inbox);
    }
  }

  std::vector<LocalOutput> outputs() const {
    std::vector<LocalOutput> out;
    out.reserve(states_.size());
    for (const auto& state : states_) out.push_back(alg_.output(*state));
    return out;
  }

  std::span<const NodeId> neighbors(NodeId u) const { return neighbors_[u]; }

 private:
  const Graph& g_;
  const LocalAlgorithm& alg_;
  std::vector<std::unique_ptr<LocalNodeState>> states_;
  std::vector<std::vector<NodeId>> neighbors_;
};

}  // namespace

SimulationOutcome run_local(const Graph& g, const LocalAlgorithm& alg, std::uint64_t tape_seed,
                            std::size_t round_cap) {
  LocalDriver driver(g, alg, tape_seed);
  SimulationOutcome outcome;
  outcome.kind = SimulatorKind::kLocalReference;
  while (!driver.all_halted()) {
    if (outcome.local_rounds >= round_cap)
      throw RoundCapExceeded("run_local: algorithm did not halt within the round cap");
    driver.absorb(driver.collect_broadcasts());
    ++outcome.local_rounds;
  }
  outcome.outputs = driver.outputs();
  return outcome;
}

SimulationOutcome simulate_superstep(const Graph& g, const LocalAlgorithm& alg,
                                     std::uint64_t tape_seed, const RandomSource& rng,
                                     const SuperstepOptions& opts, std::size_t round_cap) {
  LocalDriver driver(g, alg, tape_seed);
  SimulationOutcome outcome;
  outcome.kind = SimulatorKind::kSuperstep;
  while (!driver.all_halted()) {
    if (outcome.local_rounds >= round_cap)
      throw RoundCapExceeded("simulate_superstep: algorithm did not halt within the round cap");
    const auto msgs = driver.collect_broadcasts();

    // NeighborExchange of this round's broadcasts, tracked as identifiers.
    KnowledgeState carrier(g.node_count());
    std::vector<std::int64_t> slots(g.node_count(), -1);
    const auto tag = static_cast<std::uint32_t>(outcome.local_rounds);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      if (!msgs[u]) continue;
      const MessageId id{MessageKind::kPayload, u, tag};
      carrier.grant(u, id);
      slots[u] = static_cast<std::int64_t>(*carrier.slot_of(id));
    }
    const SuperstepReport rep =
        superstep_on(g, carrier, slots, rng.stream(outcome.local_rounds), opts);
    outcome.gossip_rounds += rep.total_rounds;
    for (NodeId u = 0; u < g.node_count(); ++u)
      for (const NodeId w : driver.neighbors(u))
        if (slots[w] >= 0 && !carrier.knows_slot(u, static_cast<std::size_t>(slots[w])))
          throw Error("simulate_superstep: completed exchange left a broadcast undelivered");

    driver.absorb(msgs);
    ++outcome.local_rounds;
  }
  outcome.outputs = driver.outputs();
  return outcome;
}

SimulationOutcome simulate_round_robin(const Graph& g, const LocalAlgorithm& alg,
                                       std::uint64_t tape_seed, std::size_t round_cap) {
  std::size_t max_degree = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) max_degree = std::max(max_degree, g.degree(u));

  LocalDriver driver(g, alg, tape_seed);
  SimulationOutcome outcome;
  outcome.kind = SimulatorKind::kRoundRobin;
  while (!driver.all_halted()) {
    if (outcome.local_rounds >= round_cap)
      throw RoundCapExceeded("simulate_round_robin: algorithm did not halt within the round cap");
    // Node u contacts its k-th neighbor in gossip round k, so after
    // max-degree rounds every ordered neighbor pair has talked; the budget
    // is charged in full to stay oblivious to early completion.
    driver.absorb(driver.collect_broadcasts());
    outcome.gossip_rounds += max_degree;
    ++outcome.local_rounds;
  }
  outcome.outputs = driver.outputs();
  return outcome;
}

SimulationOutcome simulate_direct_exchange(const Graph& g, const LocalAlgorithm& alg,
                                           std::uint64_t tape_seed, double epsilon,
                                           std::size_t round_cap) {
  LocalDriver driver(g, alg, tape_seed);
  SimulationOutcome outcome;
  outcome.kind = SimulatorKind::kDirectExchange;
  bool discovered = false;
  std::size_t replay_cost = 0;
  while (!driver.all_halted()) {
    if (outcome.local_rounds >= round_cap)
      throw RoundCapExceeded("simulate_direct_exchange: algorithm did not halt within the round cap");
    if (!discovered) {
      // Pay the schedule discovery only once, and only if a round happens.
      const DirectExchangeReport rep = direct_exchange(g, epsilon);
      if (!rep.completed)
        throw NonConvergence("simulate_direct_exchange: discovery did not cover the graph");
      outcome.gossip_rounds += rep.rounds_used;
      replay_cost = schedule_replay(g, rep.schedule);
      discovered = true;
    }
    driver.absorb(driver.collect_broadcasts());
    outcome.gossip_rounds += replay_cost;
    ++outcome.local_rounds;
  }
  outcome.outputs = driver.outputs();
  return outcome;
}

// ---- spanner composition ------------------------------------------------

namespace {

// Runs a wrapped algorithm over a spanner: each wrapped round becomes
// `stretch` flooding rounds during which nodes relay every tagged record
// they hold; at the block boundary each node feeds the records of its
// original-graph neighbors into the wrapped algorithm.
class FloodingComposition final : public LocalAlgorithm {
 public:
  FloodingComposition(const LocalAlgorithm& inner, const Graph& original, std::size_t stretch)
      : inner_(inner), stretch_(stretch) {
    original_neighbors_.reserve(original.node_count());
    for (NodeId u = 0; u < original.node_count(); ++u)
      original_neighbors_.push_back(neighbor_ids(original, u));
  }

  struct State final : LocalNodeState {
    NodeId self = 0;
    std::unique_ptr<LocalNodeState> inner_state;
    std::size_t phase = 0;
    std::map<NodeId, LocalMessage> records;  // this block's round messages
  };

  std::unique_ptr<LocalNodeState> init(NodeId node, std::span<const NodeId> /*spanner_nbrs*/,
                                       RandomTape& tape) const override {
    auto state = std::make_unique<State>();
    state->self = node;
    state->inner_state = inner_.init(node, original_neighbors_[node], tape);
    refresh_own_record(*state);
    return state;
  }

  std::optional<LocalMessage> broadcast(const LocalNodeState& state) const override {
    const auto& s = static_cast<const State&>(state);
    if (s.records.empty()) return std::nullopt;
    LocalMessage msg;
    msg.push_back(static_cast<std::int64_t>(s.records.size()));
    for (const auto& [origin, record] : s.records) {
      msg.push_back(static_cast<std::int64_t>(origin));
      msg.push_back(static_cast<std::int64_t>(record.size()));
      msg.insert(msg.end(), record.begin(), record.end());
    }
    return msg;
  }

  void receive(LocalNodeState& state, std::span<const InboxEntry> inbox) const override {
    auto& s = static_cast<State&>(state);
    for (const InboxEntry& entry : inbox) {
      std::size_t pos = 0;
      const auto count = static_cast<std::size_t>(entry.message[pos++]);
      for (std::size_t i = 0; i < count; ++i) {
        const NodeId origin = static_cast<NodeId>(entry.message[pos++]);
        const auto len = static_cast<std::size_t>(entry.message[pos++]);
        if (!s.records.count(origin)) {
          s.records.emplace(origin, LocalMessage(entry.message.begin() + pos,
                                                 entry.message.begin() + pos + len));
        }
        pos += len;
      }
    }
    if (++s.phase < stretch_) return;
    // Block boundary: everything a neighbor said this round has arrived.
    std::vector<InboxEntry> inner_inbox;
    for (const NodeId w : original_neighbors_[s.self]) {
      const auto it = s.records.find(w);
      if (it != s.records.end()) inner_inbox.push_back({w, it->second});
    }
    inner_.receive(*s.inner_state, inner_inbox);
    s.phase = 0;
    s.records.clear();
    refresh_own_record(s);
  }

  bool halted(const LocalNodeState& state) const override {
    const auto& s = static_cast<const State&>(state);
    return s.phase == 0 && inner_.halted(*s.inner_state);
  }

  LocalOutput output(const LocalNodeState& state) const override {
    return inner_.output(*static_cast<const State&>(state).inner_state);
  }

 private:
  void refresh_own_record(State& s) const {
    if (auto own = inner_.broadcast(*s.inner_state)) s.records.emplace(s.self, std::move(*own));
  }

  const LocalAlgorithm& inner_;
  std::size_t stretch_;
  std::vector<std::vector<NodeId>> original_neighbors_;
};

}  // namespace

SimulationOutcome simulate_via_spanner(const Graph& g, const LocalAlgorithm& alg,
                                       std::uint64_t tape_seed, const SpannerResult& s,
                                       SimulatorKind inner, double epsilon,
                                       const RandomSource& rng, std::size_t round_cap) {
  if (!s.certified_stretch)
    throw UncertifiedSpanner("simulate_via_spanner: spanner carries no stretch certificate");
  if (s.certified_stretch->second != 0)
    throw UncertifiedSpanner("simulate_via_spanner: need a purely multiplicative certificate");
  const double alpha = s.certified_stretch->first;
  if (!verify_stretch(g, s.subgraph, alpha, 0, true).holds)
    throw UncertifiedSpanner("simulate_via_spanner: stretch certificate does not verify");
  const auto stretch = static_cast<std::size_t>(std::ceil(alpha));

  const FloodingComposition wrapper(alg, g, stretch);
  const std::size_t wrapper_cap = round_cap * stretch + stretch;
  SimulationOutcome base;
  switch (inner) {
    case SimulatorKind::kSuperstep:
      base = simulate_superstep(s.subgraph, wrapper, tape_seed, rng, {}, wrapper_cap);
      break;
    case SimulatorKind::kRoundRobin:
      base = simulate_round_robin(s.subgraph, wrapper, tape_seed, wrapper_cap);
      break;
    case SimulatorKind::kDirectExchange:
      base = simulate_direct_exchange(s.subgraph, wrapper, tape_seed, epsilon, wrapper_cap);
      break;
    case SimulatorKind::kLocalReference:
      base = run_local(s.subgraph, wrapper, tape_seed, wrapper_cap);
      break;
    case SimulatorKind::kSpannerComposed:
      throw InvalidParams("simulate_via_spanner: inner simulator cannot be spanner-composed");
  }
  SimulationOutcome outcome;
  outcome.kind = SimulatorKind::kSpannerComposed;
  outcome.outputs = std::move(base.outputs);
  outcome.local_rounds = base.local_rounds / stretch;
  outcome.gossip_rounds = base.gossip_rounds;
  return outcome;
}

bool check_equivalence(const Graph& g, const LocalAlgorithm& alg, std::uint64_t tape_seed,
                       SimulationOutcome& outcome) {
  const SimulationOutcome reference = run_local(g, alg, tape_seed);
  outcome.matches_reference = reference.outputs == outcome.outputs;
  return *outcome.matches_reference;
}

// ---- shipped algorithms ----------------------------------------------------

namespace {

class FloodingAlgorithm final : public LocalAlgorithm {
 public:
  explicit FloodingAlgorithm(std::size_t n) : n_(n) {}

  struct State final : LocalNodeState {
    std::set<std::int64_t> known;
  };

  std::unique_ptr<LocalNodeState> init(NodeId node, std::span<const NodeId>,
                                       RandomTape&) const override {
    auto state = std::make_unique<State>();
    state->known.insert(static_cast<std::int64_t>(node));
    return state;
  }

  std::optional<LocalMessage> broadcast(const LocalNodeState& state) const override {
    const auto& s = static_cast<const State&>(state);
    return LocalMessage(s.known.begin(), s.known.end());
  }

  void receive(LocalNodeState& state, std::span<const InboxEntry> inbox) const override {
    auto& s = static_cast<State&>(state);
    for (const InboxEntry& entry : inbox)
      s.known.insert(entry.message.begin(), entry.message.end());
  }

  bool halted(const LocalNodeState& state) const override {
    return static_cast<const State&>(state).known.size() >= n_;
  }

  LocalOutput output(const LocalNodeState& state) const override {
    const auto& s = static_cast<const State&>(state);
    return LocalOutput(s.known.begin(), s.known.end());
  }

 private:
  std::size_t n_;
};

class BfsLabeling final : public LocalAlgorithm {
 public:
  explicit BfsLabeling(NodeId source) : source_(source) {}

  struct State final : LocalNodeState {
    std::int64_t dist = -1;
  };

  std::unique_ptr<LocalNodeState> init(NodeId node, std::span<const NodeId>,
                                       RandomTape&) const override {
    auto state = std::make_unique<State>();
    if (node == source_) state->dist = 0;
    return state;
  }

  std::optional<LocalMessage> broadcast(const LocalNodeState& state) const override {
    const auto& s = static_cast<const State&>(state);
    if (s.dist < 0) return std::nullopt;
    return LocalMessage{s.dist};
  }

  void receive(LocalNodeState& state, std::span<const InboxEntry> inbox) const override {
    auto& s = static_cast<State&>(state);
    for (const InboxEntry& entry : inbox) {
      const std::int64_t candidate = entry.message[0] + 1;
      if (s.dist < 0 || candidate < s.dist) s.dist = candidate;
    }
  }

  bool halted(const LocalNodeState& state) const override {
    return static_cast<const State&>(state).dist >= 0;
  }

  LocalOutput output(const LocalNodeState& state) const override {
    return {static_cast<const State&>(state).dist};
  }

 private:
  NodeId source_;
};

class NeighborCollect final : public LocalAlgorithm {
 public:
  struct State final : LocalNodeState {
    NodeId self = 0;
    std::size_t rounds = 0;
    std::vector<std::int64_t> heard;
  };

  std::unique_ptr<LocalNodeState> init(NodeId node, std::span<const NodeId>,
                                       RandomTape&) const override {
    auto state = std::make_unique<State>();
    state->self = node;
    return state;
  }

  std::optional<LocalMessage> broadcast(const LocalNodeState& state) const override {
    return LocalMessage{static_cast<std::int64_t>(static_cast<const State&>(state).self)};
  }

  void receive(LocalNodeState& state, std::span<const InboxEntry> inbox) const override {
    auto& s = static_cast<State&>(state);
    ++s.rounds;
    if (s.rounds == 1)
      for (const InboxEntry& entry : inbox) s.heard.push_back(entry.message[0]);
  }

  bool halted(const LocalNodeState& state) const override {
    return static_cast<const State&>(state).rounds >= 1;
  }

  LocalOutput output(const LocalNodeState& state) const override {
    auto heard = static_cast<const State&>(state).heard;
    std::sort(heard.begin(), heard.end());
    return heard;
  }
};

// Gather-then-simulate transformation; see gatherize().
class GatherAlgorithm final : public LocalAlgorithm {
 public:
  GatherAlgorithm(std::shared_ptr<const LocalAlgorithm> inner, std::size_t horizon)
      : inner_(std::move(inner)), horizon_(horizon) {}

  struct Record {
    std::vector<NodeId> neighbors;
    std::uint64_t seed = 0;
  };

  struct State final : LocalNodeState {
    NodeId self = 0;
    std::size_t rounds = 0;
    std::map<NodeId, Record> ball;
  };

  std::unique_ptr<LocalNodeState> init(NodeId node, std::span<const NodeId> neighbors,
                                       RandomTape& tape) const override {
    auto state = std::make_unique<State>();
    state->self = node;
    state->ball.emplace(node,
                        Record{{neighbors.begin(), neighbors.end()}, tape.seed()});
    return state;
  }

  std::optional<LocalMessage> broadcast(const LocalNodeState& state) const override {
    const auto& s = static_cast<const State&>(state);
    LocalMessage msg;
    msg.push_back(static_cast<std::int64_t>(s.ball.size()));
    for (const auto& [node, record] : s.ball) {
      msg.push_back(static_cast<std::int64_t>(node));
      msg.push_back(std::bit_cast<std::int64_t>(record.seed));
      msg.push_back(static_cast<std::int64_t>(record.neighbors.size()));
      for (const NodeId w : record.neighbors) msg.push_back(static_cast<std::int64_t>(w));
    }
    return msg;
  }

  void receive(LocalNodeState& state, std::span<const InboxEntry> inbox) const override {
    auto& s = static_cast<State&>(state);
    for (const InboxEntry& entry : inbox) {
      std::size_t pos = 0;
      const auto count = static_cast<std::size_t>(entry.message[pos++]);
      for (std::size_t i = 0; i < count; ++i) {
        const NodeId node = static_cast<NodeId>(entry.message[pos++]);
        const auto seed = std::bit_cast<std::uint64_t>(entry.message[pos++]);
        const auto deg = static_cast<std::size_t>(entry.message[pos++]);
        if (!s.ball.count(node)) {
          Record record;
          record.seed = seed;
          record.neighbors.reserve(deg);
          for (std::size_t k = 0; k < deg; ++k)
            record.neighbors.push_back(static_cast<NodeId>(entry.message[pos + k]));
          s.ball.emplace(node, std::move(record));
        }
        pos += deg;
      }
    }
    ++s.rounds;
  }

  bool halted(const LocalNodeState& state) const override {
    return static_cast<const State&>(state).rounds >= horizon_;
  }

  // Simulates the wrapped algorithm on the gathered ball for `horizon`
  // rounds and reads off this node's output. Nodes near the ball boundary
  // compute garbage in late rounds, but nothing a path of length <= horizon
  // can carry back here is affected.
  LocalOutput output(const LocalNodeState& state) const override {
    const auto& s = static_cast<const State&>(state);
    std::map<NodeId, std::unique_ptr<LocalNodeState>> states;
    for (const auto& [node, record] : s.ball) {
      RandomTape tape{RandomSource(record.seed)};
      states.emplace(node, inner_->init(node, record.neighbors, tape));
    }
    for (std::size_t t = 0; t < horizon_; ++t) {
      std::map<NodeId, std::optional<LocalMessage>> msgs;
      for (const auto& [node, st] : states) msgs.emplace(node, inner_->broadcast(*st));
      for (auto& [node, st] : states) {
        std::vector<InboxEntry> inbox;
        for (const NodeId w : s.ball.at(node).neighbors) {
          const auto it = msgs.find(w);
          if (it != msgs.end() && it->second) inbox.push_back({w, *it->second});
        }
        inner_->receive(*st, inbox);
      }
    }
    return inner_->output(*states.at(s.self));
  }

 private:
  std::shared_ptr<const LocalAlgorithm> inner_;
  std::size_t horizon_;
};

}  // namespace

std::unique_ptr<LocalAlgorithm> make_flooding(std::size_t n) {
  return std::make_unique<FloodingAlgorithm>(n);
}

std::unique_ptr<LocalAlgorithm> make_bfs_labeling(NodeId source) {
  return std::make_unique<BfsLabeling>(source);
}

std::unique_ptr<LocalAlgorithm> make_neighbor_collect() {
  return std::make_unique<NeighborCollect>();
}

std::unique_ptr<LocalAlgorithm> make_local_algorithm(const std::string& name, const Graph& g,
                                                     NodeId source) {
  if (name == "flooding") return make_flooding(g.node_count());
  if (name == "bfs") return make_bfs_labeling(source);
  if (name == "collect") return make_neighbor_collect();
  throw InvalidParams("unknown local algorithm: " + name);
}

std::unique_ptr<LocalAlgorithm> gatherize(std::shared_ptr<const LocalAlgorithm> inner,
                                          std::size_t horizon) {
  if (!inner) throw InvalidParams("gatherize: missing algorithm");
  if (horizon == 0) throw InvalidParams("gatherize: horizon must be positive");
  return std::make_unique<GatherAlgorithm>(std::move(inner), horizon);
}

}  // namespace gossipsim
