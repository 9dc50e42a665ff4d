#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gossipsim/graph.hpp"
#include "gossipsim/random.hpp"

namespace gossipsim {

enum class MessageKind : std::uint8_t { kPayload = 0, kAuxA = 1, kAuxB = 2 };

/// Identifier of a message: who originated it, of what kind, and under which
/// tag (protocol iteration / simulated round). Content is out of scope; the
/// engine only tracks possession of identifiers.
struct MessageId {
  MessageKind kind = MessageKind::kPayload;
  NodeId origin = 0;
  std::uint32_t tag = 0;

  std::uint64_t packed() const {
    return (static_cast<std::uint64_t>(kind) << 62) |
           (static_cast<std::uint64_t>(origin) << 31) |
           static_cast<std::uint64_t>(tag);
  }
  bool operator==(const MessageId&) const = default;
};

/// Per-node choice of one outgoing edge, or idle.
struct ActivationSet {
  static constexpr NodeId kIdle = kUnreachable;

  explicit ActivationSet(std::size_t n = 0) : choice(n, kIdle) {}

  std::vector<NodeId> choice;

  std::size_t active_count() const;
  bool operator==(const ActivationSet&) const = default;
};

/// Ordered list of activation sets; replaying it is deterministic and the
/// round order can be reversed.
struct ProcessTrace {
  std::vector<ActivationSet> rounds;

  std::size_t length() const { return rounds.size(); }
  bool operator==(const ProcessTrace&) const = default;
};

struct TransferStats {
  std::uint64_t connections = 0;  // activated unordered pairs, summed over rounds
  std::uint64_t transfers = 0;    // identifiers moved across directed closure edges

  TransferStats& operator+=(const TransferStats& o) {
    connections += o.connections;
    transfers += o.transfers;
    return *this;
  }
};

/// Which nodes know which message identifiers. Rows are bitsets over a
/// registry of identifiers shared between copies, so snapshotting a state is
/// a flat copy. Knowledge only ever grows.
class KnowledgeState {
 public:
  explicit KnowledgeState(std::size_t n);

  /// State where node v knows exactly its own payload, registered at slot v.
  static KnowledgeState with_payloads(std::size_t n);

  std::size_t node_count() const { return n_; }
  std::size_t message_count() const;

  std::size_t register_message(const MessageId& id);  // idempotent
  std::optional<std::size_t> slot_of(const MessageId& id) const;

  void grant(NodeId node, const MessageId& id);  // registers if needed
  bool knows(NodeId node, const MessageId& id) const;
  bool knows_slot(NodeId node, std::size_t slot) const;
  std::size_t known_count(NodeId node) const;

  /// True when node knows all of slots [0, k).
  bool knows_first(NodeId node, std::size_t k) const;

  /// In-place round exchange with the same semantics as apply_round; only
  /// the rows touched by the closure are snapshotted.
  void exchange(const DirectedEdgeSet& closure, TransferStats* stats = nullptr);

 private:
  struct Registry {
    std::vector<MessageId> slots;
    std::unordered_map<std::uint64_t, std::size_t> index;
  };

  std::size_t n_ = 0;
  std::size_t width_ = 0;  // 64-bit words per node
  std::vector<std::uint64_t> bits_;
  std::shared_ptr<Registry> registry_;

  void ensure_width(std::size_t slots);
  std::uint64_t* row(NodeId u) { return bits_.data() + u * width_; }
  const std::uint64_t* row(NodeId u) const { return bits_.data() + u * width_; }
};

/// Every node with at least one outgoing frontier edge picks one uniformly at
/// random; nodes with none stay idle. Draws are keyed by (round, node).
ActivationSet sample_activation(const Graph& g, const DirectedEdgeSet& frontier,
                                const RandomSource& rng, std::uint64_t round);

/// {(u,w) : (u,w) in A or (w,u) in A}.
DirectedEdgeSet symmetric_closure(const ActivationSet& a);

/// One simultaneous exchange: each node's knowledge becomes the union of its
/// own and its closure-neighbors' pre-round knowledge. No multi-hop
/// propagation happens within a round. Throws AsymmetricClosure.
KnowledgeState apply_round(const KnowledgeState& state, const DirectedEdgeSet& closure,
                           TransferStats* stats = nullptr);

/// tau rounds of sample / close / exchange, recording every activation set.
std::pair<KnowledgeState, ProcessTrace> run_process(const Graph& g,
                                                    const DirectedEdgeSet& frontier,
                                                    std::size_t tau, const RandomSource& rng,
                                                    KnowledgeState initial,
                                                    TransferStats* stats = nullptr);

/// Same, starting from the everyone-knows-own-payload state.
std::pair<KnowledgeState, ProcessTrace> run_process(const Graph& g,
                                                    const DirectedEdgeSet& frontier,
                                                    std::size_t tau, const RandomSource& rng);

/// Activation sets in reversed round order.
ProcessTrace reverse(const ProcessTrace& trace);

/// Deterministic re-execution of a recorded trace.
KnowledgeState replay(const Graph& g, const ProcessTrace& trace, KnowledgeState initial,
                      TransferStats* stats = nullptr);

// Trace dump: text lines "round u>w u>w ..." per round, with '#' metadata
// comments. Multiple traces are separated by "trace" header lines.
void dump_traces(std::span<const ProcessTrace> traces, std::size_t node_count,
                 std::size_t total_rounds, bool completed, std::ostream& out);

struct TraceDump {
  std::vector<ProcessTrace> traces;
  std::size_t node_count = 0;
  std::size_t total_rounds = 0;
  bool completed = false;
};

TraceDump parse_traces(std::istream& in);
TraceDump load_traces(const std::string& path);
void save_traces(std::span<const ProcessTrace> traces, std::size_t node_count,
                 std::size_t total_rounds, bool completed, const std::string& path);

}  // namespace gossipsim
