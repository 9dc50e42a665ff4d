#include "gossipsim/engine.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gossipsim/errors.hpp"

namespace gossipsim {

std::size_t ActivationSet::active_count() const {
  return static_cast<std::size_t>(
      std::count_if(choice.begin(), choice.end(), [](NodeId c) { return c != kIdle; }));
}

// ---- KnowledgeState --------------------------------------------------------

KnowledgeState::KnowledgeState(std::size_t n)
    : n_(n), registry_(std::make_shared<Registry>()) {}

KnowledgeState KnowledgeState::with_payloads(std::size_t n) {
  KnowledgeState state(n);
  for (NodeId v = 0; v < n; ++v)
    state.grant(v, MessageId{MessageKind::kPayload, v, 0});
  return state;
}

std::size_t KnowledgeState::message_count() const { return registry_->slots.size(); }

void KnowledgeState::ensure_width(std::size_t slots) {
  const std::size_t needed = (slots + 63) / 64;
  if (needed <= width_) return;
  std::vector<std::uint64_t> grown(n_ * needed, 0);
  for (std::size_t u = 0; u < n_; ++u)
    std::copy(bits_.begin() + u * width_, bits_.begin() + (u + 1) * width_,
              grown.begin() + u * needed);
  bits_ = std::move(grown);
  width_ = needed;
}

std::size_t KnowledgeState::register_message(const MessageId& id) {
  auto [it, inserted] = registry_->index.try_emplace(id.packed(), registry_->slots.size());
  if (inserted) registry_->slots.push_back(id);
  return it->second;
}

std::optional<std::size_t> KnowledgeState::slot_of(const MessageId& id) const {
  const auto it = registry_->index.find(id.packed());
  if (it == registry_->index.end()) return std::nullopt;
  return it->second;
}

void KnowledgeState::grant(NodeId node, const MessageId& id) {
  if (node >= n_) throw InvalidParams("grant: node outside state");
  const std::size_t slot = register_message(id);
  ensure_width(slot + 1);
  row(node)[slot / 64] |= 1ULL << (slot % 64);
}

bool KnowledgeState::knows(NodeId node, const MessageId& id) const {
  const auto slot = slot_of(id);
  return slot && knows_slot(node, *slot);
}

bool KnowledgeState::knows_slot(NodeId node, std::size_t slot) const {
  if (node >= n_) throw InvalidParams("knows: node outside state");
  if (slot / 64 >= width_) return false;
  return (row(node)[slot / 64] >> (slot % 64)) & 1ULL;
}

std::size_t KnowledgeState::known_count(NodeId node) const {
  std::size_t count = 0;
  for (std::size_t w = 0; w < width_; ++w) count += std::popcount(row(node)[w]);
  return count;
}

bool KnowledgeState::knows_first(NodeId node, std::size_t k) const {
  if (k == 0) return true;
  if ((k + 63) / 64 > width_) return false;
  const std::uint64_t* r = row(node);
  const std::size_t full = k / 64;
  for (std::size_t w = 0; w < full; ++w)
    if (r[w] != ~0ULL) return false;
  const std::size_t rem = k % 64;
  if (rem == 0) return true;
  const std::uint64_t mask = (1ULL << rem) - 1;
  return (r[full] & mask) == mask;
}

// ---- round primitives ---------------------------------------------------------

ActivationSet sample_activation(const Graph& g, const DirectedEdgeSet& frontier,
                                const RandomSource& rng, std::uint64_t round) {
  if (frontier.node_count() != g.node_count())
    throw InvalidParams("sample_activation: frontier does not match graph");
  ActivationSet a(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto out = frontier.out(u);
    if (out.empty()) continue;
    a.choice[u] = out[rng.uniform(out.size(), round, u)];
  }
  return a;
}

DirectedEdgeSet symmetric_closure(const ActivationSet& a) {
  DirectedEdgeSet closure(a.choice.size());
  for (NodeId u = 0; u < a.choice.size(); ++u) {
    const NodeId w = a.choice[u];
    if (w == ActivationSet::kIdle) continue;
    closure.insert(u, w);
    closure.insert(w, u);
  }
  return closure;
}

void KnowledgeState::exchange(const DirectedEdgeSet& closure, TransferStats* stats) {
  if (closure.node_count() != n_)
    throw InvalidParams("exchange: closure does not match state");
  if (!closure.is_symmetric()) throw AsymmetricClosure("exchange: closure is not symmetric");
  // Sources are exactly the closure-active nodes (the closure is symmetric),
  // so snapshotting their rows preserves the pre-round view.
  std::vector<NodeId> active;
  for (NodeId u = 0; u < n_; ++u)
    if (closure.out_degree(u) > 0) active.push_back(u);
  std::vector<std::uint64_t> snapshot(active.size() * width_);
  std::vector<std::size_t> offset(n_, 0);
  for (std::size_t i = 0; i < active.size(); ++i) {
    offset[active[i]] = i * width_;
    std::copy(row(active[i]), row(active[i]) + width_, snapshot.begin() + i * width_);
  }
  std::uint64_t transfers = 0;
  for (const NodeId u : active) {
    std::uint64_t* dst = row(u);
    for (const NodeId w : closure.out(u)) {
      const std::uint64_t* src = snapshot.data() + offset[w];
      for (std::size_t i = 0; i < width_; ++i) {
        if (stats) transfers += std::popcount(src[i]);
        dst[i] |= src[i];
      }
    }
  }
  if (stats) {
    stats->connections += closure.size() / 2;
    stats->transfers += transfers;
  }
}

KnowledgeState apply_round(const KnowledgeState& state, const DirectedEdgeSet& closure,
                           TransferStats* stats) {
  KnowledgeState next = state;
  next.exchange(closure, stats);
  return next;
}

std::pair<KnowledgeState, ProcessTrace> run_process(const Graph& g,
                                                    const DirectedEdgeSet& frontier,
                                                    std::size_t tau, const RandomSource& rng,
                                                    KnowledgeState initial,
                                                    TransferStats* stats) {
  ProcessTrace trace;
  trace.rounds.reserve(tau);
  KnowledgeState state = std::move(initial);
  for (std::size_t t = 0; t < tau; ++t) {
    ActivationSet a = sample_activation(g, frontier, rng, t);
    state.exchange(symmetric_closure(a), stats);
    trace.rounds.push_back(std::move(a));
  }
  return {std::move(state), std::move(trace)};
}

std::pair<KnowledgeState, ProcessTrace> run_process(const Graph& g,
                                                    const DirectedEdgeSet& frontier,
                                                    std::size_t tau, const RandomSource& rng) {
  return run_process(g, frontier, tau, rng, KnowledgeState::with_payloads(g.node_count()));
}

ProcessTrace reverse(const ProcessTrace& trace) {
  ProcessTrace rev;
  rev.rounds.assign(trace.rounds.rbegin(), trace.rounds.rend());
  return rev;
}

KnowledgeState replay(const Graph& g, const ProcessTrace& trace, KnowledgeState initial,
                      TransferStats* stats) {
  KnowledgeState state = std::move(initial);
  for (const ActivationSet& a : trace.rounds) {
    for (const NodeId w : a.choice)
      if (w != ActivationSet::kIdle && w >= g.node_count())
        throw InvalidParams("replay: trace references node outside graph");
    state = apply_round(state, symmetric_closure(a), stats);
  }
  return state;
}

// ---- trace dump -----------------------------------------------------------------

void dump_traces(std::span<const ProcessTrace> traces, std::size_t node_count,
                 std::size_t total_rounds, bool completed, std::ostream& out) {
  out << "# gossip-trace v1\n";
  out << "# nodes " << node_count << " traces " << traces.size() << " total_rounds "
      << total_rounds << " completed " << (completed ? 1 : 0) << "\n";
  for (std::size_t k = 0; k < traces.size(); ++k) {
    out << "trace " << k << " rounds " << traces[k].rounds.size() << "\n";
    for (std::size_t r = 0; r < traces[k].rounds.size(); ++r) {
      out << r;
      const auto& choice = traces[k].rounds[r].choice;
      for (NodeId u = 0; u < choice.size(); ++u)
        if (choice[u] != ActivationSet::kIdle) out << ' ' << u << '>' << choice[u];
      out << "\n";
    }
  }
}

TraceDump parse_traces(std::istream& in) {
  TraceDump dump;
  std::string line;
  std::size_t line_no = 0;
  bool have_meta = false;
  std::size_t expected_rounds = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("# nodes ", 0) == 0) {
      std::istringstream meta(line.substr(1));
      std::string key;
      int completed = 0;
      std::size_t trace_count = 0;
      if (!(meta >> key >> dump.node_count >> key >> trace_count >> key >> dump.total_rounds >>
            key >> completed))
        throw ParseError("line " + std::to_string(line_no) + ": bad trace metadata");
      dump.completed = completed != 0;
      have_meta = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (!have_meta) throw ParseError("trace dump is missing its metadata line");
    std::istringstream fields(line);
    if (line.rfind("trace ", 0) == 0) {
      std::string word;
      std::size_t index = 0;
      if (!(fields >> word >> index >> word >> expected_rounds))
        throw ParseError("line " + std::to_string(line_no) + ": bad trace header");
      dump.traces.emplace_back();
      dump.traces.back().rounds.reserve(expected_rounds);
      continue;
    }
    if (dump.traces.empty()) throw ParseError("line " + std::to_string(line_no) + ": round before trace header");
    std::size_t round_index = 0;
    if (!(fields >> round_index))
      throw ParseError("line " + std::to_string(line_no) + ": expected round index");
    ActivationSet a(dump.node_count);
    std::string token;
    while (fields >> token) {
      const auto sep = token.find('>');
      if (sep == std::string::npos)
        throw ParseError("line " + std::to_string(line_no) + ": expected 'u>w' token");
      const unsigned long u = std::stoul(token.substr(0, sep));
      const unsigned long w = std::stoul(token.substr(sep + 1));
      if (u >= dump.node_count || w >= dump.node_count)
        throw ParseError("line " + std::to_string(line_no) + ": node id out of range");
      a.choice[static_cast<NodeId>(u)] = static_cast<NodeId>(w);
    }
    dump.traces.back().rounds.push_back(std::move(a));
  }
  if (!have_meta) throw ParseError("trace dump is missing its metadata line");
  return dump;
}

TraceDump load_traces(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trace file: " + path);
  return parse_traces(in);
}

void save_traces(std::span<const ProcessTrace> traces, std::size_t node_count,
                 std::size_t total_rounds, bool completed, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  dump_traces(traces, node_count, total_rounds, completed, out);
}

}  // namespace gossipsim
