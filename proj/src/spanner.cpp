#include "gossipsim/spanner.hpp"

#include <algorithm>

#include "gossipsim/errors.hpp"

namespace gossipsim {

SpannerResult extract_spanner(const Graph& g, std::span<const ProcessTrace> traces,
                              std::size_t total_rounds, bool completed) {
  if (!completed)
    throw IncompleteRun("extract_spanner: producing run did not complete NeighborExchange");
  DirectedEdgeSet used(g.node_count());
  for (const ProcessTrace& trace : traces)
    for (const ActivationSet& a : trace.rounds)
      for (NodeId u = 0; u < a.choice.size(); ++u) {
        const NodeId w = a.choice[u];
        if (w == ActivationSet::kIdle) continue;
        if (u >= g.node_count() || w >= g.node_count() || !g.has_edge(u, w))
          throw InvalidParams("extract_spanner: trace uses an edge outside the graph");
        used.insert(u, w);
        used.insert(w, u);
      }
  SpannerResult result;
  result.subgraph = Graph(g.node_count());
  for (const auto& [u, w] : used.unordered_pairs()) result.subgraph.add_edge(u, w);
  result.source_rounds = total_rounds;
  return result;
}

SpannerResult extract_spanner(const Graph& g, const SuperstepReport& report) {
  if (!report.completed)
    throw IncompleteRun("extract_spanner: superstep run did not complete");
  if (report.traces.empty() && report.iterations > 0)
    throw InvalidParams("extract_spanner: superstep report carries no traces (record_traces)");
  return extract_spanner(g, report.traces, report.total_rounds, report.completed);
}

namespace {

bool is_subgraph(const Graph& g, const Graph& s) {
  if (s.node_count() != g.node_count()) return false;
  for (NodeId u = 0; u < s.node_count(); ++u)
    for (const auto& [v, w] : s.neighbors(u)) {
      (void)w;
      if (!g.has_edge(u, v)) return false;
    }
  return true;
}

}  // namespace

StretchCheck verify_stretch(const Graph& g, const Graph& s, double alpha, double beta,
                            bool neighbors_only) {
  if (!is_subgraph(g, s)) throw NotSubgraph("verify_stretch: s is not a subgraph of g");
  StretchCheck check;
  check.holds = true;
  double worst_excess = -1;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto dist_g = bfs_distances(g, u);
    const auto dist_s = bfs_distances(s, u);
    for (NodeId v = u + 1; v < g.node_count(); ++v) {
      if (dist_g[v] == kUnreachable) continue;
      if (neighbors_only && dist_g[v] != 1) continue;
      const double allowed = alpha * dist_g[v] + beta;
      const double got = dist_s[v] == kUnreachable
                             ? std::numeric_limits<double>::infinity()
                             : static_cast<double>(dist_s[v]);
      if (got > allowed && got - allowed > worst_excess) {
        worst_excess = got - allowed;
        check.worst_pair = {u, v};
        check.worst_distance = got;
        check.worst_allowed = allowed;
        check.holds = false;
      }
    }
  }
  return check;
}

int spanner_density(const Graph& s) { return hereditary_density(s); }

bool certify_spanner(const Graph& g, SpannerResult& result) {
  result.density = spanner_density(result.subgraph);
  // Exact neighbor stretch: max spanner distance over g-edges.
  double alpha = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto dist_s = bfs_distances(result.subgraph, u);
    for (const auto& [v, w] : g.neighbors(u)) {
      (void)w;
      if (v < u) continue;
      if (dist_s[v] == kUnreachable) return false;
      alpha = std::max(alpha, static_cast<double>(dist_s[v]));
    }
  }
  if (g.edge_count() == 0) alpha = 1;
  result.certified_stretch = {alpha, 0.0};
  return true;
}

}  // namespace gossipsim
