#pragma once

#include <optional>
#include <span>
#include <utility>

#include "gossipsim/engine.hpp"
#include "gossipsim/graph.hpp"
#include "gossipsim/protocols.hpp"

namespace gossipsim {

struct SpannerResult {
  Graph subgraph;
  std::size_t source_rounds = 0;  // rounds of the producing run
  std::optional<std::pair<double, double>> certified_stretch;  // (alpha, beta)
  int density = -1;  // hereditary density, filled by certify_spanner
};

/// Union of every edge activated in any round of a completed
/// NeighborExchange run: each trace contributes its closures twice, once
/// forward and once reversed, so total_rounds is 2*tau per trace.
SpannerResult extract_spanner(const Graph& g, std::span<const ProcessTrace> traces,
                              std::size_t total_rounds, bool completed);

/// Convenience extraction from a trace-recording Superstep report.
SpannerResult extract_spanner(const Graph& g, const SuperstepReport& report);

struct StretchCheck {
  bool holds = false;
  std::optional<std::pair<NodeId, NodeId>> worst_pair;
  double worst_distance = 0;  // spanner distance of the worst pair
  double worst_allowed = 0;   // alpha * d_G + beta for that pair
};

/// Distance check dist_S(u,v) <= alpha * dist_G(u,v) + beta via BFS from
/// every node. neighbors_only restricts to pairs at distance 1, which
/// certifies (alpha, 0)-stretch: neighbor stretch alpha concatenates along
/// shortest paths. s must be a subgraph of g.
StretchCheck verify_stretch(const Graph& g, const Graph& s, double alpha, double beta,
                            bool neighbors_only = false);

int spanner_density(const Graph& s);

/// Measures the exact neighbor stretch and the hereditary density and, when
/// the stretch is finite, stores the certificate on the result. Returns
/// false when some g-edge has no connecting path in the extracted subgraph.
bool certify_spanner(const Graph& g, SpannerResult& result);

}  // namespace gossipsim
