#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gossipsim/errors.hpp"
#include "gossipsim/random.hpp"

namespace gossipsim {

using NodeId = std::uint32_t;

constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Weighted undirected graph with optional self-loops. Node IDs are dense in
/// [0, n). Symmetry holds by construction: add_edge inserts both directions.
/// A self-loop of weight alpha is stored as w_uu = 2*alpha (both endpoints of
/// the loop contribute), so vol(V) = 2m on unweighted loop-free graphs.
class Graph {
 public:
  explicit Graph(std::size_t n = 0) : adj_(n), self_loop_(n, 0.0) {}

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return m_; }

  /// Adds the undirected edge {u, v} with weight w > 0. Duplicate edges and
  /// u == v are rejected (use add_self_loop_weight for loops).
  void add_edge(NodeId u, NodeId v, double w = 1.0);

  /// Adds `w_uu` to node u's stored loop weight. Note the storage convention:
  /// a loop of weight alpha is stored as w_uu = 2*alpha.
  void add_self_loop_weight(NodeId u, double w_uu);

  bool has_edge(NodeId u, NodeId v) const;
  double edge_weight(NodeId u, NodeId v) const;  // 0 when absent
  double self_loop(NodeId u) const { return self_loop_[u]; }

  /// Non-loop neighbors of u as (neighbor, weight), sorted by neighbor id.
  std::span<const std::pair<NodeId, double>> neighbors(NodeId u) const {
    return adj_[u];
  }

  std::size_t degree(NodeId u) const { return adj_[u].size(); }

  /// Sum over all v of w_uv, self-loop included.
  double weighted_degree(NodeId u) const;

  double total_volume() const;

  /// True when every edge has weight 1 and there are no self-loops; the
  /// protocol layer only accepts such graphs.
  bool is_unweighted() const;

  bool loop_free() const;

 private:
  std::vector<std::vector<std::pair<NodeId, double>>> adj_;
  std::vector<double> self_loop_;
  std::size_t m_ = 0;

  void check_node(NodeId u) const;
};

/// Sorted, duplicate-free set of node ids within an ambient graph.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<NodeId> ids) : members_(ids) { normalize(); }
  explicit VertexSet(std::vector<NodeId> ids) : members_(std::move(ids)) { normalize(); }

  static VertexSet all(std::size_t n);

  bool contains(NodeId u) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const NodeId> members() const { return members_; }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  VertexSet minus(const VertexSet& other) const;
  VertexSet unite(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;
  bool subset_of(const VertexSet& other) const;

  bool operator==(const VertexSet& other) const { return members_ == other.members_; }
  /// Lexicographic order on the sorted member list (deterministic tie-break).
  bool operator<(const VertexSet& other) const { return members_ < other.members_; }

 private:
  std::vector<NodeId> members_;
  void normalize();
};

/// Set of ordered node pairs, stored as per-node sorted out-neighbor lists.
class DirectedEdgeSet {
 public:
  explicit DirectedEdgeSet(std::size_t n = 0) : out_(n) {}

  /// All directed edges of g (both orientations of every undirected edge).
  static DirectedEdgeSet full(const Graph& g);

  std::size_t node_count() const { return out_.size(); }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  void insert(NodeId u, NodeId w);
  bool contains(NodeId u, NodeId w) const;
  std::span<const NodeId> out(NodeId u) const { return out_[u]; }
  std::size_t out_degree(NodeId u) const { return out_[u].size(); }

  /// Directed edges present here but not in `other`.
  DirectedEdgeSet minus(const DirectedEdgeSet& other) const;

  bool is_symmetric() const;

  /// Unordered pairs {u, w} with u < w covered by at least one orientation.
  std::vector<std::pair<NodeId, NodeId>> unordered_pairs() const;

 private:
  std::vector<std::vector<NodeId>> out_;
  std::size_t size_ = 0;
};

struct Conductance {
  double value = std::numeric_limits<double>::infinity();
  bool certified = true;  // exact enumeration vs non-certified sweep bound
};

enum class ConductanceMode { kAuto, kExact, kSweep };

constexpr std::size_t kDefaultExactLimit = 20;

/// vol(S) = w(S, V): total edge weight incident to S, self-loops included.
double volume(const Graph& g, const VertexSet& s);

/// w(S, T) = sum over u in S, v in T of w_uv. S and T may overlap; on an
/// unweighted graph w(S, S) counts every internal edge twice.
double cut_weight(const Graph& g, const VertexSet& s, const VertexSet& t);

/// phi(S, T) = w(S, T) / min(vol(S), vol(T)) for disjoint S, T.
double cut_conductance(const Graph& g, const VertexSet& s, const VertexSet& t);

/// Phi(H): minimum of phi(S, H-S) over bipartitions of H, volumes measured in
/// the ambient graph. Exact enumeration up to exact_limit members; larger
/// sets fall back to a spectral sweep-cut upper bound flagged non-certified.
/// Bipartitions with a zero-volume side are skipped; if none remain the
/// result is +infinity (vacuous).
Conductance set_conductance(const Graph& g, const VertexSet& h,
                            ConductanceMode mode = ConductanceMode::kAuto,
                            std::size_t exact_limit = kDefaultExactLimit);

/// Strongly induced subgraph of U: keeps internal edges and folds each lost
/// boundary edge into the endpoint's self-loop, so volumes of subsets of U
/// are preserved. Node i of the result is u.members()[i].
Graph strongly_induced(const Graph& g, const VertexSet& u);

/// Smallest integer d such that every induced subgraph on S has at most
/// d*|S| edges (the pseudoarboricity). Binary search on d with a max-flow
/// orientation feasibility test. Requires an unweighted, loop-free graph.
int hereditary_density(const Graph& g);

/// Spectral sweep order of h: vertices sorted by the second eigenvector of
/// the normalized adjacency operator of the strongly induced subgraph
/// (power iteration). Zero-volume vertices come last.
std::vector<NodeId> sweep_order(const Graph& g, const VertexSet& h);

// ---- generators ------------------------------------------------------

enum class GraphFamily { kPath, kCycle, kStar, kClique, kDumbbell, kErdosRenyi, kFigure1 };

struct GenParams {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

Graph generate(GraphFamily family, const GenParams& params);

Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_star(std::size_t leaves);
Graph make_clique(std::size_t n);
Graph make_dumbbell(std::size_t clique_size);
Graph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Two hub nodes v, w joined through a layer of ceil(log2 n) common z
/// neighbors plus n common u neighbors; the hubs themselves are not adjacent.
Graph make_figure1(std::size_t n);

std::optional<GraphFamily> family_from_name(const std::string& name);
std::string family_name(GraphFamily family);

// ---- traversal helpers ------------------------------------------------

/// Hop distances from source; kUnreachable where no path exists.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

bool is_connected(const Graph& g);

/// Maximum eccentricity; throws Disconnected when the graph is not connected.
std::size_t diameter(const Graph& g);

// ---- file format -------------------------------------------------------
//
// Plain text: first non-comment line "n m", then m lines "u v [w]" with
// 0-based ids and w defaulting to 1. Blank lines and '#' comments are
// ignored. A line "u u w" records a stored self-loop weight w_uu. The writer
// emits edges with u < v.

Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);
void write_graph(const Graph& g, std::ostream& out, const std::string& header_comment = "");
void save_graph(const Graph& g, const std::string& path, const std::string& header_comment = "");

}  // namespace gossipsim
