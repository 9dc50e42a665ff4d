#include "gossipsim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace gossipsim {

namespace {

std::string node_text(NodeId u) { return std::to_string(u); }

}  // namespace

// ---- Graph ---------------------------------------------------------------

void Graph::check_node(NodeId u) const {
  if (u >= adj_.size()) {
    throw InvalidParams("node id " + node_text(u) + " out of range [0, " +
                        std::to_string(adj_.size()) + ")");
  }
}

void Graph::add_edge(NodeId u, NodeId v, double w) {
  check_node(u);
  check_node(v);
  if (u == v) throw InvalidParams("add_edge: self-loop; use add_self_loop_weight");
  if (!(w > 0)) throw InvalidParams("add_edge: weight must be positive");
  auto insert_half = [&](NodeId a, NodeId b) {
    auto& row = adj_[a];
    auto it = std::lower_bound(row.begin(), row.end(), b,
                               [](const auto& e, NodeId id) { return e.first < id; });
    if (it != row.end() && it->first == b) {
      throw InvalidParams("duplicate edge " + node_text(u) + "-" + node_text(v));
    }
    row.insert(it, {b, w});
  };
  insert_half(u, v);
  insert_half(v, u);
  ++m_;
}

void Graph::add_self_loop_weight(NodeId u, double w_uu) {
  check_node(u);
  if (w_uu < 0) throw InvalidParams("self-loop weight must be nonnegative");
  self_loop_[u] += w_uu;
}

bool Graph::has_edge(NodeId u, NodeId v) const { return edge_weight(u, v) > 0; }

double Graph::edge_weight(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  if (u == v) return self_loop_[u];
  const auto& row = adj_[u];
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const auto& e, NodeId id) { return e.first < id; });
  if (it != row.end() && it->first == v) return it->second;
  return 0.0;
}

double Graph::weighted_degree(NodeId u) const {
  check_node(u);
  double d = self_loop_[u];
  for (const auto& [v, w] : adj_[u]) d += w;
  return d;
}

double Graph::total_volume() const {
  double vol = 0;
  for (NodeId u = 0; u < adj_.size(); ++u) vol += weighted_degree(u);
  return vol;
}

bool Graph::is_unweighted() const {
  if (!loop_free()) return false;
  for (const auto& row : adj_)
    for (const auto& [v, w] : row)
      if (w != 1.0) return false;
  return true;
}

bool Graph::loop_free() const {
  return std::all_of(self_loop_.begin(), self_loop_.end(), [](double w) { return w == 0.0; });
}

// ---- VertexSet -------------------------------------------------------------

void VertexSet::normalize() {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::all(std::size_t n) {
  std::vector<NodeId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(i);
  return VertexSet(std::move(ids));
}

bool VertexSet::contains(NodeId u) const {
  return std::binary_search(members_.begin(), members_.end(), u);
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  std::vector<NodeId> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet VertexSet::unite(const VertexSet& other) const {
  std::vector<NodeId> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

bool VertexSet::subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

// ---- DirectedEdgeSet -------------------------------------------------------

DirectedEdgeSet DirectedEdgeSet::full(const Graph& g) {
  DirectedEdgeSet f(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto& row = f.out_[u];
    row.reserve(g.degree(u));
    for (const auto& [v, w] : g.neighbors(u)) row.push_back(v);
    f.size_ += row.size();
  }
  return f;
}

void DirectedEdgeSet::insert(NodeId u, NodeId w) {
  auto& row = out_[u];
  auto it = std::lower_bound(row.begin(), row.end(), w);
  if (it != row.end() && *it == w) return;
  row.insert(it, w);
  ++size_;
}

bool DirectedEdgeSet::contains(NodeId u, NodeId w) const {
  if (u >= out_.size()) return false;
  return std::binary_search(out_[u].begin(), out_[u].end(), w);
}

DirectedEdgeSet DirectedEdgeSet::minus(const DirectedEdgeSet& other) const {
  DirectedEdgeSet result(out_.size());
  for (NodeId u = 0; u < out_.size(); ++u) {
    auto& row = result.out_[u];
    if (u < other.out_.size()) {
      std::set_difference(out_[u].begin(), out_[u].end(), other.out_[u].begin(),
                          other.out_[u].end(), std::back_inserter(row));
    } else {
      row = out_[u];
    }
    result.size_ += row.size();
  }
  return result;
}

bool DirectedEdgeSet::is_symmetric() const {
  for (NodeId u = 0; u < out_.size(); ++u)
    for (NodeId w : out_[u])
      if (!contains(w, u)) return false;
  return true;
}

std::vector<std::pair<NodeId, NodeId>> DirectedEdgeSet::unordered_pairs() const {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < out_.size(); ++u)
    for (NodeId w : out_[u])
      if (u < w || !contains(w, u)) pairs.emplace_back(std::min(u, w), std::max(u, w));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

// ---- volumes and conductance ------------------------------------------------

double volume(const Graph& g, const VertexSet& s) {
  double vol = 0;
  for (NodeId u : s) vol += g.weighted_degree(u);
  return vol;
}

double cut_weight(const Graph& g, const VertexSet& s, const VertexSet& t) {
  double w = 0;
  for (NodeId u : s) {
    for (const auto& [v, wv] : g.neighbors(u))
      if (t.contains(v)) w += wv;
    if (g.self_loop(u) > 0 && t.contains(u)) w += g.self_loop(u);
  }
  return w;
}

double cut_conductance(const Graph& g, const VertexSet& s, const VertexSet& t) {
  if (s.intersects(t)) throw OverlappingSets("cut_conductance: sets overlap");
  const double vs = volume(g, s);
  const double vt = volume(g, t);
  const double denom = std::min(vs, vt);
  if (denom <= 0) throw ZeroVolume("cut_conductance: a side has zero volume");
  return cut_weight(g, s, t) / denom;
}

namespace {

// Shared by exact set_conductance and the decomposition's exact sparse-cut
// search: per-member volumes plus the internal edge list of H.
struct InducedView {
  std::vector<NodeId> members;
  std::vector<double> member_volume;          // ambient weighted degree
  std::vector<std::tuple<int, int, double>> internal_edges;  // index pairs, i < j
  double total_volume = 0;

  explicit InducedView(const Graph& g, const VertexSet& h) {
    members.assign(h.begin(), h.end());
    member_volume.reserve(members.size());
    std::vector<int> index(g.node_count(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const NodeId u = members[i];
      member_volume.push_back(g.weighted_degree(u));
      total_volume += member_volume.back();
      for (const auto& [v, w] : g.neighbors(u)) {
        const int j = index[v];
        if (j > static_cast<int>(i)) internal_edges.emplace_back(static_cast<int>(i), j, w);
      }
    }
  }

  double subset_volume(std::uint64_t mask) const {
    double vol = 0;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (mask & (1ULL << i)) vol += member_volume[i];
    return vol;
  }

  double crossing_weight(std::uint64_t mask) const {
    double w = 0;
    for (const auto& [i, j, wij] : internal_edges) {
      const bool a = mask & (1ULL << i);
      const bool b = mask & (1ULL << j);
      if (a != b) w += wij;
    }
    return w;
  }
};

Conductance set_conductance_exact(const Graph& g, const VertexSet& h) {
  const InducedView view(g, h);
  const std::size_t k = view.members.size();
  Conductance best;
  // Fix member 0 on the S side so each unordered bipartition appears once.
  const std::uint64_t limit = 1ULL << (k - 1);
  for (std::uint64_t rest = 0; rest < limit; ++rest) {
    const std::uint64_t mask = (rest << 1) | 1ULL;
    if (mask == (1ULL << k) - 1) continue;  // S = H is not a bipartition
    const double vs = view.subset_volume(mask);
    const double vt = view.total_volume - vs;
    if (vs <= 0 || vt <= 0) continue;
    const double phi = view.crossing_weight(mask) / std::min(vs, vt);
    if (phi < best.value) best.value = phi;
  }
  best.certified = true;
  return best;
}

Conductance set_conductance_sweep(const Graph& g, const VertexSet& h) {
  const auto order = sweep_order(g, h);
  Conductance best;
  best.certified = false;
  std::vector<NodeId> prefix;
  prefix.reserve(order.size());
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    prefix.push_back(order[i]);
    VertexSet s(prefix);
    VertexSet rest = VertexSet(std::vector<NodeId>(order.begin() + i + 1, order.end()));
    const double vs = volume(g, s);
    const double vt = volume(g, rest);
    if (vs <= 0 || vt <= 0) continue;
    const double phi = cut_weight(g, s, rest) / std::min(vs, vt);
    if (phi < best.value) best.value = phi;
  }
  return best;
}

}  // namespace

Conductance set_conductance(const Graph& g, const VertexSet& h, ConductanceMode mode,
                            std::size_t exact_limit) {
  if (h.size() < 2) throw InvalidParams("set_conductance: need at least two vertices");
  for (NodeId u : h)
    if (u >= g.node_count()) throw InvalidParams("set_conductance: vertex outside graph");
  const bool small = h.size() <= exact_limit;
  switch (mode) {
    case ConductanceMode::kExact:
      if (!small) {
        throw TooLargeForExact("set_conductance: " + std::to_string(h.size()) +
                               " vertices exceeds exact limit " + std::to_string(exact_limit));
      }
      return set_conductance_exact(g, h);
    case ConductanceMode::kSweep:
      return set_conductance_sweep(g, h);
    case ConductanceMode::kAuto:
    default:
      return small ? set_conductance_exact(g, h) : set_conductance_sweep(g, h);
  }
}

Graph strongly_induced(const Graph& g, const VertexSet& u) {
  std::vector<int> index(g.node_count(), -1);
  const auto mem = u.members();
  for (std::size_t i = 0; i < mem.size(); ++i) {
    if (mem[i] >= g.node_count()) throw InvalidParams("strongly_induced: vertex outside graph");
    index[mem[i]] = static_cast<int>(i);
  }
  Graph h(mem.size());
  for (std::size_t i = 0; i < mem.size(); ++i) {
    const NodeId a = mem[i];
    double loop = g.self_loop(a);
    for (const auto& [v, w] : g.neighbors(a)) {
      const int j = index[v];
      if (j < 0) {
        loop += w;  // boundary edge folded into the loop
      } else if (j > static_cast<int>(i)) {
        h.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j), w);
      }
    }
    if (loop > 0) h.add_self_loop_weight(static_cast<NodeId>(i), loop);
  }
  return h;
}

// ---- hereditary density ------------------------------------------------------

namespace {

// Dinic max-flow on a unit/small-capacity network.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(n, -1), level_(n), iter_(n) {}

  void add_edge(int from, int to, long long cap) {
    edges_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  long long run(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (long long f = dfs(s, t, kInf)) flow += f;
    }
    return flow;
  }

 private:
  static constexpr long long kInf = 1LL << 60;
  struct Edge { int to; int next; long long cap; };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    q.push(s);
    level_[s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[u]; e >= 0; e = edges_[e].next) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  long long dfs(int u, int t, long long limit) {
    if (u == t) return limit;
    for (int& e = iter_[u]; e >= 0; e = edges_[e].next) {
      Edge& ed = edges_[e];
      if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
        const long long f = dfs(ed.to, t, std::min(limit, ed.cap));
        if (f > 0) {
          ed.cap -= f;
          edges_[e ^ 1].cap += f;
          return f;
        }
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

// An orientation with out-degree <= d exists iff every induced subgraph on S
// has at most d*|S| edges, so feasibility of d is a single max-flow check.
bool density_feasible(const Graph& g, int d) {
  const int n = static_cast<int>(g.node_count());
  const int m = static_cast<int>(g.edge_count());
  const int source = n + m;
  const int sink = n + m + 1;
  MaxFlow flow(n + m + 2);
  int edge_index = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const auto& [v, w] : g.neighbors(u)) {
      (void)w;
      if (u < v) {
        const int enode = n + edge_index;
        flow.add_edge(source, enode, 1);
        flow.add_edge(enode, static_cast<int>(u), 1);
        flow.add_edge(enode, static_cast<int>(v), 1);
        ++edge_index;
      }
    }
  }
  for (int u = 0; u < n; ++u) flow.add_edge(u, sink, d);
  return flow.run(source, sink) == m;
}

}  // namespace

int hereditary_density(const Graph& g) {
  if (!g.is_unweighted()) throw InvalidParams("hereditary_density: graph must be unweighted and loop-free");
  if (g.edge_count() == 0) return 0;
  int lo = 1;
  int hi = 1;
  for (NodeId u = 0; u < g.node_count(); ++u)
    hi = std::max(hi, static_cast<int>(g.degree(u)));
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (density_feasible(g, mid)) hi = mid; else lo = mid + 1;
  }
  return lo;
}

// ---- spectral sweep order -----------------------------------------------------

std::vector<NodeId> sweep_order(const Graph& g, const VertexSet& h) {
  const Graph sub = strongly_induced(g, h);
  const std::size_t k = sub.node_count();
  std::vector<double> deg(k);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < k; ++i) {
    deg[i] = sub.weighted_degree(static_cast<NodeId>(i));
    if (deg[i] > 0) active.push_back(i);
  }

  std::vector<double> vec(k, 0.0);
  const RandomSource rng(0x5eedu);
  for (std::size_t i : active) vec[i] = rng.unit(i) - 0.5;

  std::vector<double> top(k, 0.0);  // dominant eigenvector: sqrt(deg), normalized
  double top_norm = 0;
  for (std::size_t i : active) top_norm += deg[i];
  top_norm = std::sqrt(top_norm);
  for (std::size_t i : active) top[i] = std::sqrt(deg[i]) / top_norm;

  auto deflate = [&](std::vector<double>& x) {
    double dot = 0;
    for (std::size_t i : active) dot += x[i] * top[i];
    for (std::size_t i : active) x[i] -= dot * top[i];
  };
  auto normalize = [&](std::vector<double>& x) {
    double norm = 0;
    for (std::size_t i : active) norm += x[i] * x[i];
    norm = std::sqrt(norm);
    if (norm > 0)
      for (std::size_t i : active) x[i] /= norm;
    return norm;
  };

  deflate(vec);
  normalize(vec);
  std::vector<double> next(k, 0.0);
  for (int step = 0; step < 200; ++step) {
    // One application of (I + D^-1/2 W D^-1/2) / 2, then deflation.
    for (std::size_t i : active) {
      double acc = sub.self_loop(static_cast<NodeId>(i)) / deg[i] * vec[i];
      for (const auto& [j, w] : sub.neighbors(static_cast<NodeId>(i)))
        acc += w / std::sqrt(deg[i] * deg[j]) * vec[j];
      next[i] = 0.5 * (vec[i] + acc);
    }
    deflate(next);
    if (normalize(next) == 0) break;
    double delta = 0;
    for (std::size_t i : active) delta = std::max(delta, std::abs(next[i] - vec[i]));
    vec.swap(next);
    if (delta < 1e-9) break;
  }

  // Embedding coordinate: eigenvector of the walk operator is D^-1/2 times
  // the symmetric one.
  std::vector<NodeId> order(h.begin(), h.end());
  std::vector<double> coord(k, std::numeric_limits<double>::infinity());
  for (std::size_t i : active) coord[i] = vec[i] / std::sqrt(deg[i]);
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (coord[a] != coord[b]) return coord[a] < coord[b];
    return a < b;
  });
  std::vector<NodeId> result(k);
  for (std::size_t i = 0; i < k; ++i) result[i] = order[idx[i]];
  return result;
}

// ---- generators ---------------------------------------------------------------

Graph make_path(std::size_t n) {
  if (n == 0) throw InvalidParams("path: n must be positive");
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return g;
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw InvalidParams("cycle: n must be at least 3");
  Graph g = make_path(n);
  g.add_edge(static_cast<NodeId>(n - 1), 0);
  return g;
}

Graph make_star(std::size_t leaves) {
  if (leaves == 0) throw InvalidParams("star: need at least one leaf");
  Graph g(leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) g.add_edge(0, static_cast<NodeId>(i));
  return g;
}

Graph make_clique(std::size_t n) {
  if (n == 0) throw InvalidParams("clique: n must be positive");
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
  return g;
}

Graph make_dumbbell(std::size_t clique_size) {
  if (clique_size < 2) throw InvalidParams("dumbbell: clique size must be at least 2");
  const std::size_t k = clique_size;
  Graph g(2 * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
      g.add_edge(static_cast<NodeId>(k + i), static_cast<NodeId>(k + j));
    }
  g.add_edge(static_cast<NodeId>(k - 1), static_cast<NodeId>(k));  // bridge
  return g;
}

Graph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw InvalidParams("erdos_renyi: n must be positive");
  if (p < 0 || p > 1) throw InvalidParams("erdos_renyi: p must lie in [0, 1]");
  Graph g(n);
  const RandomSource rng = RandomSource(seed).stream(0xe7d05);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.unit(u, v) < p) g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
  return g;
}

Graph make_figure1(std::size_t n) {
  if (n == 0) throw InvalidParams("figure1: n must be positive");
  const std::size_t z_count = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2)))));
  constexpr std::size_t kPairsPerU = 4;
  const NodeId v = 0;
  const NodeId w = 1;
  Graph g(2 + z_count + n + 2 * kPairsPerU * n);
  for (std::size_t i = 0; i < z_count + n; ++i) {
    const NodeId x = static_cast<NodeId>(2 + i);
    g.add_edge(v, x);
    g.add_edge(w, x);
  }
  // Each u node carries private two-node cliques whose members are also
  // adjacent to u. Every clique member reaches u within two rounds of the
  // random-unheard-neighbor rule, so a distracted u contacts its first hub
  // at round three sharp, after the hubs already know about each other
  // through the z layer. Half of those u nodes then learn of the far hub
  // indirectly and never contact it, leaving one hub contact per round as
  // the only way to finish.
  const std::size_t pair_base = 2 + z_count + n;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId u = static_cast<NodeId>(2 + z_count + i);
    for (std::size_t a = 0; a < kPairsPerU; ++a) {
      const NodeId m0 = static_cast<NodeId>(pair_base + 2 * (kPairsPerU * i + a));
      const NodeId m1 = m0 + 1;
      g.add_edge(u, m0);
      g.add_edge(u, m1);
      g.add_edge(m0, m1);
    }
  }
  return g;
}

Graph generate(GraphFamily family, const GenParams& params) {
  switch (family) {
    case GraphFamily::kPath: return make_path(params.n);
    case GraphFamily::kCycle: return make_cycle(params.n);
    case GraphFamily::kStar: return make_star(params.n);
    case GraphFamily::kClique: return make_clique(params.n);
    case GraphFamily::kDumbbell: return make_dumbbell(params.n);
    case GraphFamily::kErdosRenyi: return make_erdos_renyi(params.n, params.p, params.seed);
    case GraphFamily::kFigure1: return make_figure1(params.n);
  }
  throw InvalidParams("unknown graph family");
}

std::optional<GraphFamily> family_from_name(const std::string& name) {
  if (name == "path") return GraphFamily::kPath;
  if (name == "cycle") return GraphFamily::kCycle;
  if (name == "star") return GraphFamily::kStar;
  if (name == "clique") return GraphFamily::kClique;
  if (name == "dumbbell") return GraphFamily::kDumbbell;
  if (name == "erdos_renyi" || name == "er") return GraphFamily::kErdosRenyi;
  if (name == "figure1") return GraphFamily::kFigure1;
  return std::nullopt;
}

std::string family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::kPath: return "path";
    case GraphFamily::kCycle: return "cycle";
    case GraphFamily::kStar: return "star";
    case GraphFamily::kClique: return "clique";
    case GraphFamily::kDumbbell: return "dumbbell";
    case GraphFamily::kErdosRenyi: return "erdos_renyi";
    case GraphFamily::kFigure1: return "figure1";
  }
  return "unknown";
}

// ---- traversal ------------------------------------------------------------------

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
  if (source >= g.node_count()) throw InvalidParams("bfs: source outside graph");
  std::queue<NodeId> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (const auto& [v, w] : g.neighbors(u)) {
      (void)w;
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::uint32_t d) { return d == kUnreachable; });
}

std::size_t diameter(const Graph& g) {
  if (g.node_count() == 0) return 0;
  std::size_t best = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto dist = bfs_distances(g, u);
    for (const std::uint32_t d : dist) {
      if (d == kUnreachable) throw Disconnected("diameter: graph is disconnected");
      best = std::max<std::size_t>(best, d);
    }
  }
  return best;
}

// ---- file format ---------------------------------------------------------------

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0, m = 0;
  bool have_header = false;
  Graph g;
  std::size_t edges_seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    if (!have_header) {
      if (!(fields >> n >> m)) {
        std::string word;
        std::istringstream probe(line);
        if (probe >> word) throw ParseError("line " + std::to_string(line_no) + ": expected 'n m' header");
        continue;  // blank or comment before the header
      }
      g = Graph(n);
      have_header = true;
      continue;
    }
    std::size_t u, v;
    if (!(fields >> u >> v)) {
      std::string word;
      std::istringstream probe(line);
      if (probe >> word) throw ParseError("line " + std::to_string(line_no) + ": expected 'u v [w]'");
      continue;
    }
    double w = 1.0;
    fields >> w;
    if (u >= n || v >= n)
      throw ParseError("line " + std::to_string(line_no) + ": node id out of range");
    try {
      if (u == v) {
        g.add_self_loop_weight(static_cast<NodeId>(u), w);
      } else {
        g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), w);
      }
    } catch (const InvalidParams& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    ++edges_seen;
  }
  if (!have_header) throw ParseError("missing 'n m' header");
  if (edges_seen != m)
    throw ParseError("header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges_seen));
  return g;
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  return parse_graph(in);
}

void write_graph(const Graph& g, std::ostream& out, const std::string& header_comment) {
  if (!header_comment.empty()) {
    std::istringstream lines(header_comment);
    std::string l;
    while (std::getline(lines, l)) out << "# " << l << "\n";
  }
  std::size_t records = g.edge_count();
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (g.self_loop(u) > 0) ++records;
  out << g.node_count() << ' ' << records << "\n";
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (g.self_loop(u) > 0) out << u << ' ' << u << ' ' << g.self_loop(u) << "\n";
    for (const auto& [v, w] : g.neighbors(u)) {
      if (u < v) {
        out << u << ' ' << v;
        if (w != 1.0) out << ' ' << w;
        out << "\n";
      }
    }
  }
}

void save_graph(const Graph& g, const std::string& path, const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  write_graph(g, out, header_comment);
}

}  // namespace gossipsim
