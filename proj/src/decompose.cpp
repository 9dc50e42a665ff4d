#include "gossipsim/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "gossipsim/errors.hpp"

namespace gossipsim {

namespace {

constexpr double kTol = 1e-12;

struct InducedView {
  std::vector<NodeId> members;
  std::vector<double> member_volume;
  std::vector<std::tuple<int, int, double>> internal_edges;
  double total_volume = 0;

  InducedView(const Graph& g, const VertexSet& h) {
    members.assign(h.begin(), h.end());
    std::vector<int> index(g.node_count(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<int>(i);
    member_volume.reserve(members.size());
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
};

std::optional<SparseCut> sparse_cut_exact(const Graph& g, const VertexSet& u, double xi) {
  const InducedView view(g, u);
  const std::size_t k = view.members.size();
  if (k < 2) return std::nullopt;

  std::optional<std::uint64_t> best_mask;
  double best_volume = -1;
  double best_phi = 0;
  std::vector<NodeId> best_members;

  auto mask_members = [&](std::uint64_t mask) {
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1ULL << i)) ids.push_back(view.members[i]);
    return ids;
  };

  for (std::uint64_t mask = 1; mask + 1 < (1ULL << k); ++mask) {
    double vol_s = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1ULL << i)) vol_s += view.member_volume[i];
    const double vol_rest = view.total_volume - vol_s;
    if (vol_s > view.total_volume / 2 + kTol) continue;
    if (vol_s <= 0 || vol_rest <= 0) continue;
    double crossing = 0;
    for (const auto& [i, j, w] : view.internal_edges) {
      const bool a = mask & (1ULL << i);
      const bool b = mask & (1ULL << j);
      if (a != b) crossing += w;
    }
    const double phi = crossing / std::min(vol_s, vol_rest);
    if (phi > xi + kTol) continue;
    if (vol_s > best_volume + kTol) {
      best_mask = mask;
      best_volume = vol_s;
      best_phi = phi;
      best_members = mask_members(mask);
    } else if (std::abs(vol_s - best_volume) <= kTol) {
      auto ids = mask_members(mask);
      if (ids < best_members) {
        best_mask = mask;
        best_phi = phi;
        best_members = std::move(ids);
      }
    }
  }
  if (!best_mask) return std::nullopt;
  SparseCut cut;
  cut.cut = VertexSet(best_members);
  cut.conductance = best_phi;
  cut.cut_volume = best_volume;
  cut.certified = true;
  return cut;
}

std::optional<SparseCut> sparse_cut_sweep(const Graph& g, const VertexSet& u, double xi) {
  const auto order = sweep_order(g, u);
  const double vol_u = volume(g, u);
  std::optional<SparseCut> best;
  std::vector<NodeId> prefix;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    prefix.push_back(order[i]);
    const VertexSet side(prefix);
    const VertexSet rest = u.minus(side);
    const double vol_side = volume(g, side);
    const double vol_rest = vol_u - vol_side;
    if (vol_side <= 0 || vol_rest <= 0) continue;
    const double phi = cut_weight(g, side, rest) / std::min(vol_side, vol_rest);
    if (phi > xi + kTol) continue;
    const bool side_small = vol_side <= vol_rest;
    const VertexSet& candidate = side_small ? side : rest;
    const double vol_candidate = side_small ? vol_side : vol_rest;
    if (vol_candidate > vol_u / 2 + kTol) continue;
    if (!best || vol_candidate > best->cut_volume + kTol) {
      best = SparseCut{candidate, phi, vol_candidate, false};
    }
  }
  return best;
}

void check_decomposition_weights(const Graph& g) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (g.self_loop(u) != 0 && g.self_loop(u) < 1 - kTol)
      throw InvalidParams("decomposition input: loop weights must be 0 or >= 1");
    for (const auto& [v, w] : g.neighbors(u))
      if (w < 1 - kTol)
        throw InvalidParams("decomposition input: edge weights must be 0 or >= 1");
  }
}

}  // namespace

std::optional<SparseCut> find_sparse_cut(const Graph& g, const VertexSet& u, double xi,
                                         ConductanceMode mode, std::size_t exact_limit) {
  for (NodeId v : u)
    if (v >= g.node_count()) throw InvalidParams("find_sparse_cut: vertex outside graph");
  const bool small = u.size() <= exact_limit;
  switch (mode) {
    case ConductanceMode::kExact:
      if (!small)
        throw TooLargeForExact("find_sparse_cut: " + std::to_string(u.size()) +
                               " vertices exceeds exact limit " + std::to_string(exact_limit));
      return sparse_cut_exact(g, u, xi);
    case ConductanceMode::kSweep:
      return sparse_cut_sweep(g, u, xi);
    case ConductanceMode::kAuto:
    default:
      return small ? sparse_cut_exact(g, u, xi) : sparse_cut_sweep(g, u, xi);
  }
}

ClusterPartition cluster(const Graph& g, const VertexSet& u, double xi, ConductanceMode mode,
                         std::size_t exact_limit) {
  check_decomposition_weights(g);
  if (xi <= 0 || xi >= 1) throw InvalidParams("cluster: xi must lie in (0, 1)");

  ClusterPartition partition;
  partition.xi = xi;

  std::vector<VertexSet> final_clusters;
  auto recurse = [&](auto&& self, const VertexSet& part, std::size_t depth) -> void {
    if (part.empty()) return;
    partition.recursion_depth = std::max(partition.recursion_depth, depth);
    const auto cut = find_sparse_cut(g, part, xi, mode, exact_limit);
    if (!cut) {
      final_clusters.push_back(part);
      return;
    }
    if (!cut->certified) partition.certified = false;
    const VertexSet rest = part.minus(cut->cut);
    if (cut->cut_volume <= volume(g, part) / 4 + kTol) {
      final_clusters.push_back(rest);
      self(self, cut->cut, depth + 1);
    } else {
      self(self, cut->cut, depth + 1);
      self(self, rest, depth + 1);
    }
  };
  recurse(recurse, u, 0);

  std::sort(final_clusters.begin(), final_clusters.end());
  for (auto& members : final_clusters) {
    ClusterInfo info;
    if (members.size() >= 2) {
      info.phi = set_conductance(g, members, mode, exact_limit);
      if (!info.phi.certified) partition.certified = false;
    }
    info.members = std::move(members);
    partition.clusters.push_back(std::move(info));
  }
  for (std::size_t i = 0; i < partition.clusters.size(); ++i)
    for (std::size_t j = i + 1; j < partition.clusters.size(); ++j)
      partition.total_cut_weight +=
          cut_weight(g, partition.clusters[i].members, partition.clusters[j].members);
  return partition;
}

PartitionCheck verify_partition(const Graph& g, const ClusterPartition& p, double zeta,
                                std::size_t exact_limit) {
  if (zeta <= 0 || zeta >= 1) throw InvalidParams("verify_partition: zeta must lie in (0, 1)");
  PartitionCheck check;
  const double vol_v = g.total_volume();
  const double log_term = std::log(vol_v) / std::log(4.0 / 3.0);
  check.phi_bound = log_term > 0 ? zeta / log_term : 0;
  check.cut_bound = 1.5 * zeta * vol_v;

  // Disjoint cover of V.
  std::vector<char> seen(g.node_count(), 0);
  bool disjoint = true;
  std::size_t covered = 0;
  for (const auto& info : p.clusters)
    for (const NodeId v : info.members) {
      if (v >= g.node_count() || seen[v]) {
        disjoint = false;
      } else {
        seen[v] = 1;
        ++covered;
      }
    }
  check.disjoint_cover = disjoint && covered == g.node_count();

  // Independent cut-weight recomputation: one pass over the edges.
  std::vector<int> owner(g.node_count(), -1);
  for (std::size_t i = 0; i < p.clusters.size(); ++i)
    for (const NodeId v : p.clusters[i].members)
      if (v < g.node_count()) owner[v] = static_cast<int>(i);
  double crossing = 0;
  for (NodeId a = 0; a < g.node_count(); ++a)
    for (const auto& [b, w] : g.neighbors(a))
      if (a < b && owner[a] != owner[b]) crossing += w;
  check.recomputed_cut_weight = crossing;
  check.stored_values_match = std::abs(crossing - p.total_cut_weight) <= 1e-9;
  check.cut_within_bound = crossing <= check.cut_bound + kTol;

  bool clusters_hold = true;
  for (std::size_t i = 0; i < p.clusters.size(); ++i) {
    const auto& info = p.clusters[i];
    ClusterCheck row;
    row.cluster_index = i;
    row.size = info.members.size();
    if (info.members.size() < 2 || volume(g, info.members) <= 0) {
      row.vacuous = true;
      row.phi = std::numeric_limits<double>::infinity();
      row.holds = true;
    } else {
      const Conductance phi = set_conductance(g, info.members, ConductanceMode::kAuto, exact_limit);
      row.phi = phi.value;
      row.certified = phi.certified;
      row.holds = phi.value >= check.phi_bound - kTol;
      if (std::isfinite(info.phi.value) && std::abs(info.phi.value - phi.value) > 1e-9)
        check.stored_values_match = false;
    }
    clusters_hold = clusters_hold && row.holds;
    check.clusters.push_back(row);
  }
  check.all_hold = check.disjoint_cover && clusters_hold && check.cut_within_bound;
  return check;
}

BalcutCheck verify_balcut(const Graph& g, const VertexSet& u, double xi,
                          std::size_t exact_limit) {
  BalcutCheck check;
  check.vol_u = volume(g, u);
  check.bound = xi / 3.0;
  check.max_cut = find_sparse_cut(g, u, xi, ConductanceMode::kExact, exact_limit);
  check.vol_s = check.max_cut ? check.max_cut->cut_volume : 0.0;
  check.precondition = check.vol_s <= check.vol_u / 4 + kTol;
  if (!check.precondition) {
    check.holds = true;  // statement not triggered
    check.phi_remainder = std::numeric_limits<double>::quiet_NaN();
    return check;
  }
  const VertexSet rest = check.max_cut ? u.minus(check.max_cut->cut) : u;
  if (rest.size() < 2 || volume(g, rest) <= 0) {
    check.phi_remainder = std::numeric_limits<double>::infinity();
    check.holds = true;
    return check;
  }
  check.phi_remainder = set_conductance(g, rest, ConductanceMode::kExact, exact_limit).value;
  check.holds = check.phi_remainder >= check.bound - kTol;
  return check;
}

}  // namespace gossipsim
