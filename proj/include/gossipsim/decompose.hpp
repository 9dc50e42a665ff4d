#pragma once

#include <optional>
#include <vector>

#include "gossipsim/graph.hpp"

namespace gossipsim {

/// S ⊆ U of maximum volume with vol(S) <= vol(U)/2 and phi(S, U-S) <= xi, or
/// none when no such cut exists. Exact enumeration up to exact_limit
/// members; ties on volume break to the lexicographically smallest member
/// list. Sweep mode evaluates spectral prefix cuts only and is not a
/// certificate of absence.
struct SparseCut {
  VertexSet cut;
  double conductance = 0;
  double cut_volume = 0;
  bool certified = true;
};

std::optional<SparseCut> find_sparse_cut(const Graph& g, const VertexSet& u, double xi,
                                         ConductanceMode mode = ConductanceMode::kAuto,
                                         std::size_t exact_limit = kDefaultExactLimit);

struct ClusterInfo {
  VertexSet members;
  Conductance phi;  // vacuous +inf for singletons / zero-volume clusters
};

struct ClusterPartition {
  std::vector<ClusterInfo> clusters;
  double xi = 0;
  double total_cut_weight = 0;  // sum over cluster pairs of w(V_i, V_j)
  std::size_t recursion_depth = 0;
  bool certified = true;  // false when any step used the sweep heuristic
};

/// Recursive decomposition of U: no eligible sparse cut makes U a cluster;
/// an unbalanced cut (vol <= vol(U)/4) splits off U-S whole; a balanced one
/// recurses into both sides. Edge weights must lie in {0} or [1, inf).
ClusterPartition cluster(const Graph& g, const VertexSet& u, double xi,
                         ConductanceMode mode = ConductanceMode::kAuto,
                         std::size_t exact_limit = kDefaultExactLimit);

struct ClusterCheck {
  std::size_t cluster_index = 0;
  std::size_t size = 0;
  double phi = 0;
  bool vacuous = false;  // fewer than two members or zero volume
  bool certified = true;
  bool holds = false;
};

struct PartitionCheck {
  bool disjoint_cover = false;
  bool stored_values_match = false;  // recomputed cut weight agrees
  double phi_bound = 0;              // zeta / log_{4/3} vol(V)
  double cut_bound = 0;              // (3 zeta / 2) vol(V)
  double recomputed_cut_weight = 0;
  bool cut_within_bound = false;
  std::vector<ClusterCheck> clusters;
  bool all_hold = false;
};

/// Checks a partition against the decomposition guarantees for parameter
/// zeta: every cluster has Phi >= zeta / log_{4/3} vol(V) and the total
/// inter-cluster weight is at most (3 zeta / 2) vol(V). Failures are report
/// entries, not errors.
PartitionCheck verify_partition(const Graph& g, const ClusterPartition& p, double zeta,
                                std::size_t exact_limit = kDefaultExactLimit);

struct BalcutCheck {
  std::optional<SparseCut> max_cut;
  double vol_u = 0;
  double vol_s = 0;  // 0 when no cut exists
  bool precondition = false;  // vol(S) <= vol(U)/4
  double phi_remainder = 0;   // Phi(U - S), +inf when vacuous
  double bound = 0;           // xi / 3
  bool holds = false;         // vacuously true when the precondition fails
};

/// When the maximum-volume sparse cut is small (vol(S) <= vol(U)/4, with
/// S = none counted as volume 0), the remainder must satisfy
/// Phi(U-S) >= xi/3.
BalcutCheck verify_balcut(const Graph& g, const VertexSet& u, double xi,
                          std::size_t exact_limit = kDefaultExactLimit);

}  // namespace gossipsim
