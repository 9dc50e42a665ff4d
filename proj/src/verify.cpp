#include "gossipsim/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "gossipsim/decompose.hpp"
#include "gossipsim/engine.hpp"
#include "gossipsim/graph.hpp"
#include "gossipsim/protocols.hpp"
#include "gossipsim/simulate.hpp"
#include "gossipsim/spanner.hpp"

namespace gossipsim {

namespace {

// Frozen constants for the round and message bounds. They come from the
// protocol parameters, not from fitting to runs: one Superstep iteration is
// 2*tau <= 2*(2*log2(2m)^2 + 1) rounds, and runs stay within 2*log2(2m)
// iterations (the halving behavior checked alongside), so medians obey
// 12*log2(2m)^3 with room to spare. Connections are at most one per node
// per round, which keeps completed runs under 16*n*log2(2m)^3 even with a
// generous iteration margin. DirectExchange phases cost
// ceil(4/eps*log2 n)*ceil(delta') rounds while delta' climbs to at most
// 2(1+eps)^2*delta; summing the geometric series for eps in [0.25, 1] stays
// below 48*delta*log2(n)/eps^2.
constexpr double kRoundBoundC = 12.0;
constexpr double kMessageBoundC = 16.0;
constexpr double kDirectExchangeC = 48.0;

using Clock = std::chrono::steady_clock;

struct NamedGraph {
  std::string name;
  Graph graph;
};

double log2_2m(const Graph& g) { return std::log2(2.0 * static_cast<double>(g.edge_count())); }

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(4);
  out << x;
  return out.str();
}

// The protocol corpus: paths, stars, cliques, dumbbells, Erdos-Renyi draws
// and the two-hub pathology graph, 50 graphs at full scale.
std::vector<NamedGraph> protocol_corpus(VerifyLevel level) {
  std::vector<NamedGraph> corpus;
  auto add = [&](std::string name, Graph g) {
    corpus.push_back({std::move(name), std::move(g)});
  };

  const bool full = level == VerifyLevel::kFull;
  const std::vector<std::size_t> paths = full
      ? std::vector<std::size_t>{2, 3, 5, 9, 17, 33, 65, 129, 257}
      : std::vector<std::size_t>{2, 3, 9, 33};
  for (const std::size_t n : paths) add("path(" + std::to_string(n) + ")", make_path(n));

  const std::vector<std::size_t> stars = full
      ? std::vector<std::size_t>{2, 4, 8, 16, 32, 64, 128, 256}
      : std::vector<std::size_t>{2, 8, 64};
  for (const std::size_t n : stars) add("star(" + std::to_string(n) + ")", make_star(n));

  const std::vector<std::size_t> cliques = full
      ? std::vector<std::size_t>{3, 4, 5, 6, 8, 12, 16, 24, 32}
      : std::vector<std::size_t>{3, 4, 8, 16};
  for (const std::size_t n : cliques) add("clique(" + std::to_string(n) + ")", make_clique(n));

  const std::vector<std::size_t> bells = full
      ? std::vector<std::size_t>{2, 3, 4, 5, 6, 8, 10, 12}
      : std::vector<std::size_t>{2, 4, 6};
  for (const std::size_t k : bells) add("dumbbell(" + std::to_string(k) + ")", make_dumbbell(k));

  struct ErSpec { std::size_t n; double p; std::uint64_t seed; };
  const std::vector<ErSpec> er_full = {
      {32, 0.15, 11}, {48, 0.10, 12}, {64, 0.08, 13},  {96, 0.06, 14},  {128, 0.05, 15},
      {192, 0.035, 16}, {256, 0.025, 17}, {384, 0.018, 18}, {512, 0.012, 19}, {512, 0.02, 20},
  };
  const std::vector<ErSpec> er_quick = {{32, 0.15, 11}, {64, 0.08, 13}, {128, 0.05, 15}};
  for (const auto& spec : full ? er_full : er_quick) {
    std::ostringstream name;
    name << "er(" << spec.n << "," << spec.p << "," << spec.seed << ")";
    add(name.str(), make_erdos_renyi(spec.n, spec.p, spec.seed));
  }

  const std::vector<std::size_t> figs =
      full ? std::vector<std::size_t>{4, 8, 16, 32, 64, 100} : std::vector<std::size_t>{4, 16};
  for (const std::size_t n : figs) add("figure1(" + std::to_string(n) + ")", make_figure1(n));

  return corpus;
}

// Graphs with small, independently known hereditary density.
std::vector<std::pair<NamedGraph, int>> density_corpus(VerifyLevel level) {
  std::vector<std::pair<NamedGraph, int>> corpus;
  auto add = [&](std::string name, Graph g, int delta) {
    corpus.push_back({{std::move(name), std::move(g)}, delta});
  };
  const bool full = level == VerifyLevel::kFull;

  const std::vector<std::size_t> paths =
      full ? std::vector<std::size_t>{2, 3, 7, 15, 31, 63} : std::vector<std::size_t>{3, 15};
  for (const std::size_t n : paths) add("path(" + std::to_string(n) + ")", make_path(n), 1);
  const std::vector<std::size_t> stars =
      full ? std::vector<std::size_t>{2, 4, 8, 16, 32, 64} : std::vector<std::size_t>{4, 32};
  for (const std::size_t n : stars) add("star(" + std::to_string(n) + ")", make_star(n), 1);

  const std::vector<std::size_t> trees = full
      ? std::vector<std::size_t>{10, 20, 40, 60, 80, 120, 160, 240, 320, 400}
      : std::vector<std::size_t>{20, 80};
  for (const std::size_t n : trees) {
    Graph t(n);
    const RandomSource rng = RandomSource(n).stream(0x7ee);
    for (std::size_t v = 1; v < n; ++v)
      t.add_edge(static_cast<NodeId>(v), static_cast<NodeId>(rng.uniform(v, v)));
    add("tree(" + std::to_string(n) + ")", std::move(t), 1);
  }

  const std::vector<std::size_t> unions = full
      ? std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 8, 10, 12, 16}
      : std::vector<std::size_t>{2, 6};
  for (const std::size_t blocks : unions) {
    Graph g(5 * blocks);
    for (std::size_t b = 0; b < blocks; ++b)
      for (NodeId i = 0; i < 5; ++i)
        for (NodeId j = i + 1; j < 5; ++j)
          g.add_edge(static_cast<NodeId>(5 * b + i), static_cast<NodeId>(5 * b + j));
    add("k5_union(" + std::to_string(blocks) + ")", std::move(g), 2);
  }

  const std::vector<std::size_t> wheels =
      full ? std::vector<std::size_t>{4, 6, 10, 18, 34} : std::vector<std::size_t>{6, 18};
  for (const std::size_t rim : wheels) {
    Graph g(rim + 1);
    for (std::size_t i = 0; i < rim; ++i) {
      g.add_edge(static_cast<NodeId>(1 + i), static_cast<NodeId>(1 + (i + 1) % rim));
      g.add_edge(0, static_cast<NodeId>(1 + i));
    }
    add("wheel(" + std::to_string(rim) + ")", std::move(g), 2);
  }

  struct GridSpec { std::size_t a, b; };
  const std::vector<GridSpec> grids = full
      ? std::vector<GridSpec>{{3, 3}, {4, 4}, {5, 5}, {6, 6}, {4, 8}}
      : std::vector<GridSpec>{{3, 3}, {5, 5}};
  for (const auto& spec : grids) {
    Graph g(spec.a * spec.b);
    auto id = [&](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * spec.b + c); };
    for (std::size_t r = 0; r < spec.a; ++r)
      for (std::size_t c = 0; c < spec.b; ++c) {
        if (c + 1 < spec.b) g.add_edge(id(r, c), id(r, c + 1));
        if (r + 1 < spec.a) g.add_edge(id(r, c), id(r + 1, c));
      }
    add("grid(" + std::to_string(spec.a) + "x" + std::to_string(spec.b) + ")", std::move(g), 2);
  }

  // Stacked planar triangulations: start from K4 and repeatedly subdivide a
  // face; m = 3n-6 forces density 3 once n > 6, and planarity caps it there.
  const std::vector<std::size_t> stacked =
      full ? std::vector<std::size_t>{7, 10, 14, 20, 30} : std::vector<std::size_t>{7, 14};
  for (const std::size_t n : stacked) {
    Graph g(n);
    std::vector<std::array<NodeId, 3>> faces;
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    g.add_edge(1, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    faces.push_back({0, 1, 2});
    faces.push_back({0, 1, 3});
    faces.push_back({0, 2, 3});
    faces.push_back({1, 2, 3});
    const RandomSource rng = RandomSource(n).stream(0x57ac);
    for (NodeId v = 4; v < n; ++v) {
      const std::size_t pick = rng.uniform(faces.size(), v);
      const auto face = faces[pick];
      for (const NodeId corner : face) g.add_edge(v, corner);
      faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(pick));
      faces.push_back({face[0], face[1], v});
      faces.push_back({face[0], face[2], v});
      faces.push_back({face[1], face[2], v});
    }
    add("stacked(" + std::to_string(n) + ")", std::move(g), 3);
  }

  return corpus;
}

struct SuperstepSample {
  std::string graph;
  double level = 0;        // log2(2m)
  std::size_t n = 0;
  std::vector<std::size_t> rounds;
  std::vector<std::size_t> iterations;
  std::size_t completed = 0;
  std::size_t runs = 0;
  bool claims_ok = true;
};

double median_of(std::vector<std::size_t> xs) {
  std::sort(xs.begin(), xs.end());
  return xs.empty() ? 0.0 : static_cast<double>(xs[xs.size() / 2]);
}

// ---- criterion 1: trace reversal -------------------------------------------

CriterionResult criterion_reversal(VerifyLevel level) {
  CriterionResult result;
  result.name = "reversal lemma";
  const std::size_t triples = level == VerifyLevel::kFull ? 500 : 100;
  std::size_t violations = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < triples; ++i) {
    const std::size_t n = 4 + i % 61;  // up to 64
    const double p = 0.05 + 0.3 * RandomSource(i).unit(1);
    Graph g = make_erdos_renyi(n, p, 7000 + i);
    if (g.edge_count() == 0) g.add_edge(0, 1);
    const std::size_t tau = 1 + i % 20;
    const auto [fwd, trace] =
        run_process(g, DirectedEdgeSet::full(g), tau, RandomSource(9000 + i));
    const KnowledgeState rev =
        replay(g, reverse(trace), KnowledgeState::with_payloads(n));
    for (NodeId u = 0; u < n; ++u)
      for (NodeId w = 0; w < n; ++w) {
        ++pairs;
        if (fwd.knows_slot(u, w) != rev.knows_slot(w, u)) ++violations;
      }
  }
  result.passed = violations == 0;
  result.details = std::to_string(triples) + " traces, " + std::to_string(pairs) +
                   " ordered pairs, " + std::to_string(violations) + " violations";
  return result;
}

// ---- criteria 2+3: superstep correctness and round bounds --------------------

std::vector<SuperstepSample> run_superstep_battery(const std::vector<NamedGraph>& corpus,
                                                   std::size_t seeds) {
  std::vector<SuperstepSample> samples;
  for (const auto& [name, g] : corpus) {
    SuperstepSample sample;
    sample.graph = name;
    sample.n = g.node_count();
    if (g.edge_count() == 0) continue;
    sample.level = log2_2m(g);
    SuperstepOptions opts;
    opts.throw_on_cap = false;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      const SuperstepReport rep = superstep(g, RandomSource(seed).stream(0x50e), opts);
      ++sample.runs;
      sample.completed += rep.completed;
      sample.rounds.push_back(rep.total_rounds);
      sample.iterations.push_back(rep.iterations);
      sample.claims_ok = sample.claims_ok && rep.invariants_ok();
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

CriterionResult criterion_superstep_correctness(const std::vector<SuperstepSample>& samples) {
  CriterionResult result;
  result.name = "superstep correctness (claims a/c, completion)";
  std::size_t runs = 0, completed = 0;
  bool claims = true;
  for (const auto& s : samples) {
    runs += s.runs;
    completed += s.completed;
    claims = claims && s.claims_ok;
  }
  const double rate = runs ? static_cast<double>(completed) / static_cast<double>(runs) : 1.0;
  result.passed = claims && rate >= 0.99;
  result.details = std::to_string(completed) + "/" + std::to_string(runs) +
                   " completed, claims " + (claims ? "exact" : "VIOLATED");
  return result;
}

CriterionResult criterion_superstep_rounds(const std::vector<SuperstepSample>& samples) {
  CriterionResult result;
  result.name = "superstep round bound";
  bool ok = true;
  std::string worst;
  double worst_ratio = 0;
  for (const auto& s : samples) {
    const double budget = kRoundBoundC * s.level * s.level * s.level;
    const double med = median_of(s.rounds);
    if (med > budget) {
      ok = false;
      worst = s.graph;
    }
    worst_ratio = std::max(worst_ratio, med / budget);
    const double iter_budget = 2.0 * s.level;
    std::size_t within = 0;
    for (const std::size_t it : s.iterations)
      within += static_cast<double>(it) <= iter_budget;
    if (static_cast<double>(within) < 0.95 * static_cast<double>(s.iterations.size())) {
      ok = false;
      worst = s.graph + " (iterations)";
    }
  }
  result.passed = ok;
  result.details = "median <= " + fmt(kRoundBoundC) + "*log2(2m)^3, max ratio " +
                   fmt(worst_ratio) + (ok ? "" : ", first failure: " + worst);
  return result;
}

// ---- criterion 4: rumor via repeated superstep -------------------------------

CriterionResult criterion_rumor(const std::vector<NamedGraph>& corpus, VerifyLevel level) {
  CriterionResult result;
  result.name = "rumor within diameter invocations";
  const std::size_t seeds = level == VerifyLevel::kFull ? 5 : 2;
  std::size_t runs = 0, ok_runs = 0;
  for (const auto& [name, g] : corpus) {
    if (g.edge_count() == 0 || !is_connected(g)) continue;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      const RumorReport rep = rumor_by_superstep(g, RandomSource(seed).stream(0x5a), {});
      ++runs;
      ok_runs += rep.completed && rep.invocations <= std::max<std::size_t>(rep.diameter, 1);
    }
  }
  result.passed = runs == ok_runs;
  result.details = std::to_string(ok_runs) + "/" + std::to_string(runs) +
                   " runs within diameter invocations";
  return result;
}

// ---- criterion 5: direct exchange -------------------------------------------

CriterionResult criterion_direct_exchange(VerifyLevel level) {
  CriterionResult result;
  result.name = "direct exchange bounds";
  const auto corpus = density_corpus(level);
  std::size_t runs = 0, ok_runs = 0;
  std::string first_failure;
  for (const auto& [named, expected_delta] : corpus) {
    const Graph& g = named.graph;
    const int delta = hereditary_density(g);
    if (delta != expected_delta) {
      result.passed = false;
      result.details = named.name + ": density " + std::to_string(delta) + " != expected " +
                       std::to_string(expected_delta);
      return result;
    }
    for (const double eps : {0.25, 0.5, 1.0}) {
      const DirectExchangeReport rep = direct_exchange(g, eps);
      ++runs;
      const double init_bound = 2.0 * (1 + eps) * (1 + eps) * delta;
      const double round_bound = kDirectExchangeC * delta *
                                 std::log2(static_cast<double>(std::max<std::size_t>(g.node_count(), 2))) /
                                 (eps * eps);
      const bool ok = rep.completed &&
                      static_cast<double>(rep.max_initiations) <= init_bound &&
                      static_cast<double>(rep.rounds_used) <= round_bound;
      ok_runs += ok;
      if (!ok && first_failure.empty())
        first_failure = named.name + " eps=" + fmt(eps) + " rounds=" +
                        std::to_string(rep.rounds_used) + " bound=" + fmt(round_bound);
    }
  }
  result.passed = runs == ok_runs;
  result.details = std::to_string(ok_runs) + "/" + std::to_string(runs) + " runs within bounds" +
                   (first_failure.empty() ? "" : "; " + first_failure);
  return result;
}

// ---- criterion 6: decomposition oracle ----------------------------------------

CriterionResult criterion_decomposition(const std::vector<NamedGraph>& corpus,
                                        VerifyLevel level) {
  CriterionResult result;
  result.name = "conductance decomposition bounds";
  std::size_t partitions = 0, partition_ok = 0;
  for (const auto& [name, g] : corpus) {
    if (g.node_count() > 14 || g.node_count() < 2) continue;
    for (const double zeta : {1.0 / 6.0, 1.0 / 3.0}) {
      const double vol = g.total_volume();
      if (vol <= 1) continue;
      const double xi = 3.0 * zeta / (std::log(vol) / std::log(4.0 / 3.0));
      if (xi <= 0 || xi >= 1) continue;
      const ClusterPartition p = cluster(g, VertexSet::all(g.node_count()), xi);
      const PartitionCheck check = verify_partition(g, p, zeta);
      ++partitions;
      partition_ok += check.all_hold && check.stored_values_match &&
                      p.recursion_depth <=
                          static_cast<std::size_t>(std::log(vol) / std::log(4.0 / 3.0));
    }
  }

  const std::size_t balcut_cases = level == VerifyLevel::kFull ? 200 : 60;
  std::size_t balcut_ok = 0, balcut_triggered = 0;
  for (std::size_t i = 0; i < balcut_cases; ++i) {
    const std::size_t n = 4 + i % 9;  // up to 12
    Graph g = make_erdos_renyi(n, 0.25 + 0.3 * RandomSource(i).unit(3), 3000 + i);
    if (g.edge_count() == 0) g.add_edge(0, 1);
    const double xi = std::vector<double>{0.1, 0.2, 0.3}[i % 3];
    const BalcutCheck check = verify_balcut(g, VertexSet::all(n), xi);
    balcut_ok += check.holds;
    balcut_triggered += check.precondition;
  }

  result.passed = partitions == partition_ok && balcut_ok == balcut_cases;
  result.details = std::to_string(partition_ok) + "/" + std::to_string(partitions) +
                   " partitions within bounds; balcut " + std::to_string(balcut_ok) + "/" +
                   std::to_string(balcut_cases) + " (" + std::to_string(balcut_triggered) +
                   " triggered)";
  return result;
}

// ---- criterion 7: spanner extraction ------------------------------------------

CriterionResult criterion_spanner(const std::vector<NamedGraph>& corpus, VerifyLevel level) {
  CriterionResult result;
  result.name = "spanner stretch/density/messages";
  const std::size_t seeds = level == VerifyLevel::kFull ? 10 : 3;
  std::size_t runs = 0, ok_runs = 0;
  std::string first_failure;
  for (const auto& [name, g] : corpus) {
    if (g.edge_count() == 0) continue;
    if (g.node_count() > 300) continue;  // keep the BFS certification affordable
    SuperstepOptions opts;
    opts.record_traces = true;
    opts.throw_on_cap = false;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      const SuperstepReport rep = superstep(g, RandomSource(seed).stream(0x5fa), opts);
      if (!rep.completed) continue;
      ++runs;
      SpannerResult s = extract_spanner(g, rep);
      const double t = static_cast<double>(s.source_rounds);
      bool ok = certify_spanner(g, s);
      ok = ok && s.certified_stretch && s.certified_stretch->first <= t;
      ok = ok && s.density >= 0 && static_cast<double>(s.density) <= t;
      ok = ok && verify_stretch(g, s.subgraph, t, 0, true).holds;
      const double level3 = log2_2m(g) * log2_2m(g) * log2_2m(g);
      const double message_bound = kMessageBoundC * static_cast<double>(g.node_count()) * level3;
      ok = ok && static_cast<double>(rep.transfer.connections) <= message_bound;
      ok_runs += ok;
      if (!ok && first_failure.empty()) first_failure = name + " seed " + std::to_string(seed);
    }
  }
  result.passed = runs == ok_runs && runs > 0;
  result.details = std::to_string(ok_runs) + "/" + std::to_string(runs) + " extractions ok" +
                   (first_failure.empty() ? "" : "; first failure: " + first_failure);
  return result;
}

// ---- criterion 8: simulator equivalence ----------------------------------------

CriterionResult criterion_simulators(VerifyLevel level) {
  CriterionResult result;
  result.name = "simulator output equivalence";
  std::vector<NamedGraph> graphs;
  auto add = [&](std::string name, Graph g) { graphs.push_back({std::move(name), std::move(g)}); };
  for (const std::size_t n : {5, 9, 17, 33}) add("path(" + std::to_string(n) + ")", make_path(n));
  for (const std::size_t n : {4, 8, 16, 32}) add("star(" + std::to_string(n) + ")", make_star(n));
  for (const std::size_t n : {4, 6, 8, 16}) add("clique(" + std::to_string(n) + ")", make_clique(n));
  for (const std::size_t k : {3, 4, 6, 8}) add("dumbbell(" + std::to_string(k) + ")", make_dumbbell(k));
  add("er(24)", make_erdos_renyi(24, 0.2, 31));
  add("er(32)", make_erdos_renyi(32, 0.16, 33));
  add("er(48)", make_erdos_renyi(48, 0.11, 36));
  add("figure1(4)", make_figure1(4));
  if (level == VerifyLevel::kQuick)
    graphs.resize(8);

  const std::size_t seeds = level == VerifyLevel::kFull ? 5 : 2;
  std::size_t runs = 0, ok_runs = 0;
  std::string first_failure;
  for (const auto& [name, g] : graphs) {
    if (!is_connected(g)) continue;

    // One certified spanner per graph feeds the composed simulator.
    SuperstepOptions record;
    record.record_traces = true;
    const SuperstepReport rep = superstep(g, RandomSource(0xabc).stream(g.node_count()), record);
    SpannerResult s = extract_spanner(g, rep);
    if (!certify_spanner(g, s)) {
      result.details = name + ": extracted spanner failed certification";
      return result;
    }

    for (const std::string alg_name : {"flooding", "bfs", "collect"}) {
      const auto alg = make_local_algorithm(alg_name, g, 0);
      for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        std::vector<SimulationOutcome> outcomes;
        outcomes.push_back(
            simulate_superstep(g, *alg, seed, RandomSource(4000 + seed).stream(runs)));
        outcomes.push_back(simulate_round_robin(g, *alg, seed));
        outcomes.push_back(simulate_direct_exchange(g, *alg, seed, 0.5));
        outcomes.push_back(simulate_via_spanner(g, *alg, seed, s, SimulatorKind::kDirectExchange,
                                                0.5, RandomSource(5000 + seed)));
        for (auto& outcome : outcomes) {
          ++runs;
          const bool ok = check_equivalence(g, *alg, seed, outcome);
          ok_runs += ok;
          if (!ok && first_failure.empty())
            first_failure = name + "/" + alg_name + "/" + simulator_name(outcome.kind);
        }
      }
    }
  }
  result.passed = runs == ok_runs && runs > 0;
  result.details = std::to_string(ok_runs) + "/" + std::to_string(runs) +
                   " simulations bit-identical" +
                   (first_failure.empty() ? "" : "; first failure: " + first_failure);
  return result;
}

// ---- criterion 9: the random-unheard-neighbor pathology -------------------------

CriterionResult criterion_pathology(VerifyLevel level) {
  CriterionResult result;
  result.name = "unheard-neighbor baseline pathology";
  const std::size_t baseline_seeds = level == VerifyLevel::kFull ? 30 : 10;
  const std::size_t superstep_seeds = level == VerifyLevel::kFull ? 10 : 3;

  std::vector<double> medians;
  bool superstep_ok = true;
  for (const std::size_t n : {100, 200, 400}) {
    const Graph g = make_figure1(n);
    std::vector<std::size_t> rounds;
    for (std::uint64_t seed = 0; seed < baseline_seeds; ++seed) {
      const BaselineReport rep =
          greedy_unheard_baseline(g, RandomSource(seed).stream(0xba5e), 1000000);
      if (!rep.completed) {
        result.details = "baseline did not complete on figure1(" + std::to_string(n) + ")";
        return result;
      }
      rounds.push_back(rep.rounds);
    }
    medians.push_back(median_of(rounds));

    SuperstepOptions opts;
    opts.throw_on_cap = false;
    std::vector<std::size_t> super_rounds;
    for (std::uint64_t seed = 0; seed < superstep_seeds; ++seed) {
      const SuperstepReport rep = superstep(g, RandomSource(seed).stream(0x5fa + n), opts);
      superstep_ok = superstep_ok && rep.completed;
      super_rounds.push_back(rep.total_rounds);
    }
    const double budget = kRoundBoundC * log2_2m(g) * log2_2m(g) * log2_2m(g);
    superstep_ok = superstep_ok && median_of(super_rounds) <= budget;
  }

  const double ratio = medians[2] / std::max(1.0, medians[0]);
  result.passed = ratio >= 3.0 && superstep_ok;
  result.details = "baseline medians " + fmt(medians[0]) + "/" + fmt(medians[1]) + "/" +
                   fmt(medians[2]) + " (ratio " + fmt(ratio) + "), superstep polylog " +
                   (superstep_ok ? "ok" : "FAILED");
  return result;
}

// ---- criterion 10: clique broadcast ----------------------------------------------

CriterionResult criterion_clique_broadcast(VerifyLevel level) {
  CriterionResult result;
  result.name = "clique broadcast within 4*log2(n)";
  const std::size_t n = 1024;
  const std::size_t seeds = level == VerifyLevel::kFull ? 100 : 30;
  const Graph clique = make_clique(n);
  const DirectedEdgeSet frontier = DirectedEdgeSet::full(clique);
  const std::size_t budget = 4 * 10;  // 4 * log2(1024)
  std::size_t successes = 0;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    KnowledgeState initial(n);
    initial.grant(0, MessageId{MessageKind::kPayload, 0, 0});
    const auto [state, trace] =
        run_process(clique, frontier, budget, RandomSource(seed).stream(0xb7), std::move(initial));
    bool all = true;
    for (NodeId u = 0; u < n && all; ++u) all = state.knows_slot(u, 0);
    successes += all;
  }
  result.passed =
      static_cast<double>(successes) >= 0.95 * static_cast<double>(seeds);
  result.details = std::to_string(successes) + "/" + std::to_string(seeds) +
                   " broadcasts complete within " + std::to_string(budget) + " rounds";
  return result;
}

}  // namespace

std::vector<CriterionResult> run_verification(VerifyLevel level, std::ostream* progress) {
  std::vector<CriterionResult> results;
  const auto corpus = protocol_corpus(level);
  const std::size_t superstep_seeds = level == VerifyLevel::kFull ? 100 : 20;

  auto run = [&](auto&& fn) {
    const auto start = Clock::now();
    CriterionResult r = fn();
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (progress)
      (*progress) << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.details << " ("
                  << fmt(r.seconds) << "s)" << std::endl;
    results.push_back(std::move(r));
  };

  run([&] { return criterion_reversal(level); });

  std::vector<SuperstepSample> samples;
  {
    const auto start = Clock::now();
    samples = run_superstep_battery(corpus, superstep_seeds);
    CriterionResult r = criterion_superstep_correctness(samples);
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (progress)
      (*progress) << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.details << " ("
                  << fmt(r.seconds) << "s)" << std::endl;
    results.push_back(std::move(r));
  }
  run([&] { return criterion_superstep_rounds(samples); });
  run([&] { return criterion_rumor(corpus, level); });
  run([&] { return criterion_direct_exchange(level); });
  run([&] { return criterion_decomposition(corpus, level); });
  run([&] { return criterion_spanner(corpus, level); });
  run([&] { return criterion_simulators(level); });
  run([&] { return criterion_pathology(level); });
  run([&] { return criterion_clique_broadcast(level); });
  return results;
}

}  // namespace gossipsim
