#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gossipsim/decompose.hpp"
#include "gossipsim/engine.hpp"
#include "gossipsim/errors.hpp"
#include "gossipsim/experiment.hpp"
#include "gossipsim/graph.hpp"
#include "gossipsim/protocols.hpp"
#include "gossipsim/simulate.hpp"
#include "gossipsim/spanner.hpp"
#include "gossipsim/verify.hpp"

namespace py = pybind11;
using namespace gossipsim;

namespace {

VertexSet to_vertex_set(const std::vector<NodeId>& ids) { return VertexSet(ids); }

std::vector<NodeId> from_vertex_set(const VertexSet& s) {
  return {s.begin(), s.end()};
}

SimulatorKind kind_from_name(const std::string& name) {
  if (name == "superstep") return SimulatorKind::kSuperstep;
  if (name == "round_robin") return SimulatorKind::kRoundRobin;
  if (name == "direct_exchange") return SimulatorKind::kDirectExchange;
  if (name == "local") return SimulatorKind::kLocalReference;
  throw InvalidParams("unknown simulator kind: " + name);
}

SuperstepOptions make_options(std::size_t tau, double c_tau, bool record_traces,
                              bool throw_on_cap) {
  SuperstepOptions opts;
  opts.tau = tau;
  opts.c_tau = c_tau;
  opts.record_traces = record_traces;
  opts.record_exchanged = false;
  opts.throw_on_cap = throw_on_cap;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_gossipsim, m) {
  m.doc() = "Deterministic simulator for gossip protocols and LOCAL-model simulation";

  py::register_exception<Error>(m, "GossipError");

  // ---- graph ----------------------------------------------------------
  py::class_<Graph>(m, "Graph")
      .def(py::init<std::size_t>(), py::arg("n") = 0)
      .def_property_readonly("n", &Graph::node_count)
      .def_property_readonly("m", &Graph::edge_count)
      .def("add_edge", &Graph::add_edge, py::arg("u"), py::arg("v"), py::arg("w") = 1.0)
      .def("add_self_loop_weight", &Graph::add_self_loop_weight)
      .def("has_edge", &Graph::has_edge)
      .def("edge_weight", &Graph::edge_weight)
      .def("self_loop", &Graph::self_loop)
      .def("degree", &Graph::degree)
      .def("weighted_degree", &Graph::weighted_degree)
      .def("total_volume", &Graph::total_volume)
      .def("is_unweighted", &Graph::is_unweighted)
      .def("neighbors",
           [](const Graph& g, NodeId u) {
             std::vector<std::pair<NodeId, double>> out;
             for (const auto& e : g.neighbors(u)) out.push_back(e);
             return out;
           })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.node_count()) +
               " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("generate", [](const std::string& spec) {
    std::string name;
    Graph g = resolve_graph(spec, &name);
    return py::make_tuple(std::move(g), name);
  }, py::arg("spec"), "Build a graph from a family(args) spec or @file path");
  m.def("load_graph", &load_graph);
  m.def("save_graph", &save_graph, py::arg("graph"), py::arg("path"),
        py::arg("header_comment") = "");
  m.def("bfs_distances", &bfs_distances);
  m.def("is_connected", &is_connected);
  m.def("diameter", &diameter);

  m.def("volume", [](const Graph& g, const std::vector<NodeId>& s) {
    return volume(g, to_vertex_set(s));
  });
  m.def("cut_weight", [](const Graph& g, const std::vector<NodeId>& s,
                         const std::vector<NodeId>& t) {
    return cut_weight(g, to_vertex_set(s), to_vertex_set(t));
  });
  m.def("cut_conductance", [](const Graph& g, const std::vector<NodeId>& s,
                              const std::vector<NodeId>& t) {
    return cut_conductance(g, to_vertex_set(s), to_vertex_set(t));
  });
  m.def("set_conductance",
        [](const Graph& g, const std::vector<NodeId>& h, std::size_t exact_limit) {
          const Conductance c = set_conductance(g, to_vertex_set(h), ConductanceMode::kAuto,
                                                exact_limit);
          return py::make_tuple(c.value, c.certified);
        },
        py::arg("graph"), py::arg("members"), py::arg("exact_limit") = kDefaultExactLimit,
        "Returns (value, certified)");
  m.def("strongly_induced", [](const Graph& g, const std::vector<NodeId>& u) {
    return strongly_induced(g, to_vertex_set(u));
  });
  m.def("hereditary_density", &hereditary_density);

  // ---- engine ----------------------------------------------------------
  py::class_<ProcessTrace>(m, "ProcessTrace")
      .def_property_readonly("length", &ProcessTrace::length)
      .def("__len__", &ProcessTrace::length);
  m.def("reverse_trace", [](const ProcessTrace& t) { return reverse(t); });

  py::class_<KnowledgeState>(m, "KnowledgeState")
      .def(py::init(&KnowledgeState::with_payloads), py::arg("n"))
      .def_property_readonly("n", &KnowledgeState::node_count)
      .def("knows_payload",
           [](const KnowledgeState& s, NodeId node, NodeId origin) {
             return s.knows(node, MessageId{MessageKind::kPayload, origin, 0});
           })
      .def("known_count", &KnowledgeState::known_count);

  m.def("run_process",
        [](const Graph& g, std::size_t tau, std::uint64_t seed) {
          return run_process(g, DirectedEdgeSet::full(g), tau, RandomSource(seed));
        },
        py::arg("graph"), py::arg("tau"), py::arg("seed"),
        "UniformGossip from the everyone-knows-own-payload state; returns "
        "(KnowledgeState, ProcessTrace)");
  m.def("replay",
        [](const Graph& g, const ProcessTrace& trace) {
          return replay(g, trace, KnowledgeState::with_payloads(g.node_count()));
        },
        py::arg("graph"), py::arg("trace"));

  // ---- protocols -------------------------------------------------------
  py::class_<SuperstepIterationStats>(m, "SuperstepIterationStats")
      .def_readonly("frontier_size", &SuperstepIterationStats::frontier_size)
      .def_readonly("pruned_size", &SuperstepIterationStats::pruned_size)
      .def_readonly("frontier_symmetric", &SuperstepIterationStats::frontier_symmetric)
      .def_readonly("pruned_exchanged", &SuperstepIterationStats::pruned_exchanged)
      .def_readonly("reversal_transpose", &SuperstepIterationStats::reversal_transpose);

  py::class_<SuperstepReport>(m, "SuperstepReport")
      .def_readonly("iterations", &SuperstepReport::iterations)
      .def_readonly("tau", &SuperstepReport::tau)
      .def_readonly("total_rounds", &SuperstepReport::total_rounds)
      .def_readonly("completed", &SuperstepReport::completed)
      .def_readonly("per_iteration", &SuperstepReport::per_iteration)
      .def_property_readonly("connections",
                             [](const SuperstepReport& r) { return r.transfer.connections; })
      .def("invariants_ok", &SuperstepReport::invariants_ok);

  m.def("default_tau", &default_tau, py::arg("graph"), py::arg("c_tau") = 2.0);
  m.def("superstep",
        [](const Graph& g, std::uint64_t seed, std::size_t tau, double c_tau,
           bool throw_on_cap) {
          return superstep(g, RandomSource(seed), make_options(tau, c_tau, false, throw_on_cap));
        },
        py::arg("graph"), py::arg("seed"), py::arg("tau") = 0, py::arg("c_tau") = 2.0,
        py::arg("throw_on_cap") = true);

  py::class_<RumorReport>(m, "RumorReport")
      .def_readonly("invocations", &RumorReport::invocations)
      .def_readonly("total_rounds", &RumorReport::total_rounds)
      .def_readonly("completed", &RumorReport::completed)
      .def_readonly("diameter", &RumorReport::diameter);
  m.def("rumor_by_superstep",
        [](const Graph& g, std::uint64_t seed, std::size_t tau, double c_tau) {
          return rumor_by_superstep(g, RandomSource(seed), make_options(tau, c_tau, false, true));
        },
        py::arg("graph"), py::arg("seed"), py::arg("tau") = 0, py::arg("c_tau") = 2.0);

  py::class_<ExchangeSchedule>(m, "ExchangeSchedule")
      .def_readonly("contacts", &ExchangeSchedule::contacts)
      .def_readonly("total_rounds", &ExchangeSchedule::total_rounds);
  py::class_<DirectExchangeReport>(m, "DirectExchangeReport")
      .def_readonly("schedule", &DirectExchangeReport::schedule)
      .def_readonly("rounds_used", &DirectExchangeReport::rounds_used)
      .def_readonly("initiations", &DirectExchangeReport::initiations)
      .def_readonly("max_initiations", &DirectExchangeReport::max_initiations)
      .def_readonly("completed", &DirectExchangeReport::completed);
  m.def("direct_exchange", &direct_exchange, py::arg("graph"), py::arg("epsilon"),
        py::arg("c_in") = 4.0);
  m.def("schedule_replay", &schedule_replay);

  py::class_<BaselineReport>(m, "BaselineReport")
      .def_readonly("rounds", &BaselineReport::rounds)
      .def_readonly("contacts", &BaselineReport::contacts)
      .def_readonly("completed", &BaselineReport::completed);
  m.def("greedy_unheard_baseline",
        [](const Graph& g, std::uint64_t seed, std::size_t round_cap) {
          return greedy_unheard_baseline(g, RandomSource(seed), round_cap);
        },
        py::arg("graph"), py::arg("seed"), py::arg("round_cap") = 1000000);

  // ---- decomposition ----------------------------------------------------
  m.def("find_sparse_cut",
        [](const Graph& g, const std::vector<NodeId>& u, double xi,
           std::size_t exact_limit) -> py::object {
          const auto cut = find_sparse_cut(g, to_vertex_set(u), xi, ConductanceMode::kAuto,
                                           exact_limit);
          if (!cut) return py::none();
          return py::make_tuple(from_vertex_set(cut->cut), cut->conductance, cut->cut_volume,
                                cut->certified);
        },
        py::arg("graph"), py::arg("members"), py::arg("xi"),
        py::arg("exact_limit") = kDefaultExactLimit,
        "None, or (members, conductance, volume, certified)");

  py::class_<ClusterPartition>(m, "ClusterPartition")
      .def_property_readonly("clusters",
                             [](const ClusterPartition& p) {
                               std::vector<std::vector<NodeId>> out;
                               for (const auto& c : p.clusters)
                                 out.push_back(from_vertex_set(c.members));
                               return out;
                             })
      .def_readonly("xi", &ClusterPartition::xi)
      .def_readonly("total_cut_weight", &ClusterPartition::total_cut_weight)
      .def_readonly("recursion_depth", &ClusterPartition::recursion_depth)
      .def_readonly("certified", &ClusterPartition::certified);
  m.def("cluster",
        [](const Graph& g, const std::vector<NodeId>& u, double xi, std::size_t exact_limit) {
          return cluster(g, to_vertex_set(u), xi, ConductanceMode::kAuto, exact_limit);
        },
        py::arg("graph"), py::arg("members"), py::arg("xi"),
        py::arg("exact_limit") = kDefaultExactLimit);

  py::class_<PartitionCheck>(m, "PartitionCheck")
      .def_readonly("disjoint_cover", &PartitionCheck::disjoint_cover)
      .def_readonly("stored_values_match", &PartitionCheck::stored_values_match)
      .def_readonly("phi_bound", &PartitionCheck::phi_bound)
      .def_readonly("cut_bound", &PartitionCheck::cut_bound)
      .def_readonly("recomputed_cut_weight", &PartitionCheck::recomputed_cut_weight)
      .def_readonly("cut_within_bound", &PartitionCheck::cut_within_bound)
      .def_readonly("all_hold", &PartitionCheck::all_hold);
  m.def("verify_partition",
        [](const Graph& g, const ClusterPartition& p, double zeta) {
          return verify_partition(g, p, zeta);
        },
        py::arg("graph"), py::arg("partition"), py::arg("zeta"));

  py::class_<BalcutCheck>(m, "BalcutCheck")
      .def_readonly("vol_u", &BalcutCheck::vol_u)
      .def_readonly("vol_s", &BalcutCheck::vol_s)
      .def_readonly("precondition", &BalcutCheck::precondition)
      .def_readonly("phi_remainder", &BalcutCheck::phi_remainder)
      .def_readonly("bound", &BalcutCheck::bound)
      .def_readonly("holds", &BalcutCheck::holds);
  m.def("verify_balcut",
        [](const Graph& g, const std::vector<NodeId>& u, double xi, std::size_t exact_limit) {
          return verify_balcut(g, to_vertex_set(u), xi, exact_limit);
        },
        py::arg("graph"), py::arg("members"), py::arg("xi"),
        py::arg("exact_limit") = kDefaultExactLimit);

  // ---- spanner -----------------------------------------------------------
  py::class_<SpannerResult>(m, "SpannerResult")
      .def_readonly("subgraph", &SpannerResult::subgraph)
      .def_readonly("source_rounds", &SpannerResult::source_rounds)
      .def_readonly("certified_stretch", &SpannerResult::certified_stretch)
      .def_readonly("density", &SpannerResult::density);
  m.def("extract_spanner",
        [](const Graph& g, std::uint64_t seed, std::size_t tau, double c_tau) {
          const SuperstepReport rep =
              superstep(g, RandomSource(seed), make_options(tau, c_tau, true, true));
          SpannerResult s = extract_spanner(g, rep);
          certify_spanner(g, s);
          return s;
        },
        py::arg("graph"), py::arg("seed"), py::arg("tau") = 0, py::arg("c_tau") = 2.0,
        "Runs a traced Superstep, extracts the activated-edge spanner and certifies it");
  m.def("verify_stretch",
        [](const Graph& g, const Graph& s, double alpha, double beta, bool neighbors_only) {
          const StretchCheck check = verify_stretch(g, s, alpha, beta, neighbors_only);
          return py::make_tuple(check.holds, check.worst_pair);
        },
        py::arg("graph"), py::arg("spanner"), py::arg("alpha"), py::arg("beta") = 0.0,
        py::arg("neighbors_only") = false, "Returns (holds, worst_pair_or_None)");
  m.def("spanner_density", &spanner_density);

  // ---- simulators ----------------------------------------------------------
  py::class_<SimulationOutcome>(m, "SimulationOutcome")
      .def_property_readonly("kind",
                             [](const SimulationOutcome& o) { return simulator_name(o.kind); })
      .def_readonly("outputs", &SimulationOutcome::outputs)
      .def_readonly("local_rounds", &SimulationOutcome::local_rounds)
      .def_readonly("gossip_rounds", &SimulationOutcome::gossip_rounds)
      .def_readonly("matches_reference", &SimulationOutcome::matches_reference);

  m.def("run_local",
        [](const Graph& g, const std::string& algorithm, std::uint64_t tape_seed, NodeId source) {
          const auto alg = make_local_algorithm(algorithm, g, source);
          return run_local(g, *alg, tape_seed);
        },
        py::arg("graph"), py::arg("algorithm"), py::arg("tape_seed"), py::arg("source") = 0);
  m.def("simulate",
        [](const Graph& g, const std::string& simulator, const std::string& algorithm,
           std::uint64_t tape_seed, std::uint64_t seed, double epsilon, NodeId source) {
          const auto alg = make_local_algorithm(algorithm, g, source);
          SimulationOutcome outcome;
          if (simulator == "superstep") {
            outcome = simulate_superstep(g, *alg, tape_seed, RandomSource(seed));
          } else if (simulator == "round_robin") {
            outcome = simulate_round_robin(g, *alg, tape_seed);
          } else if (simulator == "direct_exchange") {
            outcome = simulate_direct_exchange(g, *alg, tape_seed, epsilon);
          } else if (simulator == "spanner") {
            const SuperstepReport rep =
                superstep(g, RandomSource(seed).stream(1), make_options(0, 2.0, true, true));
            SpannerResult s = extract_spanner(g, rep);
            if (!certify_spanner(g, s))
              throw UncertifiedSpanner("simulate: extracted spanner failed certification");
            outcome = simulate_via_spanner(g, *alg, tape_seed, s, kind_from_name("direct_exchange"),
                                           epsilon, RandomSource(seed).stream(2));
          } else {
            throw InvalidParams("unknown simulator: " + simulator);
          }
          check_equivalence(g, *alg, tape_seed, outcome);
          return outcome;
        },
        py::arg("graph"), py::arg("simulator"), py::arg("algorithm"), py::arg("tape_seed"),
        py::arg("seed") = 0, py::arg("epsilon") = 0.5, py::arg("source") = 0,
        "Runs a GOSSIP simulator and marks matches_reference against the LOCAL executor");

  // ---- verification ----------------------------------------------------------
  m.def("run_verification",
        [](const std::string& level) {
          const auto results = run_verification(
              level == "full" ? VerifyLevel::kFull : VerifyLevel::kQuick, nullptr);
          std::vector<py::tuple> out;
          for (const auto& r : results)
            out.push_back(py::make_tuple(r.name, r.passed, r.details, r.seconds));
          return out;
        },
        py::arg("level") = "quick", "Returns a list of (name, passed, details, seconds)");
}
