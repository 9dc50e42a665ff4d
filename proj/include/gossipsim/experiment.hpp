#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gossipsim/graph.hpp"

namespace gossipsim {

/// One experiment: a protocol or simulator, a graph, and a seed list.
/// Parsed from a flat key = value file; command-line flags mirror the keys.
struct ExperimentConfig {
  std::string protocol = "superstep";  // superstep | rumor | direct_exchange |
                                       // baseline | uniform_gossip |
                                       // simulate_superstep | simulate_round_robin |
                                       // simulate_direct_exchange | simulate_spanner
  std::string graph = "clique(8)";     // family(args) or @path/to/file
  std::vector<std::uint64_t> seeds = {0};
  double c_tau = 2.0;
  std::size_t tau = 0;  // 0: default_tau
  double epsilon = 0.5;
  std::size_t round_cap = 100000;
  std::string algorithm = "flooding";  // for simulators
  NodeId source = 0;                   // for the bfs algorithm
  std::string csv_path;                // empty: stdout
  std::string trace_path;              // empty: no dump

  void set(const std::string& key, const std::string& value);  // throws InvalidConfig
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& origin);

/// "0..29" or "1,5,9" or "7".
std::vector<std::uint64_t> parse_seeds(const std::string& text);

/// "family(arg1,arg2,...)" or "@file". Fills `descriptor` with the canonical
/// name used in CSV rows.
Graph resolve_graph(const std::string& spec, std::string* descriptor = nullptr);

struct RunRow {
  std::string protocol;
  std::string graph;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t tau = 0;
  double epsilon = 0;
  std::size_t rounds = 0;
  std::size_t iterations = 0;
  std::uint64_t messages = 0;
  bool completed = false;
  bool invariants_ok = false;

  static std::string header();
  std::string csv() const;
};

/// Runs the config's matrix, appending one CSV row per (config, seed) to
/// csv_out in seed order. Returns 0 when every exact invariant held, 1
/// otherwise. Configuration problems throw InvalidConfig / ParseError.
int run_experiment(const ExperimentConfig& config, std::ostream& csv_out, std::ostream& diag);

}  // namespace gossipsim
