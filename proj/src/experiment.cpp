#include "gossipsim/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gossipsim/engine.hpp"
#include "gossipsim/errors.hpp"
#include "gossipsim/protocols.hpp"
#include "gossipsim/simulate.hpp"
#include "gossipsim/spanner.hpp"

namespace gossipsim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

const std::vector<std::string> kProtocols = {
    "superstep",          "rumor",
    "direct_exchange",    "baseline",
    "uniform_gossip",     "simulate_superstep",
    "simulate_round_robin", "simulate_direct_exchange",
    "simulate_spanner",
};

}  // namespace

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto range = text.find("..");
  try {
    if (range != std::string::npos) {
      const std::uint64_t lo = std::stoull(trim(text.substr(0, range)));
      const std::uint64_t hi = std::stoull(trim(text.substr(range + 2)));
      if (hi < lo) throw InvalidConfig("seeds: range end below start: " + text);
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
      return seeds;
    }
    std::istringstream fields(text);
    std::string item;
    while (std::getline(fields, item, ',')) {
      item = trim(item);
      if (!item.empty()) seeds.push_back(std::stoull(item));
    }
  } catch (const std::logic_error&) {
    throw InvalidConfig("seeds: cannot parse '" + text + "'");
  }
  if (seeds.empty()) throw InvalidConfig("seeds: empty list");
  return seeds;
}

Graph resolve_graph(const std::string& spec, std::string* descriptor) {
  if (spec.empty()) throw InvalidConfig("graph: empty spec");
  if (spec[0] == '@') {
    const std::string path = spec.substr(1);
    if (descriptor) *descriptor = path;
    return load_graph(path);
  }
  const auto open = spec.find('(');
  const auto close = spec.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw InvalidConfig("graph: expected family(args) or @file, got '" + spec + "'");
  const std::string family_name = trim(spec.substr(0, open));
  const auto family = family_from_name(family_name);
  if (!family) throw InvalidConfig("graph: unknown family '" + family_name + "'");
  std::vector<std::string> args;
  std::istringstream arg_stream(spec.substr(open + 1, close - open - 1));
  std::string arg;
  while (std::getline(arg_stream, arg, ',')) args.push_back(trim(arg));

  GenParams params;
  try {
    if (*family == GraphFamily::kErdosRenyi) {
      if (args.size() != 3) throw InvalidConfig("graph: er needs (n, p, seed)");
      params.n = std::stoull(args[0]);
      params.p = std::stod(args[1]);
      params.seed = std::stoull(args[2]);
    } else {
      if (args.size() != 1) throw InvalidConfig("graph: " + family_name + " needs (n)");
      params.n = std::stoull(args[0]);
    }
  } catch (const std::logic_error&) {
    throw InvalidConfig("graph: cannot parse arguments in '" + spec + "'");
  }
  if (descriptor) {
    std::ostringstream name;
    name << family_name << "(" << params.n;
    if (*family == GraphFamily::kErdosRenyi) name << "," << params.p << "," << params.seed;
    name << ")";
    *descriptor = name.str();
  }
  return generate(*family, params);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  try {
    if (key == "protocol") {
      if (std::find(kProtocols.begin(), kProtocols.end(), value) == kProtocols.end())
        throw InvalidConfig("unknown protocol '" + value + "'");
      protocol = value;
    } else if (key == "graph") {
      graph = value;
    } else if (key == "seeds") {
      seeds = parse_seeds(value);
    } else if (key == "c_tau") {
      c_tau = std::stod(value);
    } else if (key == "tau") {
      tau = std::stoull(value);
    } else if (key == "epsilon") {
      epsilon = std::stod(value);
    } else if (key == "round_cap") {
      round_cap = std::stoull(value);
    } else if (key == "algorithm") {
      algorithm = value;
    } else if (key == "source") {
      source = static_cast<NodeId>(std::stoul(value));
    } else if (key == "csv") {
      csv_path = value;
    } else if (key == "traces") {
      trace_path = value;
    } else {
      throw InvalidConfig("unknown key '" + key + "'");
    }
  } catch (const std::logic_error&) {
    throw InvalidConfig("cannot parse value '" + value + "' for key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  ExperimentConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig(origin + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      config.set(key, value);
    } catch (const InvalidConfig& e) {
      throw InvalidConfig(origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config file: " + path);
  return parse_config(in, path);
}

std::string RunRow::header() {
  return "protocol,graph,n,m,seed,tau,epsilon,rounds,iterations,messages,completed,invariants_ok";
}

std::string RunRow::csv() const {
  std::ostringstream out;
  out << protocol << ',' << graph << ',' << n << ',' << m << ',' << seed << ',' << tau << ','
      << epsilon << ',' << rounds << ',' << iterations << ',' << messages << ','
      << (completed ? "true" : "false") << ',' << (invariants_ok ? "true" : "false");
  return out.str();
}

namespace {

RunRow run_one(const ExperimentConfig& config, const Graph& g, const std::string& descriptor,
               std::uint64_t seed, std::ostream& diag) {
  RunRow row;
  row.protocol = config.protocol;
  row.graph = descriptor;
  row.n = g.node_count();
  row.m = g.edge_count();
  row.seed = seed;
  row.epsilon = config.epsilon;

  SuperstepOptions opts;
  opts.tau = config.tau;
  opts.c_tau = config.c_tau;
  opts.throw_on_cap = false;

  const RandomSource rng = RandomSource(seed).stream(0x90551b);

  if (config.protocol == "superstep") {
    opts.record_traces = !config.trace_path.empty();
    const SuperstepReport rep = superstep(g, rng, opts);
    row.tau = rep.tau;
    row.rounds = rep.total_rounds;
    row.iterations = rep.iterations;
    row.messages = rep.transfer.connections;
    row.completed = rep.completed;
    row.invariants_ok = rep.invariants_ok();
    if (!config.trace_path.empty()) {
      const std::string path = config.seeds.size() == 1
                                   ? config.trace_path
                                   : config.trace_path + "." + std::to_string(seed);
      save_traces(rep.traces, g.node_count(), rep.total_rounds, rep.completed, path);
      diag << "traces written to " << path << "\n";
    }
  } else if (config.protocol == "rumor") {
    const RumorReport rep = rumor_by_superstep(g, rng, opts);
    row.tau = config.tau ? config.tau : default_tau(g, config.c_tau);
    row.rounds = rep.total_rounds;
    row.iterations = rep.invocations;
    row.completed = rep.completed;
    row.invariants_ok = rep.invocations <= std::max<std::size_t>(rep.diameter, 1);
  } else if (config.protocol == "direct_exchange") {
    const DirectExchangeReport rep = direct_exchange(g, config.epsilon);
    row.rounds = rep.rounds_used;
    row.iterations = schedule_replay(g, rep.schedule);
    std::uint64_t contacts = 0;
    for (const auto c : rep.initiations) contacts += c;
    row.messages = contacts;
    row.completed = rep.completed;
    row.invariants_ok = rep.completed && row.iterations <= rep.rounds_used;
  } else if (config.protocol == "baseline") {
    const BaselineReport rep = greedy_unheard_baseline(g, rng, config.round_cap);
    row.rounds = rep.rounds;
    row.messages = rep.contacts;
    row.completed = rep.completed;
    row.invariants_ok = true;
  } else if (config.protocol == "uniform_gossip") {
    const std::size_t tau = config.tau ? config.tau : default_tau(g, config.c_tau);
    TransferStats stats;
    auto [state, trace] = run_process(g, DirectedEdgeSet::full(g), tau, rng,
                                      KnowledgeState::with_payloads(g.node_count()), &stats);
    row.tau = tau;
    row.rounds = tau;
    row.messages = stats.connections;
    row.completed = true;
    for (NodeId u = 0; u < g.node_count(); ++u)
      row.completed = row.completed && state.knows_first(u, g.node_count());
    row.invariants_ok = true;
  } else {
    const auto alg = make_local_algorithm(config.algorithm, g, config.source);
    SimulationOutcome outcome;
    if (config.protocol == "simulate_superstep") {
      outcome = simulate_superstep(g, *alg, seed, rng, opts, config.round_cap);
    } else if (config.protocol == "simulate_round_robin") {
      outcome = simulate_round_robin(g, *alg, seed, config.round_cap);
    } else if (config.protocol == "simulate_direct_exchange") {
      outcome = simulate_direct_exchange(g, *alg, seed, config.epsilon, config.round_cap);
    } else {  // simulate_spanner
      SuperstepOptions record;
      record.record_traces = true;
      const SuperstepReport rep = superstep(g, rng.stream(1), record);
      SpannerResult s = extract_spanner(g, rep);
      if (!certify_spanner(g, s))
        throw UncertifiedSpanner("simulate_spanner: extraction failed certification");
      outcome = simulate_via_spanner(g, *alg, seed, s, SimulatorKind::kDirectExchange,
                                     config.epsilon, rng.stream(2), config.round_cap);
    }
    row.rounds = outcome.gossip_rounds;
    row.iterations = outcome.local_rounds;
    row.completed = true;
    row.invariants_ok = check_equivalence(g, *alg, seed, outcome);
  }
  return row;
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& csv_out, std::ostream& diag) {
  std::string descriptor;
  const Graph g = resolve_graph(config.graph, &descriptor);

  csv_out << RunRow::header() << "\n";
  bool all_ok = true;
  for (const std::uint64_t seed : config.seeds) {
    const RunRow row = run_one(config, g, descriptor, seed, diag);
    csv_out << row.csv() << "\n";
    all_ok = all_ok && row.invariants_ok;
  }
  return all_ok ? 0 : 1;
}

}  // namespace gossipsim
