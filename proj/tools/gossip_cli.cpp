#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "gossipsim/errors.hpp"
#include "gossipsim/experiment.hpp"
#include "gossipsim/spanner.hpp"
#include "gossipsim/verify.hpp"

using namespace gossipsim;

namespace {

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides) {
  ExperimentConfig config;
  if (!config_path.empty()) config = parse_config_file(config_path);
  for (const std::string& assign : overrides) {
    const auto eq = assign.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("override must look like key=value, got '" + assign + "'");
    config.set(assign.substr(0, eq), assign.substr(eq + 1));
  }
  if (!config.csv_path.empty()) {
    std::ofstream out(config.csv_path);
    if (!out) throw InvalidConfig("cannot open csv output: " + config.csv_path);
    return run_experiment(config, out, std::cerr);
  }
  return run_experiment(config, std::cout, std::cerr);
}

int cmd_verify(const std::string& level_name) {
  VerifyLevel level;
  if (level_name == "quick") {
    level = VerifyLevel::kQuick;
  } else if (level_name == "full") {
    level = VerifyLevel::kFull;
  } else {
    throw InvalidConfig("verify level must be quick or full");
  }
  const auto results = run_verification(level, &std::cout);
  std::size_t failures = 0;
  for (const auto& r : results) failures += !r.passed;
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria FAILED")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

int cmd_gen(const std::string& spec, const std::string& out_path) {
  std::string descriptor;
  const Graph g = resolve_graph(spec, &descriptor);
  if (out_path.empty()) {
    write_graph(g, std::cout, descriptor);
  } else {
    save_graph(g, out_path, descriptor);
    std::cerr << descriptor << ": " << g.node_count() << " nodes, " << g.edge_count()
              << " edges -> " << out_path << "\n";
  }
  return 0;
}

int cmd_spanner(const std::string& graph_spec, const std::string& trace_path,
                const std::string& out_path) {
  std::string descriptor;
  const Graph g = resolve_graph(graph_spec, &descriptor);
  const TraceDump dump = load_traces(trace_path);
  if (dump.node_count != g.node_count())
    throw InvalidParams("trace dump is for " + std::to_string(dump.node_count) +
                        " nodes, graph has " + std::to_string(g.node_count()));
  SpannerResult s = extract_spanner(g, dump.traces, dump.total_rounds, dump.completed);
  const bool certified = certify_spanner(g, s);

  std::ostringstream header;
  header << "spanner of " << descriptor << "\n";
  header << "source_rounds " << s.source_rounds << "\n";
  if (certified) {
    header << "stretch_alpha " << s.certified_stretch->first << " beta 0\n";
    header << "hereditary_density " << s.density;
  } else {
    header << "certification FAILED: some neighbor pair is disconnected";
  }
  if (out_path.empty()) {
    write_graph(s.subgraph, std::cout, header.str());
  } else {
    save_graph(s.subgraph, out_path, header.str());
  }
  std::cerr << "spanner: " << s.subgraph.edge_count() << "/" << g.edge_count() << " edges"
            << (certified ? ", stretch " + std::to_string(s.certified_stretch->first) +
                                ", density " + std::to_string(s.density)
                          : ", NOT certified")
            << "\n";
  return certified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gossipsim: round-based gossip protocol simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment and emit CSV rows");
  std::string config_path;
  std::vector<std::string> overrides;
  run->add_option("--config", config_path, "key = value config file");
  run->add_option("--set,set", overrides, "config overrides, key=value");

  auto* verify = app.add_subcommand("verify", "run the invariant battery");
  std::string level = "quick";
  verify->add_option("--level", level, "quick or full")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "generate a graph file");
  std::string gen_spec;
  std::string gen_out;
  gen->add_option("--graph", gen_spec, "family(args), e.g. er(128,0.05,7)")->required();
  gen->add_option("--out", gen_out, "output path (default stdout)");

  auto* spanner = app.add_subcommand("spanner", "extract and certify a spanner from a trace dump");
  std::string sp_graph, sp_traces, sp_out;
  spanner->add_option("--graph", sp_graph, "graph spec or @file")->required();
  spanner->add_option("--traces", sp_traces, "trace dump file")->required();
  spanner->add_option("--out", sp_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, overrides);
    if (verify->parsed()) return cmd_verify(level);
    if (gen->parsed()) return cmd_gen(gen_spec, gen_out);
    if (spanner->parsed()) return cmd_spanner(sp_graph, sp_traces, sp_out);
  } catch (const InvalidConfig& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
