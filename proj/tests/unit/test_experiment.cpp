#include <doctest.h>
#include <sstream>

#include "gossipsim/experiment.hpp"
#include "gossipsim/errors.hpp"

using namespace gossipsim;

TEST_CASE("seed list parsing") {
  CHECK(parse_seeds("7") == std::vector<std::uint64_t>{7});
  CHECK(parse_seeds("1,5,9") == std::vector<std::uint64_t>{1, 5, 9});
  CHECK(parse_seeds("0..3") == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK_THROWS_AS((void)parse_seeds("5..2"), InvalidConfig);
  CHECK_THROWS_AS((void)parse_seeds("abc"), InvalidConfig);
  CHECK_THROWS_AS((void)parse_seeds(""), InvalidConfig);
}

TEST_CASE("graph spec resolution") {
  std::string name;
  const Graph star = resolve_graph("star(5)", &name);
  CHECK(star.node_count() == 6);
  CHECK(name == "star(5)");

  const Graph er = resolve_graph("er(32, 0.2, 7)", &name);
  CHECK(er.node_count() == 32);
  CHECK(name == "er(32,0.2,7)");

  CHECK_THROWS_AS((void)resolve_graph("blob(4)"), InvalidConfig);
  CHECK_THROWS_AS((void)resolve_graph("star"), InvalidConfig);
  CHECK_THROWS_AS((void)resolve_graph("er(4)"), InvalidConfig);
  CHECK_THROWS_AS((void)resolve_graph("star(x)"), InvalidConfig);
}

TEST_CASE("config parsing with diagnostics") {
  std::stringstream in(
      "# experiment\n"
      "protocol = superstep\n"
      "graph = dumbbell(3)\n"
      "seeds = 0..4\n"
      "c_tau = 1.5\n");
  const ExperimentConfig config = parse_config(in, "test");
  CHECK(config.protocol == "superstep");
  CHECK(config.graph == "dumbbell(3)");
  CHECK(config.seeds.size() == 5);
  CHECK(config.c_tau == doctest::Approx(1.5));

  std::stringstream bad_key("wibble = 3\n");
  CHECK_THROWS_WITH_AS((void)parse_config(bad_key, "cfg"),
                       doctest::Contains("cfg:1"), InvalidConfig);

  std::stringstream bad_line("protocol superstep\n");
  CHECK_THROWS_AS((void)parse_config(bad_line, "cfg"), InvalidConfig);

  ExperimentConfig c;
  CHECK_THROWS_AS(c.set("protocol", "wat"), InvalidConfig);
  CHECK_THROWS_AS(c.set("tau", "many"), InvalidConfig);
}

TEST_CASE("csv rows are stable across invocations") {
  ExperimentConfig config;
  config.protocol = "superstep";
  config.graph = "dumbbell(3)";
  config.seeds = {0, 1, 2};

  std::stringstream first, second, diag;
  CHECK(run_experiment(config, first, diag) == 0);
  CHECK(run_experiment(config, second, diag) == 0);
  CHECK(first.str() == second.str());

  std::string header;
  std::getline(first, header);
  CHECK(header == RunRow::header());
  std::string row;
  std::size_t rows = 0;
  while (std::getline(first, row)) {
    ++rows;
    CHECK(row.find("superstep,dumbbell(3),6,7,") == 0);
    CHECK(row.find("true,true") != std::string::npos);
  }
  CHECK(rows == 3);
}

TEST_CASE("run_experiment covers every protocol") {
  for (const std::string protocol :
       {"rumor", "direct_exchange", "baseline", "uniform_gossip", "simulate_superstep",
        "simulate_round_robin", "simulate_direct_exchange", "simulate_spanner"}) {
    ExperimentConfig config;
    config.protocol = protocol;
    config.graph = "path(5)";
    config.seeds = {3};
    std::stringstream out, diag;
    CHECK(run_experiment(config, out, diag) == 0);
    std::string header, row;
    std::getline(out, header);
    REQUIRE(std::getline(out, row));
    CHECK(row.find(protocol + ",path(5),5,4,3,") == 0);
  }
}
