#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairsim/experiment/config.hpp"
#include "fairsim/experiment/output.hpp"
#include "fairsim/experiment/presets.hpp"
#include "fairsim/experiment/runner.hpp"
#include "fairsim/sim/random.hpp"

using namespace fairsim;
using namespace fairsim::experiment;

namespace {

std::size_t count(const std::vector<Diagnostic>& ds, Severity s) {
  std::size_t n = 0;
  for (const auto& d : ds) n += d.severity == s;
  return n;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig short_run(const std::string& preset, Tick horizon = 800) {
  auto cfg = *find_preset(preset);
  cfg.network.horizon = horizon;
  return cfg;
}

}  // namespace

TEST_CASE("minimal yaml falls back to defaults") {
  auto cfg = parse_config("run: {id: tiny, seed: 9}\n");
  CHECK(cfg.id == "tiny");
  CHECK(cfg.network.seed == 9);
  CHECK(cfg.network.topology.peers == 16);
  CHECK(validate(cfg).empty());
  CHECK(expand_plan(cfg).steps.empty());
}

TEST_CASE("parse errors name the key") {
  CHECK_THROWS_WITH_AS(parse_config("run: {colour: red}\n"), doctest::Contains("colour"), ConfigError);
  CHECK_THROWS_AS(parse_config("topology: {peers: -3}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("delays: {peer: {min: 4}}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("adversary: {actions: [{at: 0, kind: teleport, target: peer/0}]}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("run: [\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.yaml"), ConfigError);
}

TEST_CASE("orderer count must be 3f+1") {
  auto cfg = full_base();
  cfg.network.topology.orderers = 56;
  const auto ds = validate(cfg);
  CHECK(has_errors(ds));
  CHECK_THROWS_AS(Simulation{cfg}, ConfigError);
}

TEST_CASE("over-budget plans only warn") {
  auto cfg = full_base();
  cfg.adversary.infected_peer_fraction = 0.52;
  CHECK(infected_peer_count(cfg) == 26);
  CHECK(default_budget(cfg.network.topology) == adversary::BudgetVector{25, 18});
  const auto ds = validate(cfg);
  CHECK_FALSE(has_errors(ds));
  CHECK(count(ds, Severity::warning) == 1);

  cfg.adversary.budget = adversary::BudgetVector{50, 18};
  CHECK(validate(cfg).empty());
}

TEST_CASE("action validation") {
  auto cfg = desk_base();
  adversary::PlannedAction p;
  p.action.kind = adversary::ActionKind::inject;
  p.action.target = peer_id(3);
  p.action.behavior = adversary::behavior::kWithholdVotes;
  p.action.clients = {0};
  p.action.baseline_cost = adversary::default_cost(p.action.kind, p.action.target);
  cfg.adversary.actions = {p};
  CHECK(has_errors(validate(cfg)));
  cfg.adversary.actions[0].action.target = peer_id(40);
  CHECK(has_errors(validate(cfg)));
  cfg.adversary.actions[0].action.target = orderer_id(1);
  CHECK_FALSE(has_errors(validate(cfg)));
  cfg.goal.target_client = 3;
  CHECK(has_errors(validate(cfg)));
}

TEST_CASE("shorthand fields expand into trigger-0 actions") {
  auto cfg = desk_base();
  cfg.goal.target_client = 1;
  cfg.adversary.fixed_delay = 4;
  cfg.adversary.infected_peers = 2;
  cfg.adversary.infected_orderers = 1;
  cfg.adversary.withhold_votes = true;
  const auto plan = expand_plan(cfg);
  REQUIRE(plan.steps.size() == 4);
  CHECK(plan.steps[0].action.kind == adversary::ActionKind::delay);
  CHECK(plan.steps[0].action.target == client_id(1));
  CHECK(plan.steps[0].action.delta == 4);
  CHECK(plan.steps[1].action.target == peer_id(0));
  CHECK(plan.steps[2].action.target == peer_id(1));
  CHECK(plan.steps[3].action.behavior == adversary::behavior::kWithholdVotes);
  CHECK(plan.steps[3].action.clients == std::vector<std::uint32_t>{1});
  CHECK(plan.triggers_sorted());
}

TEST_CASE("preset grid sizes") {
  CHECK(grid_size(*find_preset("delay-sweep")) == 16);
  CHECK(grid_size(*find_preset("peer-sabotage-sweep")) == 135);
  CHECK(grid_size(*find_preset("orderer-sabotage-sweep")) == 21);
  CHECK(grid_size(*find_preset("combined-sabotage-sweep")) == 135);
  CHECK(grid_size(*find_preset("baseline")) == 1);
  for (const auto& p : list_presets()) {
    INFO(p.name);
    CHECK_FALSE(has_errors(validate(*find_preset(p.name))));
  }
  CHECK_FALSE(find_preset("nope"));
}

TEST_CASE("sweep expansion order, ids and seeds") {
  auto cfg = desk_base();
  cfg.id = "g";
  cfg.network.seed = 77;
  cfg.sweep = {{"adversary.fixed_delay", {0, 3}}, {"delays.peer.max", {5, 10, 20}}};
  const auto pts = expand_sweep(cfg);
  REQUIRE(pts.size() == 6);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].id == "g-" + std::to_string(i));
    CHECK(pts[i].network.seed == sim::derive_seed(77, i));
    CHECK(pts[i].sweep.empty());
    CHECK(pts[i].adversary.fixed_delay == (i < 3 ? 0u : 3u));
  }
  CHECK(pts[1].network.delays.peer.max == 10);
  CHECK(pts[5].network.delays.peer.max == 20);

  cfg.sweep = {{"run.seed", {4, 5}}};
  const auto seeded = expand_sweep(cfg);
  CHECK(seeded[0].network.seed == 4);
  CHECK(seeded[1].network.seed == 5);

  CHECK_THROWS_AS(set_parameter(cfg, "topology.peers", 3), ConfigError);
  cfg.sweep = {{"bogus", {1}}};
  CHECK(has_errors(validate(cfg)));
}

TEST_CASE("yaml round trip preserves every preset") {
  for (const auto& p : list_presets()) {
    INFO(p.name);
    const auto cfg = *find_preset(p.name);
    const auto text = to_yaml(cfg);
    const auto back = parse_config(text);
    CHECK(to_yaml(back) == text);
    CHECK(grid_size(back) == grid_size(cfg));
  }
}

TEST_CASE("simulation summary") {
  const auto r = run_experiment(short_run("peer-censor"));
  CHECK(r.infected_peers == 7);
  CHECK(r.target_endorsed == 0);
  CHECK(r.report.wins[0] == 0);
  CHECK(r.refused_actions == 0);
  CHECK(r.ledger_height > 0);
  CHECK(r.agreement_violations == 0);
  CHECK_FALSE(r.goal_met);  // far too few games at this horizon
  CHECK(r.budget_left == adversary::BudgetVector{0, 2});
}

TEST_CASE("actions beyond the budget are refused and counted") {
  auto cfg = short_run("baseline");
  cfg.adversary.infected_peers = 8;
  cfg.adversary.budget = adversary::BudgetVector{6, 2};
  const auto r = run_experiment(cfg);
  CHECK(r.refused_actions == 2);
  CHECK(r.budget_left == adversary::BudgetVector{0, 2});
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  auto cfg = *find_preset("delay-sweep");
  cfg.network.horizon = 600;
  const auto pts = expand_sweep(cfg);
  const auto serial = run_all(pts, 1);
  const auto parallel = run_all(pts, 4);
  REQUIRE(serial.size() == parallel.size());

  std::ostringstream a, b;
  write_report_csv(a, serial);
  write_report_csv(b, parallel);
  CHECK(a.str() == b.str());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    std::ostringstream x, y;
    write_timeseries_csv(x, serial[i]);
    write_timeseries_csv(y, parallel[i]);
    CHECK(x.str() == y.str());
  }

  const auto dir = std::filesystem::temp_directory_path() / "fairsim_test_out";
  std::filesystem::remove_all(dir);
  write_outputs(dir / "1", serial);
  write_outputs(dir / "2", run_all(pts, 2));
  for (const char* f : {"report.csv", "summary.txt", "timeseries_delay-sweep-3.csv"}) {
    INFO(f);
    REQUIRE(std::filesystem::exists(dir / "1" / f));
    CHECK(slurp(dir / "1" / f) == slurp(dir / "2" / f));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("report csv shape") {
  const auto r = run_experiment(short_run("baseline", 300));
  std::ostringstream s;
  write_report_csv(s, {r});
  std::istringstream in(s.str());
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  CHECK_FALSE(std::getline(in, extra));
  CHECK(header.rfind("run_id,seed,n_c,n_p,m_p,n_o,f_o,", 0) == 0);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
  CHECK(format_score(std::nullopt) == "");
  CHECK(format_score(1.0 / 3) == "0.333333");
}
