#include "fairsim/experiment/runner.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace fairsim::experiment {

namespace {

const ExperimentConfig& checked(const ExperimentConfig& config) {
  const auto diagnostics = validate(config);
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) {
      throw ConfigError(config.id + ": " + d.message);
    }
  }
  return config;
}

adversary::Assumptions assumptions_of(const ExperimentConfig& c) {
  return {c.adversary.failure, c.adversary.communication};
}

}  // namespace

Simulation::Simulation(const ExperimentConfig& config)
    : config_(checked(config)),
      network_(config_.network),
      adversary_(assumptions_of(config_), effective_budget(config_)),
      plan_(expand_plan(config_)) {}

void Simulation::fire_due(Tick up_to) {
  while (next_step_ < plan_.steps.size() && plan_.steps[next_step_].trigger <= up_to) {
    const auto& step = plan_.steps[next_step_++];
    if (step.trigger > network_.now()) {
      network_.advance_to(step.trigger);
    }
    adversary_.apply_attack(network_, step.action);
  }
}

void Simulation::run() {
  fire_due(0);
  network_.start();
  const Tick horizon = config_.network.horizon;
  while (true) {
    const auto next = network_.next_event_tick();
    fire_due(next && *next <= horizon ? *next : horizon);
    if (!network_.step()) {
      break;
    }
  }
}

RunResult summarize(const Simulation& sim) {
  const ExperimentConfig& c = sim.config();
  const fabric::FabricNetwork& net = sim.network();
  RunResult r;
  r.run_id = c.id;
  r.seed = c.network.seed;
  r.topology = c.network.topology;
  r.infected_peers = net.injected_count(Role::peer);
  r.infected_orderers = net.injected_count(Role::orderer);
  r.withhold_votes = c.adversary.withhold_votes;
  r.fixed_delay = c.adversary.fixed_delay;
  r.peer_delay_max = c.network.delays.peer.upper_bound();
  r.target_client = c.goal.target_client;
  r.report = net.report();
  r.series = net.score_series();
  r.ledger_height = net.ledger().height();
  r.target_endorsed = net.endorsed_count(c.goal.target_client);
  r.agreement_violations = net.agreement_violations();
  for (const auto& h : sim.adversary().history()) {
    r.refused_actions += h.outcome.applied() ? 0 : 1;
  }
  r.budget_left = sim.adversary().budget();
  r.goal_met = adversary::evaluate_goal(c.goal, r.report.games, r.report.score(c.goal.target_client));
  return r;
}

RunResult run_experiment(const ExperimentConfig& config) {
  Simulation sim(config);
  sim.run();
  return summarize(sim);
}

std::vector<RunResult> run_all(const std::vector<ExperimentConfig>& points, unsigned parallel) {
  std::vector<RunResult> results(points.size());
  if (parallel <= 1 || points.size() <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) results[i] = run_experiment(points[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = run_experiment(points[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  const unsigned n = std::min<std::size_t>(parallel, points.size());
  for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace fairsim::experiment
