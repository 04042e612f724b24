#include "fairsim/experiment/presets.hpp"

#include <functional>

namespace fairsim::experiment {

namespace {

std::vector<double> steps(int count, double last) {
  std::vector<double> v;
  for (int k = 0; k < count; ++k) {
    v.push_back(last * k / (count - 1));
  }
  return v;
}

std::vector<double> integers(int lo, int hi) {
  std::vector<double> v;
  for (int k = lo; k <= hi; ++k) v.push_back(k);
  return v;
}

ExperimentConfig named(ExperimentConfig c, const std::string& id) {
  c.id = id;
  return c;
}

// Budget large enough for every infection a sweep can ask for.
void unlimited(ExperimentConfig& c) {
  const auto& t = c.network.topology;
  c.adversary.budget = adversary::BudgetVector{t.peers, t.orderers};
}

ExperimentConfig delay_sweep(ExperimentConfig c) {
  c.sweep = {{"adversary.fixed_delay", integers(0, 15)}};
  return c;
}

ExperimentConfig peer_sweep(ExperimentConfig c) {
  unlimited(c);
  c.sweep = {{"adversary.infected_peer_fraction", steps(27, 0.52)}, {"delays.peer.max", {1, 5, 10, 15, 20}}};
  return c;
}

ExperimentConfig orderer_sweep(ExperimentConfig c) {
  unlimited(c);
  c.sweep = {{"adversary.infected_orderer_fraction", steps(21, 0.37)}};
  return c;
}

ExperimentConfig combined_sweep(ExperimentConfig c) {
  unlimited(c);
  c.sweep = {{"adversary.infected_peer_fraction", steps(27, 0.52)},
             {"adversary.infected_orderer_fraction", steps(5, 0.29)}};
  return c;
}

struct Preset {
  PresetInfo info;
  std::function<ExperimentConfig()> make;
};

const std::vector<Preset>& registry() {
  static const std::vector<Preset> presets = [] {
    std::vector<Preset> p;
    p.push_back({{"baseline", "no adversary"}, [] { return named(desk_base(), "baseline"); }});
    p.push_back({{"delay-15", "target client's output delayed by 15 ticks"}, [] {
                   auto c = named(desk_base(), "delay-15");
                   c.adversary.fixed_delay = 15;
                   return c;
                 }});
    p.push_back({{"peer-censor", "7 of 16 peers refuse to endorse the target"}, [] {
                   auto c = named(desk_base(), "peer-censor");
                   c.adversary.infected_peers = 7;
                   c.adversary.budget = adversary::BudgetVector{7, 2};
                   return c;
                 }});
    p.push_back({{"peer-sabotage", "6 of 16 peers refuse the target, peer delays U[1,20]"}, [] {
                   auto c = named(desk_base(), "peer-sabotage");
                   c.adversary.infected_peers = 6;
                   c.network.delays.peer = sim::DelaySpec::uniform(1, 20);
                   return c;
                 }});
    p.push_back({{"orderer-omit", "2 of 7 orderers leave the target out of their proposals"}, [] {
                   auto c = named(desk_base(), "orderer-omit");
                   c.adversary.infected_orderers = 2;
                   return c;
                 }});
    p.push_back({{"orderer-censor", "3 of 7 orderers omit the target and vote against blocks carrying it"}, [] {
                   auto c = named(desk_base(), "orderer-censor");
                   c.adversary.infected_orderers = 3;
                   c.adversary.withhold_votes = true;
                   c.adversary.budget = adversary::BudgetVector{6, 3};
                   return c;
                 }});
    p.push_back({{"delay-sweep", "fixed target delay 0..15 (16 runs)"},
                 [] { return delay_sweep(named(desk_base(), "delay-sweep")); }});
    p.push_back({{"peer-sabotage-sweep", "infected peers 0..52% x peer delay max {1,5,10,15,20} (135 runs)"},
                 [] { return peer_sweep(named(desk_base(), "peer-sabotage-sweep")); }});
    p.push_back({{"orderer-sabotage-sweep", "proposal-filtering orderers 0..37% (21 runs)"},
                 [] { return orderer_sweep(named(desk_base(), "orderer-sabotage-sweep")); }});
    p.push_back({{"combined-sabotage-sweep", "infected peers 0..52% x orderers 0..29% (135 runs)"},
                 [] { return combined_sweep(named(desk_base(), "combined-sabotage-sweep")); }});

    p.push_back({{"baseline-full", "large topology, no adversary"}, [] { return named(full_base(), "baseline-full"); }});
    p.push_back({{"delay-sweep-full", "large topology, fixed target delay 0..15"},
                 [] { return delay_sweep(named(full_base(), "delay-sweep-full")); }});
    p.push_back({{"peer-sabotage-sweep-full", "large topology, peers 0..52% x peer delay max"},
                 [] { return peer_sweep(named(full_base(), "peer-sabotage-sweep-full")); }});
    p.push_back({{"orderer-sabotage-sweep-full", "large topology, orderers 0..37%"},
                 [] { return orderer_sweep(named(full_base(), "orderer-sabotage-sweep-full")); }});
    p.push_back({{"combined-sabotage-sweep-full", "large topology, peers 0..52% x orderers 0..29%"},
                 [] { return combined_sweep(named(full_base(), "combined-sabotage-sweep-full")); }});
    p.push_back({{"smoke-full", "large topology, target delay 0 and 15 (2 runs)"}, [] {
                   auto c = named(full_base(), "smoke-full");
                   unlimited(c);
                   c.sweep = {{"adversary.fixed_delay", {0, 15}}};
                   return c;
                 }});
    return p;
  }();
  return presets;
}

}  // namespace

ExperimentConfig desk_base() {
  ExperimentConfig c;
  c.network.topology = fabric::Topology{3, 16, 10, 7, 2};
  c.network.horizon = 5000;
  c.goal.min_games = 375;
  return c;
}

ExperimentConfig full_base() {
  ExperimentConfig c;
  c.network.topology = fabric::Topology{3, 50, 25, 55, 18};
  c.network.horizon = 20000;
  c.goal.min_games = 1500;
  return c;
}

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& p : registry()) out.push_back(p.info);
  return out;
}

std::optional<ExperimentConfig> find_preset(const std::string& name) {
  for (const auto& p : registry()) {
    if (p.info.name == name) return p.make();
  }
  return std::nullopt;
}

}  // namespace fairsim::experiment
