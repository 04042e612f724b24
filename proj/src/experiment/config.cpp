#include "fairsim/experiment/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fairsim/sim/random.hpp"

namespace fairsim::experiment {

namespace {

using adversary::ActionKind;
using adversary::AdversarialAction;
using adversary::BudgetVector;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void require_map(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) {
    fail(where, "expected a mapping");
  }
}

void check_keys(const YAML::Node& node, const std::string& where, std::initializer_list<const char*> allowed) {
  require_map(node, where);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(where, "unknown key '" + key + "'");
    }
  }
}

template <class T>
T get(const YAML::Node& node, const std::string& where) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(where, "bad value '" + YAML::Dump(node) + "'");
  }
}

std::uint64_t get_count(const YAML::Node& node, const std::string& where) {
  const auto v = get<std::int64_t>(node, where);
  if (v < 0) {
    fail(where, "must be non-negative");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint32_t get_u32(const YAML::Node& node, const std::string& where) {
  const auto v = get_count(node, where);
  if (v > 0xffffffffULL) {
    fail(where, "too large");
  }
  return static_cast<std::uint32_t>(v);
}

double get_fraction(const YAML::Node& node, const std::string& where) {
  const auto v = get<double>(node, where);
  if (!(v >= 0.0 && v <= 1.0)) {
    fail(where, "fraction must lie in [0, 1]");
  }
  return v;
}

sim::DelaySpec parse_delay(const YAML::Node& node, const std::string& where) {
  if (node.IsScalar()) {
    return sim::DelaySpec::constant(get_count(node, where));
  }
  check_keys(node, where, {"min", "max", "constant"});
  if (node["constant"]) {
    if (node["min"] || node["max"]) {
      fail(where, "give either constant or min/max");
    }
    return sim::DelaySpec::constant(get_count(node["constant"], where + ".constant"));
  }
  if (!node["min"] || !node["max"]) {
    fail(where, "uniform delay needs both min and max");
  }
  return sim::DelaySpec::uniform(get_count(node["min"], where + ".min"), get_count(node["max"], where + ".max"));
}

BudgetVector parse_budget(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence() || node.size() == 0) {
    fail(where, "expected a non-empty list of non-negative integers");
  }
  std::vector<std::int64_t> c;
  for (std::size_t i = 0; i < node.size(); ++i) {
    c.push_back(static_cast<std::int64_t>(get_count(node[i], where + "[" + std::to_string(i) + "]")));
  }
  return BudgetVector(std::move(c));
}

NodeId parse_node(const YAML::Node& node, const std::string& where) {
  try {
    return parse_node_id(get<std::string>(node, where));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

adversary::PlannedAction parse_action(const YAML::Node& node, const std::string& where) {
  check_keys(node, where,
             {"at", "kind", "target", "direction", "delta", "cost", "behavior", "clients", "forged_sender", "message",
              "arg"});
  if (!node["kind"] || !node["target"]) {
    fail(where, "an action needs kind and target");
  }
  adversary::PlannedAction p;
  AdversarialAction& a = p.action;
  try {
    a.kind = adversary::parse_action_kind(get<std::string>(node["kind"], where + ".kind"));
  } catch (const std::invalid_argument& e) {
    fail(where + ".kind", e.what());
  }
  a.target = parse_node(node["target"], where + ".target");
  if (node["at"]) p.trigger = get_count(node["at"], where + ".at");
  if (node["direction"]) {
    try {
      a.direction = adversary::parse_direction(get<std::string>(node["direction"], where + ".direction"));
    } catch (const std::invalid_argument& e) {
      fail(where + ".direction", e.what());
    }
  }
  if (node["delta"]) a.delta = get_count(node["delta"], where + ".delta");
  a.baseline_cost = node["cost"] ? parse_budget(node["cost"], where + ".cost") : adversary::default_cost(a.kind, a.target);
  if (node["behavior"]) a.behavior = get<std::string>(node["behavior"], where + ".behavior");
  if (const YAML::Node cs = node["clients"]) {
    if (!cs.IsSequence()) fail(where + ".clients", "expected a list");
    for (std::size_t i = 0; i < cs.size(); ++i) a.clients.push_back(get_u32(cs[i], where + ".clients"));
  }
  if (node["forged_sender"]) a.forged_sender = parse_node(node["forged_sender"], where + ".forged_sender");
  if (node["message"]) a.message = get<std::string>(node["message"], where + ".message");
  if (node["arg"]) a.message_arg = get_count(node["arg"], where + ".arg");
  return p;
}

void parse_adversary(const YAML::Node& node, AdversaryConfig& adv) {
  const std::string w = "adversary";
  check_keys(node, w,
             {"failure", "communication", "budget", "fixed_delay", "infected_peers", "infected_peer_fraction",
              "infected_orderers", "infected_orderer_fraction", "withhold_votes", "actions"});
  if (node["failure"]) {
    try {
      adv.failure = adversary::parse_failure_model(get<std::string>(node["failure"], w + ".failure"));
    } catch (const std::invalid_argument& e) {
      fail(w + ".failure", e.what());
    }
  }
  if (const YAML::Node c = node["communication"]) {
    const std::string cw = w + ".communication";
    check_keys(c, cw, {"model", "delta", "gst"});
    if (!c["model"]) fail(cw, "model is required");
    try {
      adv.communication.kind = adversary::parse_communication_kind(get<std::string>(c["model"], cw + ".model"));
    } catch (const std::invalid_argument& e) {
      fail(cw + ".model", e.what());
    }
    if (c["delta"]) adv.communication.delta = get_count(c["delta"], cw + ".delta");
    if (c["gst"]) adv.communication.gst = get_count(c["gst"], cw + ".gst");
  }
  if (node["budget"]) adv.budget = parse_budget(node["budget"], w + ".budget");
  if (node["fixed_delay"]) adv.fixed_delay = get_count(node["fixed_delay"], w + ".fixed_delay");
  if (node["infected_peers"] && node["infected_peer_fraction"]) {
    fail(w, "give infected_peers or infected_peer_fraction, not both");
  }
  if (node["infected_orderers"] && node["infected_orderer_fraction"]) {
    fail(w, "give infected_orderers or infected_orderer_fraction, not both");
  }
  if (node["infected_peers"]) adv.infected_peers = get_u32(node["infected_peers"], w + ".infected_peers");
  if (node["infected_peer_fraction"])
    adv.infected_peer_fraction = get_fraction(node["infected_peer_fraction"], w + ".infected_peer_fraction");
  if (node["infected_orderers"]) adv.infected_orderers = get_u32(node["infected_orderers"], w + ".infected_orderers");
  if (node["infected_orderer_fraction"])
    adv.infected_orderer_fraction = get_fraction(node["infected_orderer_fraction"], w + ".infected_orderer_fraction");
  if (node["withhold_votes"]) adv.withhold_votes = get<bool>(node["withhold_votes"], w + ".withhold_votes");
  if (const YAML::Node list = node["actions"]) {
    if (!list.IsSequence()) fail(w + ".actions", "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      adv.actions.push_back(parse_action(list[i], w + ".actions[" + std::to_string(i) + "]"));
    }
  }
}

std::uint32_t round_fraction(double fraction, std::uint32_t n) {
  return static_cast<std::uint32_t>(std::llround(fraction * n));
}

void emit_delay(YAML::Emitter& out, const sim::DelaySpec& d) {
  out << YAML::Flow << YAML::BeginMap;
  if (d.kind == sim::DelaySpec::Kind::constant) {
    out << YAML::Key << "constant" << YAML::Value << d.min;
  } else {
    out << YAML::Key << "min" << YAML::Value << d.min << YAML::Key << "max" << YAML::Value << d.max;
  }
  out << YAML::EndMap;
}

void emit_budget(YAML::Emitter& out, const BudgetVector& b) {
  out << YAML::Flow << YAML::BeginSeq;
  for (auto c : b.components()) out << c;
  out << YAML::EndSeq;
}

}  // namespace

ExperimentConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML syntax: ") + e.what());
  }
  ExperimentConfig cfg;
  if (!root || root.IsNull()) {
    return cfg;
  }
  check_keys(root, "config", {"run", "topology", "delays", "puzzle", "consensus", "adversary", "goal", "sweep"});
  fabric::NetworkConfig& net = cfg.network;

  if (const YAML::Node n = root["run"]) {
    check_keys(n, "run", {"id", "seed", "horizon", "trace"});
    if (n["id"]) cfg.id = get<std::string>(n["id"], "run.id");
    if (n["seed"]) net.seed = get<std::uint64_t>(n["seed"], "run.seed");
    if (n["horizon"]) net.horizon = get_count(n["horizon"], "run.horizon");
    if (n["trace"]) net.record_trace = get<bool>(n["trace"], "run.trace");
  }
  if (const YAML::Node n = root["topology"]) {
    check_keys(n, "topology", {"clients", "peers", "endorsements", "orderers", "orderer_faults", "peer_fairness_f"});
    auto& t = net.topology;
    if (n["clients"]) t.clients = get_u32(n["clients"], "topology.clients");
    if (n["peers"]) t.peers = get_u32(n["peers"], "topology.peers");
    if (n["endorsements"]) t.endorsements = get_u32(n["endorsements"], "topology.endorsements");
    if (n["orderers"]) t.orderers = get_u32(n["orderers"], "topology.orderers");
    if (n["orderer_faults"]) t.orderer_faults = get_u32(n["orderer_faults"], "topology.orderer_faults");
    if (n["peer_fairness_f"]) net.peer_fairness_f = get_u32(n["peer_fairness_f"], "topology.peer_fairness_f");
  }
  if (const YAML::Node n = root["delays"]) {
    check_keys(n, "delays", {"client", "peer", "orderer"});
    if (n["client"]) net.delays.client = parse_delay(n["client"], "delays.client");
    if (n["peer"]) net.delays.peer = parse_delay(n["peer"], "delays.peer");
    if (n["orderer"]) net.delays.orderer = parse_delay(n["orderer"], "delays.orderer");
  }
  if (const YAML::Node n = root["puzzle"]) {
    check_keys(n, "puzzle", {"interval", "solve"});
    if (n["interval"]) net.puzzles.reveal_interval = get_count(n["interval"], "puzzle.interval");
    if (n["solve"]) net.puzzles.solve = parse_delay(n["solve"], "puzzle.solve");
  }
  if (const YAML::Node n = root["consensus"]) {
    check_keys(n, "consensus", {"timeout", "max_block_size", "proposer_offset"});
    if (n["timeout"]) net.timeouts.per_phase = get_count(n["timeout"], "consensus.timeout");
    if (n["max_block_size"]) net.max_block_size = get_count(n["max_block_size"], "consensus.max_block_size");
    if (n["proposer_offset"]) net.proposer_offset = get_u32(n["proposer_offset"], "consensus.proposer_offset");
  }
  if (const YAML::Node n = root["adversary"]) {
    parse_adversary(n, cfg.adversary);
  }
  if (const YAML::Node n = root["goal"]) {
    check_keys(n, "goal", {"target_client", "min_games", "max_score"});
    if (n["target_client"]) cfg.goal.target_client = get_u32(n["target_client"], "goal.target_client");
    if (n["min_games"]) cfg.goal.min_games = get_count(n["min_games"], "goal.min_games");
    if (n["max_score"]) cfg.goal.max_score = get<double>(n["max_score"], "goal.max_score");
  }
  if (const YAML::Node n = root["sweep"]) {
    if (!n.IsSequence()) fail("sweep", "expected a list of {parameter, values}");
    for (std::size_t i = 0; i < n.size(); ++i) {
      const std::string w = "sweep[" + std::to_string(i) + "]";
      check_keys(n[i], w, {"parameter", "values"});
      if (!n[i]["parameter"] || !n[i]["values"] || !n[i]["values"].IsSequence()) {
        fail(w, "needs parameter and a list of values");
      }
      SweepAxis axis;
      axis.parameter = get<std::string>(n[i]["parameter"], w + ".parameter");
      for (const auto& v : n[i]["values"]) axis.values.push_back(get<double>(v, w + ".values"));
      cfg.sweep.push_back(std::move(axis));
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_yaml(const ExperimentConfig& cfg) {
  const fabric::NetworkConfig& net = cfg.network;
  const AdversaryConfig& adv = cfg.adversary;
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "run" << YAML::Value << YAML::BeginMap << YAML::Key << "id" << YAML::Value << cfg.id
      << YAML::Key << "seed" << YAML::Value << net.seed << YAML::Key << "horizon" << YAML::Value << net.horizon
      << YAML::EndMap;

  const auto& t = net.topology;
  out << YAML::Key << "topology" << YAML::Value << YAML::BeginMap << YAML::Key << "clients" << YAML::Value
      << t.clients << YAML::Key << "peers" << YAML::Value << t.peers << YAML::Key << "endorsements" << YAML::Value
      << t.endorsements << YAML::Key << "orderers" << YAML::Value << t.orderers << YAML::Key << "orderer_faults"
      << YAML::Value << t.orderer_faults;
  if (net.peer_fairness_f) out << YAML::Key << "peer_fairness_f" << YAML::Value << *net.peer_fairness_f;
  out << YAML::EndMap;

  out << YAML::Key << "delays" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "client" << YAML::Value;
  emit_delay(out, net.delays.client);
  out << YAML::Key << "peer" << YAML::Value;
  emit_delay(out, net.delays.peer);
  out << YAML::Key << "orderer" << YAML::Value;
  emit_delay(out, net.delays.orderer);
  out << YAML::EndMap;

  out << YAML::Key << "puzzle" << YAML::Value << YAML::BeginMap << YAML::Key << "interval" << YAML::Value
      << net.puzzles.reveal_interval << YAML::Key << "solve" << YAML::Value;
  emit_delay(out, net.puzzles.solve);
  out << YAML::EndMap;

  out << YAML::Key << "consensus" << YAML::Value << YAML::BeginMap << YAML::Key << "timeout" << YAML::Value
      << net.timeouts.per_phase << YAML::Key << "max_block_size" << YAML::Value << net.max_block_size << YAML::Key
      << "proposer_offset" << YAML::Value << net.proposer_offset << YAML::EndMap;

  out << YAML::Key << "adversary" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "failure" << YAML::Value << adversary::to_string(adv.failure);
  out << YAML::Key << "communication" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key << "model"
      << YAML::Value << adversary::to_string(adv.communication.kind);
  if (adv.communication.kind != adversary::CommunicationModel::Kind::asynchronous) {
    out << YAML::Key << "delta" << YAML::Value << adv.communication.delta;
  }
  if (adv.communication.kind == adversary::CommunicationModel::Kind::eventually_synchronous) {
    out << YAML::Key << "gst" << YAML::Value << adv.communication.gst;
  }
  out << YAML::EndMap;
  if (adv.budget) {
    out << YAML::Key << "budget" << YAML::Value;
    emit_budget(out, *adv.budget);
  }
  if (adv.fixed_delay) out << YAML::Key << "fixed_delay" << YAML::Value << adv.fixed_delay;
  if (adv.infected_peers) out << YAML::Key << "infected_peers" << YAML::Value << *adv.infected_peers;
  if (adv.infected_peer_fraction)
    out << YAML::Key << "infected_peer_fraction" << YAML::Value << *adv.infected_peer_fraction;
  if (adv.infected_orderers) out << YAML::Key << "infected_orderers" << YAML::Value << *adv.infected_orderers;
  if (adv.infected_orderer_fraction)
    out << YAML::Key << "infected_orderer_fraction" << YAML::Value << *adv.infected_orderer_fraction;
  if (adv.withhold_votes) out << YAML::Key << "withhold_votes" << YAML::Value << true;
  if (!adv.actions.empty()) {
    out << YAML::Key << "actions" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : adv.actions) {
      const AdversarialAction& a = p.action;
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "at" << YAML::Value << p.trigger << YAML::Key << "kind"
          << YAML::Value << adversary::to_string(a.kind) << YAML::Key << "target" << YAML::Value
          << to_string(a.target) << YAML::Key << "direction" << YAML::Value << adversary::to_string(a.direction);
      if (a.delta) out << YAML::Key << "delta" << YAML::Value << a.delta;
      out << YAML::Key << "cost" << YAML::Value;
      emit_budget(out, a.baseline_cost);
      if (!a.behavior.empty()) out << YAML::Key << "behavior" << YAML::Value << a.behavior;
      if (!a.clients.empty()) {
        out << YAML::Key << "clients" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (auto c : a.clients) out << c;
        out << YAML::EndSeq;
      }
      if (a.kind == ActionKind::send) {
        out << YAML::Key << "forged_sender" << YAML::Value << to_string(a.forged_sender) << YAML::Key << "message"
            << YAML::Value << a.message << YAML::Key << "arg" << YAML::Value << a.message_arg;
      }
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;

  out << YAML::Key << "goal" << YAML::Value << YAML::BeginMap << YAML::Key << "target_client" << YAML::Value
      << cfg.goal.target_client << YAML::Key << "min_games" << YAML::Value << cfg.goal.min_games << YAML::Key
      << "max_score" << YAML::Value << cfg.goal.max_score << YAML::EndMap;

  if (!cfg.sweep.empty()) {
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginSeq;
    for (const auto& axis : cfg.sweep) {
      out << YAML::BeginMap << YAML::Key << "parameter" << YAML::Value << axis.parameter << YAML::Key << "values"
          << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (double v : axis.values) out << v;
      out << YAML::EndSeq << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string to_string(const Diagnostic& d) {
  return std::string(d.severity == Severity::error ? "error: " : "warning: ") + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

BudgetVector default_budget(const fabric::Topology& t) {
  const std::int64_t peers = t.peers >= t.endorsements ? t.peers - t.endorsements : 0;
  return BudgetVector{peers, static_cast<std::int64_t>(t.orderer_faults)};
}

BudgetVector effective_budget(const ExperimentConfig& cfg) {
  return cfg.adversary.budget.value_or(default_budget(cfg.network.topology));
}

std::uint32_t infected_peer_count(const ExperimentConfig& cfg) {
  const AdversaryConfig& a = cfg.adversary;
  if (a.infected_peer_fraction) return round_fraction(*a.infected_peer_fraction, cfg.network.topology.peers);
  return a.infected_peers.value_or(0);
}

std::uint32_t infected_orderer_count(const ExperimentConfig& cfg) {
  const AdversaryConfig& a = cfg.adversary;
  if (a.infected_orderer_fraction) return round_fraction(*a.infected_orderer_fraction, cfg.network.topology.orderers);
  return a.infected_orderers.value_or(0);
}

adversary::AttackPlan expand_plan(const ExperimentConfig& cfg) {
  adversary::AttackPlan plan;
  const std::uint32_t target = cfg.goal.target_client;
  if (cfg.adversary.fixed_delay > 0) {
    AdversarialAction a;
    a.kind = ActionKind::delay;
    a.target = client_id(target);
    a.direction = adversary::Direction::output;
    a.delta = cfg.adversary.fixed_delay;
    a.baseline_cost = adversary::default_cost(a.kind, a.target);
    plan.steps.push_back({0, a});
  }
  for (std::uint32_t i = 0; i < infected_peer_count(cfg); ++i) {
    AdversarialAction a;
    a.kind = ActionKind::inject;
    a.target = peer_id(i);
    a.behavior = adversary::behavior::kRefuseEndorsement;
    a.clients = {target};
    a.baseline_cost = adversary::default_cost(a.kind, a.target);
    plan.steps.push_back({0, a});
  }
  for (std::uint32_t i = 0; i < infected_orderer_count(cfg); ++i) {
    AdversarialAction a;
    a.kind = ActionKind::inject;
    a.target = orderer_id(i);
    a.behavior = cfg.adversary.withhold_votes ? adversary::behavior::kWithholdVotes
                                              : adversary::behavior::kOmitFromProposals;
    a.clients = {target};
    a.baseline_cost = adversary::default_cost(a.kind, a.target);
    plan.steps.push_back({0, a});
  }
  plan.steps.insert(plan.steps.end(), cfg.adversary.actions.begin(), cfg.adversary.actions.end());
  std::stable_sort(plan.steps.begin(), plan.steps.end(),
                   [](const auto& x, const auto& y) { return x.trigger < y.trigger; });
  return plan;
}

namespace {

std::uint32_t role_count(const fabric::Topology& t, Role r) {
  return r == Role::client ? t.clients : r == Role::peer ? t.peers : t.orderers;
}

/// Total charged cost if every step were applied, with repeat actions on an
/// already-charged node costing zero.
std::optional<BudgetVector> plan_cost(const adversary::AttackPlan& plan, std::size_t dims) {
  adversary::ProtectionLevels psi(dims);
  std::vector<std::int64_t> sum(dims, 0);
  for (const auto& step : plan.steps) {
    if (step.action.baseline_cost.size() != dims) {
      return std::nullopt;
    }
    const BudgetVector cost = adversary::action_cost(step.action, psi);
    for (std::size_t i = 0; i < dims; ++i) sum[i] += cost[i];
    std::vector<std::int64_t> level = psi.at(step.action.target).components();
    for (std::size_t i = 0; i < dims; ++i) {
      if (step.action.baseline_cost[i] > 0) level[i] = 0;
    }
    psi.set(step.action.target, BudgetVector(level));
  }
  return BudgetVector(sum);
}

std::vector<Diagnostic> validate_point(const ExperimentConfig& cfg, bool& over_default) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string m) { out.push_back({Severity::error, std::move(m)}); };
  auto warn = [&](std::string m) { out.push_back({Severity::warning, std::move(m)}); };
  const fabric::NetworkConfig& net = cfg.network;
  const fabric::Topology& t = net.topology;

  for (auto& p : t.problems()) error(p);
  for (auto [name, d] : {std::pair{"delays.client", &net.delays.client}, std::pair{"delays.peer", &net.delays.peer},
                         std::pair{"delays.orderer", &net.delays.orderer}, std::pair{"puzzle.solve", &net.puzzles.solve}}) {
    if (auto e = sim::check(*d)) error(std::string(name) + ": " + *e);
  }
  if (net.puzzles.reveal_interval == 0) error("puzzle.interval must be positive");
  if (net.timeouts.per_phase == 0) error("consensus.timeout must be positive");
  if (net.horizon == 0) error("run.horizon must be positive");
  if (auto e = adversary::check(cfg.adversary.communication)) error("adversary.communication: " + *e);
  if (cfg.goal.target_client >= t.clients) {
    error("goal.target_client " + std::to_string(cfg.goal.target_client) + " does not exist");
  }
  if (net.peer_fairness_f && *net.peer_fairness_f >= t.peers) error("topology.peer_fairness_f must be below n_p");
  if (infected_peer_count(cfg) > t.peers) error("more infected peers than peers");
  if (infected_orderer_count(cfg) > t.orderers) error("more infected orderers than orderers");

  const BudgetVector budget = effective_budget(cfg);
  if (budget.size() != adversary::kDefaultDimensions) {
    error("adversary.budget must have " + std::to_string(adversary::kDefaultDimensions) + " components");
  }
  const adversary::AttackPlan plan = expand_plan(cfg);
  for (std::size_t i = 0; i < cfg.adversary.actions.size(); ++i) {
    const auto& a = cfg.adversary.actions[i].action;
    const std::string w = "adversary.actions[" + std::to_string(i) + "]";
    if (a.target.index >= role_count(t, a.target.role)) error(w + ": no node " + to_string(a.target));
    if (a.baseline_cost.size() != adversary::kDefaultDimensions) error(w + ": cost has the wrong dimension");
    for (auto c : a.clients) {
      if (c >= t.clients) error(w + ": no client " + std::to_string(c));
    }
    if (a.kind == ActionKind::send &&
        (a.forged_sender.role != Role::client || a.forged_sender.index >= t.clients || a.message != "tx")) {
      error(w + ": send supports forging a tx from an existing client only");
    }
    if (a.kind == ActionKind::inject && !a.behavior.empty()) {
      const bool ok = (a.behavior == adversary::behavior::kRefuseEndorsement && a.target.role == Role::peer) ||
                      ((a.behavior == adversary::behavior::kOmitFromProposals ||
                        a.behavior == adversary::behavior::kWithholdVotes) &&
                       a.target.role == Role::orderer);
      if (!ok) error(w + ": behavior '" + a.behavior + "' does not apply to " + to_string(a.target));
    }
  }
  if (has_errors(out)) {
    return out;
  }
  if (auto cost = plan_cost(plan, adversary::kDefaultDimensions)) {
    const BudgetVector def = default_budget(t);
    if (!cost->fits_within(def)) {
      over_default = true;
      if (!cfg.adversary.budget) {
        warn("plan costs " + adversary::to_string(*cost) + ", more than the default budget " +
             adversary::to_string(def) + "; actions beyond it will be refused unless adversary.budget is set");
      }
    }
    if (cfg.adversary.budget && !cost->fits_within(budget)) {
      warn("plan costs " + adversary::to_string(*cost) + ", more than adversary.budget " +
           adversary::to_string(budget) + "; some actions will be refused");
    }
  }
  return out;
}

}  // namespace

std::vector<Diagnostic> validate(const ExperimentConfig& cfg) {
  std::vector<Diagnostic> out;
  const auto known = sweep_parameters();
  bool sweep_ok = true;
  std::set<std::string> seen;
  for (const auto& axis : cfg.sweep) {
    if (std::find(known.begin(), known.end(), axis.parameter) == known.end()) {
      out.push_back({Severity::error, "sweep: unknown parameter '" + axis.parameter + "'"});
      sweep_ok = false;
    } else if (!seen.insert(axis.parameter).second) {
      out.push_back({Severity::error, "sweep: parameter '" + axis.parameter + "' appears twice"});
      sweep_ok = false;
    }
    if (axis.values.empty()) {
      out.push_back({Severity::error, "sweep: parameter '" + axis.parameter + "' has no values"});
      sweep_ok = false;
    }
  }
  if (cfg.sweep.empty() || !sweep_ok) {
    bool over = false;
    auto d = validate_point(cfg, over);
    out.insert(out.end(), d.begin(), d.end());
    return out;
  }

  std::vector<ExperimentConfig> points;
  try {
    points = expand_sweep(cfg);
  } catch (const ConfigError& e) {
    out.push_back({Severity::error, e.what()});
    return out;
  }
  std::size_t over_count = 0;
  std::set<std::string> warnings;
  for (const auto& p : points) {
    bool over = false;
    for (auto& d : validate_point(p, over)) {
      if (d.severity == Severity::error) {
        out.push_back({Severity::error, p.id + ": " + d.message});
      } else if (!over || cfg.adversary.budget) {
        warnings.insert(d.message);
      }
    }
    over_count += over ? 1 : 0;
  }
  if (over_count > 0 && !cfg.adversary.budget) {
    out.push_back({Severity::warning, std::to_string(over_count) + " of " + std::to_string(points.size()) +
                                          " sweep points exceed the default budget " +
                                          adversary::to_string(default_budget(cfg.network.topology)) +
                                          "; set adversary.budget to let every action through"});
  }
  for (const auto& w : warnings) out.push_back({Severity::warning, w});
  return out;
}

std::vector<std::string> sweep_parameters() {
  return {"adversary.fixed_delay",      "adversary.infected_peers",  "adversary.infected_peer_fraction",
          "adversary.infected_orderers", "adversary.infected_orderer_fraction", "delays.client.max",
          "delays.peer.max",            "delays.orderer.max",        "consensus.timeout",
          "run.seed"};
}

void set_parameter(ExperimentConfig& cfg, const std::string& parameter, double value) {
  auto whole = [&]() -> std::uint64_t {
    if (!(value >= 0) || value != std::floor(value) || value > 1e15) {
      throw ConfigError(parameter + ": expected a non-negative integer, got " + std::to_string(value));
    }
    return static_cast<std::uint64_t>(value);
  };
  auto fraction = [&]() {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ConfigError(parameter + ": fraction must lie in [0, 1]");
    }
    return value;
  };
  auto set_max = [&](sim::DelaySpec& d) {
    const Tick hi = whole();
    d = sim::DelaySpec::uniform(d.min, hi);
  };
  AdversaryConfig& a = cfg.adversary;
  if (parameter == "adversary.fixed_delay") {
    a.fixed_delay = whole();
  } else if (parameter == "adversary.infected_peers") {
    a.infected_peers = static_cast<std::uint32_t>(whole());
    a.infected_peer_fraction.reset();
  } else if (parameter == "adversary.infected_peer_fraction") {
    a.infected_peer_fraction = fraction();
    a.infected_peers.reset();
  } else if (parameter == "adversary.infected_orderers") {
    a.infected_orderers = static_cast<std::uint32_t>(whole());
    a.infected_orderer_fraction.reset();
  } else if (parameter == "adversary.infected_orderer_fraction") {
    a.infected_orderer_fraction = fraction();
    a.infected_orderers.reset();
  } else if (parameter == "delays.client.max") {
    set_max(cfg.network.delays.client);
  } else if (parameter == "delays.peer.max") {
    set_max(cfg.network.delays.peer);
  } else if (parameter == "delays.orderer.max") {
    set_max(cfg.network.delays.orderer);
  } else if (parameter == "consensus.timeout") {
    cfg.network.timeouts.per_phase = whole();
  } else if (parameter == "run.seed") {
    cfg.network.seed = whole();
  } else {
    throw ConfigError("sweep: unknown parameter '" + parameter + "'");
  }
}

std::size_t grid_size(const ExperimentConfig& cfg) {
  std::size_t n = 1;
  for (const auto& axis : cfg.sweep) n *= axis.values.size();
  return n;
}

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& cfg) {
  if (cfg.sweep.empty()) {
    return {cfg};
  }
  const std::size_t total = grid_size(cfg);
  std::vector<ExperimentConfig> out;
  out.reserve(total);
  bool sweeps_seed = false;
  for (const auto& axis : cfg.sweep) sweeps_seed = sweeps_seed || axis.parameter == "run.seed";
  for (std::size_t index = 0; index < total; ++index) {
    ExperimentConfig p = cfg;
    p.sweep.clear();
    p.id = cfg.id + "-" + std::to_string(index);
    if (!sweeps_seed) {
      p.network.seed = sim::derive_seed(cfg.network.seed, index);
    }
    std::size_t rest = index;
    std::size_t stride = total;
    for (const auto& axis : cfg.sweep) {
      stride /= axis.values.size();
      set_parameter(p, axis.parameter, axis.values[rest / stride]);
      rest %= stride;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace fairsim::experiment
